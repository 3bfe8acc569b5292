"""Exact finite-n alternating binomial sums for record statistics.

Every quantity has the shape

    prefactor * sum_{k=r-1}^{n-1} C(n-1, k) (-1)^k f(k)

where ``f(k)`` is a sum over chains ``1 = l_1 < l_2 < ... < l_r`` of products
of reciprocals ``1/D(l)``. Strict records use ``D(l) = Q^l - 1`` with
prefactor ``(p/q)^r``; weak records use ``D(l) = 1 - q^l`` with prefactor
``p^r``. The chain sums are computed by prefix-sum dynamic programming; the
binomial sums cancel massively, which is why everything stays rational.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from gmpy2 import mpq

from .model import Mode, ModelParams
from .numeric import ExactScalar, binomial, exact, pairwise_sum

__all__ = [
    "DenomKind",
    "PositionF",
    "chain_table",
    "nested_sum_S",
    "t_chain_table",
    "t_linear_product",
    "chain_sum_coeff",
    "alternating_sum",
    "pi_strict",
    "pi_weak",
    "pi_analytic",
    "value_partial_analytic",
    "position_f",
    "position_shifted_partial_analytic",
    "position_partial_analytic",
    "expected_records_analytic",
]


class DenomKind(enum.Enum):
    STRICT_Q = "strict"
    WEAK_Q = "weak"

    @classmethod
    def of(cls, mode) -> "DenomKind":
        return cls.STRICT_Q if Mode.parse(mode) is Mode.STRICT else cls.WEAK_Q

    def denom(self, q, l: int) -> ExactScalar:
        if self is DenomKind.STRICT_Q:
            return (1 / q) ** l - 1
        return 1 - q**l

    def t_numer(self, q, l: int) -> ExactScalar:
        """Second entry of the value pair: Q^l/(Q^l-1)^2 or q^l/(1-q^l)^2."""
        d = self.denom(q, l)
        x = (1 / q) ** l if self is DenomKind.STRICT_Q else q**l
        return x / (d * d)


def _q(params_or_q) -> ExactScalar:
    if isinstance(params_or_q, ModelParams):
        return params_or_q.q
    return exact(params_or_q)


def chain_table(params, r_max: int, K: int, kind: DenomKind) -> list[list[ExactScalar]]:
    """``S[r][k]`` for ``1 <= r <= r_max``, ``0 <= k <= K``.

    ``S_r(k) = sum_{1 = l_1 < ... < l_r = k} prod 1/D(l_i)``; zero when no
    such chain exists. Row 0 is unused.
    """
    q = _q(params)
    inv = [mpq(0)] + [1 / kind.denom(q, l) for l in range(1, K + 1)]
    zero = [mpq(0)] * (K + 1)
    S = [zero]
    row = list(zero)
    if K >= 1:
        row[1] = inv[1]
    S.append(row)
    for _ in range(2, r_max + 1):
        prev = S[-1]
        row = list(zero)
        run = mpq(0)
        for l in range(1, K + 1):
            if run:
                row[l] = run * inv[l]
            run += prev[l]
        S.append(row)
    return S


def nested_sum_S(params, r: int, k: int, kind: DenomKind) -> ExactScalar:
    """``S_r(k)``, the chain sum ending at ``k``."""
    if r < 1 or k < 0:
        raise ValueError("need r >= 1 and k >= 0")
    return chain_table(params, r, k, kind)[r][k]


def t_linear_product(pairs: Sequence) -> ExactScalar:
    """Coefficient of t in ``prod (a_i + t b_i)``."""
    if not pairs:
        raise ValueError("need at least one factor")
    plain, lin = mpq(1), mpq(0)
    for a, b in pairs:
        plain, lin = plain * a, lin * a + plain * b
    return lin


def t_chain_table(params, r: int, K: int, kind: DenomKind) -> list[ExactScalar]:
    """``T[k] = [t] sum_{1 = l_1 < ... < l_r = k} prod (1/D(l) + t X(l))``."""
    q = _q(params)
    a = [mpq(0)] + [1 / kind.denom(q, l) for l in range(1, K + 1)]
    b = [mpq(0)] + [kind.t_numer(q, l) for l in range(1, K + 1)]
    A = [mpq(0)] * (K + 1)
    B = [mpq(0)] * (K + 1)
    if K >= 1:
        A[1], B[1] = a[1], b[1]
    for _ in range(2, r + 1):
        nA = [mpq(0)] * (K + 1)
        nB = [mpq(0)] * (K + 1)
        runA = runB = mpq(0)
        for l in range(1, K + 1):
            if runA or runB:
                nA[l] = a[l] * runA
                nB[l] = b[l] * runA + a[l] * runB
            runA += A[l]
            runB += B[l]
        A, B = nA, nB
    return B


def chain_sum_coeff(seqs: Sequence[Sequence], n: int, q, kind: DenomKind, *, weighted: bool = False):
    """Chain-sum side of the coefficient identities for nested q-sums.

    ``sum_{0 = l_0 < l_1 < ... < l_s = n} a^{(s)}_{l_1 - l_0} ... a^{(1)}_{l_s - l_{s-1}}``
    divided by ``prod D(l_i)``; with ``weighted`` each ``1/D(l_i)`` becomes
    ``1/D(l_i) + t X(l_i)`` and the coefficient of t is returned.
    """
    q = exact(q)
    s = len(seqs)

    def coeff(j, m):
        seq = seqs[j]
        return exact(seq[m]) if m < len(seq) else mpq(0)

    a = [None] + [1 / kind.denom(q, l) for l in range(1, n + 1)]
    b = [None] + [kind.t_numer(q, l) for l in range(1, n + 1)]
    A = {0: mpq(1)}
    B = {0: mpq(0)}
    for level in range(1, s + 1):
        j = s - level
        nA, nB = {}, {}
        for l in range(level, n + 1):
            sa = sb = mpq(0)
            for lp, val in A.items():
                if lp < l:
                    g = coeff(j, l - lp)
                    if g:
                        sa += val * g
                        sb += B[lp] * g
            if sa or sb:
                nA[l] = a[l] * sa
                nB[l] = b[l] * sa + a[l] * sb
        A, B = nA, nB
    if weighted:
        return B.get(n, mpq(0))
    return A.get(n, mpq(0))


def alternating_sum(n: int, lo: int, f: Sequence) -> ExactScalar:
    """``sum_{k=lo}^{n-1} C(n-1, k) (-1)^k f[k]``."""
    terms = []
    for k in range(max(lo, 0), n):
        fk = f[k]
        if fk:
            c = binomial(n - 1, k)
            terms.append(-c * fk if k % 2 else c * fk)
    return pairwise_sum(terms)


def _sign(r: int) -> int:
    return -1 if (r - 1) % 2 else 1


def pi_strict(params: ModelParams, n: int, r: int, *, table=None) -> ExactScalar:
    """Probability that a word of length n has at least r strict records.

    ``table`` may be a precomputed ``chain_table`` covering ``r`` and ``n``.
    """
    _check(n, r)
    S = table if table is not None else chain_table(params, r, n, DenomKind.STRICT_Q)
    p, q, Q = params.p, params.q, params.Q
    f = [(Q - 1) * S[r][k + 1] for k in range(n)]
    return _sign(r) * (p / q) ** (r - 1) * alternating_sum(n, r - 1, f)


def pi_weak(params: ModelParams, n: int, r: int, *, table=None) -> ExactScalar:
    """Probability of at least r weak records: prefactor ``p^r``, weak chains."""
    _check(n, r)
    S = table if table is not None else chain_table(params, r, n, DenomKind.WEAK_Q)
    f = [S[r][k + 1] for k in range(n)]
    return _sign(r) * params.p**r * alternating_sum(n, r - 1, f)


def pi_analytic(params: ModelParams, n: int, r: int, mode=Mode.STRICT) -> ExactScalar:
    if Mode.parse(mode) is Mode.STRICT:
        return pi_strict(params, n, r)
    return pi_weak(params, n, r)


def _prefactor(params: ModelParams, r: int, mode: Mode) -> ExactScalar:
    if mode is Mode.STRICT:
        return _sign(r) * (params.p / params.q) ** r
    return _sign(r) * params.p**r


def value_partial_analytic(params: ModelParams, n: int, r: int, mode=Mode.STRICT) -> ExactScalar:
    """Alternating-sum value statistic of the r-th record.

    Strict: the partial expectation ``sum_h h * P(r-th record has value h)``.
    Weak: the same sum evaluates the partial expectation of ``value - 1``;
    add ``pi_weak`` to get the value itself.
    """
    _check(n, r)
    mode = Mode.parse(mode)
    T = t_chain_table(params, r, n, DenomKind.of(mode))
    f = [T[k + 1] for k in range(n)]
    return _prefactor(params, r, mode) * alternating_sum(n, r - 1, f)


@dataclass(frozen=True)
class PositionF:
    f1: ExactScalar
    f2: ExactScalar

    @property
    def total(self) -> ExactScalar:
        return self.f1 + self.f2


def _position_terms(S_r: Sequence, r: int, k: int, corrected: bool) -> PositionF:
    s_k = S_r[k] if k < len(S_r) else mpq(0)
    s_k1 = S_r[k + 1] if k + 1 < len(S_r) else mpq(0)
    coef = k - r + 1 if corrected else k - r
    return PositionF(f1=-(k - 1) * s_k, f2=coef * s_k1)


def position_f(params, r: int, k: int, mode=Mode.STRICT, *, corrected: bool = True) -> PositionF:
    """The two summands of the position statistic's ``f(k)``.

    ``f1(k) = -(k-1) S_r(k)`` and ``f2(k) = (k-r+1) S_r(k+1)``. The factor
    ``k-r+1`` is the t-coefficient of ``prod (1 + t(l_j - l_{j-1} - 1))`` over
    chains from 1 to k+1; ``corrected=False`` gives the ``k-r`` variant, kept
    for diagnostics only.
    """
    if r < 1 or k < 0:
        raise ValueError("need r >= 1 and k >= 0")
    S = chain_table(params, r, k + 1, DenomKind.of(mode))
    return _position_terms(S[r], r, k, corrected)


def position_shifted_partial_analytic(params: ModelParams, n: int, r: int, mode=Mode.STRICT,
                                      *, corrected: bool = True) -> ExactScalar:
    """Partial expectation of ``position - r`` for the r-th record."""
    _check(n, r)
    mode = Mode.parse(mode)
    S = chain_table(params, r, n, DenomKind.of(mode))[r]
    f = [_position_terms(S, r, k, corrected).total for k in range(n)]
    return _prefactor(params, r, mode) * alternating_sum(n, r - 1, f)


def position_partial_analytic(params: ModelParams, n: int, r: int, mode=Mode.STRICT,
                              *, corrected: bool = True, pi: Optional[ExactScalar] = None) -> ExactScalar:
    """Partial expectation of the position itself: shifted partial + r * pi."""
    if pi is None:
        pi = pi_analytic(params, n, r, mode)
    return position_shifted_partial_analytic(params, n, r, mode, corrected=corrected) + r * pi


def expected_records_analytic(params: ModelParams, n: int, mode=Mode.STRICT) -> ExactScalar:
    """``sum_{r=1}^n pi^(r)_n``, sharing one chain table across all r."""
    mode = Mode.parse(mode)
    S = chain_table(params, n, n, DenomKind.of(mode))
    fn = pi_strict if mode is Mode.STRICT else pi_weak
    return pairwise_sum(fn(params, n, r, table=S) for r in range(1, n + 1))


def _check(n: int, r: int) -> None:
    if n < 1 or not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
