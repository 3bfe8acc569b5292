"""Direct expansion of the record generating functions.

A word with at least ``r`` records splits uniquely as
``a_1 w_1 a_2 w_2 ... a_{r-1} w_{r-1} a_r w``: records ``a_k``, filler blocks
``w_k`` of non-records, and an arbitrary tail ``w``. In the trivariate series
``z`` counts letters, ``u`` the records before the r-th one and ``v`` the
filler letters before it, so the r-th record sits at position
``r + (v-degree)``.

Strict records with value i contribute ``1 + p q^(i-1) z u / (1 - (1-q^i) z v)``
for every value below the r-th record's value h. Weak records may repeat a
value and fillers must stay strictly below it, so value i contributes
``1 / (1 - p q^(i-1) z u / (1 - (1-q^(i-1)) z v))`` for every i <= h.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from ..model import Mode, ModelParams
from ..numeric import TruncatedSeries, binomial, exact
from .stats import truncation_bound


def _tri(terms: dict, N: int, R: int) -> TruncatedSeries:
    """Series in z (order N) over u (order R) over v (order N) from {(i,j,l): c}."""
    grid = [[[mpq(0)] * (N + 1) for _ in range(R + 1)] for _ in range(N + 1)]
    for (i, j, l), c in terms.items():
        if i <= N and j <= R and l <= N:
            grid[i][j][l] += c
    return TruncatedSeries(
        [TruncatedSeries([TruncatedSeries(vs) for vs in us]) for us in grid]
    )


def _factor(params: ModelParams, i: int, mode: Mode, N: int, R: int) -> TruncatedSeries:
    p, q = params.p, params.q
    c = p * q ** (i - 1)
    terms = {(0, 0, 0): mpq(1)}
    if mode is Mode.STRICT:
        y = 1 - q**i
        if R >= 1:
            for m in range(N):
                terms[(m + 1, 1, m)] = c * y**m
    else:
        # sum_e (c u z g)^e with g = 1/(1 - y z v); [ (zv)^m ] g^e = C(m+e-1, e-1) y^m
        y = 1 - q ** (i - 1)
        for e in range(1, R + 1):
            ce = c**e
            for m in range(N - e + 1):
                terms[(e + m, e, m)] = ce * binomial(m + e - 1, e - 1) * y**m
    return _tri(terms, N, R)


@dataclass
class GFTable:
    """Coefficients read off the expanded generating functions.

    ``pi[(n, r)][h]`` is the probability that the r-th record exists and has
    value h; ``sigma[(n, r)][j]`` that it exists at position j.
    """

    params: ModelParams
    mode: Mode
    n_max: int
    r_max: int
    H: int
    tail_bound: object
    pi: dict = field(default_factory=dict)
    sigma: dict = field(default_factory=dict)

    def prob(self, n: int, r: int):
        return sum(self.pi[(n, r)].values(), mpq(0))

    def value_partial(self, n: int, r: int):
        return sum((h * x for h, x in self.pi[(n, r)].items()), mpq(0))

    def position_partial(self, n: int, r: int):
        return sum((j * x for j, x in self.sigma[(n, r)].items()), mpq(0))


def gf_expand(params: ModelParams, n_max: int, r_max: int, mode=Mode.STRICT, H: Optional[int] = None,
              *, epsilon=None) -> GFTable:
    """Expand the generating functions, summing record values ``h <= H``.

    The dropped part consists of words whose r-th record exceeds ``H``, so its
    effect is bounded by the same truncation bound as the word oracles with
    cutoff ``H``. Raises ``ValueError`` if that bound exceeds ``epsilon``.
    """
    mode = Mode.parse(mode)
    if r_max < 1 or n_max < 1:
        raise ValueError("need n_max >= 1 and r_max >= 1")
    if H is None:
        H = r_max
    if H < r_max:
        raise ValueError(f"cutoff H={H} must be >= r_max={r_max}")
    tail = truncation_bound(params, n_max, H)
    if epsilon is not None and tail > exact(epsilon):
        raise ValueError(f"cutoff H={H} too small: tail bound {tail} exceeds {epsilon}")

    N, R = n_max, r_max - 1
    p, q = params.p, params.q
    table = GFTable(params=params, mode=mode, n_max=n_max, r_max=r_max, H=H, tail_bound=tail)
    for n in range(1, N + 1):
        for r in range(1, r_max + 1):
            table.pi[(n, r)] = {}
            table.sigma[(n, r)] = {}

    prod = _tri({(0, 0, 0): mpq(1)}, N, R)
    for h in range(1, H + 1):
        if mode is Mode.WEAK:
            prod = prod * _factor(params, h, mode, N, R)
        # the r-th record itself: z p q^(h-1); shift z by one
        term = prod.shift(1) * (p * q ** (h - 1))
        # multiply by 1/(1-z): running sums over the z index
        running = [[mpq(0)] * (N + 1) for _ in range(R + 1)]
        for n in range(1, N + 1):
            zc = term.coeffs[n]
            for j in range(R + 1):
                vs = zc.coeffs[j].coeffs
                for l in range(N + 1):
                    running[j][l] += vs[l]
                r = j + 1
                mass = sum(running[j], mpq(0))
                if mass and r <= n:
                    table.pi[(n, r)][h] = mass
                for l, x in enumerate(running[j]):
                    if x:
                        sig = table.sigma[(n, r)]
                        sig[l + r] = sig.get(l + r, mpq(0)) + x
        if mode is Mode.STRICT:
            prod = prod * _factor(params, h, mode, N, R)
    for key in table.sigma:
        table.sigma[key] = dict(sorted(table.sigma[key].items()))
    return table
