"""Polynomial-time exact oracle: dynamic programming over the running maximum.

All letters are restricted to ``1..M``. With ``p = a/b`` every letter weight
``p q^(x-1)`` is written over the common denominator ``b^M`` so the whole
recursion runs on Python integers; after ``t`` letters every mass sits over
``b^(M t)``. Rationals are only formed at the end.
"""

from __future__ import annotations

from typing import Optional

from gmpy2 import mpq

from ..model import Mode, ModelParams, RecordQuery
from .stats import DEFAULT_EPS, RecordStatistics, choose_cutoff, truncation_bound


def _letter_weights(params: ModelParams, M: int):
    a, b = int(params.p.numerator), int(params.p.denominator)
    c = b - a
    w = [0] + [a * c ** (x - 1) * b ** (M - x) for x in range(1, M + 1)]
    W = b**M - c**M
    cum = [0] * (M + 1)
    for x in range(1, M + 1):
        cum[x] = cum[x - 1] + w[x]
    return w, W, cum, b


def dp_oracle(
    params: ModelParams,
    query: RecordQuery,
    M: Optional[int] = None,
    *,
    eps=DEFAULT_EPS,
) -> RecordStatistics:
    """Exact statistics of the r-th record on the alphabet ``1..M``.

    States are (current maximum m, records seen s < r). When the r-th record
    appears its mass is moved into the (value, position) bins and the rest of
    the word only contributes the factor ``(1 - q^M)`` per remaining letter.
    Cost is O(n M r) integer operations. If ``M`` is omitted the least cutoff
    meeting ``eps`` is used.
    """
    n, r, mode = query.n, query.r, query.mode
    if M is None:
        M = choose_cutoff(params, n, eps)
    if M < 1:
        raise ValueError("cutoff M must be >= 1")
    weak = mode is Mode.WEAK
    w, W, cum, b = _letter_weights(params, M)
    # letters that leave a current maximum m unchanged and are not records
    stay = [0] + [cum[m - 1] if weak else cum[m] for m in range(1, M + 1)]

    val = [0] * (M + 1)
    pos = [0] * (n + 1)
    states: dict[int, list[int]] = {}
    if r == 1:
        for x in range(1, M + 1):
            val[x] = w[x]
        pos[1] = W
    else:
        states[1] = w[:]

    for t in range(2, n + 1):
        if any(val):
            val = [v * W for v in val]
        new: dict[int, list[int]] = {}
        absorbed = 0
        for s, old in states.items():
            keep = new.setdefault(s, [0] * (M + 1))
            for m in range(1, M + 1):
                if old[m]:
                    keep[m] += old[m] * stay[m]
            run = 0
            for x in range(1, M + 1):
                if weak:
                    run += old[x]
                mass = w[x] * run
                if not weak:
                    run += old[x]
                if not mass:
                    continue
                if s + 1 == r:
                    val[x] += mass
                    absorbed += mass
                else:
                    up = new.setdefault(s + 1, [0] * (M + 1))
                    up[x] += mass
        pos[t] = absorbed
        states = new

    # bring position bins from denominator b^(M t) to b^(M n)
    power = 1
    for t in range(n, 0, -1):
        pos[t] *= power
        power *= W

    denom = b ** (M * n)
    pi_num = sum(val)
    return RecordStatistics(
        params=params, n=n, r=r, mode=mode,
        prob_at_least_r=mpq(pi_num, denom),
        value_partial=mpq(sum(h * v for h, v in enumerate(val)), denom),
        position_partial=mpq(sum(j * v for j, v in enumerate(pos)), denom),
        value_dist={h: mpq(v, denom) for h, v in enumerate(val) if v},
        position_dist={j: mpq(v, denom) for j, v in enumerate(pos) if v},
        tail_bound=truncation_bound(params, n, M),
        cutoff=M,
        method="dp",
    )


def dp_expected_records(params: ModelParams, n: int, mode=Mode.STRICT, M: Optional[int] = None,
                        *, eps=DEFAULT_EPS):
    """Expected number of records in a word of length ``n`` (letters <= M).

    Returns ``(expectation, tail_bound)``. The count never exceeds ``n`` so the
    omitted words change it by at most ``n * n q^M``.
    """
    mode = Mode.parse(mode)
    if M is None:
        M = choose_cutoff(params, n, eps / n)
    w, W, cum, b = _letter_weights(params, M)
    weak = mode is Mode.WEAK
    # a record from maximum m: letters > m (strict) or >= m (weak)
    rec = [0] + [W - (cum[m - 1] if weak else cum[m]) for m in range(1, M + 1)]
    mx = w[:]
    total = W
    for _ in range(2, n + 1):
        step = sum(mx[m] * rec[m] for m in range(1, M + 1) if mx[m])
        total = total * W + step
        new = [0] * (M + 1)
        run = 0
        for m in range(1, M + 1):
            new[m] = mx[m] * cum[m] + w[m] * run
            run += mx[m]
        mx = new
    denom = b ** (M * n)
    return mpq(total, denom), n * n * params.q**M
