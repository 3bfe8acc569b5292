"""Record extraction and brute-force enumeration oracles."""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from functools import lru_cache
from typing import Optional

from gmpy2 import mpq

from ..model import Mode, ModelParams, RecordQuery
from .stats import RecordStatistics, truncation_bound

DEFAULT_WORD_BUDGET = 2_000_000


def records_of_word(word, mode=Mode.STRICT) -> list[tuple[int, int]]:
    """All left-to-right maxima of ``word`` as ``(position, value)``, 1-based.

    >>> records_of_word([3, 1, 4, 1, 5])
    [(1, 3), (3, 4), (5, 5)]
    """
    mode = Mode.parse(mode)
    if len(word) == 0:
        raise ValueError("empty word has no records")
    out = []
    best = None
    for j, x in enumerate(word, start=1):
        if x < 1:
            raise ValueError(f"letters must be positive integers, got {x}")
        if best is None or x > best or (mode is Mode.WEAK and x == best):
            out.append((j, x))
            best = x
    return out


def _rth_records_both_modes(word, r_max):
    """(strict, weak) lists of the first ``r_max`` records, computed in one pass."""
    strict, weak = [], []
    best = 0
    for j, x in enumerate(word, start=1):
        if x > best:
            if len(strict) < r_max:
                strict.append((j, x))
            if len(weak) < r_max:
                weak.append((j, x))
            best = x
        elif x == best and len(weak) < r_max:
            weak.append((j, x))
    return strict, weak


@lru_cache(maxsize=32)
def _literal_tables(p, n: int, M: int):
    """Integer-weighted sums over all M^n words, for every (mode, r)."""
    a, b = int(p.numerator), int(p.denominator)
    c = b - a
    w = [0] + [a * c ** (x - 1) * b ** (M - x) for x in range(1, M + 1)]
    tables = {
        mode: defaultdict(lambda: [0, 0, 0, Counter(), Counter()]) for mode in Mode
    }
    for word in itertools.product(range(1, M + 1), repeat=n):
        weight = 1
        for x in word:
            weight *= w[x]
        strict, weak = _rth_records_both_modes(word, n)
        for mode, recs in ((Mode.STRICT, strict), (Mode.WEAK, weak)):
            for r, (j, h) in enumerate(recs, start=1):
                acc = tables[mode][r]
                acc[0] += weight
                acc[1] += weight * h
                acc[2] += weight * j
                acc[3][h] += weight
                acc[4][j] += weight
    denom = b ** (M * n)
    return {mode: dict(t) for mode, t in tables.items()}, denom


def _literal_oracle(params, query, M, budget):
    n, r, mode = query.n, query.r, query.mode
    if M < 1:
        raise ValueError("cutoff M must be >= 1")
    if M**n > budget:
        raise MemoryError(f"{M}^{n} words exceed the enumeration budget of {budget}")
    tables, denom = _literal_tables(params.p, n, M)
    acc = tables[mode].get(r)
    if acc is None:
        pi = vp = pp = mpq(0)
        vdist, pdist = {}, {}
    else:
        pi = mpq(acc[0], denom)
        vp = mpq(acc[1], denom)
        pp = mpq(acc[2], denom)
        vdist = {h: mpq(v, denom) for h, v in sorted(acc[3].items())}
        pdist = {j: mpq(v, denom) for j, v in sorted(acc[4].items())}
    return RecordStatistics(
        params=params, n=n, r=r, mode=mode,
        prob_at_least_r=pi, value_partial=vp, position_partial=pp,
        value_dist=vdist, position_dist=pdist,
        tail_bound=truncation_bound(params, n, M),
        cutoff=M, method="enumerate-words",
    )


@lru_cache(maxsize=8)
def pattern_counts(n_max: int, r_max: int):
    """Count order patterns of prefixes ending at the r-th record.

    A word's records depend only on its order pattern: which positions share a
    level and how levels compare. Prefixes are grown letter by letter; a state
    is the composition ``c`` (multiplicity of each level, lowest level first)
    with the strict and weak record counts so far. Identical states are merged
    with multiplicities, so every pattern is counted exactly once.

    Returns ``{(mode, r): Counter({c: number of patterns})}``; the r-th record
    sits at position ``sum(c)`` on the top level ``len(c)``.
    """
    out = {(mode, r): Counter() for mode in Mode for r in range(1, r_max + 1)}
    layer = Counter({((1,), 1, 1): 1})
    out[(Mode.STRICT, 1)][(1,)] += 1
    out[(Mode.WEAK, 1)][(1,)] += 1
    for _ in range(2, n_max + 1):
        nxt = Counter()
        for (c, s, w), mult in layer.items():
            d = len(c)
            moves = []
            for i in range(d):
                moves.append((c[:i] + (c[i] + 1,) + c[i + 1:], False, i == d - 1))
            for g in range(d + 1):
                moves.append((c[:g] + (1,) + c[g:], g == d, g == d))
            for c2, srec, wrec in moves:
                s2 = s + srec
                w2 = w + wrec
                if srec and s2 <= r_max:
                    out[(Mode.STRICT, s2)][c2] += mult
                if wrec and w2 <= r_max:
                    out[(Mode.WEAK, w2)][c2] += mult
                if s2 < r_max or w2 < r_max:
                    nxt[(c2, min(s2, r_max), min(w2, r_max))] += mult
        layer = nxt
    return out


def _pattern_weight(q, c):
    """Probability of a fixed prefix pattern over the infinite alphabet,
    without the p^len factor, and the mean extra value of the top level.

    With gaps g_i >= 0 between consecutive levels, the sum over all value
    assignments factorises into geometric series with ratios q^(tail count).
    """
    weight = mpq(1)
    shift = 0
    extra = mpq(0)
    tail = 0
    for i in range(len(c) - 1, -1, -1):
        tail += c[i]
        x = q**tail
        weight /= 1 - x
        extra += x / (1 - x)
        shift += c[i] * i
    return weight * q**shift, extra


def _pattern_oracle(params, query):
    n, r, mode = query.n, query.r, query.mode
    counts = pattern_counts(n, r)[(mode, r)]
    p, q = params.p, params.q
    pi = vp = pp = mpq(0)
    pdist = defaultdict(lambda: mpq(0))
    for c, mult in counts.items():
        j = sum(c)
        if j > n:
            continue
        weight, extra = _pattern_weight(q, c)
        prob = mult * p**j * weight
        pi += prob
        vp += prob * (len(c) + extra)
        pp += prob * j
        pdist[j] += prob
    return RecordStatistics(
        params=params, n=n, r=r, mode=mode,
        prob_at_least_r=pi, value_partial=vp, position_partial=pp,
        value_dist={}, position_dist=dict(sorted(pdist.items())),
        tail_bound=mpq(0), value_dist_tail=pi,
        cutoff=None, method="enumerate-patterns",
    )


def enumerate_oracle(
    params: ModelParams,
    query: RecordQuery,
    M: Optional[int] = None,
    *,
    budget: int = DEFAULT_WORD_BUDGET,
) -> RecordStatistics:
    """Brute-force ground truth.

    With an integer ``M`` every one of the ``M**n`` words over ``{1..M}`` is
    visited and weighted by its probability; the omitted words are covered by
    ``tail_bound``. With ``M=None`` the enumeration runs over order patterns
    instead and sums the letter values in closed form, so the scalar
    statistics are exact for the unbounded alphabet (``tail_bound == 0``);
    ``value_dist`` is then left empty.
    """
    if M is None:
        return _pattern_oracle(params, query)
    return _literal_oracle(params, query, M, budget)
