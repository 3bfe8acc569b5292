"""Monte Carlo estimates of record statistics from simulated geometric words.

Trials are split into blocks whose size depends only on the word length.
Block ``b`` draws from a Philox generator seeded with
``SeedSequence(seed, spawn_key=(b,))``, so results do not depend on how the
blocks are spread across threads. Blocks report integer sums, which merge
exactly.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import Mode, ModelParams, RecordQuery

BLOCK_CELLS = 1 << 20
THREADS_ENV = "GEORECORDS_THREADS"
RNG_DESCRIPTION = "numpy Philox4x64 via SeedSequence(seed, spawn_key=(block,))"

_TINY = np.nextafter(0.0, 1.0)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    ci95_low: float
    ci95_high: float
    trials: int
    conditioning_count: int
    available: bool = True

    @classmethod
    def unavailable(cls, trials: int) -> "McEstimate":
        nan = float("nan")
        return cls(nan, nan, nan, nan, trials, 0, available=False)


@dataclass(frozen=True)
class McAccumulator:
    """Integer sufficient statistics of a batch of trials; ``+`` merges batches."""

    trials: int = 0
    hits: int = 0
    value_sum: int = 0
    value_sumsq: int = 0
    position_sum: int = 0
    position_sumsq: int = 0

    def __add__(self, other: "McAccumulator") -> "McAccumulator":
        return McAccumulator(*(a + b for a, b in zip(self._fields(), other._fields())))

    def _fields(self):
        return (self.trials, self.hits, self.value_sum, self.value_sumsq,
                self.position_sum, self.position_sumsq)

    def estimates(self) -> tuple[McEstimate, McEstimate, McEstimate]:
        pi = _estimate(self.hits, self.hits, self.trials, self.trials)
        if self.hits == 0:
            return pi, McEstimate.unavailable(self.trials), McEstimate.unavailable(self.trials)
        value = _estimate(self.value_sum, self.value_sumsq, self.hits, self.trials)
        position = _estimate(self.position_sum, self.position_sumsq, self.hits, self.trials)
        return pi, value, position


def _estimate(s: int, ss: int, count: int, trials: int) -> McEstimate:
    mean = s / count
    if count > 1:
        # exact integer numerator avoids cancellation in the variance
        var = (count * ss - s * s) / (count * (count - 1))
    else:
        var = 0.0
    se = math.sqrt(max(var, 0.0) / count)
    return McEstimate(mean, se, mean - 1.96 * se, mean + 1.96 * se, trials, count)


def letters_from_uniform(u, q):
    """Inverse transform ``1 + floor(ln u / ln q)``; ``u == 0`` maps to the
    smallest positive double."""
    u = np.where(np.asarray(u, dtype=float) <= 0.0, _TINY, u)
    k = 1 + np.floor(np.log(u) / math.log(q))
    return k.astype(np.int64)


def sample_word(params: ModelParams, n: int, rng: np.random.Generator) -> list[int]:
    """n i.i.d. geometric letters drawn from ``rng``."""
    return letters_from_uniform(rng.random(n), float(params.q)).tolist()


def rth_records(words: np.ndarray, r: int, mode=Mode.STRICT):
    """For each row: (has r-th record, its value, its 1-based position)."""
    mode = Mode.parse(mode)
    prev = np.zeros_like(words)
    np.maximum.accumulate(words[:, :-1], axis=1, out=prev[:, 1:])
    rec = words > prev if mode is Mode.STRICT else words >= prev
    cnt = np.cumsum(rec, axis=1)
    has = cnt[:, -1] >= r
    idx = np.argmax(cnt >= r, axis=1)
    value = words[np.arange(len(words)), idx]
    return has, value, idx + 1


def _block_rows(n: int) -> int:
    return max(1, BLOCK_CELLS // n)


def _run_block(q: float, n: int, r: int, mode: Mode, rows: int, seed: int, index: int) -> McAccumulator:
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    rng = np.random.Generator(np.random.Philox(ss))
    words = letters_from_uniform(rng.random((rows, n)), q)
    has, value, pos = rth_records(words, r, mode)
    v = value[has].astype(object)
    j = pos[has].astype(object)
    return McAccumulator(
        trials=rows,
        hits=int(has.sum()),
        value_sum=int(v.sum()) if len(v) else 0,
        value_sumsq=int((v * v).sum()) if len(v) else 0,
        position_sum=int(j.sum()) if len(j) else 0,
        position_sumsq=int((j * j).sum()) if len(j) else 0,
    )


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def mc_accumulate(params: ModelParams, query: RecordQuery, trials: int, seed: int,
                  *, threads: Optional[int] = None) -> McAccumulator:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n, r, mode = query.n, query.r, query.mode
    rows = _block_rows(n)
    nblocks = -(-trials // rows)
    sizes = [rows] * (nblocks - 1) + [trials - rows * (nblocks - 1)]
    q = float(params.q)
    threads = threads or default_threads()
    args = [(q, n, r, mode, size, seed, b) for b, size in enumerate(sizes)]
    if threads == 1 or nblocks == 1:
        parts = [_run_block(*a) for a in args]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda a: _run_block(*a), args))
    total = McAccumulator()
    for part in parts:
        total = total + part
    return total


def mc_estimate(params: ModelParams, query: RecordQuery, trials: int, seed: int,
                *, threads: Optional[int] = None) -> tuple[McEstimate, McEstimate, McEstimate]:
    """Estimate (pi, conditional value, conditional position) of the r-th record.

    Value and position are averaged over the trials that have at least r
    records; if there are none they are returned as unavailable.
    """
    return mc_accumulate(params, query, trials, seed, threads=threads).estimates()
