"""Result containers and truncation bookkeeping for the oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from ..model import Mode, ModelParams
from ..numeric import ExactScalar, exact

DEFAULT_EPS = mpq(1, 10**12)


def truncation_bound(params: ModelParams, n: int, M: int) -> ExactScalar:
    """Certified bound on what dropping letters above ``M`` can change.

    ``n q^M`` bounds the omitted probability mass. The r-th record value is at
    most the largest letter, and E[X 1{X > M}] = q^M (M + 1/p), so the value
    partial moves by at most ``n q^M (M + 1/p)``; positions are at most ``n``.
    The returned bound covers all three scalar statistics.
    """
    q = params.q
    return n * q**M * max(mpq(n), M + 1 / params.p)


def choose_cutoff(params: ModelParams, n: int, eps=DEFAULT_EPS) -> int:
    """Least M >= 1 whose truncation bound is at most ``eps``."""
    eps = exact(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    M = 1
    while truncation_bound(params, n, M) > eps:
        M += 1
        if M > 100_000:
            raise ValueError(f"epsilon {eps} unreachable within the cutoff budget")
    return M


@dataclass(frozen=True)
class TailBound:
    epsilon: ExactScalar
    cutoff_M: Optional[int] = None
    cutoff_H: Optional[int] = None


@dataclass
class RecordStatistics:
    """Exact statistics of the r-th record for words of length n.

    ``value_partial`` and ``position_partial`` are expectations against the
    unnormalised measure restricted to words having at least ``r`` records;
    the conditional versions divide by ``prob_at_least_r``.

    ``tail_bound`` bounds the error of the three scalar statistics caused by
    truncation. ``value_dist`` may be cut off at some value; ``value_dist_tail``
    bounds the mass it leaves out on top of ``tail_bound``.
    """

    params: ModelParams
    n: int
    r: int
    mode: Mode
    prob_at_least_r: ExactScalar
    value_partial: ExactScalar
    position_partial: ExactScalar
    value_dist: dict = field(default_factory=dict)
    position_dist: dict = field(default_factory=dict)
    tail_bound: ExactScalar = mpq(0)
    value_dist_tail: ExactScalar = mpq(0)
    cutoff: Optional[int] = None
    method: str = ""

    @property
    def value_conditional(self) -> Optional[ExactScalar]:
        if self.prob_at_least_r == 0:
            return None
        return self.value_partial / self.prob_at_least_r

    @property
    def position_conditional(self) -> Optional[ExactScalar]:
        if self.prob_at_least_r == 0:
            return None
        return self.position_partial / self.prob_at_least_r

    def summary(self) -> dict:
        return {
            "method": self.method,
            "cutoff": self.cutoff,
            "pi": self.prob_at_least_r,
            "value_partial": self.value_partial,
            "position_partial": self.position_partial,
            "value_conditional": self.value_conditional,
            "position_conditional": self.position_conditional,
            "tail_bound": self.tail_bound,
        }
