"""Leading-order large-n behaviour of the record statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import mpmath
from gmpy2 import mpq

from .model import Mode, ModelParams
from .numeric import ExactScalar

# working precision for log_Q n, in bits
PRECISION_BITS = 160

O_INV_N = "O(1/n)"
O_LOG = "O(log^(r-2) n)"


@dataclass(frozen=True)
class AsymptoticPrediction:
    leading: Union[ExactScalar, mpmath.mpf]
    error_order: str
    mode: Mode
    statistic: str  # "value" | "position" | "pi"

    def __float__(self):
        return float(self.leading)


def value_limit(params: ModelParams, r: int, mode=Mode.STRICT, corrected: bool = True) -> AsymptoticPrediction:
    """Limit of the conditional mean value of the r-th record.

    Strict records: ``r/p``. Weak records: ``1 + r q/p``; ``corrected=False``
    returns ``r q/p``, the limit of the mean of ``value - 1``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    mode = Mode.parse(mode)
    p, q = params.p, params.q
    if mode is Mode.STRICT:
        lead = r / p
    else:
        lead = r * q / p + (1 if corrected else 0)
    return AsymptoticPrediction(mpq(lead), O_INV_N, mode, "value")


def log_Q(params: ModelParams, n: int) -> mpmath.mpf:
    with mpmath.workprec(PRECISION_BITS):
        Q = params.Q
        return mpmath.log(n) / mpmath.log(mpmath.mpf(int(Q.numerator)) / int(Q.denominator))


def position_leading(params: ModelParams, n: int, r: int, mode=Mode.STRICT) -> AsymptoticPrediction:
    """Leading term of the mean position of the r-th record.

    ``(c log_Q n)^(r-1) / (r-1)!`` with ``c = p/q`` (strict) or ``c = p`` (weak).
    """
    if n < 2:
        raise ValueError("position asymptotics need n >= 2")
    if r < 1:
        raise ValueError("r must be >= 1")
    mode = Mode.parse(mode)
    p, q = params.p, params.q
    c = p / q if mode is Mode.STRICT else p
    if r == 1:
        return AsymptoticPrediction(mpq(1), O_LOG, mode, "position")
    with mpmath.workprec(PRECISION_BITS):
        x = mpmath.mpf(int(c.numerator)) / int(c.denominator) * log_Q(params, n)
        lead = x ** (r - 1) / math.factorial(r - 1)
    return AsymptoticPrediction(lead, O_LOG, mode, "position")


def pi_limit(r: int) -> AsymptoticPrediction:
    """At least r records become certain: limit 1 with an O(1/n) correction."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return AsymptoticPrediction(mpq(1), O_INV_N, Mode.STRICT, "pi")
