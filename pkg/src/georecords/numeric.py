"""Exact arithmetic substrate: GMP rationals, binomials and truncated power series.

Scalars are ``gmpy2.mpq`` values. They compare and hash equal to
``fractions.Fraction`` and mix freely with ``int``; arithmetic stays exact.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "ExactScalar",
    "exact",
    "binomial",
    "pairwise_sum",
    "TruncatedSeries",
    "series_mul",
    "geometric_factor",
]

ExactScalar = type(mpq())


def exact(x) -> ExactScalar:
    """Convert ``x`` to an exact rational.

    Accepts ints, rationals (``Fraction``/``mpq``) and strings such as
    ``"2/5"`` or ``"0.4"``. Decimal strings are converted exactly. Floats are
    refused: a binary float is almost never the rational the caller meant.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                den_i = int(den)
                if den_i == 0:
                    raise ZeroDivisionError
                return mpq(int(num), den_i)
            f = Fraction(Decimal(s))
        except (ValueError, ArithmeticError) as exc:
            raise ValueError(f"cannot parse {x!r} as a rational") from exc
        return mpq(f.numerator, f.denominator)
    raise TypeError(f"refusing inexact value {x!r} of type {type(x).__name__}")


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def pairwise_sum(terms: Iterable):
    """Sum exact terms as a balanced tree.

    Adding rationals with unrelated huge denominators one at a time makes every
    partial sum as large as the final one; a balanced tree keeps operands of
    comparable size and is much faster for long alternating sums.
    """
    xs = list(terms)
    if not xs:
        return mpq(0)
    while len(xs) > 1:
        nxt = [xs[i] + xs[i + 1] for i in range(0, len(xs) - 1, 2)]
        if len(xs) % 2:
            nxt.append(xs[-1])
        xs = nxt
    return xs[0]


def _is_zero(c) -> bool:
    if isinstance(c, TruncatedSeries):
        return all(_is_zero(x) for x in c.coeffs)
    return c == 0


class TruncatedSeries:
    """Formal power series ``sum c_m w^m`` known exactly for ``m <= order``.

    Coefficients are exact scalars, or themselves ``TruncatedSeries`` for
    multivariate series (series in z over series in u, ...). Instances are
    immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        zero = c * 0
        return cls([c] + [zero] * order)

    @classmethod
    def monomial(cls, c, degree: int, order: int, zero=None) -> "TruncatedSeries":
        """``c * w**degree`` truncated at ``order``."""
        zero = c * 0 if zero is None else zero
        out = [zero] * (order + 1)
        if degree <= order:
            out[degree] = c
        return cls(out)

    def coeff(self, m: int):
        if m < 0:
            raise IndexError("negative coefficient index")
        if m > self.order:
            raise IndexError(f"coefficient {m} lies beyond truncation order {self.order}")
        return self.coeffs[m]

    __getitem__ = coeff

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "TruncatedSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"mismatched truncation orders {self.order} and {other.order}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])
        if isinstance(other, int) and other == 0:
            return self
        return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries([a * other for a in self.coeffs])

    def __rmul__(self, other):
        return TruncatedSeries([other * a for a in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r})"

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``w**k`` (k >= 0), dropping what falls past the order."""
        if k < 0:
            raise ValueError("negative shift")
        zero = self.coeffs[0] * 0
        return TruncatedSeries(([zero] * k + list(self.coeffs))[: self.order + 1])

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be an invertible scalar."""
        c0 = self.coeffs[0]
        if isinstance(c0, TruncatedSeries) or c0 == 0:
            raise ZeroDivisionError("constant term is not an invertible scalar")
        inv0 = 1 / c0
        out = [inv0]
        for m in range(1, self.order + 1):
            acc = sum((self.coeffs[i] * out[m - i] for i in range(1, m + 1)), self.coeffs[0] * 0)
            out.append(-acc * inv0)
        return TruncatedSeries(out)

    def is_zero(self) -> bool:
        return _is_zero(self)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    if a.order != b.order:
        raise ValueError(f"mismatched truncation orders {a.order} and {b.order}")
    ac, bc = a.coeffs, b.coeffs
    nz_a = [i for i, c in enumerate(ac) if not _is_zero(c)]
    nz_b = [j for j, c in enumerate(bc) if not _is_zero(c)]
    zero = ac[0] * bc[0] * 0
    out = [zero] * (a.order + 1)
    for i in nz_a:
        ai = ac[i]
        for j in nz_b:
            m = i + j
            if m > a.order:
                break
            out[m] = out[m] + ai * bc[j]
    return TruncatedSeries(out)


def geometric_factor(a, N: int) -> TruncatedSeries:
    """``1 / (1 - a w)`` to order ``N``: coefficients ``a**m``."""
    if N < 0:
        raise ValueError("order must be non-negative")
    a = exact(a)
    out = [mpq(1)]
    for _ in range(N):
        out.append(out[-1] * a)
    return TruncatedSeries(out)
