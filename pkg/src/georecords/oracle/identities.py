"""Exact left-hand sides of the nested q-sum coefficient identities.

The sums ``sum_{1 <= i_1 < ... < i_s} A_1(w q^{i_1}) ... A_s(w q^{i_s})`` (and
the non-strict ``0 <= i_1 <= ... <= i_s`` variant) are expanded as truncated
series in ``w`` whose coefficients are exponential polynomials in the
summation index, ``sum_x c_x x^i``. Inner indices are summed in closed form
one at a time, innermost first, so nothing is truncated in the index.
"""

from __future__ import annotations

from typing import Optional, Sequence

from gmpy2 import mpq

from ..numeric import TruncatedSeries, exact


class ExpPoly:
    """Finite combination ``i -> sum_x c_x * x**i`` with exact bases."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {x: c for x, c in (terms or {}).items() if c != 0}

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.terms)
        for x, c in other.terms.items():
            out[x] = out.get(x, 0) + c
        return ExpPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly({x: -c for x, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            return ExpPoly({x: c * other for x, c in self.terms.items()})
        out = {}
        for x, c in self.terms.items():
            for y, d in other.terms.items():
                out[x * y] = out.get(x * y, 0) + c * d
        return ExpPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if isinstance(other, ExpPoly):
            return self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __call__(self, i: int):
        return sum((c * x**i for x, c in self.terms.items()), mpq(0))

    def prefix_sum(self, lo: int, inclusive: bool) -> "ExpPoly":
        """``i -> sum_{i'=lo}^{i-1} f(i')`` (or up to ``i`` when inclusive)."""
        out = {}
        for x, c in self.terms.items():
            if x == 1:
                raise ValueError("constant base would make the prefix sum polynomial in i")
            k = c / (1 - x)
            out[mpq(1)] = out.get(mpq(1), 0) + k * x**lo
            out[x] = out.get(x, 0) - (k * x if inclusive else k)
        return ExpPoly(out)

    def total(self, lo: int, weight: Optional[str] = None):
        """``sum_{i >= lo} f(i) * weight(i)`` with weight 1, ``i`` or ``i+1``."""
        acc = mpq(0)
        for x, c in self.terms.items():
            if not abs(x) < 1:
                raise ValueError(f"divergent base {x}")
            plain = x**lo / (1 - x)
            linear = x**lo * (lo / (1 - x) + x / (1 - x) ** 2)
            if weight is None:
                acc += c * plain
            elif weight == "i":
                acc += c * linear
            elif weight == "i+1":
                acc += c * (linear + plain)
            else:
                raise ValueError(f"unknown weight {weight!r}")
        return acc


def _scaled(coeffs: Sequence, q, n: int) -> TruncatedSeries:
    """``A(w q^i)`` as a series in w with ExpPoly coefficients in i."""
    out = []
    for m in range(n + 1):
        a = coeffs[m] if m < len(coeffs) else 0
        out.append(ExpPoly({q**m: exact(a)}) if a else ExpPoly())
    if out[0] != 0:
        raise ValueError("series must have zero constant term")
    return TruncatedSeries(out)


def nested_index_sum_coeff(seqs: Sequence[Sequence], n: int, q, *, weak: bool = False,
                           weight: Optional[str] = None):
    """``[w^n]`` of the nested index sum, exactly.

    ``seqs[j]`` holds the coefficients ``a_0, a_1, ...`` of ``A^{(j+1)}``.
    Strict: ``1 <= i_1 < ... < i_s``. Weak: ``0 <= i_1 <= ... <= i_s``.
    ``weight`` multiplies every term by ``i_s`` (``"i"``) or ``i_s + 1``
    (``"i+1"``).
    """
    q = exact(q)
    lo = 0 if weak else 1
    F = _scaled(seqs[0], q, n)
    for coeffs in seqs[1:]:
        G = TruncatedSeries([c.prefix_sum(lo, inclusive=weak) for c in F.coeffs])
        F = G * _scaled(coeffs, q, n)
    return F.coeffs[n].total(lo, weight)
