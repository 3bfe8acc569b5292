from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from georecords.numeric import (
    TruncatedSeries,
    binomial,
    exact,
    geometric_factor,
    pairwise_sum,
    series_mul,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=20).map(exact)


def series_of(order):
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(TruncatedSeries)


@pytest.mark.parametrize("n,k,expected", [(5, 2, 10), (7, 0, 1), (4, 9, 0), (4, -1, 0)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_pascal():
    for n in range(1, 31):
        for k in range(0, n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_series_mul_examples():
    one_plus = TruncatedSeries([1, 1, 0])
    one_minus = TruncatedSeries([1, -1, 0])
    assert series_mul(one_plus, one_minus).coeffs == (1, 0, -1)
    assert series_mul(TruncatedSeries([1, 1, 1]), TruncatedSeries([1, 0, 0])).coeffs == (1, 1, 1)
    w = TruncatedSeries([0, 1])
    assert series_mul(w, w).coeffs == (0, 0)


def test_series_mul_rejects_mismatched_orders():
    with pytest.raises(ValueError):
        series_mul(TruncatedSeries([1, 2]), TruncatedSeries([1, 2, 3]))


def test_coefficient_beyond_order_is_an_error():
    with pytest.raises(IndexError):
        TruncatedSeries([1, 2]).coeff(2)


@pytest.mark.parametrize(
    "a,N,expected",
    [
        (Fraction(1, 2), 3, [1, Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]),
        (0, 2, [1, 0, 0]),
        (1, 2, [1, 1, 1]),
    ],
)
def test_geometric_factor_examples(a, N, expected):
    assert list(geometric_factor(a, N).coeffs) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8).flatmap(lambda N: st.tuples(series_of(N), series_of(N), series_of(N))))
def test_ring_laws(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(rationals, st.integers(0, 10))
def test_geometric_factor_inverts_one_minus_aw(a, N):
    g = geometric_factor(a, N)
    lin = TruncatedSeries([mpq(1), -a] + [mpq(0)] * (N - 1)) if N >= 1 else TruncatedSeries([mpq(1)])
    prod = g * lin
    assert prod.coeffs == tuple([1] + [0] * N)


def test_inverse_matches_geometric_factor():
    a = mpq(2, 7)
    lin = TruncatedSeries([mpq(1), -a, 0, 0, 0])
    assert lin.inverse() == geometric_factor(a, 4)


def test_nested_series_multiply_like_polynomials():
    # (1 + u z)^2 in z over u, both truncated at order 2
    u = lambda *c: TruncatedSeries([mpq(x) for x in c])  # noqa: E731
    f = TruncatedSeries([u(1, 0, 0), u(0, 1, 0), u(0, 0, 0)])
    sq = f * f
    assert sq.coeffs[1] == u(0, 2, 0)
    assert sq.coeffs[2] == u(0, 0, 1)


def test_exact_parsing():
    assert exact("2/5") == Fraction(2, 5)
    assert exact("0.4") == Fraction(2, 5)
    assert exact(Fraction(1, 3)) == mpq(1, 3)
    with pytest.raises(TypeError):
        exact(0.5)
    with pytest.raises(ValueError):
        exact("one half")
    with pytest.raises(ValueError):
        exact("1/0")


def test_pairwise_sum_is_exact():
    terms = [mpq(1, 2**k - 1) * (-1) ** k for k in range(2, 60)]
    total = mpq(0)
    for t in terms:
        total += t
    assert pairwise_sum(terms) == total
    assert pairwise_sum([]) == 0
