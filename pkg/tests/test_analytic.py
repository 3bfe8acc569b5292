import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from georecords import Mode, ModelParams, RecordQuery
from georecords.analytic import (
    DenomKind,
    chain_table,
    expected_records_analytic,
    nested_sum_S,
    pi_analytic,
    pi_strict,
    pi_weak,
    position_f,
    position_partial_analytic,
    position_shifted_partial_analytic,
    t_linear_product,
    value_partial_analytic,
)
from georecords.numeric import TruncatedSeries, exact
from georecords.oracle import dp_oracle

HALF = ModelParams("1/2")
GRID = [ModelParams(p) for p in ("1/2", "1/3", "2/5")]


@pytest.mark.parametrize(
    "r,k,kind,expected",
    [
        (2, 2, DenomKind.STRICT_Q, mpq(1, 3)),
        (3, 3, DenomKind.STRICT_Q, mpq(1, 21)),
        (2, 3, DenomKind.WEAK_Q, mpq(16, 7)),
        (1, 1, DenomKind.STRICT_Q, mpq(1)),
        (1, 4, DenomKind.STRICT_Q, mpq(0)),
        (3, 2, DenomKind.STRICT_Q, mpq(0)),
        (2, 1, DenomKind.WEAK_Q, mpq(0)),
    ],
)
def test_nested_sum_S(r, k, kind, expected):
    assert nested_sum_S(HALF, r, k, kind) == expected


def test_nested_sum_S_by_enumerating_chains():
    import itertools

    params = ModelParams("2/5")
    for kind in DenomKind:
        for r in range(1, 5):
            for k in range(1, 9):
                brute = mpq(0)
                for chain in itertools.combinations(range(1, k + 1), r):
                    if chain[0] != 1 or chain[-1] != k:
                        continue
                    term = mpq(1)
                    for l in chain:
                        term /= kind.denom(params.q, l)
                    brute += term
                assert nested_sum_S(params, r, k, kind) == brute


def test_t_linear_product_examples():
    a1, b1, a2, b2 = map(mpq, (2, 3, 5, 7))
    assert t_linear_product([(a1, b1), (a2, b2)]) == b1 * a2 + a1 * b2
    assert t_linear_product([(1, 2), (mpq(1, 3), mpq(4, 9))]) == mpq(10, 9)
    assert t_linear_product([(a1, b1)]) == b1
    with pytest.raises(ValueError):
        t_linear_product([])


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12).map(exact)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=6))
def test_t_linear_product_matches_expansion(pairs):
    N = len(pairs)
    poly = TruncatedSeries([mpq(1)] + [mpq(0)] * N)
    for a, b in pairs:
        poly = poly * TruncatedSeries([a, b] + [mpq(0)] * (N - 1))
    assert t_linear_product(pairs) == poly.coeff(1)


def test_pi_strict_examples():
    assert pi_strict(HALF, 2, 2) == mpq(1, 3)
    for params in GRID:
        for n in range(1, 12):
            assert pi_strict(params, n, 1) == 1
    assert pi_strict(HALF, 1, 1) == 1


def test_value_partial_examples():
    assert value_partial_analytic(HALF, 2, 2, Mode.STRICT) == mpq(10, 9)
    assert value_partial_analytic(HALF, 2, 2, Mode.WEAK) == mpq(8, 9)
    for params in GRID:
        for n in (1, 2, 5, 9):
            assert value_partial_analytic(params, n, 1, Mode.STRICT) == 1 / params.p


def test_weak_value_formula_is_shifted_by_pi():
    # the oracle's partial E[value] is 14/9; the formula gives E[value - 1] = 14/9 - 2/3
    assert value_partial_analytic(HALF, 2, 2, Mode.WEAK) + pi_weak(HALF, 2, 2) == mpq(14, 9)


def test_position_f_examples():
    assert position_f(HALF, 2, 2, Mode.STRICT) == position_f(HALF, 2, 2, "strict")
    f = position_f(HALF, 2, 2, Mode.STRICT)
    assert (f.f1, f.f2) == (mpq(-1, 3), mpq(1, 7))
    f = position_f(HALF, 2, 2, Mode.WEAK)
    assert (f.f1, f.f2) == (mpq(-8, 3), mpq(16, 7))
    for mode in Mode:
        for k in range(1, 6):
            f = position_f(HALF, 1, k, mode)
            assert f.f1 == 0 and f.f2 == 0


def test_position_f1_nonpositive():
    for params in GRID:
        for mode in Mode:
            for r in range(1, 5):
                for k in range(1, 10):
                    assert position_f(params, r, k, mode).f1 <= 0


def test_position_shifted_examples():
    assert position_shifted_partial_analytic(HALF, 3, 2, Mode.STRICT) == mpq(4, 21)
    assert position_shifted_partial_analytic(HALF, 3, 2, Mode.WEAK) == mpq(2, 21)
    for params in GRID:
        for mode in Mode:
            for n in (1, 3, 7):
                assert position_shifted_partial_analytic(params, n, 1, mode) == 0


def test_uncorrected_coefficient_gives_negative_shifted_position():
    val = position_shifted_partial_analytic(HALF, 3, 2, Mode.STRICT, corrected=False)
    assert val < 0


def test_boundary_values_vanish():
    # f(k) = (Q - 1) S_r(k + 1) is an empty chain sum for 1 <= k <= r - 2
    for params in GRID:
        S = chain_table(params, 6, 8, DenomKind.STRICT_Q)
        for r in range(3, 7):
            for k in range(1, r - 1):
                assert S[r][k + 1] == 0


@pytest.mark.parametrize("params", GRID, ids=str)
@pytest.mark.parametrize("mode", list(Mode))
def test_analytic_matches_dp_oracle(params, mode):
    for n in range(1, 8):
        for r in range(1, min(n, 4) + 1):
            o = dp_oracle(params, RecordQuery(n, r, mode), eps=mpq(1, 10**20))
            assert o.tail_bound <= mpq(1, 10**20)
            pi = pi_analytic(params, n, r, mode)
            value = value_partial_analytic(params, n, r, mode)
            if mode is Mode.WEAK:
                value += pi
            pos = position_partial_analytic(params, n, r, mode, pi=pi)
            assert abs(pi - o.prob_at_least_r) <= o.tail_bound
            assert abs(value - o.value_partial) <= o.tail_bound
            assert abs(pos - o.position_partial) <= o.tail_bound


@pytest.mark.parametrize("params", GRID, ids=str)
def test_sanity_ranges(params):
    for n in range(1, 10):
        prev = mpq(2)
        for r in range(1, n + 1):
            pi = pi_strict(params, n, r)
            assert 0 <= pi <= 1 and pi <= prev
            prev = pi
            assert value_partial_analytic(params, n, r, Mode.STRICT) >= r * pi
            for mode in Mode:
                assert position_shifted_partial_analytic(params, n, r, mode) >= 0


def test_pi_weak_dominates_pi_strict():
    for params in GRID:
        for n in range(1, 9):
            for r in range(1, n + 1):
                assert pi_weak(params, n, r) >= pi_strict(params, n, r)


def test_expected_records_small():
    # n = 2: 1 + P(a2 > a1) = 1 + q/(1+q)
    q = HALF.q
    assert expected_records_analytic(HALF, 2) == 1 + q / (1 + q)
    assert expected_records_analytic(HALF, 2, Mode.WEAK) == 1 + 1 / (1 + q)


def test_bad_query_rejected():
    with pytest.raises(ValueError):
        pi_strict(HALF, 2, 3)
    with pytest.raises(ValueError):
        value_partial_analytic(HALF, 0, 1)
