import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.genfun import (
    TruncatedSeries,
    counts_cross_check,
    euler_product,
    rational_curve_counts,
    series_inverse,
    series_multiply,
    series_power,
    series_power_naive,
)
from oracles import curve_counts_bruteforce

# frozen from the negative-binomial oracle
KNOWN = [1, 24, 324, 3200, 25650, 176256, 1073720, 5930496]


def S(coeffs, order):
    return TruncatedSeries(tuple(coeffs), order)


def test_multiply_examples():
    assert series_multiply(S([1, 1], 2), S([1, -1], 2)) == S([1, 0, -1], 2)
    a = S([3, 1, 4, 1, 5], 4)
    assert a * TruncatedSeries.one(4) == a
    assert S([1] * 6, 5) * S([1, -1], 5) == TruncatedSeries.one(5)
    with pytest.raises(ValueError):
        S([1], 2) * S([1], 3)


def test_inverse_examples():
    assert series_inverse(S([1, -1], 3)) == S([1, 1, 1, 1], 3)
    assert series_inverse(TruncatedSeries.one(4)) == TruncatedSeries.one(4)
    with pytest.raises(ValueError):
        series_inverse(S([2, 1], 3))


def test_euler_product_examples():
    assert euler_product(0) == TruncatedSeries.one(0)
    assert euler_product(5) == S([1, -1, -1, 0, 0, 1], 5)
    assert euler_product(40) == euler_product(40, method="product")


def test_counts_match_oracle():
    assert rational_curve_counts(3) == [1, 24, 324, 3200]
    assert rational_curve_counts(7) == KNOWN
    assert rational_curve_counts(30) == curve_counts_bruteforce(30)


@pytest.mark.parametrize("G", [0, 1, 17, 100])
def test_cross_check(G):
    assert counts_cross_check(G)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=8), st.integers(0, 30))
def test_binary_power_matches_naive(coeffs, k):
    a = S(coeffs, 7)
    assert series_power(a, k) == series_power_naive(a, k)


@given(st.lists(st.integers(-5, 5), min_size=0, max_size=9), st.sampled_from([1, -1]))
def test_inverse_is_inverse(tail, c0):
    a = S([c0] + tail, 9)
    assert a * series_inverse(a) == TruncatedSeries.one(9)
