from fractions import Fraction as F
from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isingx.bell import (
    complete_bell, egf_args, lah, log_bell, partial_bell, partition_indices,
)
from isingx.exact_core import XSeries, series_compose, series_exp, series_log

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=8)


def stirling2(n, k):
    return sum((-1) ** (k - j) * comb(k, j) * j ** n for j in range(k + 1)) // factorial(k)


def set_partition_count(n, k):
    """Brute force: surjections of n labelled items onto k unlabelled blocks."""
    count = 0
    for labels in product(range(k), repeat=n):
        # canonical labelling: first occurrences in increasing order
        seen = []
        for l in labels:
            if l not in seen:
                seen.append(l)
        if len(seen) == k and seen == list(range(k)):
            count += 1
    return count


def test_partition_indices_constraints():
    for n in range(1, 9):
        for k in range(1, n + 1):
            for c in partition_indices(n, k):
                assert sum(c) == k
                assert sum((i + 1) * ci for i, ci in enumerate(c)) == n


@pytest.mark.parametrize("n", range(1, 8))
def test_all_ones_gives_stirling_numbers(n):
    for k in range(1, n + 1):
        b = partial_bell(n, k, [1] * n)
        assert b == stirling2(n, k)
        if n <= 6:
            assert b == set_partition_count(n, k)


def test_known_values():
    assert partial_bell(6, 2, [1] * 5) == 31
    assert partial_bell(4, 2, [1, 2, 6]) == 36
    assert complete_bell(0, []) == 1
    assert [complete_bell(n, [1] * n) for n in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]


def test_argument_count_checked():
    with pytest.raises(ValueError):
        partial_bell(5, 2, [1, 2])
    with pytest.raises(ValueError):
        partial_bell(3, 4, [1, 1, 1])


def test_lah_numbers():
    assert [lah(4, k) for k in range(1, 5)] == [24, 36, 12, 1]
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert partial_bell(n, k, [factorial(j) for j in range(1, n + 1)]) == lah(n, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.data())
def test_scaling_identity(n, data):
    k = data.draw(st.integers(1, n))
    xs = data.draw(st.lists(rationals, min_size=n, max_size=n))
    a = data.draw(rationals)
    b = data.draw(rationals)
    scaled = [a * b ** j * x for j, x in enumerate(xs, start=1)]
    assert partial_bell(n, k, scaled) == a ** k * b ** n * partial_bell(n, k, xs)


@settings(max_examples=30, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=7), st.lists(rationals, min_size=8, max_size=8))
def test_bell_matches_composition(fs, gs):
    order = len(fs)
    f = XSeries([0] + fs)
    g = XSeries(gs[: order + 1])
    comp = series_compose(g, f)
    fargs = egf_args(fs)
    for n in range(1, order + 1):
        via = sum((g.coeffs[k] * factorial(k) * partial_bell(n, k, fargs)
                   for k in range(1, n + 1)), F(0)) / factorial(n)
        assert via == comp.coeffs[n]


@settings(max_examples=30, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=8))
def test_complete_and_log_bell_match_series(cs):
    order = len(cs)
    f = XSeries([0] + cs)
    args = egf_args(cs)
    e = series_exp(f)
    assert [complete_bell(n, args) / factorial(n) for n in range(order + 1)] == list(e.coeffs)
    l = series_log(XSeries([1] + cs))
    assert [log_bell(n, args) / factorial(n) for n in range(1, order + 1)] == list(l.coeffs[1:])
