from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isingx.exact_core import (
    COS1, COS12, COS2, P_TRIANGULAR, QuadSurd, RingError, TrigPoly, XSeries,
    series_compose, series_exp, series_log, series_mul, series_pow,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_trigpoly_rejects_non_real_modes():
    with pytest.raises(ValueError):
        TrigPoly({(1, 0): 1})


def test_cos_product_to_modes():
    # cos t1 * cos t2 = (cos(t1+t2) + cos(t1-t2)) / 2
    prod = COS1 * COS2
    assert prod == TrigPoly.cos(1, 1, F(1, 2)) + TrigPoly.cos(1, -1, F(1, 2))
    assert (COS1 * COS1).constant_term() == F(1, 2)


def test_constant_term_of_p_triangular_squared():
    assert (P_TRIANGULAR ** 2).constant_term() == F(3, 2)
    # 2^3 CT(p^3) = S_tri(3) = 12
    assert (P_TRIANGULAR ** 3).constant_term() == F(3, 2)


def test_evaluate_matches_cosines():
    t1, t2 = 0.3, -1.1
    got = (P_TRIANGULAR * 2 + 1).evaluate(t1, t2)
    want = 1 + 2 * (np.cos(t1) + np.cos(t2) + np.cos(t1 + t2))
    assert got == pytest.approx(want, abs=1e-14)


def test_reflect():
    assert COS12.reflect() == TrigPoly.cos(1, -1)
    assert COS1.reflect() == COS1


def test_series_mul_prefactors_add():
    a = XSeries([1, 2], 1, 0)
    b = XSeries([1, -1], F(1, 2), 1)
    c = series_mul(a, b)
    assert c.coeffs == (1, 1)
    assert (c.prefactor_log_x, c.prefactor_log_2) == (F(3, 2), 1)


def test_add_requires_equal_prefactors():
    with pytest.raises(RingError):
        XSeries([1, 2], 1) + XSeries([1, 2], 0)


def test_mixed_order_raises():
    with pytest.raises(RingError):
        XSeries([1, 2]) + XSeries([1, 2, 3])


def test_log_needs_unit_constant():
    with pytest.raises(ValueError):
        series_log(XSeries([2, 1]))


def test_exp_needs_zero_constant():
    with pytest.raises(ValueError):
        series_exp(XSeries([1, 1]))


def test_exp_of_x_is_inverse_factorials():
    e = series_exp(XSeries([0, 1, 0, 0, 0, 0]))
    assert e.coeffs == (1, 1, F(1, 2), F(1, 6), F(1, 24), F(1, 120))


def test_log_of_one_plus_x():
    l = series_log(XSeries([1, 1, 0, 0, 0]))
    assert l.coeffs == (0, 1, F(-1, 2), F(1, 3), F(-1, 4))


def test_log_over_trigpoly_ring():
    q = XSeries.from_poly([1, -2 * (COS1 + COS2)], 4)
    l = series_log(q)
    assert l.ring is TrigPoly
    # <ln(1 - 2 c x)>: x^2 term is -<(2c)^2>/2 = -2
    assert l.constant_term().coeffs[2] == -2


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=10))
def test_log_exp_roundtrip(cs):
    f = XSeries([0] + cs)
    assert series_log(series_exp(f)) == f
    g = XSeries([1] + cs)
    assert series_exp(series_log(g)) == g


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=2, max_size=8), st.integers(0, 5))
def test_pow_matches_repeated_mul(cs, k):
    f = XSeries(cs)
    ref = XSeries.from_poly([1], f.order)
    for _ in range(k):
        ref = series_mul(ref, f)
    assert series_pow(f, k) == ref


def test_compose_with_exp():
    # exp(x + x^2) via composition of exp(y) with y = x + x^2
    g = series_exp(XSeries([0, 1, 0, 0, 0, 0]))
    f = XSeries([0, 1, 1, 0, 0, 0])
    assert series_compose(g, f) == series_exp(f)


def test_quadsurd_arithmetic():
    xc = QuadSurd(-1, 1, 2)          # sqrt(2) - 1
    assert xc * xc.conjugate() == QuadSurd(-1, 0, 2)
    assert xc ** -1 == QuadSurd(1, 1, 2)
    assert float(xc ** 4) == pytest.approx((2 ** 0.5 - 1) ** 4, rel=1e-15)
    assert str(xc.to_decimal(30))[:20] == "0.414213562373095048"
    assert str(QuadSurd(2, -1, 3)) == "2 - sqrt(3)"
