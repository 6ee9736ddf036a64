from fractions import Fraction as F
from math import factorial

import pytest

from isingx.expansion import (
    CLOSED_FORMS, a_hexagonal_closed, a_square_closed, a_triangular_closed,
    asymptotic_ratio, expand_free_energy,
)
from isingx.lattices import PRESET_BONDS, LatticeSpec


def test_square_terms():
    fes = expand_free_energy("square", 16)
    assert list(fes.terms[1:]) == [0, 0, 0, 1, 0, 2, 0, F(9, 2), 0, 12, 0, F(112, 3), 0, 130, 0,
                                   F(1961, 4)]
    assert fes.log_x_prefactor == -1


def test_square_a_values_with_factorial():
    fes = expand_free_energy("square", 10)
    assert [fes.a(n) for n in range(1, 11)] == [0, 0, 0, 24, 0, 1440, 0, 181440, 0, 43545600]


def test_triangular_terms():
    fes = expand_free_energy("triangular", 20)
    assert list(fes.terms[1:11]) == [0, 0, 0, 0, 0, 1, 0, 0, 0, 3]
    assert [fes.terms[n] for n in (12, 14, 16, 18, 20)] == [F(-3, 2), 12, -12, F(181, 3), F(-165, 2)]


def test_hexagonal_terms():
    fes = expand_free_energy("hexagonal", 11)
    assert list(fes.terms[1:]) == [0, 0, 1, F(3, 2), 3, F(11, 2), 12, F(111, 4), F(208, 3),
                                   F(363, 2), 495]
    assert fes.log_x_prefactor == F(-3, 4)


@pytest.mark.parametrize("preset", ["square", "triangular", "hexagonal"])
def test_generic_equals_closed_form(preset):
    fes = expand_free_energy(preset, 20)
    closed = CLOSED_FORMS[preset]
    assert [closed(n) for n in range(1, 21)] == [fes.a(n) for n in range(1, 21)]


@pytest.mark.parametrize("preset", ["square", "triangular", "hexagonal"])
def test_utiyama_cell_equals_preset(preset):
    a = expand_free_energy(LatticeSpec("utiyama", PRESET_BONDS[preset]), 14)
    b = expand_free_energy(preset, 14)
    assert a.terms == b.terms
    assert a.log_x_prefactor == b.log_x_prefactor


def test_closed_form_examples():
    assert a_square_closed(3) == 0
    assert a_square_closed(8) / factorial(8) == F(9, 2)
    assert a_square_closed(12) / factorial(12) == F(112, 3)
    assert a_triangular_closed(6) / factorial(6) == 1
    assert a_triangular_closed(12) / factorial(12) == F(-3, 2)
    assert a_hexagonal_closed(1) == 0
    assert a_hexagonal_closed(3) / factorial(3) == 1
    assert a_hexagonal_closed(8) / factorial(8) == F(111, 4)


def test_parity_and_signs():
    sq = expand_free_energy("square", 30)
    tri = expand_free_energy("triangular", 30)
    hx = expand_free_energy("hexagonal", 24)
    assert all(sq.terms[n] == 0 and tri.terms[n] == 0 for n in range(1, 31, 2))
    assert all(t >= 0 for t in sq.terms) and all(t >= 0 for t in hx.terms)
    assert hx.terms[1] == hx.terms[2] == 0
    assert tri.terms[12] < 0


def test_kagome_leading_terms():
    fes = expand_free_energy("kagome", 10)
    assert list(fes.terms[1:]) == [0, 0, 0, 1, 0, F(8, 3), 0, F(13, 2), 0, 16]


def test_asymptotic_ratio_band():
    fes = expand_free_energy("square", 30)
    for n in range(10, 31, 2):
        r = float(asymptotic_ratio("square", n, fes))
        assert 0 < r < 2


def test_order_validation():
    with pytest.raises(ValueError):
        expand_free_energy("square", 0)
