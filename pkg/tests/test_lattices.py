import math
from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest

from isingx.lattices import (
    PRESET_BONDS, BondClass, LatticeSpec, SpecError, build_integrand, critical_x,
    edge_density, parse_lattice, same_up_to_reflection, utiyama_integrand,
)


def test_parse():
    assert parse_lattice("square").kind == "square"
    spec = parse_lattice("I,J,J,J")
    assert spec.bonds == PRESET_BONDS["triangular"]
    assert spec.matching_preset() == "triangular"
    assert LatticeSpec.utiyama("IJJJ") == spec


@pytest.mark.parametrize("text", ["I,I,J,J", "IJJX", "JJ", "hexagon"])
def test_rejects(text):
    with pytest.raises(SpecError):
        parse_lattice(text)


@pytest.mark.parametrize("preset", ["square", "triangular", "hexagonal"])
def test_generic_builder_reproduces_presets(preset):
    generic = utiyama_integrand(PRESET_BONDS[preset], 6)
    hand = build_integrand(LatticeSpec(preset), 6)
    assert same_up_to_reflection(generic, hand)
    assert generic.log_x_prefactor == hand.log_x_prefactor
    assert generic.site_divisor == hand.site_divisor


def test_edge_densities():
    assert edge_density(LatticeSpec("square")) == 1
    assert edge_density(LatticeSpec("triangular")) == F(3, 2)
    assert edge_density(LatticeSpec("hexagonal")) == F(3, 4)
    assert edge_density(LatticeSpec("kagome")) == 1


def test_critical_points():
    assert float(critical_x("square")) == pytest.approx(math.sqrt(2) - 1)
    assert float(critical_x("triangular")) == pytest.approx(1 / math.sqrt(3))
    assert float(critical_x("hexagonal")) == pytest.approx(2 - math.sqrt(3))
    assert critical_x("kagome") is None


def _grid():
    t = np.linspace(0, 2 * np.pi, 7, endpoint=False) + 0.1
    return np.meshgrid(t, t, indexing="ij")


@pytest.mark.parametrize("x", [0.1, 0.37, 0.8])
def test_reduced_polynomials_match_hyperbolic_brackets(x):
    a, b = _grid()
    K = -math.log(x) / 2
    C, S = math.cosh(2 * K), math.sinh(2 * K)
    c1, c2, c12 = np.cos(a), np.cos(b), np.cos(a + b)
    sq = build_integrand(LatticeSpec("square"), 4).evaluate(x, a, b)
    assert np.allclose(4 * x * x * (C * C - S * (c1 + c2)), sq)
    tri = build_integrand(LatticeSpec("triangular"), 4).evaluate(x, a + np.pi, b + np.pi)
    assert np.allclose(4 * x ** 3 * (C ** 3 + S ** 3 + S * (c1 + c2 - c12)), tri)
    hx = build_integrand(LatticeSpec("hexagonal"), 6).evaluate(x, a, b)
    assert np.allclose(8 * x ** 3 * (C ** 3 + 1 - S * S * (c1 + c2 + c12)), hx)
    p = c1 + c2 + c12
    kg = build_integrand(LatticeSpec("kagome"), 8).evaluate(x, a, b)
    bracket = (C ** 6 + S ** 6 + 2 * C ** 3 * S ** 3 + 3 * C * C
               - 2 * (C * S ** 3 + C * C * S * S) * p) / 4
    assert np.allclose(64 * x ** 6 * bracket, kg)


def test_all_single_contraction_cells_build_or_reject_cleanly():
    built = 0
    for bonds in product(BondClass, repeat=4):
        if sum(b is BondClass.INFINITE for b in bonds) >= 2:
            continue
        try:
            integ = utiyama_integrand(bonds, 4)
        except SpecError:
            continue
        built += 1
        assert integ.polynomial[0] == 1
        assert integ.log_x_prefactor < 0
    assert built == 25


def test_dimer_cell():
    # one coupling bond per two-site cell: a dimer, -beta*phi = ln 2 + (1/2) ln cosh K
    integ = utiyama_integrand((BondClass.ZERO, BondClass.ZERO, BondClass.COUPLING, BondClass.ZERO), 4)
    x = 0.3
    K = -math.log(x) / 2
    q = float(integ.evaluate(x, 0.0, 0.0))
    value = (float(integ.log2_constant) * math.log(2) + float(integ.log_x_prefactor) * math.log(x)
             + math.log(q) / integ.site_divisor)
    assert value == pytest.approx(math.log(2) + 0.5 * math.log(math.cosh(K)), rel=1e-13)
