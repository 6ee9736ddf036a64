import math
from fractions import Fraction as F

import pytest

from isingx import oracle
from isingx.expansion import expand_free_energy
from isingx.oracle import (
    HORIZONS, Boundary, QuadratureError, enumerate_counts, even_subgraph_counts,
    hexagonal_lattice, high_temp_coefficients, measure_horizon, quadrature_free_energy,
    sign_invariance_check, square_lattice, triangular_lattice, wannier_free_energy,
)


def test_edge_counts():
    assert square_lattice(4).E == 32
    assert triangular_lattice(3).E == 27
    assert hexagonal_lattice(4, 6).E == 36
    assert square_lattice(3, 3, Boundary.FREE).E == 12
    assert triangular_lattice(3, 3, Boundary.FREE).E == 16


def test_lattice_validation():
    with pytest.raises(ValueError):
        square_lattice(2)
    with pytest.raises(ValueError):
        hexagonal_lattice(3, 4)
    with pytest.raises(ValueError):
        oracle.FiniteLattice("kagome", 3, 3)


def test_enumeration_budget():
    with pytest.raises(ValueError):
        enumerate_counts(square_lattice(6))


@pytest.mark.parametrize("lat", [square_lattice(4), hexagonal_lattice(4, 4), square_lattice(3, 4, Boundary.FREE)],
                         ids=lambda l: l.name)
def test_bipartite_symmetry(lat):
    g = enumerate_counts(lat)
    assert sum(g) == 2 ** lat.V
    assert g == g[::-1]


def test_square_4x4_counts():
    g = enumerate_counts(square_lattice(4))
    assert g[0] == 2 and g[4] == 32 and g[6] == 64
    assert all(v == 0 for v in g[1::2])


def test_triangular_4x4_counts():
    g = enumerate_counts(triangular_lattice(4))
    assert g[0] == 2 and g[6] == 32


@pytest.mark.parametrize("key", sorted(HORIZONS), ids=lambda k: "%s-%dx%d" % k)
def test_horizons(key):
    preset, r, c = key
    lat = oracle.FiniteLattice(preset, r, c)
    assert measure_horizon(lat) == HORIZONS[key]


@pytest.mark.parametrize("lat", [
    square_lattice(4), square_lattice(5), square_lattice(3, 4),
    triangular_lattice(3), triangular_lattice(4), hexagonal_lattice(4, 4),
    square_lattice(3, 3, Boundary.FREE), triangular_lattice(3, 3, Boundary.FREE),
], ids=lambda l: l.name)
def test_high_temp_matches_cycle_space(lat):
    q = high_temp_coefficients(lat)
    assert q == even_subgraph_counts(lat)
    assert sum(q) == 2 ** (lat.E - lat.V + 1)


def test_high_temp_small_values():
    assert high_temp_coefficients(triangular_lattice(3))[3] == 27
    assert high_temp_coefficients(square_lattice(5))[4] == 25
    # 16 plaquettes plus 8 wrap-around 4-cycles on the 4x4 torus
    assert high_temp_coefficients(square_lattice(4))[4] == 24
    assert high_temp_coefficients(square_lattice(3, 3, Boundary.FREE))[4] == 4


@pytest.mark.parametrize("preset", ["square", "triangular", "hexagonal", "kagome"])
@pytest.mark.parametrize("x", [0.02, 0.05, 0.08])
def test_quadrature_vs_series(preset, x):
    fes = expand_free_energy(preset, 30)
    assert abs(quadrature_free_energy(preset, x).value - fes.evaluate(x)) < 1e-12


@pytest.mark.parametrize("x", [0.05, 0.1, 0.2])
def test_wannier_form(x):
    assert abs(wannier_free_energy(x).value - quadrature_free_energy("triangular", x).value) < 1e-12


def test_infinite_temperature():
    for preset in ("square", "triangular", "hexagonal"):
        assert quadrature_free_energy(preset, 1.0).value == pytest.approx(math.log(2), abs=1e-12)


def test_quadrature_near_critical_point():
    with pytest.raises(QuadratureError):
        quadrature_free_energy("square", math.sqrt(2) - 1 - 1e-9)
    with pytest.raises(ValueError):
        quadrature_free_energy("square", 0.1, nodes=100)


def test_sign_invariance():
    assert sign_invariance_check(12)
    plus = oracle.COS1 + oracle.COS2 + oracle.COS12
    assert (plus * plus).constant_term() == F(3, 2)
