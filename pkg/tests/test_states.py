import warnings
from fractions import Fraction as F

import pytest

from isingx.exact_core import XSeries
from isingx.expansion import expand_free_energy
from isingx.states import (
    BULK, FINITE_AT, FINITE_SYMBOLIC, SymbolicPartition, VPoly, bulk_states,
    configuration_counts, energy_distribution, finite_states, partition_polynomial,
)


def test_square_states():
    g = bulk_states(expand_free_energy("square", 17), 17)
    assert g.mode == BULK
    assert g.values() == [1, 0, 0, 0, 1, 0, 2, 0, 5, 0, 14, 0, 44, 0, 152, 0, 566, 0]


def test_square_states_nonnegative_to_30():
    g = bulk_states(expand_free_energy("square", 30), 30)
    assert all(v >= 0 and v.denominator == 1 for v in g.values())


def test_triangular_states():
    g = bulk_states(expand_free_energy("triangular", 20), 20).values()
    assert [g[n] for n in (6, 10, 12, 14, 16, 18, 20)] == [1, 3, -1, 12, -9, 59, -66]
    assert all(g[n] == 0 for n in (1, 2, 3, 4, 5, 7, 8, 9, 11))


def test_hexagonal_states_per_cell():
    fes = expand_free_energy("hexagonal", 9)
    assert bulk_states(fes, 9).values() == [1, 0, 0, 2, 3, 6, 13, 30, 72, 180]
    per_site = bulk_states(fes, 9, sites_per_cell=1).values()
    assert per_site[3] == 1 and per_site[4] == F(3, 2)


def test_order_overflow():
    with pytest.raises(ValueError):
        bulk_states(expand_free_energy("square", 8), 10)


def test_symbolic_examples():
    tri = finite_states(expand_free_energy("triangular", 14), None, 14)
    assert tri.mode == FINITE_SYMBOLIC
    assert tri[12] == VPoly([0, F(-3, 2), F(1, 2)])
    assert tri[6] == VPoly([0, 1])
    sq = finite_states(expand_free_energy("square", 12), None, 12)
    assert sq[8] == VPoly([0, F(9, 2), F(1, 2)])
    assert sq[12] == VPoly([0, F(112, 3), F(13, 2), F(1, 6)])
    assert sq[0] == VPoly([1])


def test_v_equals_one_gives_bulk():
    for lat, s in (("square", 1), ("triangular", 1), ("hexagonal", 2)):
        fes = expand_free_energy(lat, 16)
        bulk = bulk_states(fes, 16).values()
        sym = finite_states(fes, None, 16)
        assert [sym[N](s) for N in range(17)] == bulk


def test_finite_at_integers_within_horizon():
    dos = finite_states(expand_free_energy("square", 16), 16, 16)
    assert dos.mode == FINITE_AT and dos.horizon == 8
    assert all(dos[r].denominator == 1 for r in range(8))
    tri = finite_states(expand_free_energy("triangular", 4), 16, 4)
    assert tri.horizon == 16


def test_partition_polynomial_finite_at():
    dos = finite_states(expand_free_energy("square", 10), 16, 10)
    z = partition_polynomial(dos)
    assert isinstance(z, XSeries)
    assert z.prefactor_log_x == -16 and z.prefactor_log_2 == 1
    assert configuration_counts(dos) == [2, 0, 0, 0, 32, 0, 64, 0, 400, 0, 1408]


def test_partition_polynomial_symbolic():
    dos = finite_states(expand_free_energy("hexagonal", 6), None, 6)
    z = partition_polynomial(dos)
    assert isinstance(z, SymbolicPartition)
    assert z.log_x_prefactor == VPoly([0, F(-3, 4)])
    assert list(z.coeffs[3:]) == [VPoly([0, 1]), VPoly([0, F(3, 2)]), VPoly([0, 3]),
                                  VPoly([0, F(11, 2), F(1, 2)])]
    tri = partition_polynomial(finite_states(expand_free_energy("triangular", 14), None, 14))
    assert tri.coeffs[12] == VPoly([0, F(-3, 2), F(1, 2)])
    assert tri.at(10).prefactor_log_x == -15


def test_partition_polynomial_rejects_bulk():
    with pytest.raises(ValueError):
        partition_polynomial(bulk_states(expand_free_energy("square", 4), 4))


def test_energy_distribution_square():
    dos = bulk_states(expand_free_energy("square", 20), 20)
    p = energy_distribution(dos, 0.2, 20)
    assert sum(p) == pytest.approx(1, abs=1e-15)
    assert p[4] / p[0] == pytest.approx(0.0016, rel=1e-12)
    assert energy_distribution(dos, 1e-4, 20)[0] == pytest.approx(1, abs=1e-15)


def test_energy_distribution_guards():
    dos = bulk_states(expand_free_energy("square", 20), 20)
    with pytest.raises(ValueError):
        energy_distribution(dos, 0.4, 20)          # above 0.95 x_c
    with pytest.raises(ValueError):
        energy_distribution(dos, 0.35, 6)          # tail too heavy
    with pytest.raises(ValueError):
        energy_distribution(dos, 0.2, 30)          # beyond table order


def test_energy_distribution_warns_on_negative_states():
    dos = bulk_states(expand_free_energy("triangular", 30), 30)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p = energy_distribution(dos, 0.2, 30)
    assert any("negative" in str(w.message) for w in caught)
    assert p[12] < 0
