import pytest

from isingx import walks

SQUARE = [1, 4, 36, 400, 4900, 63504, 853776]
TRIANGULAR = [1, 0, 6, 12, 90, 360, 2040, 10080, 54810, 290640]
HEXAGONAL = [1, 3, 15, 93, 639, 4653, 35169, 272835]


def test_closed_forms_match_printed_values():
    assert [walks.s_square(2 * n) for n in range(7)] == SQUARE
    assert [walks.s_triangular(n) for n in range(10)] == TRIANGULAR
    assert [walks.s_hexagonal(2 * n) for n in range(8)] == HEXAGONAL


@pytest.mark.parametrize("l", range(0, 15))
def test_fourier_route(l):
    assert walks.s_triangular_fourier(l) == walks.s_triangular(l)
    if l % 2 == 0:
        assert walks.s_square_fourier(l) == walks.s_square(l)
        assert walks.s_hexagonal_fourier(l) == walks.s_hexagonal(l)


@pytest.mark.parametrize("lattice", ["square", "triangular", "hexagonal"])
def test_enumeration_oracle(lattice):
    assert [walks.walk_oracle(lattice, l) for l in range(13)] == \
        [walks.walk_count(lattice, l) for l in range(13)]


def test_odd_lengths():
    assert walks.walk_count("square", 7) == 0
    assert walks.walk_count("hexagonal", 5) == 0
    with pytest.raises(ValueError):
        walks.s_square(3)


def test_oracle_budget():
    with pytest.raises(ValueError):
        walks.walk_oracle("square", 13)
