"""Closed-walk (return-to-origin) counts on the square, triangular and
hexagonal lattices.

Three independent routes are provided: closed-form sums, Fourier constant
terms of the structure polynomials, and direct enumeration of step sequences.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from math import comb

from .exact_core import P_HEXAGONAL, P_SQUARE, P_TRIANGULAR, TrigPoly

MAX_ORACLE_STEPS = 12


@lru_cache(maxsize=None)
def s_triangular(l: int) -> int:
    """sum_{i<=l} sum_{j<=i} (-2)^(l-i) C(l,i) C(i,j)^3."""
    if l < 0:
        raise ValueError("walk length must be non-negative")
    return sum((-2) ** (l - i) * comb(l, i) * sum(comb(i, j) ** 3 for j in range(i + 1))
               for i in range(l + 1))


def _even_half(l2: int) -> int:
    if l2 < 0 or l2 % 2:
        raise ValueError(f"walk length must be a non-negative even integer, got {l2}")
    return l2 // 2


@lru_cache(maxsize=None)
def s_hexagonal(l2: int) -> int:
    """Closed walks of length l2 on the honeycomb.

    2^l CT(p_hex^l) with l = l2/2; since 2 p_hex = 3 + 2 p_tri this is
    sum_j C(l,j) 3^(l-j) S_tri(j).
    """
    l = _even_half(l2)
    return sum(comb(l, j) * 3 ** (l - j) * s_triangular(j) for j in range(l + 1))


@lru_cache(maxsize=None)
def s_square(l2: int) -> int:
    """Closed walks of length l2 on Z^2: C(l2, l2/2)^2."""
    l = _even_half(l2)
    return comb(l2, l) ** 2


# --- Fourier route -------------------------------------------------------

def _ct_power(base: TrigPoly, l: int) -> int:
    value = (base ** l).constant_term() * 2 ** l
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral walk count {value}")
    return int(value)


def s_triangular_fourier(l: int) -> int:
    return _ct_power(P_TRIANGULAR, l)


def s_hexagonal_fourier(l2: int) -> int:
    return _ct_power(P_HEXAGONAL, _even_half(l2))


def s_square_fourier(l2: int) -> int:
    # 2^l2 CT(((cos t1 + cos t2)/2)^l2) * 2^l2 = 2^l2 CT((cos t1 + cos t2)^l2)
    return _ct_power(P_SQUARE, l2)


# --- enumeration oracle ----------------------------------------------------

SQUARE_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))
TRIANGULAR_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1))
# honeycomb as a two-sublattice walk: from an A site the three bonds lead to
# B sites in cells (0,0), (-1,0), (0,-1); from B the reversed offsets.
HEX_STEPS_FROM_A = ((0, 0), (-1, 0), (0, -1))
HEX_STEPS_FROM_B = ((0, 0), (1, 0), (0, 1))


def _endpoint_histogram(step_sets) -> Counter:
    hist: Counter = Counter()
    for seq in product(*step_sets):
        x = y = 0
        for dx, dy in seq:
            x += dx
            y += dy
        hist[(x, y)] += 1
    return hist


def walk_oracle(lattice: str, l: int) -> int:
    """Count closed walks of length l by enumerating step sequences.

    Meet in the middle: enumerate every first half and every second half,
    histogram the displacements, and pair opposite ones. Every closed step
    sequence is counted exactly once.
    """
    if l < 0:
        raise ValueError("walk length must be non-negative")
    if l > MAX_ORACLE_STEPS:
        raise ValueError(f"walk_oracle is limited to {MAX_ORACLE_STEPS} steps, got {l}")
    h1 = l // 2
    h2 = l - h1
    if lattice == "square":
        first = [SQUARE_STEPS] * h1
        second = [SQUARE_STEPS] * h2
    elif lattice == "triangular":
        first = [TRIANGULAR_STEPS] * h1
        second = [TRIANGULAR_STEPS] * h2
    elif lattice == "hexagonal":
        if l % 2:
            return 0
        alternate = (HEX_STEPS_FROM_A, HEX_STEPS_FROM_B)
        first = [alternate[i % 2] for i in range(h1)]
        second = [alternate[(h1 + i) % 2] for i in range(h2)]
    else:
        raise ValueError(f"no walk oracle for lattice {lattice!r}")
    a = _endpoint_histogram(first)
    b = _endpoint_histogram(second)
    return sum(n * b.get((-x, -y), 0) for (x, y), n in a.items())


def walk_count(lattice: str, l: int) -> int:
    """Closed-form S_G(l); odd l gives 0 on the bipartite lattices."""
    if lattice == "triangular":
        return s_triangular(l)
    if lattice in ("square", "hexagonal"):
        if l % 2:
            return 0
        return s_square(l) if lattice == "square" else s_hexagonal(l)
    raise ValueError(f"unknown lattice {lattice!r}")
