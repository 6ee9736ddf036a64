"""Lattice specifications and the integrand polynomial Q(x; theta1, theta2).

Every supported lattice has a bulk free energy of the form

    -beta*phi = c2 * ln 2 + cx * ln x + (1/D) * <ln Q(x; theta1, theta2)>

where <.> is the normalised average over the torus [0, 2pi]^2, Q(0) = 1 and
D is the per-site divisor. ``Integrand`` stores (Q, cx, D, c2).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact_core import (
    COS1, COS12, COS1M2, COS2, P_HEXAGONAL, P_SQUARE, P_TRIANGULAR,
    QuadSurd, TrigPoly, XSeries,
)


class BondClass(enum.Enum):
    ZERO = "0"
    COUPLING = "J"
    INFINITE = "I"


class SpecError(ValueError):
    """Unsupported or inconsistent lattice specification."""


PRESETS = ("square", "triangular", "hexagonal", "kagome")

# (J, J1, J0, J^0) bond classes of the nu = 0 Utiyama cell for the presets
_B = BondClass
PRESET_BONDS = {
    "square": (_B.INFINITE, _B.ZERO, _B.COUPLING, _B.COUPLING),
    "triangular": (_B.INFINITE, _B.COUPLING, _B.COUPLING, _B.COUPLING),
    "hexagonal": (_B.COUPLING, _B.ZERO, _B.COUPLING, _B.COUPLING),
}


@dataclass(frozen=True)
class LatticeSpec:
    kind: str
    bonds: Optional[tuple[BondClass, BondClass, BondClass, BondClass]] = None

    def __post_init__(self):
        if self.kind == "utiyama":
            if self.bonds is None or len(self.bonds) != 4:
                raise SpecError("a Utiyama cell needs exactly four bond classes (J, J1, J0, J0up)")
            n_inf = sum(b is BondClass.INFINITE for b in self.bonds)
            if n_inf >= 2:
                raise SpecError(
                    f"{n_inf} contracted bonds make the 1/(2(2-n_inf)) normalisation singular")
        elif self.kind not in PRESETS:
            raise SpecError(f"unknown lattice {self.kind!r}; presets are {', '.join(PRESETS)}")

    @classmethod
    def preset(cls, name: str) -> "LatticeSpec":
        return cls(name)

    @classmethod
    def utiyama(cls, text: str) -> "LatticeSpec":
        """Parse 'I,J,J,J' or 'IJJJ' (order: J, J1, J0, J0up)."""
        chars = [c for c in text.replace(",", "").replace(" ", "").upper()]
        if len(chars) != 4:
            raise SpecError(f"Utiyama spec needs 4 symbols over {{0,J,I}}, got {text!r}")
        try:
            bonds = tuple(BondClass(c) for c in chars)
        except ValueError as exc:
            raise SpecError(f"bad bond symbol in {text!r}; use 0, J or I") from exc
        return cls("utiyama", bonds)

    @property
    def n_infinite(self) -> int:
        bonds = self.bonds if self.kind == "utiyama" else PRESET_BONDS.get(self.kind, ())
        return sum(b is BondClass.INFINITE for b in bonds)

    @property
    def name(self) -> str:
        if self.kind == "utiyama":
            return "utiyama-" + "".join(b.value for b in self.bonds)
        return self.kind

    def matching_preset(self) -> Optional[str]:
        if self.kind != "utiyama":
            return self.kind
        for name, bonds in PRESET_BONDS.items():
            if bonds == self.bonds:
                return name
        return None


def parse_lattice(text: str) -> LatticeSpec:
    if text in PRESETS:
        return LatticeSpec(text)
    return LatticeSpec.utiyama(text)


@dataclass(frozen=True)
class Integrand:
    polynomial: tuple[TrigPoly, ...]   # Q coefficients by power of x, Q[0] == 1
    log_x_prefactor: Fraction          # coefficient of ln x, equals -E/(2V)
    site_divisor: int                  # D in (1/D) <ln Q>
    log2_constant: Fraction            # coefficient of ln 2
    order: int

    @property
    def q(self) -> XSeries:
        return XSeries.from_poly(self.polynomial, self.order)

    def evaluate(self, x, theta1, theta2):
        """Numerical Q(x; theta1, theta2)."""
        total = 0.0
        for n, c in enumerate(self.polynomial):
            total = total + c.evaluate(theta1, theta2) * x ** n
        return total


def _integrand(poly, log_x, divisor, log2, order) -> Integrand:
    poly = tuple(c if isinstance(c, TrigPoly) else TrigPoly.constant(c) for c in poly)
    if poly[0] != 1:
        raise SpecError(f"integrand constant term is {poly[0]!r}, expected 1")
    if Fraction(log_x) >= 0:
        raise SpecError("integrand has no ground-state energy prefactor")
    return Integrand(poly, Fraction(log_x), divisor, Fraction(log2), order)


def square_polynomial():
    c = P_SQUARE
    return (1, -2 * c, 2, 2 * c, 1)


def triangular_polynomial():
    p = P_TRIANGULAR
    return (1, 0, -2 * p, 0, 3 + 2 * p)


def hexagonal_polynomial():
    p = P_HEXAGONAL
    return (1, 3 - 2 * p, 3, 2 + 4 * p, 3, 3 - 2 * p, 1)


def kagome_polynomial():
    p = P_TRIANGULAR
    return (1, 0, -4 * p, 0, 2 * (2 * p + 9), 0, 4 * (p + 6), 0, 21 - 4 * p)


def kagome_integrand(order: int) -> Integrand:
    # bracket of the 1/(24 pi^2) integral equals x^-6 Q / 64; the ln 2 cancels
    return _integrand(kagome_polynomial(), -1, 6, 0, order)


_HAND_REDUCED = {
    "square": (square_polynomial, Fraction(-1), 2),
    "triangular": (triangular_polynomial, Fraction(-3, 2), 2),
    "hexagonal": (hexagonal_polynomial, Fraction(-3, 4), 4),
}


# --- generic nu = 0 Utiyama cell -------------------------------------------

class _Laurent:
    """Laurent polynomial in x with TrigPoly coefficients (dict power -> coeff)."""

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def const(cls, c):
        return cls({0: c if isinstance(c, TrigPoly) else TrigPoly.constant(c)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, TrigPoly()) + v
        return _Laurent(out)

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return _Laurent({k: v * other for k, v in self.terms.items()})
        out: dict[int, TrigPoly] = {}
        for a, va in self.terms.items():
            for b, vb in other.terms.items():
                out[a + b] = out.get(a + b, TrigPoly()) + va * vb
        return _Laurent(out)


_HALF = Fraction(1, 2)
# with x = exp(-2 beta J): cosh(2 beta J) = (1/x + x)/2, sinh(2 beta J) = (1/x - x)/2
_COSH = _Laurent({-1: TrigPoly.constant(_HALF), 1: TrigPoly.constant(_HALF)})
_SINH = _Laurent({-1: TrigPoly.constant(_HALF), 1: TrigPoly.constant(-_HALF)})

# monomials of the nu = 0 cell bracket:
#   1 + C C1 C0 C0' + S S1 S0 S0' - S0 S0' cos(t1+t2) - S S1 cos(t1-t2)
#     - (S S0 + S1 S0') cos t1 - (S S0' + S1 S0) cos t2
# bond indices: 0 -> J, 1 -> J1, 2 -> J0, 3 -> J0up
_CELL_MONOMIALS = (
    (TrigPoly.constant(1), ()),
    (TrigPoly.constant(1), ((0, "C"), (1, "C"), (2, "C"), (3, "C"))),
    (TrigPoly.constant(1), ((0, "S"), (1, "S"), (2, "S"), (3, "S"))),
    (-COS12, ((2, "S"), (3, "S"))),
    (-COS1M2, ((0, "S"), (1, "S"))),
    (-COS1, ((0, "S"), (2, "S"))),
    (-COS1, ((1, "S"), (3, "S"))),
    (-COS2, ((0, "S"), (3, "S"))),
    (-COS2, ((1, "S"), (2, "S"))),
)


def _is_power_of_two(q: Fraction) -> Optional[int]:
    """Return k with q == 2**k, or None."""
    if q <= 0:
        return None
    num, den = q.numerator, q.denominator
    if num & (num - 1) or den & (den - 1):
        return None
    return num.bit_length() - den.bit_length()


def utiyama_integrand(bonds, order: int) -> Integrand:
    """Integrand of a nu = 0 Utiyama cell.

    Each contracted (infinite) bond divides the bracket by its cosh and takes
    the limit: monomials carrying a C_i or S_i of that bond keep a factor 1,
    monomials without one vanish. Free energy:
    (1/2) ln 2 + 1/(2(2-n_inf)) <ln(2 * bracket)>.
    """
    n_inf = sum(b is BondClass.INFINITE for b in bonds)
    if n_inf >= 2:
        raise SpecError("at most one contracted bond is supported")
    bracket = _Laurent()
    for coeff, factors in _CELL_MONOMIALS:
        present = {i for i, _ in factors}
        if any(b is BondClass.INFINITE and i not in present for i, b in enumerate(bonds)):
            continue
        term = _Laurent.const(coeff)
        for i, kind in factors:
            b = bonds[i]
            if b is BondClass.ZERO:
                if kind == "S":
                    term = _Laurent()
                    break
            elif b is BondClass.COUPLING:
                term = term * (_COSH if kind == "C" else _SINH)
        bracket = bracket + term
    if not bracket.terms:
        raise SpecError("bracket vanishes identically")
    low = min(bracket.terms)
    lead = bracket.terms[low]
    if len(lead) != 1 or lead.constant_term() == 0:
        raise SpecError(
            f"lowest power x^{low} of the bracket has angular dependence {lead!r}; "
            "cannot normalise to Q(0) = 1")
    c0 = lead.constant_term()
    k = _is_power_of_two(c0)
    if k is None:
        raise SpecError(f"leading coefficient {c0} is not a positive power of two")
    if low >= 0:
        raise SpecError("bond assignment has no coupling energy (ground state prefactor is trivial)")
    top = max(bracket.terms)
    poly = [bracket.terms.get(p, TrigPoly()) / c0 for p in range(low, top + 1)]
    divisor = 2 * (2 - n_inf)
    # (1/2) ln 2 + (1/D)(ln 2 + k ln 2 + low ln x + <ln Q>)
    log2 = _HALF + Fraction(1 + k, divisor)
    log_x = Fraction(low, divisor)
    return _integrand(poly, log_x, divisor, log2, order)


def build_integrand(spec: LatticeSpec, order: int) -> Integrand:
    if order < 0:
        raise ValueError("order must be non-negative")
    if spec.kind == "kagome":
        return kagome_integrand(order)
    if spec.kind in _HAND_REDUCED:
        make, log_x, divisor = _HAND_REDUCED[spec.kind]
        return _integrand(make(), log_x, divisor, 0, order)
    return utiyama_integrand(spec.bonds, order)


def same_up_to_reflection(a: Integrand, b: Integrand) -> bool:
    """Equal polynomials, either directly or after theta2 -> -theta2."""
    if len(a.polynomial) != len(b.polynomial):
        return False
    if a.polynomial == b.polynomial:
        return True
    return tuple(c.reflect() for c in a.polynomial) == b.polynomial


def edge_density(spec: LatticeSpec) -> Fraction:
    """E/(2V) of the infinite lattice."""
    return -build_integrand(spec, 0).log_x_prefactor


def critical_x(spec: LatticeSpec | str) -> Optional[QuadSurd]:
    """Exact critical low-temperature variable, where one is tabulated."""
    name = spec if isinstance(spec, str) else spec.matching_preset()
    return {
        "square": QuadSurd(-1, 1, 2),
        "triangular": QuadSurd(0, Fraction(1, 3), 3),
        "hexagonal": QuadSurd(2, -1, 3),
    }.get(name)
