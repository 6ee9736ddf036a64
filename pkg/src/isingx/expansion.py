"""Low-temperature free-energy coefficients a_G(n)/n!.

``expand_free_energy`` is the production path for every lattice; the
``a_*_closed`` functions are the explicit finite sums for the square,
triangular and hexagonal lattices and serve as verification paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator

from .exact_core import QuadSurd, series_log
from .lattices import LatticeSpec, build_integrand, critical_x
from .walks import s_hexagonal, s_triangular


@dataclass(frozen=True)
class FreeEnergySeries:
    """-beta*phi = log_x_prefactor ln x + log2_constant ln 2 + sum_n terms[n] x^n.

    ``terms[n]`` is a_G(n)/n!; ``terms[0]`` is always 0.
    """

    lattice: LatticeSpec
    order: int
    terms: tuple[Fraction, ...]
    log_x_prefactor: Fraction
    log2_constant: Fraction

    def a(self, n: int) -> Fraction:
        """a_G(n) with the factorial restored."""
        return self.terms[n] * factorial(n)

    def truncate(self, order: int) -> "FreeEnergySeries":
        if order > self.order:
            raise ValueError(f"series only known to order {self.order}")
        return FreeEnergySeries(self.lattice, order, self.terms[: order + 1],
                                self.log_x_prefactor, self.log2_constant)

    def evaluate(self, x: float) -> float:
        """Float value of the truncated -beta*phi at x."""
        import math

        s = sum(float(t) * x ** n for n, t in enumerate(self.terms))
        return float(self.log_x_prefactor) * math.log(x) + float(self.log2_constant) * math.log(2) + s


@lru_cache(maxsize=64)
def _expand(spec: LatticeSpec, order: int) -> FreeEnergySeries:
    integrand = build_integrand(spec, order)
    logq = series_log(integrand.q)
    terms = tuple(c.constant_term() / integrand.site_divisor for c in logq.coeffs)
    if terms[0] != 0:
        raise ArithmeticError("log of the integrand has a non-zero constant term")
    return FreeEnergySeries(spec, order, terms, integrand.log_x_prefactor,
                            integrand.log2_constant)


def expand_free_energy(spec: LatticeSpec | str, order: int) -> FreeEnergySeries:
    """Integrand -> ln over the TrigPoly ring -> torus average -> / site divisor."""
    if isinstance(spec, str):
        spec = LatticeSpec(spec)
    if order < 1:
        raise ValueError("order must be at least 1")
    return _expand(spec, order)


# --- closed forms -----------------------------------------------------------

def _compositions(n: int, sizes: tuple[int, ...]) -> Iterator[dict[int, int]]:
    """Multiplicities {size: c} with sum size*c == n over the allowed sizes."""
    sizes = tuple(sorted(sizes, reverse=True))

    def rec(i, rest, acc):
        if rest == 0:
            yield dict(acc)
            return
        if i == len(sizes):
            return
        s = sizes[i]
        for c in range(rest // s, -1, -1):
            acc[s] = c
            yield from rec(i + 1, rest - c * s, acc)
        acc.pop(s, None)

    yield from rec(0, n, {})


def _multinomial(counts) -> int:
    total = 0
    out = 1
    for c in counts:
        total += c
        out *= comb(total, c)
    return out


def a_square_closed(n: int) -> Fraction:
    """a_sq(n) from the quadruple sum over c1 + 2c2 + 3c3 + 4c4 = n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2:
        return Fraction(0)
    total = Fraction(0)
    for c in _compositions(n, (1, 2, 3, 4)):
        c1, c2, c3, c4 = (c.get(i, 0) for i in (1, 2, 3, 4))
        k = c1 + c2 + c3 + c4
        m = c1 + c3
        if m % 2:
            continue
        sign = -1 if (c2 + c3 + c4 - 1) % 2 else 1
        total += Fraction(sign * _multinomial((c1, c2, c3, c4)) * 2 ** c2 * comb(m, m // 2) ** 2, k)
    return total * factorial(n) / 2


def a_triangular_closed(n: int) -> Fraction:
    """a_tri(n) as a double sum over (k, l) with walk counts S_tri(k - l)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2:
        return Fraction(0)
    h = n // 2
    total = Fraction(0)
    for k in range(1, h + 1):
        if h - k > k:
            continue
        sign = -1 if (k + h + 1) % 2 else 1
        inner = sum(comb(h - k, l) * 3 ** l * s_triangular(k - l) for l in range(h - k + 1))
        total += Fraction(sign * comb(k, h - k) * inner, k)
    return total * factorial(n) / 2


def a_hexagonal_closed(n: int) -> Fraction:
    """a_hex(n) as a sum over k, (c_1..c_6), l, r with S_hex(2(l + r)).

    ln Q with Q - 1 = (3-P)x + 3x^2 + 2(1+P)x^3 + 3x^4 + (3-P)x^5 + x^6,
    P = 2 p_hex, expanded multinomially; <P^m> = S_hex(2m).
    """
    if n < 1:
        raise ValueError("n must be positive")
    total = Fraction(0)
    for c in _compositions(n, (1, 2, 3, 4, 5, 6)):
        c1, c2, c3, c4, c5, c6 = (c.get(i, 0) for i in range(1, 7))
        k = c1 + c2 + c3 + c4 + c5 + c6
        a = c1 + c5
        weight = Fraction((-1) ** (k - 1) * factorial(k - 1) * 3 ** (c2 + c4) * 2 ** c3,
                          factorial(c1) * factorial(c2) * factorial(c3)
                          * factorial(c4) * factorial(c5) * factorial(c6))
        inner = 0
        for l in range(a + 1):
            for r in range(c3 + 1):
                inner += ((-1) ** l * comb(a, l) * 3 ** (a - l) * comb(c3, r)
                          * s_hexagonal(2 * (l + r)))
        total += weight * inner
    return total * factorial(n) / 4


CLOSED_FORMS = {
    "square": a_square_closed,
    "triangular": a_triangular_closed,
    "hexagonal": a_hexagonal_closed,
}


def asymptotic_ratio(spec: LatticeSpec | str, n: int, fes: FreeEnergySeries | None = None) -> QuadSurd:
    """|a(n)|/n! * x_c^n, exact in Q(sqrt d)."""
    if isinstance(spec, str):
        spec = LatticeSpec(spec)
    xc = critical_x(spec)
    if xc is None:
        raise ValueError(f"no tabulated critical point for {spec.name}")
    if fes is None or fes.order < n:
        fes = expand_free_energy(spec, n)
    return xc ** n * abs(fes.terms[n])
