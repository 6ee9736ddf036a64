"""Numbers of states, finite-lattice predictions and energy distributions."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt
from typing import Optional, Union

from .exact_core import XSeries, series_exp, series_mul
from .expansion import FreeEnergySeries
from .lattices import LatticeSpec, critical_x, edge_density

BULK = "bulk"
FINITE_SYMBOLIC = "finite_symbolic"
FINITE_AT = "finite_at"


class VPoly(tuple):
    """Polynomial in V with Fraction coefficients; element i multiplies V^i."""

    def __new__(cls, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return super().__new__(cls, cs)

    def __call__(self, V) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self):
            acc = acc * V + c
        return acc

    @property
    def degree(self) -> int:
        return len(self) - 1

    def as_map(self) -> dict[str, str]:
        return {f"V^{i}": str(c) for i, c in enumerate(self) if c}

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for i, c in enumerate(self):
            if c:
                parts.append(str(c) if i == 0 else f"{c}*V" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)


Entry = Union[Fraction, VPoly]


@dataclass(frozen=True)
class DOSTable:
    lattice: LatticeSpec
    mode: str
    entries: dict[int, Entry]
    order: int
    V: Optional[int] = None
    #: energies r below this are claimed exact for a finite lattice (None: unknown)
    horizon: Optional[int] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __getitem__(self, r: int) -> Entry:
        return self.entries[r]

    def values(self) -> list[Entry]:
        return [self.entries[r] for r in range(self.order + 1)]


def _tail(fes: FreeEnergySeries, order: int) -> XSeries:
    if fes.order < order:
        raise ValueError(f"free energy known to order {fes.order}, {order} requested")
    return XSeries(fes.terms[: order + 1])


# Bulk numbers of states are quoted per primitive cell. The honeycomb cell
# holds two sites, so its g(N) is Y_N({2 a(n)})/N! while a(n) stays per site.
SITES_PER_CELL = {"hexagonal": 2}


def bulk_states(fes: FreeEnergySeries, order: int,
                sites_per_cell: Optional[int] = None) -> DOSTable:
    """g(N) = Y_N({s a(n)})/N!: the coefficients of exp(s sum a(n) x^n/n!).

    s is the number of sites per primitive cell (1 except hexagonal, 2).
    """
    if sites_per_cell is None:
        sites_per_cell = SITES_PER_CELL.get(fes.lattice.matching_preset(), 1)
    g = series_exp(_tail(fes, order).scale(sites_per_cell))
    return DOSTable(fes.lattice, BULK, dict(enumerate(g.coeffs)), order,
                    meta={"sites_per_cell": sites_per_cell})


def finite_symbolic(fes: FreeEnergySeries, order: int) -> dict[int, VPoly]:
    """Y_N({V a(n)})/N! as polynomials in V.

    exp(V f) = sum_k V^k f^k / k!, so the V^k coefficient of entry N is
    [x^N] f^k / k!.
    """
    f = _tail(fes, order)
    coeffs: dict[int, list[Fraction]] = {N: [Fraction(0)] for N in range(order + 1)}
    coeffs[0] = [Fraction(1)]
    power = XSeries.from_poly([1], order)
    k = 0
    while True:
        k += 1
        power = series_mul(power, f)
        if all(c == 0 for c in power.coeffs):
            break
        kf = factorial(k)
        for N, c in enumerate(power.coeffs):
            if c:
                row = coeffs[N]
                row.extend([Fraction(0)] * (k + 1 - len(row)))
                row[k] += c / kf
    return {N: VPoly(row) for N, row in coeffs.items()}


def claimed_horizon(spec: LatticeSpec, V: int) -> Optional[int]:
    """Energy below which the V * bulk replacement is exact on an M x M torus.

    2M on the square lattice and 4M on the triangular one (the latter
    measured by enumeration, see ``isingx.oracle.HORIZONS``); None otherwise.
    """
    factor = {"square": 2, "triangular": 4}.get(spec.matching_preset())
    m = isqrt(V)
    if factor is None or m * m != V:
        return None
    return factor * m


def finite_states(fes: FreeEnergySeries, V: Optional[int], order: int) -> DOSTable:
    """Finite-lattice number of states g_V(N) = Y_N({V a(n)})/N!.

    ``V=None`` returns polynomials in V; an integer V evaluates them.
    """
    sym = finite_symbolic(fes, order)
    if V is None:
        return DOSTable(fes.lattice, FINITE_SYMBOLIC, sym, order)
    if V < 1:
        raise ValueError("V must be a positive integer")
    entries = {N: p(V) for N, p in sym.items()}
    horizon = claimed_horizon(fes.lattice, V)
    return DOSTable(fes.lattice, FINITE_AT, entries, order, V=V, horizon=horizon)


@dataclass(frozen=True)
class SymbolicPartition:
    """2 x^{-density V} sum_r g_V(r) x^r with g_V(r) polynomials in V."""

    coeffs: tuple[VPoly, ...]
    log_x_prefactor: VPoly     # -density * V
    log_2: int = 1

    def at(self, V: int) -> XSeries:
        return XSeries([p(V) for p in self.coeffs], self.log_x_prefactor(V), self.log_2)


def partition_polynomial(dos: DOSTable):
    """Assemble 2 x^{-E/2} sum_r g_V(r) x^r.

    The factor 2 (global spin flip) is carried as ``prefactor_log_2 = 1`` and
    -E/2 = -V * edge_density as ``prefactor_log_x``. FiniteAt tables give an
    ``XSeries``; symbolic tables a :class:`SymbolicPartition`.
    """
    density = edge_density(dos.lattice)
    if dos.mode == FINITE_AT:
        return XSeries(dos.values(), -density * dos.V, 1)
    if dos.mode == FINITE_SYMBOLIC:
        return SymbolicPartition(tuple(dos.values()), VPoly((0, -density)), 1)
    raise ValueError("bulk tables have no factor-2 partition polynomial; use a finite mode")


def configuration_counts(dos: DOSTable) -> list[int]:
    """Predicted spin-configuration counts 2 g_V(r) for a FiniteAt table."""
    series = partition_polynomial(dos)
    out = []
    for c in series.coeffs:
        v = c * 2 ** int(series.prefactor_log_2)
        out.append(int(v) if v.denominator == 1 else v)
    return out


def energy_distribution(dos: DOSTable, x: float, truncation: int,
                        x_max: Optional[float] = None, tail_tol: float = 1e-6) -> list[float]:
    """P(N) = g(N) x^N / sum_{r<=T} g(r) x^r for N = 0..T (self-normalised form).

    For bulk tables x must stay below ``x_max`` (default 0.95 x_c); the
    neglected tail is estimated geometrically from the last retained terms.
    """
    if dos.mode == FINITE_SYMBOLIC:
        raise ValueError("evaluate the symbolic table at a V first")
    if truncation > dos.order:
        raise ValueError(f"truncation {truncation} exceeds table order {dos.order}")
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    xc = critical_x(dos.lattice)
    if x_max is None:
        if dos.mode == BULK and xc is None:
            raise ValueError(f"no critical point known for {dos.lattice.name}; pass x_max")
        x_max = 0.95 * float(xc) if xc is not None else 1.0
    if x >= x_max:
        raise ValueError(f"x = {x} is outside the allowed range x < {x_max:.6g}")
    g = dos.values()[: truncation + 1]
    if any(v < 0 for v in g):
        warnings.warn(f"{dos.lattice.name}: negative numbers of states; "
                      "the distribution has negative entries", RuntimeWarning)
    terms = [float(v) * x ** N for N, v in enumerate(g)]
    total = math.fsum(terms)
    if dos.mode == BULK or xc is not None:
        rho = x / float(xc) if xc is not None else x / x_max
        last = max(abs(t) for t in terms[-2:]) if len(terms) > 1 else abs(terms[-1])
        tail = last * rho / (1 - rho) / abs(total)
        if tail > tail_tol:
            raise ValueError(f"truncation {truncation} too small: tail mass estimate {tail:.2e}")
    return [t / total for t in terms]
