"""Independent checks: exhaustive spin enumeration on small lattices,
numerical quadrature of the bulk free-energy integrals, high-temperature
coefficients and even-subgraph (cycle space) enumeration.

Nothing here uses the series machinery, so agreement with it is evidence.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numba
import numpy as np

from .exact_core import COS1, COS12, COS2, TrigPoly

# the bundled TBB is often too old for numba; the workqueue layer is always there
if "NUMBA_THREADING_LAYER" not in os.environ:
    numba.config.THREADING_LAYER = "workqueue"

MAX_ENUM_V = 30
MAX_CYCLE_DIM = 34


class Boundary(enum.Enum):
    PERIODIC = "periodic"
    FREE = "free"


@dataclass(frozen=True)
class FiniteLattice:
    preset: str
    rows: int
    cols: int
    boundary: Boundary = Boundary.PERIODIC
    edges: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        periodic = self.boundary is Boundary.PERIODIC
        r, c = self.rows, self.cols
        if self.preset in ("square", "triangular"):
            if periodic and (r < 3 or c < 3):
                raise ValueError("periodic square/triangular lattices need rows, cols >= 3")
            if r < 1 or c < 1:
                raise ValueError("rows and cols must be positive")
        elif self.preset == "hexagonal":
            if periodic and (r < 2 or c < 4 or r % 2 or c % 2):
                raise ValueError("periodic brick-wall honeycomb needs even rows >= 2, even cols >= 4")
            if r < 1 or c < 2:
                raise ValueError("honeycomb needs rows >= 1 and cols >= 2")
        else:
            raise ValueError(f"no finite lattice for {self.preset!r}")
        object.__setattr__(self, "edges", tuple(self._build()))
        if periodic:
            per_site = {"square": 2, "triangular": 3, "hexagonal": Fraction(3, 2)}[self.preset]
            if len(self.edges) != per_site * self.V:
                raise AssertionError("edge count does not match the lattice coordination")

    @property
    def V(self) -> int:
        return self.rows * self.cols

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def name(self) -> str:
        return f"{self.preset}-{self.rows}x{self.cols}-{self.boundary.value}"

    def _site(self, i, j) -> Optional[int]:
        if self.boundary is Boundary.PERIODIC:
            return (i % self.rows) * self.cols + (j % self.cols)
        if 0 <= i < self.rows and 0 <= j < self.cols:
            return i * self.cols + j
        return None

    def _build(self):
        if self.preset == "hexagonal":
            # brick wall: horizontal rings plus one vertical bond per even-parity site
            offsets = [(0, 1)]
            steps = lambda i, j: offsets + ([(1, 0)] if (i + j) % 2 == 0 else [])
        elif self.preset == "square":
            steps = lambda i, j: [(0, 1), (1, 0)]
        else:
            steps = lambda i, j: [(0, 1), (1, 0), (1, 1)]
        seen = set()
        for i in range(self.rows):
            for j in range(self.cols):
                a = self._site(i, j)
                for di, dj in steps(i, j):
                    b = self._site(i + di, j + dj)
                    if b is None or b == a:
                        continue
                    e = (min(a, b), max(a, b))
                    if e in seen:
                        raise ValueError(f"{self.name}: multi-edge {e}; lattice too small")
                    seen.add(e)
                    yield e

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        nbrs = [[] for _ in range(self.V)]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        start = np.zeros(self.V + 1, dtype=np.int64)
        start[1:] = np.cumsum([len(n) for n in nbrs])
        flat = np.array([b for n in nbrs for b in n], dtype=np.int64)
        return start, flat


def square_lattice(rows, cols=None, boundary=Boundary.PERIODIC):
    return FiniteLattice("square", rows, rows if cols is None else cols, boundary)


def triangular_lattice(rows, cols=None, boundary=Boundary.PERIODIC):
    return FiniteLattice("triangular", rows, rows if cols is None else cols, boundary)


def hexagonal_lattice(rows, cols, boundary=Boundary.PERIODIC):
    return FiniteLattice("hexagonal", rows, cols, boundary)


# --- exhaustive enumeration --------------------------------------------------

@numba.njit(cache=True)
def _ctz(i):
    n = 0
    while (i & 1) == 0:
        i >>= 1
        n += 1
    return n


@numba.njit(parallel=True, cache=True)
def _enumerate_kernel(V, E, start, nbr, edge_a, edge_b, low_bits):
    """Histogram of unsatisfied-edge counts over all 2^V spin configurations.

    The top V - low_bits spins are fixed per chunk; inside a chunk the low
    spins follow a Gray code, so each step flips one spin and updates the
    energy from its neighbours only.
    """
    n_chunks = 1 << (V - low_bits)
    hists = np.zeros((n_chunks, E + 1), dtype=np.int64)
    for chunk in numba.prange(n_chunks):
        spins = np.zeros(V, dtype=np.int8)
        for k in range(V - low_bits):
            spins[low_bits + k] = (chunk >> k) & 1
        energy = 0
        for e in range(E):
            if spins[edge_a[e]] != spins[edge_b[e]]:
                energy += 1
        h = hists[chunk]
        h[energy] += 1
        for i in range(1, 1 << low_bits):
            k = _ctz(i)
            s = spins[k]
            delta = 0
            for p in range(start[k], start[k + 1]):
                if spins[nbr[p]] == s:
                    delta += 1
                else:
                    delta -= 1
            spins[k] = 1 - s
            energy += delta
            h[energy] += 1
    return hists.sum(axis=0)


def enumerate_counts(lat: FiniteLattice, threads: Optional[int] = None) -> list[int]:
    """g(r) for r = 0..E: spin configurations with exactly r unsatisfied edges."""
    V = lat.V
    if V > MAX_ENUM_V:
        raise ValueError(f"V = {V} exceeds the enumeration budget of {MAX_ENUM_V}")
    if threads is not None:
        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))
    start, nbr = lat.csr()
    ea = np.array([a for a, _ in lat.edges], dtype=np.int64)
    eb = np.array([b for _, b in lat.edges], dtype=np.int64)
    top = min(V, 8, max(0, V - 4))
    hist = _enumerate_kernel(V, lat.E, start, nbr, ea, eb, V - top)
    counts = [int(v) for v in hist]
    if sum(counts) != 2 ** V:
        raise AssertionError("enumeration lost configurations")
    return counts


def enumerate_dos(lat: FiniteLattice, threads: Optional[int] = None):
    """Exact DOS of a finite lattice as a FiniteAt DOSTable (counts include the factor 2)."""
    from .lattices import LatticeSpec
    from .states import FINITE_AT, DOSTable

    counts = enumerate_counts(lat, threads)
    return DOSTable(LatticeSpec(lat.preset), FINITE_AT,
                    {r: Fraction(c) for r, c in enumerate(counts)}, lat.E, V=lat.V,
                    meta={"source": "enumeration", "lattice": lat.name})


# --- horizons --------------------------------------------------------------

def measure_horizon(lat: FiniteLattice, counts: Optional[list[int]] = None) -> int:
    """Smallest r where the V * bulk prediction (times 2) differs from enumeration."""
    from .expansion import expand_free_energy
    from .states import configuration_counts, finite_states

    if counts is None:
        counts = enumerate_counts(lat)
    fes = expand_free_energy(lat.preset, lat.E)
    predicted = configuration_counts(finite_states(fes, lat.V, lat.E))
    for r, (p, c) in enumerate(zip(predicted, counts)):
        if p != c:
            return r
    return lat.E + 1


# First energy at which the periodic lattice departs from the V * bulk
# prediction, measured with measure_horizon. Square: 2M; triangular: 4M;
# brick-wall honeycomb: the shortest wrap-around ring, min(rows, cols).
HORIZONS = {
    ("square", 4, 4): 8,
    ("square", 5, 5): 10,
    ("triangular", 3, 3): 12,
    ("triangular", 4, 4): 16,
    ("hexagonal", 2, 4): 4,
    ("hexagonal", 4, 4): 4,
    ("hexagonal", 4, 6): 6,
}


# --- quadrature ------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    nodes: int


class QuadratureError(ArithmeticError):
    pass


def _hyperbolic(x):
    K = -math.log(x) / 2
    return math.cosh(2 * K), math.sinh(2 * K)


def _integrand(preset: str, x: float):
    """(constant, weight, f) with -beta*phi = constant + weight * <ln f(t1, t2)>."""
    C, S = _hyperbolic(x)
    if preset == "square":
        return math.log(2), 0.5, lambda a, b: C * C - S * (np.cos(a) + np.cos(b))
    if preset == "triangular":
        return math.log(2), 0.5, lambda a, b: (C ** 3 + S ** 3
                                               + S * (np.cos(a) + np.cos(b) - np.cos(a + b)))
    if preset == "hexagonal":
        return 0.75 * math.log(2), 0.25, lambda a, b: (
            C ** 3 + 1 - S * S * (np.cos(a) + np.cos(b) + np.cos(a + b)))
    if preset == "kagome":
        return math.log(2), 1 / 6, lambda a, b: 0.25 * (
            C ** 6 + S ** 6 + 2 * C ** 3 * S ** 3 + 3 * C * C
            - 2 * (C * S ** 3 + C * C * S * S) * (np.cos(a) + np.cos(b) + np.cos(a + b)))
    if preset == "wannier":
        K = -math.log(x) / 2
        k = (math.exp(4 * K) - 1) / (math.exp(4 * K) + 1) ** 2
        const = math.log(math.exp(3 * K) + math.exp(-K))
        return const, 0.5, lambda a, b: (1 - 2 * k + 2 * k * (np.cos(a) + np.cos(b)
                                                               + np.cos(math.pi - a - b)))
    raise ValueError(f"no quadrature integrand for {preset!r}")


def _torus_mean_log(f, n: int) -> float:
    t = 2 * math.pi * np.arange(n) / n
    a, b = np.meshgrid(t, t, indexing="ij")
    vals = f(a, b)
    if np.any(vals <= 0):
        raise QuadratureError("integrand is not positive on the grid (x at or past criticality?)")
    return float(np.log(vals).mean())


def quadrature_free_energy(preset: str, x: float, nodes: int = 256,
                           tol: float = 1e-11) -> QuadratureResult:
    """-beta*phi from the closed-form integral, product trapezoid rule.

    The rule is spectrally accurate for periodic analytic integrands; the
    error estimate is the change under node doubling (nodes/2 -> nodes).
    Any x in (0, 1) away from the critical point is accepted.
    """
    if not 0 < x <= 1:
        raise ValueError("x must lie in (0, 1]")
    if nodes < 32 or nodes & (nodes - 1):
        raise ValueError("nodes must be a power of two >= 32")
    const, weight, f = _integrand(preset, x)
    coarse = _torus_mean_log(f, nodes // 2)
    fine = _torus_mean_log(f, nodes)
    err = weight * abs(fine - coarse)
    if err > tol:
        raise QuadratureError(f"{preset} quadrature at x = {x}: node doubling changed "
                              f"the value by {err:.2e} (> {tol:.0e}); too close to x_c")
    return QuadratureResult(const + weight * fine, err, nodes)


def wannier_free_energy(x: float, nodes: int = 256, tol: float = 1e-11) -> QuadratureResult:
    """Triangular -beta*phi in the original (kappa, cos(pi - t1 - t2)) form."""
    return quadrature_free_energy("wannier", x, nodes, tol)


# --- high temperature ------------------------------------------------------

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, w in enumerate(b):
                out[i + j] += u * w
    return out


def high_temp_coefficients(lat: FiniteLattice, counts: Optional[list[int]] = None) -> list[int]:
    """q(r) with Z = 2^V cosh^E(K) sum_r q(r) v^r, v = tanh K.

    From Z = e^{KE} sum_r g(r) x^r and e^{+-K}/cosh K = 1 +- v:
    sum_r q(r) v^r = 2^-V sum_r g(r) (1 + v)^(E - r) (1 - v)^r.
    """
    if counts is None:
        counts = enumerate_counts(lat)
    E = lat.E
    plus = [[1]]
    minus = [[1]]
    for _ in range(E):
        plus.append(_poly_mul(plus[-1], [1, 1]))
        minus.append(_poly_mul(minus[-1], [1, -1]))
    total = [0] * (E + 1)
    for r, g in enumerate(counts):
        if g:
            for i, c in enumerate(_poly_mul(plus[E - r], minus[r])):
                total[i] += g * c
    q = []
    for r, t in enumerate(total):
        v = Fraction(t, 2 ** lat.V)
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral high-temperature coefficient q({r}) = {v}")
        q.append(int(v))
    if q[0] != 1 or q[1] != 0 or q[2] != 0:
        raise ArithmeticError(f"q(0..2) = {q[:3]}, expected 1, 0, 0")
    return q


@numba.njit(cache=True)
def _popcount(v):
    v = v - ((v >> 1) & 0x5555555555555555)
    v = (v & 0x3333333333333333) + ((v >> 2) & 0x3333333333333333)
    v = (v + (v >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (v * 0x0101010101010101) >> 56


@numba.njit(cache=True)
def _cycle_space_kernel(basis, E):
    hist = np.zeros(E + 1, dtype=np.int64)
    cur = np.uint64(0)
    hist[0] = 1
    for i in range(1, 1 << basis.shape[0]):
        cur ^= basis[_ctz(i)]
        hist[_popcount(cur)] += 1
    return hist


def even_subgraph_counts(lat: FiniteLattice) -> list[int]:
    """Number of edge subsets with every vertex of even degree, by size.

    The even subgraphs form the cycle space; it is spanned by the
    fundamental cycles of a spanning tree and enumerated by Gray code.
    """
    E, V = lat.E, lat.V
    if E > 64:
        raise ValueError("edge bitmasks are limited to 64 edges")
    parent = {0: None}
    order = [0]
    adj = [[] for _ in range(V)]
    for idx, (a, b) in enumerate(lat.edges):
        adj[a].append((b, idx))
        adj[b].append((a, idx))
    tree = set()
    for u in order:
        for w, idx in adj[u]:
            if w not in parent:
                parent[w] = (u, idx)
                tree.add(idx)
                order.append(w)
    if len(order) != V:
        raise ValueError("lattice graph is not connected")

    def root_path(u):
        mask = 0
        while parent[u] is not None:
            u, idx = parent[u]
            mask ^= 1 << idx
        return mask

    paths = [root_path(u) for u in range(V)]
    basis = [paths[a] ^ paths[b] ^ (1 << idx)
             for idx, (a, b) in enumerate(lat.edges) if idx not in tree]
    if len(basis) > MAX_CYCLE_DIM:
        raise ValueError(f"cycle space of dimension {len(basis)} is too large to enumerate")
    hist = _cycle_space_kernel(np.array(basis, dtype=np.uint64), E)
    return [int(v) for v in hist]


# --- sign invariance ---------------------------------------------------------

def sign_invariance_check(n_max: int) -> bool:
    """CT((c1 + c2 + c12)^n) == CT((-(c1 + c2) + c12)^n) for all n <= n_max."""
    if n_max > 16:
        raise ValueError("n_max is limited to 16")
    plus = COS1 + COS2 + COS12
    minus = -(COS1 + COS2) + COS12
    p = m = TrigPoly.constant(1)
    for _ in range(1, n_max + 1):
        p = p * plus
        m = m * minus
        if p.constant_term() != m.constant_term():
            return False
    return True
