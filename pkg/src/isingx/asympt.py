"""Pochhammer symbols, generalised hypergeometric series and the asymptotic
number-of-states formulas built on 1F1(1 - N/2; 2; -1)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence, Union

from .bell import lah, partial_bell
from .exact_core import QuadSurd, as_rational
from .lattices import LatticeSpec, critical_x

Number = Union[Fraction, float]


class ConvergenceError(ArithmeticError):
    """A float series failed to reach its tolerance."""


def pochhammer(a, n: int):
    """Rising factorial a(a+1)...(a+n-1); exact for rational a."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not isinstance(a, float):
        a = as_rational(a)
    out = 1 if isinstance(a, float) else Fraction(1)
    for i in range(n):
        out *= a + i
        if out == 0:
            break
    return out


def _nonpositive_int(a) -> Optional[int]:
    if isinstance(a, float):
        if a.is_integer() and a <= 0:
            return int(-a)
        return None
    a = as_rational(a)
    if a.denominator == 1 and a <= 0:
        return int(-a)
    return None


@dataclass(frozen=True)
class HypergeometricSpec:
    upper: tuple
    lower: tuple
    argument: Number
    #: relative tolerance for float mode; None requests exact arithmetic
    tolerance: Optional[float] = None
    max_terms: int = 200_000

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))

    @property
    def terminates_at(self) -> Optional[int]:
        """Index of the last possibly non-zero term, when the series terminates."""
        stops = [m for m in map(_nonpositive_int, self.upper) if m is not None]
        return min(stops) if stops else None

    @property
    def exact(self) -> bool:
        return self.tolerance is None and not isinstance(self.argument, float)


def pfq(spec: HypergeometricSpec) -> Number:
    """sum_k prod (a_i)_k / prod (b_j)_k * z^k / k!.

    Terminating series are summed exactly when the argument is rational and
    no tolerance is given. Otherwise the sum runs in floats until a term
    falls below ``tolerance`` relative to the partial sum.
    """
    last = spec.terminates_at
    for b in spec.lower:
        m = _nonpositive_int(b)
        if m is not None and (last is None or m < last):
            raise ZeroDivisionError(f"lower parameter {b} makes the series undefined")
    if spec.exact:
        if last is None:
            raise ValueError("non-terminating series requested in exact mode; give a tolerance")
        z = as_rational(spec.argument)
        up = [as_rational(a) for a in spec.upper]
        lo = [as_rational(b) for b in spec.lower]
        total = Fraction(0)
        term = Fraction(1)
        for k in range(last + 1):
            total += term
            num = math.prod((a + k for a in up), start=Fraction(1))
            den = math.prod((b + k for b in lo), start=Fraction(1)) * (k + 1)
            term = term * num * z / den
        return total

    tol = spec.tolerance if spec.tolerance is not None else 1e-15
    z = float(spec.argument)
    up = [float(a) for a in spec.upper]
    lo = [float(b) for b in spec.lower]
    p, q = len(up), len(lo)
    if last is None and (p > q + 1 or (p == q + 1 and abs(z) >= 1)):
        raise ConvergenceError(f"{p}F{q} series diverges at z = {z}")
    terms = []
    term = 1.0
    limit = spec.max_terms if last is None else last + 1
    quiet = 0
    for k in range(limit):
        terms.append(term)
        if last is None:
            if abs(term) <= tol * abs(math.fsum(terms[-64:]) or 1.0):
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
        num = math.prod(a + k for a in up)
        den = math.prod(b + k for b in lo) * (k + 1)
        term = term * num * z / den
    else:
        if last is None:
            raise ConvergenceError(f"no convergence to {tol} in {limit} terms")
    return math.fsum(terms)


def hyp1f1_state(N: int) -> Fraction:
    """1F1(1 - N/2; 2; -1) for even N, exactly."""
    if N % 2 or N < 0:
        raise ValueError("N must be a non-negative even integer")
    return pfq(HypergeometricSpec((1 - N // 2,), (2,), -1))


def _state_factor(N: int) -> Fraction:
    # the 1F1 form covers N >= 2; the ground state carries weight exactly 1
    return Fraction(1) if N == 0 else hyp1f1_state(N)


def sets_of_lists(l: int) -> int:
    """l! * 1F1(1 - l; 2; -1): ordered-block set partitions (sets of lists)."""
    if l < 1:
        raise ValueError("l must be positive")
    v = factorial(l) * pfq(HypergeometricSpec((1 - l,), (2,), -1))
    if v.denominator != 1:
        raise ArithmeticError(f"non-integral value {v}")
    return int(v)


def lah_identity_chain(N: int) -> tuple[Fraction, ...]:
    """The same number computed five ways for even N >= 2.

    Y_N(0, 2!, 0, 4!, ...)/N!, sum_k B_{N/2,k}(1!, 2!, ...)/(N/2)!,
    sum_k L(N/2, k)/(N/2)!, sum_k (N/2-1)!/(k!(k-1)!(N/2-k)!) and
    1F1(1 - N/2; 2; -1). All entries should be equal.
    """
    if N < 2 or N % 2:
        raise ValueError("N must be an even integer >= 2")
    h = N // 2
    even = [factorial(n) if n % 2 == 0 else 0 for n in range(1, N + 1)]
    y = sum((partial_bell(N, k, even) for k in range(1, N + 1)), Fraction(0)) / factorial(N)
    b = sum((partial_bell(h, k, [factorial(j) for j in range(1, h + 1)])
             for k in range(1, h + 1)), Fraction(0)) / factorial(h)
    l = sum((lah(h, k) for k in range(1, h + 1)), Fraction(0)) / factorial(h)
    d = sum((Fraction(factorial(h - 1), factorial(k) * factorial(k - 1) * factorial(h - k))
             for k in range(1, h + 1)), Fraction(0))
    f = hyp1f1_state(N)
    return (y, b, l, d, f)


_ASYMPTOTIC = ("square", "triangular", "hexagonal")


def _preset(spec) -> str:
    name = spec if isinstance(spec, str) else spec.matching_preset()
    if name not in _ASYMPTOTIC:
        raise ValueError(f"asymptotic forms exist for {', '.join(_ASYMPTOTIC)}, not {name!r}")
    return name


def _sign(name: str, half: int) -> int:
    # triangular: (1/x_c)^n -> -(i/x_c)^n
    if name == "triangular":
        return 1 if half % 2 else -1
    return 1


def asymptotic_states_exact(spec, N: int) -> QuadSurd:
    """x_c^{-N} 1F1(1 - N/2; 2; -1) in Q(sqrt d), with the triangular sign."""
    name = _preset(spec)
    xc = critical_x(name)
    if N % 2:
        return QuadSurd(0, 0, xc.d)
    return xc ** (-N) * (_sign(name, N // 2) * _state_factor(N))


def asymptotic_states(spec, N: int) -> float:
    """Asymptotic g(N); zero for odd N."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return float(asymptotic_states_exact(spec, N))


def _ratio(name: str, x: float) -> float:
    xc = float(critical_x(name))
    if not 0 < x < xc:
        raise ValueError(f"x = {x} outside (0, x_c = {xc:.12g}); the denominator diverges")
    return x / xc


def asymptotic_denominator(spec, x: float, truncation: int, order: str = "forward",
                           tail_tol: float = 1e-12) -> float:
    """1 + sum_{r=1}^T (x/x_c)^{2r} 1F1(1 - r; 2; -1).

    ``order`` picks the summation: 'forward' (compensated, r ascending) or
    'horner' (nested in (x/x_c)^2 from the top). The neglected tail is
    bounded geometrically from the last term and the growth of 1F1.
    """
    name = _preset(spec)
    rho = _ratio(name, x)
    T = truncation
    if T < 1:
        raise ValueError("truncation must be at least 1")
    r2 = rho * rho
    F = [float(_state_factor(2 * r)) for r in range(T + 2)]
    growth = F[T + 1] / F[T]          # 1F1(1-r;2;-1) grows sub-geometrically
    q = r2 * growth
    if q >= 1:
        raise ConvergenceError("truncation too small for the tail bound")
    tail = r2 ** T * F[T] * q / (1 - q)
    if tail > tail_tol:
        raise ConvergenceError(f"tail of the denominator estimated at {tail:.2e}")
    signs = [_sign(name, r) for r in range(T + 1)]
    if order == "forward":
        return math.fsum(signs[r] * r2 ** r * F[r] for r in range(T + 1))
    if order == "horner":
        acc = 0.0
        for r in range(T, 0, -1):
            acc = (acc + signs[r] * F[r]) * r2
        return 1.0 + acc
    raise ValueError("order must be 'forward' or 'horner'")


def asymptotic_distribution(spec, x: float, N: int, truncation: int,
                            order: str = "forward") -> float:
    """Asymptotic P(N, x) = (x/x_c)^N 1F1(1 - N/2; 2; -1) / denominator."""
    name = _preset(spec)
    rho = _ratio(name, x)
    if N < 0:
        raise ValueError("N must be non-negative")
    den = asymptotic_denominator(name, x, truncation, order)
    if N % 2:
        return 0.0
    return _sign(name, N // 2) * rho ** N * float(_state_factor(N)) / den


# --- Onsager kappa expansion ---------------------------------------------

def onsager_kappa(betaJ: float) -> float:
    """kappa = sinh(2K) / (2 cosh^2(2K)); criticality at 16 kappa^2 = 1."""
    return math.sinh(2 * betaJ) / (2 * math.cosh(2 * betaJ) ** 2)


def onsager_kappa_free_energy(betaJ: float, tolerance: float = 1e-15) -> float:
    """ln(2 cosh 2K) - kappa^2 4F3(1, 1, 3/2, 3/2; 2, 2, 2; 16 kappa^2)."""
    k = onsager_kappa(betaJ)
    z = 16 * k * k
    if z >= 1:
        raise ConvergenceError(f"16 kappa^2 = {z:.6g} >= 1: at or past criticality")
    spec = HypergeometricSpec((1, 1, 1.5, 1.5), (2, 2, 2), z, tolerance=tolerance)
    return math.log(2 * math.cosh(2 * betaJ)) - k * k * pfq(spec)


def onsager_kappa_check(betaJ: float, nodes: int = 256) -> tuple[float, float]:
    """(kappa-series value, quadrature value) of -beta*phi on the square lattice."""
    from .oracle import quadrature_free_energy

    series = onsager_kappa_free_energy(betaJ)
    if betaJ == 0:
        return series, math.log(2)
    x = math.exp(-2 * betaJ)
    return series, quadrature_free_energy("square", x, nodes).value
