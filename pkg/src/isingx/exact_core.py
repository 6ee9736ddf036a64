"""Exact arithmetic substrate: truncated power series and two-variable
trigonometric (Laurent) polynomials.

Rationals are ``fractions.Fraction`` throughout. A trigonometric polynomial
in (theta1, theta2) is stored by its Fourier modes, so that the normalised
integral over [0, 2pi]^2 is just the coefficient of mode (0, 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class RingError(ValueError):
    """Operands live in different coefficient rings or have different orders."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


# ---------------------------------------------------------------------------
# Trigonometric polynomials
# ---------------------------------------------------------------------------

Mode = tuple[int, int]


class TrigPoly:
    """Real trigonometric polynomial  sum_m c_m exp(i (m1 theta1 + m2 theta2)).

    Real-valuedness is enforced: c_m == c_{-m} for every mode (all coefficients
    are rational, so conjugation is the identity on them).
    """

    __slots__ = ("_modes", "_hash")

    def __init__(self, modes: Mapping[Mode, Scalar] | None = None):
        clean: dict[Mode, Fraction] = {}
        for key, value in (modes or {}).items():
            m1, m2 = int(key[0]), int(key[1])
            v = as_rational(value)
            if v:
                clean[(m1, m2)] = clean.get((m1, m2), Fraction(0)) + v
        clean = {k: v for k, v in clean.items() if v}
        for (m1, m2), v in clean.items():
            if clean.get((-m1, -m2)) != v:
                raise ValueError(
                    f"mode ({m1},{m2}) = {v} has no matching conjugate mode; "
                    "the polynomial would not be real"
                )
        self._modes = clean
        self._hash = None

    @classmethod
    def _trusted(cls, modes: dict[Mode, Fraction]) -> "TrigPoly":
        # caller guarantees symmetry and absence of zeros
        obj = cls.__new__(cls)
        obj._modes = modes
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> "TrigPoly":
        c = as_rational(c)
        return cls._trusted({(0, 0): c} if c else {})

    @classmethod
    def cos(cls, m1: int, m2: int, coeff: Scalar = 1) -> "TrigPoly":
        """coeff * cos(m1 theta1 + m2 theta2)."""
        c = as_rational(coeff)
        if (m1, m2) == (0, 0):
            return cls.constant(c)
        half = c / 2
        return cls._trusted({(m1, m2): half, (-m1, -m2): half} if c else {})

    # access ----------------------------------------------------------------
    @property
    def modes(self) -> dict[Mode, Fraction]:
        return dict(self._modes)

    def items(self):
        return self._modes.items()

    def __getitem__(self, mode: Mode) -> Fraction:
        return self._modes.get(mode, Fraction(0))

    def __len__(self) -> int:
        return len(self._modes)

    def is_zero(self) -> bool:
        return not self._modes

    def max_degree(self) -> int:
        return max((max(abs(a), abs(b)) for a, b in self._modes), default=0)

    def constant_term(self) -> Fraction:
        return self._modes.get((0, 0), Fraction(0))

    def reflect(self) -> "TrigPoly":
        """Substitute theta2 -> -theta2."""
        return TrigPoly._trusted({(a, -b): v for (a, b), v in self._modes.items()})

    def evaluate(self, theta1, theta2):
        """Numerical value at (theta1, theta2); accepts numpy arrays."""
        import numpy as np

        total = 0.0
        for (a, b), v in self._modes.items():
            total = total + float(v) * np.cos(a * theta1 + b * theta2)
        return total

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "TrigPoly | None":
        if isinstance(other, TrigPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return TrigPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._modes)
        for k, v in o._modes.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TrigPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly._trusted({k: -v for k, v in self._modes.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return TrigPoly()
            return TrigPoly._trusted({k: v * other for k, v in self._modes.items()})
        if not isinstance(other, TrigPoly):
            return NotImplemented
        a, b = self._modes, other._modes
        if len(a) < len(b):
            a, b = b, a
        out: dict[Mode, Fraction] = {}
        get = out.get
        for (q1, q2), w in b.items():
            for (p1, p2), v in a.items():
                key = (p1 + q1, p2 + q2)
                out[key] = get(key, 0) + v * w
        return TrigPoly._trusted({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = TrigPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._modes == o._modes

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._modes.items()))
        return self._hash

    def __repr__(self):
        if not self._modes:
            return "TrigPoly(0)"
        parts = [f"{k}: {v}" for k, v in sorted(self._modes.items())]
        return "TrigPoly({" + ", ".join(parts) + "})"


def constant_term(t: TrigPoly | Scalar) -> Fraction:
    """Normalised integral (1/4pi^2) over [0, 2pi]^2, i.e. the zero mode."""
    if isinstance(t, TrigPoly):
        return t.constant_term()
    return as_rational(t)


# frequently used angular polynomials
COS1 = TrigPoly.cos(1, 0)
COS2 = TrigPoly.cos(0, 1)
COS12 = TrigPoly.cos(1, 1)
COS1M2 = TrigPoly.cos(1, -1)
#: cos t1 + cos t2 + cos(t1 + t2)
P_TRIANGULAR = COS1 + COS2 + COS12
#: 3/2 + cos t1 + cos t2 + cos(t1 + t2)
P_HEXAGONAL = P_TRIANGULAR + Fraction(3, 2)
#: cos t1 + cos t2
P_SQUARE = COS1 + COS2


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

Coeff = Union[Fraction, TrigPoly]


def _ring_of(c) -> type:
    return TrigPoly if isinstance(c, TrigPoly) else Fraction


@dataclass(frozen=True, init=False)
class XSeries:
    """Dense power series c[0] + c[1] x + ... + c[order] x^order.

    ``prefactor_log_x`` and ``prefactor_log_2`` carry a factor
    x^{prefactor_log_x} * 2^{prefactor_log_2} that never enters ``coeffs``.
    Taking the logarithm turns the same two numbers into the additive
    ``prefactor_log_x * ln x + prefactor_log_2 * ln 2``.
    """

    coeffs: tuple
    prefactor_log_x: Fraction = Fraction(0)
    prefactor_log_2: Fraction = Fraction(0)
    ring: type = field(default=Fraction, compare=False)

    def __init__(self, coeffs: Iterable, prefactor_log_x: Scalar = 0,
                 prefactor_log_2: Scalar = 0):
        raw = list(coeffs)
        if not raw:
            raise ValueError("a series needs at least the constant coefficient")
        ring = TrigPoly if any(isinstance(c, TrigPoly) for c in raw) else Fraction
        if ring is TrigPoly:
            cs = tuple(c if isinstance(c, TrigPoly) else TrigPoly.constant(c) for c in raw)
        else:
            cs = tuple(as_rational(c) for c in raw)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "prefactor_log_x", as_rational(prefactor_log_x))
        object.__setattr__(self, "prefactor_log_2", as_rational(prefactor_log_2))
        object.__setattr__(self, "ring", ring)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def _zero(self):
        return TrigPoly() if self.ring is TrigPoly else Fraction(0)

    def with_prefactors(self, log_x: Scalar = 0, log_2: Scalar = 0) -> "XSeries":
        return XSeries(self.coeffs, log_x, log_2)

    def truncate(self, order: int) -> "XSeries":
        if order > self.order:
            raise RingError(f"cannot truncate order {self.order} series to {order}")
        return XSeries(self.coeffs[: order + 1], self.prefactor_log_x, self.prefactor_log_2)

    def extend(self, order: int) -> "XSeries":
        """Pad with zeros; only valid when the missing terms are known to vanish."""
        if order < self.order:
            raise RingError(f"cannot extend order {self.order} series to {order}")
        pad = [self._zero()] * (order - self.order)
        return XSeries(list(self.coeffs) + pad, self.prefactor_log_x, self.prefactor_log_2)

    def map(self, fn) -> "XSeries":
        return XSeries([fn(c) for c in self.coeffs], self.prefactor_log_x, self.prefactor_log_2)

    def _check(self, other: "XSeries"):
        if not isinstance(other, XSeries):
            raise RingError(f"expected XSeries, got {type(other).__name__}")
        if self.ring is not other.ring:
            raise RingError(f"ring mismatch: {self.ring.__name__} vs {other.ring.__name__}")
        if self.order != other.order:
            raise RingError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "XSeries") -> "XSeries":
        self._check(other)
        if (self.prefactor_log_x, self.prefactor_log_2) != (other.prefactor_log_x, other.prefactor_log_2):
            raise RingError("cannot add series carrying different prefactors")
        return XSeries([a + b for a, b in zip(self.coeffs, other.coeffs)],
                       self.prefactor_log_x, self.prefactor_log_2)

    def __sub__(self, other: "XSeries") -> "XSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "XSeries":
        return XSeries([a * c for a in self.coeffs], self.prefactor_log_x, self.prefactor_log_2)

    def __mul__(self, other):
        if isinstance(other, XSeries):
            return series_mul(self, other)
        return NotImplemented

    def constant_term(self) -> "XSeries":
        """Integrate every coefficient over the torus (TrigPoly ring -> Rational)."""
        return XSeries([constant_term(c) for c in self.coeffs],
                       self.prefactor_log_x, self.prefactor_log_2)

    @classmethod
    def from_poly(cls, coeffs: Sequence, order: int, **prefactors) -> "XSeries":
        """Series of a polynomial, zero-padded (or truncated) to ``order``."""
        cs = list(coeffs)[: order + 1]
        ring_zero = TrigPoly() if any(isinstance(c, TrigPoly) for c in cs) else Fraction(0)
        cs += [ring_zero] * (order + 1 - len(cs))
        return cls(cs, **prefactors)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, TrigPoly) else c == 0


def _is_one(c) -> bool:
    if isinstance(c, TrigPoly):
        return c == 1
    return c == 1


def series_mul(a: XSeries, b: XSeries) -> XSeries:
    """Truncated Cauchy product; prefactors add."""
    a._check(b)
    n = a.order
    zero = a._zero()
    out = [zero] * (n + 1)
    nz_b = [(j, c) for j, c in enumerate(b.coeffs) if not _is_zero(c)]
    for i, ai in enumerate(a.coeffs):
        if _is_zero(ai):
            continue
        for j, bj in nz_b:
            if i + j > n:
                break
            out[i + j] = out[i + j] + ai * bj
    return XSeries(out, a.prefactor_log_x + b.prefactor_log_x,
                   a.prefactor_log_2 + b.prefactor_log_2)


def series_log(f: XSeries) -> XSeries:
    """ln f for a series with unit constant term.

    Uses n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}, which follows from
    f' = f g'. Prefactors pass through unchanged (they become additive terms).
    """
    if not _is_one(f.coeffs[0]):
        raise ValueError(f"series_log needs constant term 1, got {f.coeffs[0]!r}")
    n_max = f.order
    zero = f._zero()
    fc = f.coeffs
    nz = [(j, fc[j]) for j in range(1, n_max + 1) if not _is_zero(fc[j])]
    g = [zero] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = fc[n] * n
        for j, fj in nz:
            k = n - j
            if k < 1:
                break
            if not _is_zero(g[k]):
                acc = acc - g[k] * fj * k
        g[n] = acc * Fraction(1, n)
    return XSeries(g, f.prefactor_log_x, f.prefactor_log_2)


def series_exp(f: XSeries) -> XSeries:
    """exp f for a series with zero constant term.

    n h_n = sum_{k=1}^{n} k f_k h_{n-k}.
    """
    if not _is_zero(f.coeffs[0]):
        raise ValueError(f"series_exp needs constant term 0, got {f.coeffs[0]!r}")
    n_max = f.order
    fc = f.coeffs
    one = TrigPoly.constant(1) if f.ring is TrigPoly else Fraction(1)
    h = [one] + [f._zero()] * n_max
    nz = [(k, fc[k] * k) for k in range(1, n_max + 1) if not _is_zero(fc[k])]
    for n in range(1, n_max + 1):
        acc = f._zero()
        for k, kfk in nz:
            if k > n:
                break
            acc = acc + kfk * h[n - k]
        h[n] = acc * Fraction(1, n)
    return XSeries(h, f.prefactor_log_x, f.prefactor_log_2)


def series_compose(g: XSeries, f: XSeries) -> XSeries:
    """Coefficients of g(f(x)) for f with zero constant term (Horner scheme)."""
    g._check(f)
    if g.ring is not Fraction:
        raise RingError("composition is only defined over the rationals")
    if f.coeffs[0] != 0:
        raise ValueError("inner series must have zero constant term")
    n = g.order
    plain_f = XSeries(f.coeffs)
    acc = XSeries([g.coeffs[n]] + [0] * n)
    for k in range(n - 1, -1, -1):
        acc = series_mul(acc, plain_f)
        acc = XSeries([acc.coeffs[0] + g.coeffs[k]] + list(acc.coeffs[1:]))
    return acc


def series_pow(f: XSeries, k: int) -> XSeries:
    result = XSeries.from_poly([1], f.order)
    base = XSeries(f.coeffs)
    for _ in range(k):
        result = series_mul(result, base)
    return result


# ---------------------------------------------------------------------------
# Quadratic surds  a + b*sqrt(d)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadSurd:
    """Exact element a + b*sqrt(d) of Q(sqrt d), d a square-free positive int."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    def _lift(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            if other.d != self.d and other.b and self.b:
                raise RingError("surds over different quadratic fields")
            return other if other.b else QuadSurd(other.a, 0, self.d)
        return QuadSurd(as_rational(other), 0, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadSurd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        return QuadSurd(self.a * o.a + self.b * o.b * self.d,
                        self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadSurd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("surd has zero norm")
        c = self.conjugate()
        return QuadSurd(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadSurd(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def to_decimal(self, digits: int = 40) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            r = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            r += Decimal(self.b.numerator) / Decimal(self.b.denominator) * Decimal(self.d).sqrt()
            return +r

    def __float__(self):
        return float(self.to_decimal())

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        surd = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        if self.a == 0:
            return surd if self.b > 0 else "-" + surd
        return f"{self.a} {'+' if self.b > 0 else '-'} {surd}"
