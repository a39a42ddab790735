"""Exact p-adic scalar arithmetic at finite precision.

The base field is fixed to the unramified profile: uniformizer pi = p,
residue field of prime order q = p, ramification index 1.  A nonzero
scalar is stored as pi^val * unit with the unit known modulo p^prec
(relative precision, at most the configured default N).  Exact zero is a
distinguished value with valuation +infinity.

Additive cancellation that consumes every known unit digit canonicalizes
the result to exact zero; predicates that would need digits beyond the
tracked precision raise PrecisionError instead of guessing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

INFINITY = math.inf


class PrecisionError(ArithmeticError):
    """A result or predicate is undetermined at the tracked precision."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} for odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    for a in range(2, p):
        if legendre(a, p) == -1:
            return a
    raise ValueError(f"no quadratic nonresidue mod {p}")


@dataclass(frozen=True)
class FieldConfig:
    """Base-field profile: odd prime p, default unit precision, psi twist.

    psi_unit rescales the additive character to x -> psi(psi_unit * x);
    it must be a unit and exists so that psi-independence of integer
    outputs can be exercised (swap 1 <-> eps).
    """

    p: int
    precision: int = 8
    psi_unit: int = 1

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        if self.psi_unit % self.p == 0:
            raise ValueError("psi_unit must be a unit")

    @property
    def eps(self) -> int:
        """Canonical nonsquare unit: smallest positive nonresidue mod p."""
        return smallest_nonresidue(self.p)

    @property
    def q(self) -> int:
        return self.p

    def pk(self, k: int) -> int:
        return self.p ** k


class SquareClass(Enum):
    """F^x/(F^x)^2 as the Klein four-group; bit 0 = eps, bit 1 = pi."""

    ONE = 0
    EPS = 1
    PI = 2
    EPSPI = 3

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(self.value ^ other.value)

    @property
    def has_pi(self) -> bool:
        return bool(self.value & 2)

    @property
    def has_eps(self) -> bool:
        return bool(self.value & 1)

    def render(self) -> str:
        return {0: "1", 1: "eps", 2: "pi", 3: "eps*pi"}[self.value]

    @staticmethod
    def parse(text: str) -> "SquareClass":
        table = {"1": 0, "eps": 1, "pi": 2, "eps*pi": 3, "epspi": 3}
        key = text.strip().lower()
        if key not in table:
            raise ValueError(f"unknown square class {text!r}")
        return SquareClass(table[key])


@dataclass(frozen=True)
class PadicScalar:
    """pi^val * unit with unit known mod p^prec; zero has val = inf.

    For a zero value, prec is reinterpreted as the certified absolute
    precision: the true value is known to be divisible by p^prec, and
    prec = INFINITY marks an exact zero.  Zeros produced by full additive
    cancellation are "fuzzy": indistinguishable from zero at the working
    precision but not certified exact.
    """

    F: FieldConfig
    val: float  # int-valued, or INFINITY for zero
    unit: int
    prec: float  # int-valued; for zero: absolute precision bound

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(F: FieldConfig) -> "PadicScalar":
        return PadicScalar(F, INFINITY, 0, INFINITY)

    @staticmethod
    def fuzzy_zero(F: FieldConfig, absprec: int) -> "PadicScalar":
        return PadicScalar(F, INFINITY, 0, absprec)

    @staticmethod
    def from_unit_val(F: FieldConfig, val: int, unit: int, prec: int | None = None) -> "PadicScalar":
        prec = F.precision if prec is None else prec
        if prec < 1 or prec > F.precision:
            raise ValueError("prec out of range")
        u = unit % F.pk(prec)
        if u % F.p == 0:
            raise ValueError("unit must be coprime to p")
        return PadicScalar(F, val, u, prec)

    @staticmethod
    def from_int(F: FieldConfig, n: int) -> "PadicScalar":
        if n == 0:
            return PadicScalar.zero(F)
        v = 0
        while n % F.p == 0:
            n //= F.p
            v += 1
        return PadicScalar(F, v, n % F.pk(F.precision), F.precision)

    @staticmethod
    def pi_pow(F: FieldConfig, k: int) -> "PadicScalar":
        return PadicScalar(F, k, 1, F.precision)

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """Indistinguishable from zero at the tracked precision."""
        return self.val == INFINITY

    @property
    def is_exact_zero(self) -> bool:
        return self.val == INFINITY and self.prec == INFINITY

    @property
    def absprec(self) -> float:
        """Absolute precision: the value is known modulo p^absprec."""
        if self.is_zero:
            return self.prec
        return self.val + self.prec

    def residue(self, digits: int = 1) -> int:
        """Unit part mod p^digits (requires that many known digits)."""
        if self.is_zero:
            if digits > self.prec:
                raise PrecisionError("zero not certified to that depth")
            return 0
        if digits > self.prec:
            raise PrecisionError(f"need {digits} unit digits, have {self.prec}")
        return self.unit % self.F.pk(digits)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "PadicScalar") -> "PadicScalar":
        F = self.F
        if self.is_zero or other.is_zero:
            if self.is_exact_zero:
                return other
            if other.is_exact_zero:
                return self
            a = min(self.absprec, other.absprec)
            nz = other if self.is_zero else self
            if nz.is_zero:  # both fuzzy zeros
                return PadicScalar.fuzzy_zero(F, int(a))
            if nz.val >= a:
                return PadicScalar.fuzzy_zero(F, int(a))
            return PadicScalar(F, nz.val, nz.unit % F.pk(int(a - nz.val)),
                               int(a - nz.val))
        v = int(min(self.val, other.val))
        absprec = min(self.absprec, other.absprec)
        m = int(absprec) - v
        pm = F.pk(m)
        s = (self.unit * F.pk(int(self.val) - v) + other.unit * F.pk(int(other.val) - v)) % pm
        if s == 0:
            # full cancellation: zero at this precision, certified mod p^(v+m)
            return PadicScalar.fuzzy_zero(F, v + m)
        k = 0
        while s % F.p == 0:
            s //= F.p
            k += 1
        return PadicScalar(F, v + k, s % F.pk(m - k), m - k)

    def __neg__(self) -> "PadicScalar":
        if self.is_zero:
            return self
        return PadicScalar(self.F, self.val, self.F.pk(int(self.prec)) - self.unit, self.prec)

    def __sub__(self, other: "PadicScalar") -> "PadicScalar":
        return self + (-other)

    def __mul__(self, other: "PadicScalar") -> "PadicScalar":
        F = self.F
        if self.is_zero or other.is_zero:
            if self.is_exact_zero or other.is_exact_zero:
                return PadicScalar.zero(F)
            # val >= absprec of the zero factor plus valuation of the other
            bound = 0.0
            for x in (self, other):
                bound += x.prec if x.is_zero else x.val
            return PadicScalar.fuzzy_zero(F, int(bound)) if bound != INFINITY \
                else PadicScalar.zero(F)
        prec = int(min(self.prec, other.prec))
        return PadicScalar(F, int(self.val) + int(other.val),
                           (self.unit * other.unit) % F.pk(prec), prec)

    def inv(self) -> "PadicScalar":
        if self.is_exact_zero:
            raise ZeroDivisionError("inverse of exact zero")
        if self.is_zero:
            raise PrecisionError("inverse of a value indistinguishable from zero")
        u = pow(self.unit, -1, self.F.pk(int(self.prec)))
        return PadicScalar(self.F, -int(self.val), u, self.prec)

    def scale_int(self, n: int) -> "PadicScalar":
        return self * PadicScalar.from_int(self.F, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicScalar):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.val != other.val:
            return False
        d = min(self.prec, other.prec)
        return self.unit % self.F.pk(d) == other.unit % self.F.pk(d)

    def __hash__(self):
        if self.is_zero:
            return hash((self.F.p, "zero"))
        return hash((self.F.p, self.val, self.unit % self.F.p))

    def __repr__(self) -> str:
        return format_scalar(self)


# -- square classes and norm data -----------------------------------------


def square_class(a: PadicScalar) -> SquareClass:
    """Class of a nonzero scalar in F^x/(F^x)^2."""
    if a.is_exact_zero:
        raise ValueError("square class of zero is undefined")
    if a.is_zero:
        raise PrecisionError("square class undetermined: value may be zero")
    bits = 0
    if legendre(a.residue(1), a.F.p) == -1:
        bits |= 1
    if int(a.val) % 2:
        bits |= 2
    return SquareClass(bits)


def class_of_int(F: FieldConfig, n: int) -> SquareClass:
    return square_class(PadicScalar.from_int(F, n))


def class_of_minus_one(F: FieldConfig) -> SquareClass:
    return SquareClass.EPS if F.p % 4 == 3 else SquareClass.ONE


def canonical_unit(F: FieldConfig, cls: SquareClass) -> PadicScalar:
    """Canonical representative of a square class: 1, eps, pi, eps*pi."""
    u = F.eps if cls.has_eps else 1
    v = 1 if cls.has_pi else 0
    return PadicScalar.from_unit_val(F, v, u)


def gamma_of_extension(F: FieldConfig, cls_uv: SquareClass) -> SquareClass:
    """Nontrivial class of Norm_{E/F}(E^x)/(F^x)^2 for E = F[sqrt(uv)].

    Unramified (cls EPS): gamma is the class of uv itself.  Ramified:
    gamma is the class of -uv.  A split input (ONE) has no field E.
    """
    if cls_uv == SquareClass.ONE:
        raise ValueError("split case: F[sqrt(uv)] is not a field")
    if cls_uv == SquareClass.EPS:
        return SquareClass.EPS
    return class_of_minus_one(F) * cls_uv


# -- additive character ----------------------------------------------------


def psi(a: PadicScalar, level: int | None = None) -> complex:
    """psi(a) = exp(2*pi*i * frac_p(c*a/p)), trivial on P, nontrivial on R.

    c = F.psi_unit is the unit twist used by the psi-independence checks.
    When a level m is supplied, inputs of valuation < -m are rejected.
    """
    if a.is_zero:
        if a.prec < 1:
            raise PrecisionError("psi undetermined: fuzzy zero above P")
        return 1.0 + 0j
    F = a.F
    v = int(a.val)
    if level is not None and v < -level:
        raise PrecisionError(f"psi level {level} cannot see valuation {v}")
    if v >= 1:
        return 1.0 + 0j
    digits = 1 - v
    if digits > a.prec:
        raise PrecisionError("insufficient precision for fractional part")
    modulus = F.pk(digits)
    t = (a.unit * F.psi_unit) % modulus
    return cmath.exp(2j * cmath.pi * t / modulus)


def psi_residue(F: FieldConfig, t: int) -> complex:
    """Residue-field additive character psi-bar(t) = psi(lift of t)."""
    return cmath.exp(2j * cmath.pi * ((t * F.psi_unit) % F.p) / F.p)


# -- literals --------------------------------------------------------------


def parse_scalar(F: FieldConfig, text: str) -> PadicScalar:
    """Scalar literal: "v:u" means pi^v*u, a plain integer denotes itself."""
    text = text.strip()
    if ":" in text:
        v_str, u_str = text.split(":", 1)
        v, u = int(v_str), int(u_str)
        if u % F.p == 0:
            raise ValueError(f"unit part of {text!r} is divisible by p")
        return PadicScalar.from_unit_val(F, v, u)
    return PadicScalar.from_int(F, int(text))


def format_scalar(a: PadicScalar) -> str:
    if a.is_zero:
        return "0"
    v = int(a.val)
    # keep a short signed representative for readability
    u = a.unit
    half = a.F.pk(a.prec) // 2
    if u > half:
        u -= a.F.pk(a.prec)
    if v == 0:
        return str(u)
    return f"{v}:{u}"


def random_scalar(F: FieldConfig, rng, val_range=(-3, 3), allow_zero=False) -> PadicScalar:
    if allow_zero and rng.random() < 0.1:
        return PadicScalar.zero(F)
    v = rng.randint(val_range[0], val_range[1])
    u = rng.randrange(1, F.pk(F.precision))
    while u % F.p == 0:
        u = rng.randrange(1, F.pk(F.precision))
    return PadicScalar.from_unit_val(F, v, u)
