"""sl(2,F) elements, Moy-Prasad depths at the three standard points,
degenerate-coset labels, nilpotent supports and the conjugation-search
cone oracle.

Elements are traceless matrices [[a,b],[c,-a]] identified with their
duals through the trace form, so a single depth formula serves both g
and g*.  Only the points x0, x1 (the standard vertices) and z0 (the
barycenter between them) are modeled; other points are reached by
transporting orbit labels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .field import (
    INFINITY,
    FieldConfig,
    PadicScalar,
    PrecisionError,
    SquareClass,
    canonical_unit,
    class_of_minus_one,
    format_scalar,
    gamma_of_extension,
    legendre,
    parse_scalar,
    square_class,
)


class FilterPoint(Enum):
    X0 = "x0"
    X1 = "x1"
    Z0 = "z0"


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


class Transport(Enum):
    OMEGA = "omega"  # affine reflection [[0,1],[pi,0]]
    ETA = "eta"      # translation diag(1, pi)


@dataclass(frozen=True)
class OrbitLabel:
    """One of the five nilpotent orbits: zero, or a regular square class."""

    cls: SquareClass | None

    @property
    def is_zero(self) -> bool:
        return self.cls is None

    def render(self) -> str:
        return "0" if self.cls is None else self.cls.render()

    @staticmethod
    def parse(text: str) -> "OrbitLabel":
        if text.strip() == "0":
            return ZERO_ORBIT
        return OrbitLabel(SquareClass.parse(text))


ZERO_ORBIT = OrbitLabel(None)


def regular_orbits() -> list[OrbitLabel]:
    return [OrbitLabel(c) for c in SquareClass]


@dataclass(frozen=True)
class Sl2Element:
    """Traceless matrix [[a,b],[c,-a]] over F."""

    a: PadicScalar
    b: PadicScalar
    c: PadicScalar

    @property
    def F(self) -> FieldConfig:
        return self.a.F

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero and self.c.is_zero

    def neg_det(self) -> PadicScalar:
        """-det = a^2 + bc."""
        return self.a * self.a + self.b * self.c

    def add(self, other: "Sl2Element") -> "Sl2Element":
        return Sl2Element(self.a + other.a, self.b + other.b, self.c + other.c)

    def scale(self, s: PadicScalar) -> "Sl2Element":
        return Sl2Element(self.a * s, self.b * s, self.c * s)

    def render(self) -> str:
        return ",".join(format_scalar(x) for x in (self.a, self.b, self.c))

    @staticmethod
    def make(F: FieldConfig, a, b, c) -> "Sl2Element":
        conv = lambda x: x if isinstance(x, PadicScalar) else PadicScalar.from_int(F, x)
        return Sl2Element(conv(a), conv(b), conv(c))

    @staticmethod
    def parse(F: FieldConfig, text: str) -> "Sl2Element":
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError("matrix literal must be 'a,b,c'")
        a, b, c = (parse_scalar(F, t) for t in parts)
        return Sl2Element(a, b, c)

    @staticmethod
    def zero(F: FieldConfig) -> "Sl2Element":
        z = PadicScalar.zero(F)
        return Sl2Element(z, z, z)


def nilpotent_rep(F: FieldConfig, w: PadicScalar) -> Sl2Element:
    """The upper nilpotent [[0,w],[0,0]] representing the orbit of class(w)."""
    z = PadicScalar.zero(F)
    return Sl2Element(z, w, z)


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over F, used for conjugations (GL2 allowed)."""

    a: PadicScalar
    b: PadicScalar
    c: PadicScalar
    d: PadicScalar

    def det(self) -> PadicScalar:
        return self.a * self.d - self.b * self.c

    def mul(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
        )

    def inv(self) -> "Mat2":
        di = self.det().inv()
        return Mat2(self.d * di, (-self.b) * di, (-self.c) * di, self.a * di)

    def conj(self, X: Sl2Element) -> Sl2Element:
        """g X g^{-1}; the result is renormalized to traceless form."""
        gi = self.inv()
        # rows of g * M(X)
        r11 = self.a * X.a + self.b * X.c
        r12 = self.a * X.b - self.b * X.a
        r21 = self.c * X.a + self.d * X.c
        r22 = self.c * X.b - self.d * X.a
        a = r11 * gi.a + r12 * gi.c
        b = r11 * gi.b + r12 * gi.d
        c = r21 * gi.a + r22 * gi.c
        return Sl2Element(a, b, c)

    @staticmethod
    def make(F: FieldConfig, a, b, c, d) -> "Mat2":
        conv = lambda x: x if isinstance(x, PadicScalar) else PadicScalar.from_int(F, x)
        return Mat2(conv(a), conv(b), conv(c), conv(d))


def lower_unipotent(F: FieldConfig, s: PadicScalar) -> Mat2:
    one, zero = PadicScalar.from_int(F, 1), PadicScalar.zero(F)
    return Mat2(one, zero, s, one)


def upper_unipotent(F: FieldConfig, t: PadicScalar) -> Mat2:
    one, zero = PadicScalar.from_int(F, 1), PadicScalar.zero(F)
    return Mat2(one, t, zero, one)


def diag_pi_power(F: FieldConfig, k: int) -> Mat2:
    zero = PadicScalar.zero(F)
    return Mat2(PadicScalar.pi_pow(F, k), zero, zero, PadicScalar.pi_pow(F, -k))


def eta_matrix(F: FieldConfig) -> Mat2:
    zero = PadicScalar.zero(F)
    return Mat2(PadicScalar.from_int(F, 1), zero, zero, PadicScalar.pi_pow(F, 1))


def omega_matrix(F: FieldConfig) -> Mat2:
    zero = PadicScalar.zero(F)
    return Mat2(zero, PadicScalar.from_int(F, 1), PadicScalar.pi_pow(F, 1), zero)


# -- depth and filtrations --------------------------------------------------


def _depth_formula(va, vb, vc, pt: FilterPoint):
    if pt == FilterPoint.X0:
        return min(va, vb, vc)
    if pt == FilterPoint.X1:
        return min(va, vb + 1, vc - 1)
    # z0: largest r in (1/2)Z with val a >= ceil(r), val b >= ceil(r-1/2),
    # val c >= ceil(r+1/2); split by the parity of 2r
    cand_int = min(va, vb, vc - 1)
    cand_half = min(va - 1, vb, vc - 1)
    if cand_int == INFINITY or cand_half == INFINITY:
        return INFINITY
    return max(Fraction(int(cand_int)), Fraction(int(cand_half)) + Fraction(1, 2))


def depth_at(X: Sl2Element, pt: FilterPoint):
    """Depth of X at the point, as a Fraction, or INFINITY for X = 0.

    Raises PrecisionError when a fuzzy-zero entry (a value known only to
    be divisible by some power of p) could change the answer.
    """
    entries = (X.a, X.b, X.c)
    if all(e.is_exact_zero for e in entries):
        return INFINITY
    lows = [e.prec if e.is_zero else e.val for e in entries]
    highs = [INFINITY if e.is_zero else e.val for e in entries]
    d_low = _depth_formula(*lows, pt)
    d_high = _depth_formula(*highs, pt)
    if d_high == INFINITY or d_low != d_high:
        raise PrecisionError("depth undetermined: a valuation is uncertified")
    return d_high if isinstance(d_high, Fraction) else Fraction(int(d_high))


def in_filtration(X: Sl2Element, pt: FilterPoint, r, strict: bool = False) -> bool:
    """Membership in g_{pt,r} (g_{pt,r+} when strict)."""
    d = depth_at(X, pt)
    r = Fraction(r)
    return d > r if strict else d >= r


# -- classification ---------------------------------------------------------


class ElementKind(Enum):
    ZERO = "zero"
    NILPOTENT = "nilpotent"
    SPLIT_SS = "split"
    ANISO_SS = "anisotropic"


@dataclass(frozen=True)
class ElementClass:
    kind: ElementKind
    orbit: OrbitLabel | None = None     # for NILPOTENT
    disc: SquareClass | None = None     # class of -det, for ANISO_SS


def classify(X: Sl2Element) -> ElementClass:
    """Classify as zero / nilpotent (with orbit label) / split / anisotropic.

    Nilpotency cutoff: X != 0 is declared nilpotent iff val(a^2+bc)
    exceeds 2*(N-2); an element looking nilpotent without a usable b or
    c entry is undetermined at this precision.
    """
    if all(e.is_exact_zero for e in (X.a, X.b, X.c)):
        return ElementClass(ElementKind.ZERO)
    nd = X.neg_det()
    cutoff = 2 * (X.F.precision - 2)
    if nd.is_zero and nd.prec <= cutoff:
        raise PrecisionError("det-zero test undetermined at this precision")
    if nd.is_zero or nd.val > cutoff:
        if not X.b.is_zero:
            lab = square_class(X.b)
        elif not X.c.is_zero:
            lab = square_class(-X.c)
        else:
            raise PrecisionError("near-nilpotent diagonal element undetermined")
        return ElementClass(ElementKind.NILPOTENT, orbit=OrbitLabel(lab))
    cls = square_class(nd)
    if cls == SquareClass.ONE:
        return ElementClass(ElementKind.SPLIT_SS)
    return ElementClass(ElementKind.ANISO_SS, disc=cls)


# -- degenerate cosets -------------------------------------------------------


def _residue_triple(X: Sl2Element, pt: FilterPoint) -> tuple[int, int, int, int]:
    """Residue (ra, rb, rc) of X in the depth graded piece at a vertex,
    together with d = -depth."""
    t = depth_at(X, pt)
    if t == INFINITY:
        raise ValueError("zero element has no coset")
    t = int(t)
    p = X.F.p

    def res(s: PadicScalar, target: int) -> int:
        if s.is_zero:
            if s.prec <= target:
                raise PrecisionError("residue entry uncertified at coset depth")
            return 0
        return s.residue(1) if int(s.val) == target else 0

    if pt == FilterPoint.X0:
        ra, rb, rc = res(X.a, t), res(X.b, t), res(X.c, t)
    elif pt == FilterPoint.X1:
        ra, rb, rc = res(X.a, t), res(X.b, t - 1), res(X.c, t + 1)
    else:
        raise ValueError("coset labels are defined at vertices only")
    return ra % p, rb % p, rc % p, -t


def coset_orbit(X: Sl2Element, pt: FilterPoint) -> OrbitLabel | None:
    """Label of the unique regular orbit meeting X + g*_{pt,depth+},
    or None when the coset is not degenerate."""
    ra, rb, rc, d = _residue_triple(X, pt)
    p = X.F.p
    if (ra * ra + rb * rc) % p != 0:
        return None  # semisimple residue
    # reduce the residue nilpotent to upper-triangular form
    if rb != 0:
        ubar = rb
    elif rc != 0:
        ubar = (-rc) % p
    else:
        return None  # zero residue cannot happen at the depth; defensive
    bits = 1 if legendre(ubar, p) == -1 else 0
    flip = d if pt == FilterPoint.X0 else d + 1
    if flip % 2:
        bits |= 2
    return OrbitLabel(SquareClass(bits))


def nil_support(X: Sl2Element) -> frozenset[OrbitLabel]:
    """The set of nilpotent orbits arising from degenerate cosets of
    conjugates of X: the nonzero part of the asymptotic cone."""
    kind = classify(X)
    if kind.kind == ElementKind.ZERO:
        raise ValueError("nil support of zero is undefined")
    if kind.kind == ElementKind.NILPOTENT:
        return frozenset({kind.orbit})
    if kind.kind == ElementKind.SPLIT_SS:
        return frozenset(regular_orbits())
    # anisotropic: b cannot vanish (else -det = a^2 would be square or zero)
    u = square_class(X.b)
    gamma = gamma_of_extension(X.F, kind.disc)
    return frozenset({OrbitLabel(u), OrbitLabel(u * gamma)})


def cone_oracle(X: Sl2Element, samples: int, seed: int,
                stop_at: frozenset[OrbitLabel] | None = None) -> frozenset[OrbitLabel]:
    """Brute-force sampling of the asymptotic cone: conjugate X by random
    lower*diagonal*upper group elements and collect degenerate-coset labels
    at x0.  Never overshoots nil_support; approaches it as samples grow.

    stop_at short-circuits the sampling once that set has been reached
    (the accumulated set is a union, so early exit changes nothing else).
    """
    if X.is_zero:
        raise ValueError("zero element")
    F = X.F
    rng = random.Random(seed)
    found: set[OrbitLabel] = set()
    try:
        lab = coset_orbit(X, FilterPoint.X0)
        if lab is not None:
            found.add(lab)
    except PrecisionError:
        pass
    kmax = F.precision // 2

    def rand_entry() -> PadicScalar:
        if rng.random() < 0.15:
            return PadicScalar.zero(F)
        v = rng.randint(-3, min(4, F.precision))
        u = rng.randrange(1, F.p)
        return PadicScalar.from_unit_val(F, v, u)

    weyl = Mat2.make(F, 0, 1, -1, 0)
    for _ in range(samples):
        if stop_at is not None and found >= stop_at:
            break
        # conjugate by L * D * U, factor by factor (each factor has exact
        # det 1, avoiding precision loss in a composed determinant); probe
        # the coset label in both Bruhat cells (plain and Weyl-twisted)
        try:
            Y = upper_unipotent(F, rand_entry()).conj(X)
            Y = diag_pi_power(F, rng.randint(-kmax, kmax)).conj(Y)
            Y = lower_unipotent(F, rand_entry()).conj(Y)
            for probe in (Y, weyl.conj(Y)):
                lab = coset_orbit(probe, FilterPoint.X0)
                if lab is not None:
                    found.add(lab)
        except PrecisionError:
            continue  # undetermined sample; the oracle may only undershoot
    return frozenset(found)


# -- orbit representatives, parity, transport -------------------------------


def parity_depth(label: OrbitLabel, pt: FilterPoint) -> Parity:
    """Common parity of depths at pt of the G_pt-orbits inside the orbit."""
    if label.is_zero:
        raise ValueError("zero orbit has no parity depth")
    even_at_x0 = not label.cls.has_pi
    if pt == FilterPoint.X1:
        even_at_x0 = not even_at_x0
    return Parity.EVEN if even_at_x0 else Parity.ODD


def gx_orbit_reps(F: FieldConfig, label: OrbitLabel, pt: FilterPoint,
                  d_min: int, d_max: int) -> list[Sl2Element]:
    """One representative per G_pt-orbit in the orbit with depth in
    [-d_max, -d_min]; each is [[0,w],[0,0]] with w a pi^{2n}-scaling of
    the canonical class representative."""
    if label.is_zero:
        raise ValueError("zero orbit has no nonzero representatives")
    if d_min > d_max:
        raise ValueError("d_min must be <= d_max")
    u0 = canonical_unit(F, label.cls)
    base = int(u0.val) + (1 if pt == FilterPoint.X1 else 0)
    reps = []
    for d in range(d_min, d_max + 1):
        if (-d - base) % 2 == 0:
            n = (-d - base) // 2
            w = u0 * PadicScalar.pi_pow(F, 2 * n)
            reps.append(nilpotent_rep(F, w))
    return reps


def transport(label: OrbitLabel, by: Transport, F: FieldConfig) -> OrbitLabel:
    """Push an orbit label across the vertex transports omega / eta."""
    if label.is_zero:
        return label
    if by == Transport.ETA:
        return OrbitLabel(label.cls * SquareClass.PI)
    return OrbitLabel(label.cls * class_of_minus_one(F) * SquareClass.PI)


def to_x0_frame(X: Sl2Element, vertex: FilterPoint) -> Sl2Element:
    """Rewrite an element given at x1 in x0 coordinates (eta-transport);
    x0 data is returned unchanged.  Depth at x0 of the result equals the
    depth at x1 of the input, and labels transport by class(pi)."""
    if vertex == FilterPoint.X0:
        return X
    if vertex != FilterPoint.X1:
        raise ValueError("only vertices carry a quotient model")
    F = X.F
    pi = PadicScalar.pi_pow(F, 1)
    return Sl2Element(X.a, X.b * pi, X.c * pi.inv())
