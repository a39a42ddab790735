"""Shalika representations realized as induced characters on finite
quotients: the groups J attached to a degenerate coset, the characters
eta_Gamma, centralizer images, the orbit representations tau and their
fixed-vector ledgers.

All computations happen in the standard quotient SL(2, Z/p^m) modeling
G_{x0}/G_{x0,m}; data at the other vertex is transported into these
coordinates with eta = diag(1, pi).  Inducing data must be in canonical
form: the residue of Gamma at its depth is upper nilpotent (antidiagonal
representatives Y(u,v) with val u = -d and val v > -d qualify).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

import numpy as np

from .field import FieldConfig, PadicScalar, PrecisionError
from .fingrp import ClassFunction, FiniteQuotient, Subgroup, build_quotient, induce
from .lie import (
    FilterPoint,
    OrbitLabel,
    Parity,
    Sl2Element,
    coset_orbit,
    depth_at,
    gx_orbit_reps,
    to_x0_frame,
)


def build_J(vertex: FilterPoint, d: int, quotient: FiniteQuotient) -> Subgroup:
    """Image of the group J attached to a depth -d degenerate coset.

    In standard coordinates (either vertex, after transport): diagonal
    entries 1 mod p^ceil(d/2), upper entry 0 mod p^ceil(d/2), lower entry
    0 mod p^ceil((d+1)/2).  For odd d this is G_{x,(d+1)/2}; for even d
    it is G_{z,d/2} for the barycenter z adjacent to x.
    """
    if vertex not in (FilterPoint.X0, FilterPoint.X1):
        raise ValueError("J is attached to a vertex")
    if quotient.m <= d:
        raise ValueError("quotient modulus too small for depth d")
    p = quotient.p
    hi = p ** ceil(d / 2)
    lo = p ** ceil((d + 1) / 2)
    return Subgroup.from_mask(
        quotient,
        lambda mm: ((mm[:, 0, 0] - 1) % hi == 0)
        & ((mm[:, 1, 1] - 1) % hi == 0)
        & (mm[:, 0, 1] % hi == 0)
        & (mm[:, 1, 0] % lo == 0),
    )


def _psi_of_combination(F: FieldConfig, terms, modexp: int) -> np.ndarray:
    """psi(sum_i s_i * n_i) for scalars s_i and integer arrays n_i known
    mod p^modexp; vectorized over the arrays."""
    finite = [(s, n) for s, n in terms if not s.is_zero]
    if not finite:
        return np.ones(1, dtype=complex)
    vmin = min(int(s.val) for s, _ in finite)
    if vmin >= 1:
        shape = np.broadcast(*(n for _, n in finite)).shape
        return np.ones(shape, dtype=complex)
    digits = 1 - vmin
    for s, _ in finite:
        if s.prec < digits - (int(s.val) - vmin):
            raise PrecisionError("additive character needs more unit digits")
        if modexp < digits - (int(s.val) - vmin):
            raise PrecisionError("quotient too shallow for this character")
    pd = F.pk(digits)
    total = 0
    for s, n in finite:
        total = total + (s.unit % pd) * F.pk(int(s.val) - vmin) * np.asarray(n)
    total = (F.psi_unit * total) % pd
    return np.exp(2j * np.pi * total / pd)


def eta_character(gamma: Sl2Element, J: Subgroup, quotient: FiniteQuotient) -> np.ndarray:
    """Values of eta_Gamma(g) = psi(tr(Gamma (g - I))) on J (aligned with
    J.indices).  Gamma must be given in standard (x0) coordinates."""
    m = quotient.mats[J.indices]
    a11 = m[:, 0, 0]
    a22 = m[:, 1, 1]
    a12 = m[:, 0, 1]
    a21 = m[:, 1, 0]
    terms = [(gamma.a, a11 - a22), (gamma.b, a21), (gamma.c, a12)]
    return _psi_of_combination(gamma.F, terms, quotient.m)


def centralizer_in_quotient(gamma: Sl2Element, quotient: FiniteQuotient,
                            vertex: FilterPoint = FilterPoint.X0) -> Subgroup:
    """Image of Cent_{G_x}(Gamma) in the quotient, by commutation scan
    against the integral rescaling of Gamma."""
    g0 = to_x0_frame(gamma, vertex)
    vals = [int(s.val) for s in (g0.a, g0.b, g0.c) if not s.is_zero]
    if not vals:
        raise ValueError("centralizer of zero is everything")
    k = -min(vals)
    pi_k = PadicScalar.pi_pow(g0.F, k)
    pm = quotient.pm

    def entry(s: PadicScalar) -> int:
        t = s * pi_k
        if t.is_zero:
            return 0
        if t.val + t.prec < quotient.m:
            raise PrecisionError("centralizer scan needs more digits")
        return (t.unit * g0.F.pk(int(t.val))) % pm

    M = np.array([[entry(g0.a), entry(g0.b)], [entry(g0.c), pm - entry(g0.a)]],
                 dtype=np.int64) % pm
    mats = quotient.mats
    left = np.matmul(mats, M) % pm
    right = np.matmul(M, mats) % pm
    mask = np.all((left - right) % pm == 0, axis=(1, 2))
    return Subgroup(quotient, np.nonzero(mask)[0])


def extend_abelian_character(quotient: FiniteQuotient, indices: np.ndarray,
                             known: dict[int, complex],
                             forced: dict[int, complex] | None = None) -> dict[int, complex]:
    """Extend a character from a subgroup of an abelian group to the whole
    group, honoring any forced assignments (e.g. the central sign)."""
    values = dict(known)
    values[quotient.identity_index] = 1.0 + 0j
    todo = [i for i in (forced or {}) if i not in values]
    todo += [int(i) for i in indices if int(i) not in values]
    for g in todo:
        if g in values:
            continue
        gm = quotient.mats[g]
        cur = gm.copy()
        k = 1
        while quotient.index_one(cur) not in values:
            cur = quotient.mul(cur, gm)
            k += 1
        base = values[quotient.index_one(cur)]
        if forced and g in forced:
            root = forced[g]
            if abs(root ** k - base) > 1e-9:
                raise ArithmeticError("forced character value inconsistent")
        else:
            root = complex(base) ** (1.0 / k)
        # close the assignment under multiplication by g
        for h, hv in list(values.items()):
            acc = quotient.mats[h]
            val = hv
            for _ in range(k):
                acc = quotient.mul(acc, gm)
                val = val * root
                values.setdefault(quotient.index_one(acc), val)
    for i in indices:
        if int(i) not in values:
            raise ArithmeticError("character extension did not cover the group")
    return values


@dataclass(frozen=True)
class ShalikaDatum:
    """Inducing datum: vertex, a canonical degenerate-coset representative
    (in the coordinates of that vertex), and the centralizer character.

    For nilpotent Gamma, theta is the central-sign extension (zeta at -I,
    trivial on the unipotent part).  A general theta is an explicit value
    table on the centralizer image, keyed by element index.
    """

    vertex: FilterPoint
    gamma: Sl2Element
    central_sign: int = 1
    theta: tuple[tuple[int, complex], ...] | None = None

    def theta_dict(self) -> dict[int, complex] | None:
        return dict(self.theta) if self.theta is not None else None


def _canonical_depth(gamma0: Sl2Element) -> int:
    d_frac = depth_at(gamma0, FilterPoint.X0)
    if d_frac == float("inf") or Fraction(d_frac).denominator != 1 or d_frac >= 0:
        raise ValueError("datum must have negative integer depth at the vertex")
    d = -int(d_frac)
    lab = coset_orbit(gamma0, FilterPoint.X0)
    if lab is None:
        raise ValueError("datum does not represent a degenerate coset")
    # canonical form: upper-nilpotent residue
    t = -d
    for s, name in ((gamma0.a, "a"), (gamma0.c, "c")):
        if not s.is_zero and int(s.val) == t:
            raise ValueError(f"datum not in canonical form ({name}-entry leads)")
    return d


def _is_canonical_nilpotent(gamma0: Sl2Element) -> bool:
    return gamma0.a.is_zero and gamma0.c.is_zero and not gamma0.b.is_zero


def _nilpotent_cj(quotient: FiniteQuotient, d: int, B: PadicScalar,
                  zeta: int) -> tuple[Subgroup, np.ndarray]:
    """Fast path for Gamma = [[0,B],[0,0]]: membership and eta on C.J in
    closed form.  h = +-u(t) j with j in J iff the lower entry is 0 mod
    p^ceil((d+1)/2) and the (2,2) entry is +-1 mod p^ceil(d/2); then
    eta(h) = zeta^[sign] psi(B * sign * h21)."""
    p = quotient.p
    hi = p ** ceil(d / 2)
    lo = p ** ceil((d + 1) / 2)
    mats = quotient.mats
    d_ent = mats[:, 1, 1]
    plus = (d_ent - 1) % hi == 0
    minus = (d_ent + 1) % hi == 0
    mask = (mats[:, 1, 0] % lo == 0) & (plus | minus)
    H = Subgroup(quotient, np.nonzero(mask)[0])
    hm = mats[H.indices]
    sign = np.where((hm[:, 1, 1] - 1) % hi == 0, 1, -1)
    c_entry = (hm[:, 1, 0] * sign) % quotient.pm
    eta = _psi_of_combination(B.F, [(B, c_entry)], quotient.m)
    eta = eta * np.where(sign == 1, 1.0, float(zeta))
    return H, eta


def _generic_cj(quotient: FiniteQuotient, d: int, gamma0: Sl2Element,
                zeta: int, theta: dict[int, complex] | None
                ) -> tuple[Subgroup, np.ndarray]:
    """General path: explicit centralizer, explicit or extended theta,
    and a scan over C to decompose each element of C.J."""
    J = build_J(FilterPoint.X0, d, quotient)
    C = centralizer_in_quotient(gamma0, quotient)
    eta_J = eta_character(gamma0, J, quotient)
    # theta on C: provided, or extended from eta on the intersection
    inter = C.indices[J.contains(C.indices)]
    known = {int(i): complex(eta_J[J.position[i]]) for i in inter}
    minus_I = quotient.index_one((-np.eye(2, dtype=np.int64)) % quotient.pm)
    if theta is None:
        theta = extend_abelian_character(quotient, C.indices, known,
                                         forced={minus_I: complex(zeta)})
    else:
        for i in inter:
            if abs(theta[int(i)] - known[int(i)]) > 1e-9:
                raise ArithmeticError("theta incompatible with eta_Gamma on C.J")
    # assemble C.J and eta(c j) = theta(c) eta(j)
    c_mats = quotient.mats[C.indices]
    j_mats = quotient.mats[J.indices]
    prod = np.matmul(c_mats[:, None], j_mats[None, :]) % quotient.pm
    idx = quotient.index(prod)
    theta_vals = np.array([theta[int(i)] for i in C.indices])
    vals = theta_vals[:, None] * eta_J[None, :]
    flat_idx = idx.ravel()
    flat_vals = vals.ravel()
    uniq, first = np.unique(flat_idx, return_index=True)
    H = Subgroup(quotient, uniq)
    eta = flat_vals[first]
    # well-definedness: every decomposition of the same element must agree
    spread = np.zeros(len(uniq), dtype=complex)
    np.add.at(spread, np.searchsorted(uniq, flat_idx), flat_vals)
    counts = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(counts, np.searchsorted(uniq, flat_idx), 1)
    if np.abs(spread / counts - eta).max() > 1e-8:
        raise ArithmeticError("eta(Gamma, theta) is ill-defined on C.J")
    return H, eta


_SH_CACHE: dict = {}


def shalika_character(datum: ShalikaDatum, m: int | None = None) -> ClassFunction:
    """Induced character of eta(Gamma, theta) from C.J up to the quotient
    at level m (default d+1, the minimal faithful level)."""
    F = datum.gamma.F
    gamma0 = to_x0_frame(datum.gamma, datum.vertex)
    d = _canonical_depth(gamma0)
    if m is None:
        m = d + 1
    if m <= d:
        raise ValueError("quotient level must exceed the depth")
    key = (F.p, F.precision, F.psi_unit, m, datum.vertex.value,
           datum.central_sign, gamma0.render(), datum.theta)
    if key in _SH_CACHE:
        return _SH_CACHE[key]
    quotient = build_quotient(F.p, m)
    if _is_canonical_nilpotent(gamma0) and datum.theta is None:
        H, eta = _nilpotent_cj(quotient, d, gamma0.b, datum.central_sign)
    else:
        H, eta = _generic_cj(quotient, d, gamma0, datum.central_sign,
                             datum.theta_dict())
    chi = induce(quotient, H, eta)
    _SH_CACHE[key] = chi
    return chi


def shalika_degree(q: int, d: int) -> int:
    return q ** (d - 1) * (q * q - 1) // 2


# -- tau representations -----------------------------------------------------


@dataclass(frozen=True)
class TauComponent:
    depth: int
    degree: int
    orbit: OrbitLabel
    vertex: FilterPoint
    rep: Sl2Element


@dataclass(frozen=True)
class TauRep:
    """Direct sum over admissible depths of the Shalika representations
    attached to the G_x-orbits inside a nilpotent orbit."""

    F: FieldConfig
    vertex: FilterPoint
    orbit: OrbitLabel
    central_sign: int
    d_max: int
    components: tuple[TauComponent, ...]


def tau_rep(F: FieldConfig, vertex: FilterPoint, orbit: OrbitLabel,
            zeta: int = 1, d_max: int = 6) -> TauRep:
    """Components at each admissible depth d <= d_max (the orbit's parity
    at the vertex); the zero orbit yields the distinguished empty ledger."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    if orbit.is_zero:
        return TauRep(F, vertex, orbit, zeta, d_max, ())
    comps = []
    for rep in gx_orbit_reps(F, orbit, vertex, 1, d_max):
        d = -int(depth_at(rep, vertex))
        comps.append(TauComponent(d, shalika_degree(F.q, d), orbit, vertex, rep))
    comps.sort(key=lambda c: c.depth)
    return TauRep(F, vertex, orbit, zeta, d_max, tuple(comps))


def tau_fixed_dim(t: TauRep, level) -> int:
    """Dimension of the G_{x,level+}-fixed subspace: the sum of the degrees
    of the components of depth <= level."""
    r = Fraction(level)
    if r < 0:
        raise ValueError("level must be >= 0")
    if not t.orbit.is_zero and r > t.d_max:
        raise ValueError("ledger too short for this level; raise d_max")
    return sum(c.degree for c in t.components if c.depth <= r)


def tau_fixed_dim_closed(q: int, parity: Parity, level) -> int:
    """Closed forms: with k components of depth <= r, the even-parity sum is
    q(q^{2k} - 1)/2 with k = floor(r/2), the odd-parity sum (q^{2k} - 1)/2
    with k = floor((r+1)/2) (equal to ceil(r/2) at integer levels)."""
    r = Fraction(level)
    if parity == Parity.EVEN:
        return q * (q ** (2 * floor(r / 2)) - 1) // 2
    return (q ** (2 * floor((r + 1) / 2)) - 1) // 2


def tau_character(t: TauRep, m: int) -> ClassFunction:
    """Sum of the component Shalika characters of depth < m, as a class
    function on the level-m quotient."""
    quotient = build_quotient(t.F.p, m)
    total = ClassFunction(quotient, np.zeros(quotient.num_classes, dtype=complex))
    for c in t.components:
        if c.depth <= m - 1:
            datum = ShalikaDatum(t.vertex, c.rep, t.central_sign)
            total = total + shalika_character(datum, m)
    return total


# -- equivalence of restrictions ---------------------------------------------


def check_shalika_equiv(datum1: ShalikaDatum, datum2: ShalikaDatum, s,
                        m: int | None = None) -> bool:
    """Whether the two Shalika characters agree upon restriction to the
    image of G_{x,s+} (pointwise, within 1e-9)."""
    if datum1.vertex != datum2.vertex:
        raise ValueError("data must live at the same vertex")
    g1 = to_x0_frame(datum1.gamma, datum1.vertex)
    g2 = to_x0_frame(datum2.gamma, datum2.vertex)
    d1, d2 = _canonical_depth(g1), _canonical_depth(g2)
    if d1 != d2:
        raise ValueError("data must share the coset depth")
    s = Fraction(s)
    # when Gamma_1 lies in Gamma_2 + g*_{x,-s} and s >= d/2, agreement is
    # guaranteed; outside that hypothesis the comparison is still a fair
    # question (and typically answers False for distinct labels)
    m = m or d1 + 1
    chi1 = shalika_character(datum1, m)
    chi2 = shalika_character(datum2, m)
    quotient = build_quotient(g1.F.p, m)
    lvl = quotient.p ** (floor(s) + 1)
    mats = quotient.mats
    mask = ((mats[:, 0, 0] - 1) % lvl == 0) & ((mats[:, 1, 1] - 1) % lvl == 0) \
        & (mats[:, 0, 1] % lvl == 0) & (mats[:, 1, 0] % lvl == 0)
    idxs = np.nonzero(mask)[0]
    v1 = chi1.values[quotient.class_of[idxs]]
    v2 = chi2.values[quotient.class_of[idxs]]
    return bool(np.abs(v1 - v2).max() < 1e-9)
