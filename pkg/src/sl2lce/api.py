"""Request/response models and handlers: the service surface.

Every operation the CLI or the HTTP service exposes is a pure function
from a pydantic request model to a pydantic response model; the FastAPI
app and the command line are thin bindings over these handlers.
"""

from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, Field

from .field import FieldConfig, SquareClass, parse_scalar, square_class
from .fingrp import build_quotient, char_table, gg_character, gg_decompose
from .lie import (
    FilterPoint,
    OrbitLabel,
    Sl2Element,
    cone_oracle,
    coset_orbit,
    depth_at,
    nil_support,
)
from .reps import (
    branching_report,
    c0_lce,
    fixed_dim_branching,
    fixed_dim_closed_form,
    mu_hat_value,
    parse_rep,
    standard_families,
    verify_main_theorem,
    wavefront,
)
from .shalika import ShalikaDatum, shalika_character, tau_fixed_dim, tau_rep
from .tables import TABLES, render_table

VERTEX = {"x0": FilterPoint.X0, "x1": FilterPoint.X1, "z0": FilterPoint.Z0}


def _field(p: int, precision: int = 8, psi_unit: int = 1) -> FieldConfig:
    return FieldConfig(p, precision=precision, psi_unit=psi_unit)


def _c(z: complex) -> list[float]:
    return [round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0]


class BaseRequest(BaseModel):
    p: int = 3
    precision: int = 8
    psi_unit: int = 1


# -- field / lie --------------------------------------------------------------


class SquareClassRequest(BaseRequest):
    scalar: str


class SquareClassResponse(BaseModel):
    square_class: str
    valuation: str


def handle_square_class(req: SquareClassRequest) -> SquareClassResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    a = parse_scalar(F, req.scalar)
    return SquareClassResponse(square_class=square_class(a).render(),
                               valuation=str(int(a.val)) if not a.is_zero else "inf")


class NilSupportRequest(BaseRequest):
    gamma: str
    samples: int = 0          # > 0 also runs the cone oracle
    seed: int = 0


class NilSupportResponse(BaseModel):
    labels: list[str]
    oracle_labels: list[str] | None = None
    oracle_contained: bool | None = None


def handle_nil_support(req: NilSupportRequest) -> NilSupportResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    gamma = Sl2Element.parse(F, req.gamma)
    labels = sorted(o.render() for o in nil_support(gamma))
    resp = NilSupportResponse(labels=labels)
    if req.samples > 0:
        found = cone_oracle(gamma, req.samples, req.seed)
        resp.oracle_labels = sorted(o.render() for o in found)
        resp.oracle_contained = bool(set(resp.oracle_labels) <= set(labels))
    return resp


class CosetOrbitRequest(BaseRequest):
    gamma: str
    vertex: str = "x0"


class CosetOrbitResponse(BaseModel):
    label: str | None
    depth: str


def handle_coset_orbit(req: CosetOrbitRequest) -> CosetOrbitResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    gamma = Sl2Element.parse(F, req.gamma)
    pt = VERTEX[req.vertex]
    lab = coset_orbit(gamma, pt)
    return CosetOrbitResponse(label=None if lab is None else lab.render(),
                              depth=str(depth_at(gamma, pt)))


# -- representations -----------------------------------------------------------


class WavefrontRequest(BaseRequest):
    rep: str


class WavefrontResponse(BaseModel):
    labels: list[str]
    c0: str


def handle_wavefront(req: WavefrontRequest) -> WavefrontResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    rep = parse_rep(req.rep)
    return WavefrontResponse(
        labels=sorted(o.render() for o in wavefront(rep, F)),
        c0=str(c0_lce(rep, F)))


class BranchRequest(BaseRequest):
    rep: str
    vertex: str = "x0"
    nmax: int = 6


class BranchResponse(BaseModel):
    rep: str
    vertex: str
    n_x: int
    wavefront: list[str]
    dims: dict[int, int]
    components: list[dict]


def handle_branch(req: BranchRequest) -> BranchResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    rpt = branching_report(parse_rep(req.rep), VERTEX[req.vertex], F, req.nmax)
    return BranchResponse(rep=rpt.rep, vertex=rpt.vertex, n_x=rpt.n_x,
                          wavefront=rpt.wavefront, dims=rpt.dims,
                          components=rpt.components)


class DimsRequest(BaseRequest):
    rep: str
    vertex: str = "x0"
    nmax: int = 6


class DimsResponse(BaseModel):
    dims: dict[int, int]
    closed_even: dict[int, int]


def handle_dims(req: DimsRequest) -> DimsResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    rep = parse_rep(req.rep)
    v = VERTEX[req.vertex]
    dims = {n: fixed_dim_branching(rep, v, F, n) for n in range(1, req.nmax + 1)}
    closed = {2 * n: fixed_dim_closed_form(rep, v, F, n)
              for n in range(1, req.nmax // 2 + 1) if Fraction(2 * n) > rep.depth}
    return DimsResponse(dims=dims, closed_even=closed)


# -- verification ---------------------------------------------------------------


class VerifyRequest(BaseRequest):
    scope: str = "main"        # main | all | tables
    rep: str | None = None
    vertex: str | None = None
    nmax: int = 6
    char_level: bool | None = None
    table: str | None = None


class VerifyCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyReportModel(BaseModel):
    rep: str
    vertex: str
    passed: bool
    dims: dict[int, int]
    checks: list[VerifyCheck]


class VerifyResponse(BaseModel):
    passed: bool
    reports: list[VerifyReportModel] = Field(default_factory=list)
    tables: dict[str, str] | None = None


def _verify_one(rep, vertex, F, nmax, char_level) -> VerifyReportModel:
    rpt = verify_main_theorem(rep, vertex, F, nmax, char_level)
    return VerifyReportModel(
        rep=rpt.rep, vertex=rpt.vertex, passed=bool(rpt.passed), dims=rpt.dims,
        checks=[VerifyCheck(name=c.name, passed=bool(c.passed), detail=c.detail)
                for c in rpt.checks])


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    if req.scope == "tables":
        names = [req.table] if req.table else sorted(TABLES)
        return VerifyResponse(passed=True,
                              tables={n: render_table(n, F) for n in names})
    if req.scope == "main":
        if not req.rep:
            raise ValueError("verify main needs --rep")
        verts = [VERTEX[req.vertex]] if req.vertex else \
            [FilterPoint.X0, FilterPoint.X1]
        reports = [_verify_one(parse_rep(req.rep), v, F, req.nmax, req.char_level)
                   for v in verts]
        return VerifyResponse(passed=all(r.passed for r in reports),
                              reports=reports)
    if req.scope == "all":
        reports = []
        for rep in standard_families(F):
            for v in (FilterPoint.X0, FilterPoint.X1):
                reports.append(_verify_one(rep, v, F, req.nmax, req.char_level))
        return VerifyResponse(passed=all(r.passed for r in reports),
                              reports=reports)
    raise ValueError(f"unknown verify scope {req.scope!r}")


# -- finite groups ---------------------------------------------------------------


class CharTableRequest(BaseModel):
    q: int = 3
    psi_unit: int = 1


class CharRow(BaseModel):
    label: str
    degree: int
    values: list[list[float]]


class CharTableResponse(BaseModel):
    q: int
    class_reps: list[list[list[int]]]
    class_sizes: list[int]
    rows: list[CharRow]


def handle_char_table(req: CharTableRequest) -> CharTableResponse:
    table = char_table(req.q, req.psi_unit)
    G = build_quotient(req.q, 1)
    return CharTableResponse(
        q=req.q,
        class_reps=[G.mats[i].tolist() for i in G.class_reps],
        class_sizes=[int(s) for s in G.class_sizes],
        rows=[CharRow(label=lab.render(), degree=lab.degree,
                      values=[_c(v) for v in chi.values])
              for lab, chi in table])


class GGTableRequest(BaseModel):
    q: int = 3
    psi_unit: int = 1


class GGTableResponse(BaseModel):
    q: int
    characters: dict[str, list[list[float]]]
    decompositions: dict[str, list[str]]


def handle_gg_table(req: GGTableRequest) -> GGTableResponse:
    chars, decomps = {}, {}
    for u in (SquareClass.ONE, SquareClass.EPS):
        chars[u.render()] = [_c(v) for v in gg_character(u, req.q, req.psi_unit).values]
        decomps[u.render()] = [lab.render()
                               for lab in gg_decompose(u, req.q, req.psi_unit)]
    return GGTableResponse(q=req.q, characters=chars, decompositions=decomps)


# -- shalika / tau / mu-hat -------------------------------------------------------


class ShalikaRequest(BaseRequest):
    vertex: str = "x0"
    gamma: str
    zeta: int = 1
    level: int | None = None
    include_values: bool = False


class ShalikaResponse(BaseModel):
    degree: int
    norm: float
    depth: int
    level: int
    values: list[list[float]] | None = None


def handle_shalika(req: ShalikaRequest) -> ShalikaResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    gamma = Sl2Element.parse(F, req.gamma)
    vertex = VERTEX[req.vertex]
    d = -int(depth_at(gamma, vertex))
    chi = shalika_character(ShalikaDatum(vertex, gamma, req.zeta), req.level)
    return ShalikaResponse(
        degree=int(round(chi.degree)), norm=float(abs(chi.inner(chi))),
        depth=d, level=req.level or d + 1,
        values=[_c(v) for v in chi.values] if req.include_values else None)


class TauRequest(BaseRequest):
    orbit: str = "1"
    vertex: str = "x0"
    zeta: int = 1
    dmax: int = 6


class TauResponse(BaseModel):
    orbit: str
    vertex: str
    parity: str
    components: list[dict]
    fixed_dims: dict[int, int]


def handle_tau(req: TauRequest) -> TauResponse:
    from .lie import parity_depth
    F = _field(req.p, req.precision, req.psi_unit)
    orbit = OrbitLabel.parse(req.orbit)
    vertex = VERTEX[req.vertex]
    t = tau_rep(F, vertex, orbit, req.zeta, req.dmax)
    parity = "none" if orbit.is_zero else parity_depth(orbit, vertex).value
    return TauResponse(
        orbit=orbit.render(), vertex=req.vertex, parity=parity,
        components=[{"depth": c.depth, "degree": c.degree} for c in t.components],
        fixed_dims={r: tau_fixed_dim(t, r) for r in range(0, req.dmax + 1)})


class MuHatRequest(BaseRequest):
    orbit: str = "1"
    vertex: str = "x0"
    x: str = "1:1,0,0"
    level: int = 2


class MuHatResponse(BaseModel):
    value: list[float]
    regular: bool


def handle_mu_hat(req: MuHatRequest) -> MuHatResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    X = Sl2Element.parse(F, req.x)
    val, regular = mu_hat_value(F, OrbitLabel.parse(req.orbit),
                                VERTEX[req.vertex], X, req.level)
    return MuHatResponse(value=_c(val), regular=regular)


class TablesRequest(BaseRequest):
    name: str = "wf"


class TablesResponse(BaseModel):
    name: str
    text: str


def handle_tables(req: TablesRequest) -> TablesResponse:
    F = _field(req.p, req.precision, req.psi_unit)
    return TablesResponse(name=req.name, text=render_table(req.name, F))
