"""Text renderings of the verified numeric tables: the constant terms of
the branching expansion, the LCE constant terms, the depth-zero component
tables, and the wave front sets.  The renderings are deterministic and are
pinned byte-for-byte by golden fixtures."""

from __future__ import annotations

from fractions import Fraction

from .field import FieldConfig, SquareClass
from .lie import FilterPoint
from .reps import (
    PS_HALF_TAUS,
    RepParam,
    c0_lce,
    core_dim,
    depth_zero_component,
    n_coefficient,
    wavefront,
)

VERTS = (FilterPoint.X0, FilterPoint.X1)


def _fmt_frac(x: Fraction) -> str:
    return str(x)


def render_n_x(F: FieldConfig) -> str:
    """Constant terms n_x(pi) and core dimensions for positive depth."""
    q = F.q
    lines = [f"constant terms n_x(pi) and dim(pi^(G_x,r+)), q = {q}",
             "type             r    core(x0) core(x1)  n_x(x0)  n_x(x1)"]
    rows: list[RepParam] = []
    rows += [RepParam("ps", depth=Fraction(r)) for r in (1, 2)]
    rows += [RepParam("unram-sc", home=0, depth=Fraction(r)) for r in (1, 2)]
    rows += [RepParam("unram-sc", home=1, depth=Fraction(r)) for r in (1, 2)]
    rows += [RepParam("ram-sc", depth=Fraction(2 * k - 1, 2), torus=SquareClass.PI)
             for k in (1, 2)]
    for rep in rows:
        name = rep.kind if rep.home is None else f"{rep.kind}(i={rep.home})"
        cores = [core_dim(rep, F, v) for v in VERTS]
        ns = [n_coefficient(rep, v, F) for v in VERTS]
        lines.append(f"{name:16s} {str(rep.depth):4s} {cores[0]:8d} {cores[1]:8d} "
                     f"{ns[0]:8d} {ns[1]:8d}")
    return "\n".join(lines) + "\n"


def render_c0(F: FieldConfig) -> str:
    """Constant terms of the local character expansion."""
    q = F.q
    lines = [f"LCE constant terms c_0(pi), q = {q}",
             "representation            c_0"]
    rows = [
        ("unram-sc r=0", RepParam("unram-sc", home=0, chi_index=1)),
        ("unram-sc r=1", RepParam("unram-sc", home=0, depth=Fraction(1))),
        ("unram-sc r=2", RepParam("unram-sc", home=0, depth=Fraction(2))),
        ("special", RepParam("special", home=0, u=SquareClass.ONE)),
        ("ram-sc r=1/2", RepParam("ram-sc", depth=Fraction(1, 2), torus=SquareClass.PI)),
        ("ram-sc r=3/2", RepParam("ram-sc", depth=Fraction(3, 2), torus=SquareClass.PI)),
        ("steinberg", RepParam("st")),
        ("trivial", RepParam("triv")),
        ("ps (other)", RepParam("ps", depth=Fraction(1))),
    ]
    for name, rep in rows:
        lines.append(f"{name:25s} {_fmt_frac(c0_lce(rep, F)):>6s}")
    return "\n".join(lines) + "\n"


def _labels(rep: RepParam, v: FilterPoint, F: FieldConfig) -> str:
    comps = depth_zero_component(rep, v, F)
    return "+".join(c.render() for c in comps) if comps else "0"


def render_h_plus(F: FieldConfig) -> str:
    """Depth-zero components of the decomposable principal series."""
    lines = [f"depth-zero components of the reducible principal series, q = {F.q}",
             "pi               x0                 x1"]
    for tau in PS_HALF_TAUS:
        for sign in (1, -1):
            rep = RepParam("ps-half", tau=tau, sign=sign)
            name = f"H[{tau}]{'+' if sign == 1 else '-'}"
            lines.append(f"{name:16s} {_labels(rep, VERTS[0], F):18s} "
                         f"{_labels(rep, VERTS[1], F)}")
    return "\n".join(lines) + "\n"


def render_depth_zero(F: FieldConfig) -> str:
    """Depth-zero components of the remaining depth-zero families."""
    lines = [f"depth-zero components (irreducible ps, Steinberg, supercuspidal), q = {F.q}",
             "pi               x0                 x1"]
    rows = [
        ("ps regular", RepParam("ps", chi_index=1) if F.q > 3 else None),
        ("steinberg", RepParam("st")),
        ("trivial", RepParam("triv")),
        ("unram-sc i=0", RepParam("unram-sc", home=0, chi_index=1)),
        ("unram-sc i=1", RepParam("unram-sc", home=1, chi_index=1)),
        ("special i=0 u=1", RepParam("special", home=0, u=SquareClass.ONE)),
        ("special i=1 u=eps", RepParam("special", home=1, u=SquareClass.EPS)),
    ]
    for name, rep in rows:
        if rep is None:
            lines.append(f"{name:18s} (none at q = 3)")
            continue
        lines.append(f"{name:18s} {_labels(rep, VERTS[0], F):18s} "
                     f"{_labels(rep, VERTS[1], F)}")
    return "\n".join(lines) + "\n"


def render_wf(F: FieldConfig) -> str:
    """Wave front sets of the depth-zero representations."""
    lines = [f"wave front sets, q = {F.q}", "pi               WF(pi)"]
    rows = [
        ("ps irreducible", RepParam("ps", chi_index=1) if F.q > 3
         else RepParam("ps", depth=Fraction(1))),
        ("unram-sc i=0", RepParam("unram-sc", home=0, chi_index=1)),
        ("unram-sc i=1", RepParam("unram-sc", home=1, chi_index=1)),
        ("trivial", RepParam("triv")),
        ("steinberg", RepParam("st")),
    ]
    for tau in PS_HALF_TAUS:
        for sign in (1, -1):
            rows.append((f"H[{tau}]{'+' if sign == 1 else '-'}",
                         RepParam("ps-half", tau=tau, sign=sign)))
    for i in (0, 1):
        for u in (SquareClass.ONE, SquareClass.EPS):
            rows.append((f"special i={i} u={u.render()}",
                         RepParam("special", home=i, u=u)))
    for name, rep in rows:
        wf = "{" + ", ".join(sorted(o.render() for o in wavefront(rep, F))) + "}"
        lines.append(f"{name:18s} {wf}")
    return "\n".join(lines) + "\n"


TABLES = {
    "n-x": render_n_x,
    "c0": render_c0,
    "h-plus": render_h_plus,
    "depth-zero": render_depth_zero,
    "wf": render_wf,
}


def render_table(name: str, F: FieldConfig) -> str:
    if name not in TABLES:
        raise ValueError(f"unknown table {name!r}; choose from {sorted(TABLES)}")
    return TABLES[name](F)
