"""Command-line front end: a thin client over the service handlers.

By default requests are handled in-process; with --server URL they are
POSTed to a running sl2lce service instead.  Output is deterministic:
text renderings or, with --json, the response model dumped with complex
numbers as (re, im) pairs rounded to 9 places.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.request

from . import api

COMMON = [
    ("--p", dict(type=int, help="odd prime p (default 3)")),
    ("--precision", dict(type=int, help="unit precision N (default 8)")),
    ("--psi-unit", dict(type=int, dest="psi_unit",
                        help="unit twist of the additive character")),
    ("--seed", dict(type=int, help="sampling seed")),
    ("--json", dict(action="store_true", dest="as_json", help="emit JSON")),
    ("--server", dict(type=str, help="POST to a running service instead")),
]


def _add_common(parser):
    for flag, kw in COMMON:
        kw = dict(kw)
        kw["default"] = argparse.SUPPRESS
        parser.add_argument(flag, **kw)


def _build_parser():
    top = argparse.ArgumentParser(
        prog="sl2lce",
        description="nilpotent supports, Shalika representations and "
                    "branching rules for SL(2) over a p-adic field")
    _add_common(top)
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(cmd_name, **args):
        sp = sub.add_parser(cmd_name)
        _add_common(sp)
        for flag, kw in args.items():
            sp.add_argument("--" + flag.replace("_", "-"), **kw)
        return sp

    cmd("square-class", scalar=dict(required=True))
    cmd("nil-support", gamma=dict(required=True),
        samples=dict(type=int, default=0))
    cmd("orbit-of-coset", gamma=dict(required=True),
        vertex=dict(default="x0", choices=["x0", "x1"]))
    cmd("wavefront", rep=dict(required=True))
    cmd("branch", rep=dict(required=True),
        vertex=dict(default="x0", choices=["x0", "x1"]),
        nmax=dict(type=int, default=6))
    cmd("dims", rep=dict(required=True),
        vertex=dict(default="x0", choices=["x0", "x1"]),
        nmax=dict(type=int, default=6))
    vp = sub.add_parser("verify")
    _add_common(vp)
    vp.add_argument("scope", nargs="?", default="main",
                    choices=["main", "all", "tables"])
    vp.add_argument("--rep")
    vp.add_argument("--vertex", choices=["x0", "x1"])
    vp.add_argument("--nmax", type=int, default=6)
    vp.add_argument("--char-level", dest="char_level", action="store_true",
                    default=None)
    vp.add_argument("--table")
    cmd("char-table", q=dict(type=int, default=3))
    cmd("gg-table", q=dict(type=int, default=3))
    cmd("shalika", gamma=dict(required=True),
        vertex=dict(default="x0", choices=["x0", "x1"]),
        zeta=dict(type=int, default=1),
        depth_level=dict(type=int, default=None),
        values=dict(action="store_true"))
    cmd("tau", orbit=dict(default="1"),
        vertex=dict(default="x0", choices=["x0", "x1"]),
        zeta=dict(type=int, default=1),
        dmax=dict(type=int, default=6))
    cmd("mu-hat", orbit=dict(default="1"),
        vertex=dict(default="x0", choices=["x0", "x1"]),
        x=dict(required=True), level=dict(type=int, default=2))
    cmd("tables", name=dict(default="wf"))
    sv = sub.add_parser("serve")
    _add_common(sv)
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8000)
    return top


def _base_kwargs(ns) -> dict:
    out = {}
    for key, attr in (("p", "p"), ("precision", "precision"),
                      ("psi_unit", "psi_unit")):
        if hasattr(ns, attr):
            out[key] = getattr(ns, attr)
    return out


def _dispatch(path: str, req, server: str | None):
    """Run a handler in-process, or POST the request to a server."""
    if server:
        data = req.model_dump_json().encode()
        http_req = urllib.request.Request(
            server.rstrip("/") + path, data=data,
            headers={"Content-Type": "application/json"})
        with urllib.request.urlopen(http_req) as resp:
            return json.loads(resp.read())
    handler = dict((p, h) for p, _, h in _ROUTE_TABLE)[path]
    return handler(req)


def _emit(result, as_json: bool, renderer=None) -> None:
    if not as_json and renderer is not None:
        print(renderer(result), end="")
        return
    if hasattr(result, "model_dump"):
        result = result.model_dump()
    print(json.dumps(result, indent=2, sort_keys=True))


def _get(res, key):
    return res[key] if isinstance(res, dict) else getattr(res, key)


# -- text renderers -------------------------------------------------------------


def _render_set(labels) -> str:
    return "{" + ", ".join(labels) + "}"


def _r_square_class(res) -> str:
    return f"{_get(res, 'square_class')}\n"


def _r_nil_support(res) -> str:
    out = _render_set(_get(res, "labels")) + "\n"
    if _get(res, "oracle_labels") is not None:
        out += f"cone oracle: {_render_set(_get(res, 'oracle_labels'))} " \
               f"(contained: {_get(res, 'oracle_contained')})\n"
    return out


def _r_coset(res) -> str:
    lab = _get(res, "label")
    return f"{lab if lab is not None else 'not-degenerate'} " \
           f"(depth {_get(res, 'depth')})\n"


def _r_wavefront(res) -> str:
    return f"WF = {_render_set(_get(res, 'labels'))}\nc0 = {_get(res, 'c0')}\n"


def _r_branch(res) -> str:
    lines = [f"rep {_get(res, 'rep')} at {_get(res, 'vertex')}",
             f"n_x = {_get(res, 'n_x')}, WF = {_render_set(_get(res, 'wavefront'))}"]
    dims = _get(res, "dims")
    for n in sorted(dims, key=int):
        lines.append(f"  dim pi^(G_x,{n}) = {dims[n]}")
    for c in _get(res, "components"):
        lines.append(f"  component: orbit {c['orbit']}, depth {c['depth']}, "
                     f"degree {c['degree']}")
    return "\n".join(lines) + "\n"


def _r_dims(res) -> str:
    lines = []
    dims = _get(res, "dims")
    closed = _get(res, "closed_even")
    for n in sorted(dims, key=int):
        extra = f"  (closed form {closed[n]})" if n in closed or str(n) in closed else ""
        key = n if n in closed else str(n)
        extra = f"  (closed form {closed[key]})" if key in closed else ""
        lines.append(f"level {n}: {dims[n]}{extra}")
    return "\n".join(lines) + "\n"


def _r_verify(res) -> str:
    tables = _get(res, "tables")
    if tables:
        return "".join(tables[k] + "\n" for k in sorted(tables))
    lines = []
    for rpt in _get(res, "reports"):
        status = "PASS" if _get(rpt, "passed") else "FAIL"
        lines.append(f"{status} {_get(rpt, 'rep')} at {_get(rpt, 'vertex')}")
        dims = _get(rpt, "dims")
        lines.append("  levels: " + " ".join(
            f"{n}:{dims[n]}" for n in sorted(dims, key=int)))
        for c in _get(rpt, "checks"):
            mark = "ok" if _get(c, "passed") else "FAIL"
            detail = _get(c, "detail")
            lines.append(f"  [{mark}] {_get(c, 'name')}"
                         + (f" ({detail})" if detail else ""))
    overall = "PASS" if _get(res, "passed") else "FAIL"
    lines.append(overall)
    return "\n".join(lines) + "\n"


def _r_char_table(res) -> str:
    lines = [f"character table of SL(2,{_get(res, 'q')}): "
             f"{len(_get(res, 'rows'))} irreducibles"]
    for row in _get(res, "rows"):
        vals = " ".join(
            f"{v[0]:+.4f}{v[1]:+.4f}i" for v in _get(row, "values"))
        lines.append(f"{_get(row, 'label'):14s} deg {_get(row, 'degree'):2d}  {vals}")
    return "\n".join(lines) + "\n"


def _r_gg(res) -> str:
    lines = [f"Gel'fand-Graev data for SL(2,{_get(res, 'q')})"]
    for u, dec in _get(res, "decompositions").items():
        lines.append(f"gamma[{u}] = " + " + ".join(dec))
    for u, vals in _get(res, "characters").items():
        flat = " ".join(f"{v[0]:+.4f}{v[1]:+.4f}i" for v in vals)
        lines.append(f"[gamma_{u}] values: {flat}")
    return "\n".join(lines) + "\n"


def _r_shalika(res) -> str:
    return (f"degree {_get(res, 'degree')}, depth {_get(res, 'depth')}, "
            f"norm {_get(res, 'norm'):.6f} (level {_get(res, 'level')})\n")


def _r_tau(res) -> str:
    lines = [f"tau({_get(res, 'orbit')}) at {_get(res, 'vertex')} "
             f"(parity {_get(res, 'parity')})"]
    for c in _get(res, "components"):
        lines.append(f"  depth {c['depth']}: degree {c['degree']}")
    fd = _get(res, "fixed_dims")
    lines.append("fixed dims: " + " ".join(
        f"{r}:{fd[r]}" for r in sorted(fd, key=int)))
    return "\n".join(lines) + "\n"


def _r_mu_hat(res) -> str:
    v = _get(res, "value")
    flag = "" if _get(res, "regular") else "  [non-regular X]"
    return f"{v[0]:+.9f} {v[1]:+.9f}i{flag}\n"


def _r_tables(res) -> str:
    return _get(res, "text")


_ROUTE_TABLE = [
    ("/square-class", "square-class", api.handle_square_class),
    ("/nil-support", "nil-support", api.handle_nil_support),
    ("/orbit-of-coset", "orbit-of-coset", api.handle_coset_orbit),
    ("/wavefront", "wavefront", api.handle_wavefront),
    ("/branch", "branch", api.handle_branch),
    ("/dims", "dims", api.handle_dims),
    ("/verify", "verify", api.handle_verify),
    ("/char-table", "char-table", api.handle_char_table),
    ("/gg-table", "gg-table", api.handle_gg_table),
    ("/shalika", "shalika", api.handle_shalika),
    ("/tau", "tau", api.handle_tau),
    ("/mu-hat", "mu-hat", api.handle_mu_hat),
    ("/tables", "tables", api.handle_tables),
]


def main(argv=None) -> int:
    ns = _build_parser().parse_args(argv)
    as_json = getattr(ns, "as_json", False)
    server = getattr(ns, "server", None)
    base = _base_kwargs(ns)
    try:
        cmd = ns.command
        if cmd == "serve":
            import uvicorn

            from .service import app
            uvicorn.run(app, host=ns.host, port=ns.port)
            return 0
        if cmd == "square-class":
            req = api.SquareClassRequest(**base, scalar=ns.scalar)
            _emit(_dispatch("/square-class", req, server), as_json, _r_square_class)
        elif cmd == "nil-support":
            req = api.NilSupportRequest(**base, gamma=ns.gamma,
                                        samples=ns.samples,
                                        seed=getattr(ns, "seed", 0))
            _emit(_dispatch("/nil-support", req, server), as_json, _r_nil_support)
        elif cmd == "orbit-of-coset":
            req = api.CosetOrbitRequest(**base, gamma=ns.gamma, vertex=ns.vertex)
            _emit(_dispatch("/orbit-of-coset", req, server), as_json, _r_coset)
        elif cmd == "wavefront":
            req = api.WavefrontRequest(**base, rep=ns.rep)
            _emit(_dispatch("/wavefront", req, server), as_json, _r_wavefront)
        elif cmd == "branch":
            req = api.BranchRequest(**base, rep=ns.rep, vertex=ns.vertex,
                                    nmax=ns.nmax)
            _emit(_dispatch("/branch", req, server), as_json, _r_branch)
        elif cmd == "dims":
            req = api.DimsRequest(**base, rep=ns.rep, vertex=ns.vertex,
                                  nmax=ns.nmax)
            _emit(_dispatch("/dims", req, server), as_json, _r_dims)
        elif cmd == "verify":
            req = api.VerifyRequest(**base, scope=ns.scope, rep=ns.rep,
                                    vertex=ns.vertex, nmax=ns.nmax,
                                    char_level=ns.char_level, table=ns.table)
            res = _dispatch("/verify", req, server)
            _emit(res, as_json, _r_verify)
            if not _get(res, "passed"):
                return 1
        elif cmd == "char-table":
            req = api.CharTableRequest(q=ns.q, psi_unit=base.get("psi_unit", 1))
            _emit(_dispatch("/char-table", req, server), as_json, _r_char_table)
        elif cmd == "gg-table":
            req = api.GGTableRequest(q=ns.q, psi_unit=base.get("psi_unit", 1))
            _emit(_dispatch("/gg-table", req, server), as_json, _r_gg)
        elif cmd == "shalika":
            req = api.ShalikaRequest(**base, gamma=ns.gamma, vertex=ns.vertex,
                                     zeta=ns.zeta, level=ns.depth_level,
                                     include_values=ns.values)
            _emit(_dispatch("/shalika", req, server), as_json, _r_shalika)
        elif cmd == "tau":
            req = api.TauRequest(**base, orbit=ns.orbit, vertex=ns.vertex,
                                 zeta=ns.zeta, dmax=ns.dmax)
            _emit(_dispatch("/tau", req, server), as_json, _r_tau)
        elif cmd == "mu-hat":
            req = api.MuHatRequest(**base, orbit=ns.orbit, vertex=ns.vertex,
                                   x=ns.x, level=ns.level)
            _emit(_dispatch("/mu-hat", req, server), as_json, _r_mu_hat)
        elif cmd == "tables":
            req = api.TablesRequest(**base, name=ns.name)
            _emit(_dispatch("/tables", req, server), as_json, _r_tables)
        else:
            print(f"unknown command {cmd}", file=sys.stderr)
            return 2
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
