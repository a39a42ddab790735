"""FastAPI binding of the handler layer.

Run with `sl2lce serve` (requires uvicorn) or mount `app` in any ASGI
server.  Heavy artifacts (finite quotients, character tables, Shalika
characters) are cached in-process, so a resident service answers repeat
queries quickly.
"""

# note: no `from __future__ import annotations` here -- the endpoint
# factory relies on eagerly evaluated request-model annotations
from fastapi import FastAPI, HTTPException

from . import api

app = FastAPI(title="sl2lce",
              description="Nilpotent supports, Shalika representations and "
                          "branching rules for SL(2) over a p-adic field")

_ROUTES = [
    ("/square-class", api.SquareClassRequest, api.handle_square_class),
    ("/nil-support", api.NilSupportRequest, api.handle_nil_support),
    ("/orbit-of-coset", api.CosetOrbitRequest, api.handle_coset_orbit),
    ("/wavefront", api.WavefrontRequest, api.handle_wavefront),
    ("/branch", api.BranchRequest, api.handle_branch),
    ("/dims", api.DimsRequest, api.handle_dims),
    ("/verify", api.VerifyRequest, api.handle_verify),
    ("/char-table", api.CharTableRequest, api.handle_char_table),
    ("/gg-table", api.GGTableRequest, api.handle_gg_table),
    ("/shalika", api.ShalikaRequest, api.handle_shalika),
    ("/tau", api.TauRequest, api.handle_tau),
    ("/mu-hat", api.MuHatRequest, api.handle_mu_hat),
    ("/tables", api.TablesRequest, api.handle_tables),
]


def _bind(path, req_model, handler):
    @app.post(path, response_model=None, name=handler.__name__)
    def endpoint(request: req_model):  # type: ignore[valid-type]
        try:
            return handler(request)
        except (ValueError, ArithmeticError, KeyError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))


for _path, _req, _handler in _ROUTES:
    _bind(_path, _req, _handler)


@app.get("/health")
def health():
    return {"status": "ok"}
