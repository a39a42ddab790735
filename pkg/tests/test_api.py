import json
import pathlib

import pytest
from fastapi.testclient import TestClient

from sl2lce import api
from sl2lce.cli import main as cli_main
from sl2lce.service import app

GOLDEN = pathlib.Path(__file__).parent / "golden"

client = TestClient(app)


class TestService:
    def test_health(self):
        assert client.get("/health").json() == {"status": "ok"}

    def test_square_class(self):
        r = client.post("/square-class", json={"p": 5, "scalar": "2:2"})
        assert r.status_code == 200
        assert r.json()["square_class"] == "eps"

    def test_nil_support_endpoint(self):
        r = client.post("/nil-support",
                        json={"p": 3, "gamma": "0,1,1:1", "samples": 200})
        body = r.json()
        assert body["labels"] == ["1", "eps*pi"]
        assert body["oracle_contained"] is True

    def test_orbit_of_coset(self):
        r = client.post("/orbit-of-coset", json={"p": 3, "gamma": "0,-2:1,1"})
        assert r.json() == {"label": "1", "depth": "-2"}

    def test_wavefront(self):
        r = client.post("/wavefront", json={"p": 3, "rep": "special:i=1,u=eps"})
        assert r.json()["labels"] == ["eps*pi"]
        assert r.json()["c0"] == "-1/2"

    def test_branch_and_dims_consistent(self):
        rb = client.post("/branch", json={"p": 3, "rep": "ps:r=1", "nmax": 4})
        rd = client.post("/dims", json={"p": 3, "rep": "ps:r=1", "nmax": 4})
        assert rb.json()["dims"] == rd.json()["dims"]
        assert rd.json()["closed_even"]["2"] == 12

    def test_verify_main(self):
        r = client.post("/verify", json={"p": 3, "scope": "main", "rep": "st",
                                         "nmax": 4})
        assert r.json()["passed"] is True

    def test_char_table(self):
        r = client.post("/char-table", json={"q": 3})
        rows = r.json()["rows"]
        assert sorted(row["degree"] for row in rows) == [1, 1, 1, 2, 2, 2, 3]

    def test_gg_table(self):
        r = client.post("/gg-table", json={"q": 3})
        dec = r.json()["decompositions"]
        assert len(dec["1"]) == 4 and len(dec["eps"]) == 4

    def test_shalika(self):
        r = client.post("/shalika", json={"p": 3, "gamma": "0,-1:1,0",
                                          "vertex": "x0"})
        body = r.json()
        assert body["degree"] == 4 and abs(body["norm"] - 1) < 1e-6

    def test_tau(self):
        r = client.post("/tau", json={"p": 3, "orbit": "1", "vertex": "x0",
                                      "dmax": 4})
        assert [c["depth"] for c in r.json()["components"]] == [2, 4]

    def test_mu_hat(self):
        r = client.post("/mu-hat", json={"p": 3, "orbit": "pi", "vertex": "x0",
                                         "x": "1:1,0,0", "level": 2})
        assert r.status_code == 200
        assert r.json()["regular"] is True

    def test_malformed_input_is_422(self):
        r = client.post("/nil-support", json={"p": 3, "gamma": "1,2"})
        assert r.status_code == 422
        r = client.post("/wavefront", json={"p": 3, "rep": "bogus:r=1"})
        assert r.status_code == 422


class TestCli:
    def test_nil_support_text(self, capsys):
        assert cli_main(["--p", "3", "nil-support", "--gamma", "0,1,1:1"]) == 0
        assert capsys.readouterr().out == "{1, eps*pi}\n"

    def test_verify_exit_code(self, capsys):
        rc = cli_main(["--p", "3", "verify", "main", "--rep", "st",
                       "--vertex", "x0", "--nmax", "4"])
        out = capsys.readouterr().out
        assert rc == 0 and out.startswith("PASS")
        assert "2:11" in out  # level-2 entry of the Steinberg table

    def test_usage_error(self, capsys):
        rc = cli_main(["--p", "3", "wavefront", "--rep", "nonsense:r=1"])
        assert rc == 2

    def test_malformed_matrix_literal(self, capsys):
        rc = cli_main(["--p", "3", "nil-support", "--gamma", "1,2"])
        assert rc == 2
        rc = cli_main(["--p", "3", "square-class", "--scalar", "1:3"])
        assert rc == 2  # unit part divisible by p

    def test_json_and_text_agree(self, capsys):
        cli_main(["--p", "3", "tau", "--orbit", "pi", "--dmax", "4"])
        text = capsys.readouterr().out
        cli_main(["--p", "3", "tau", "--orbit", "pi", "--dmax", "4", "--json"])
        blob = json.loads(capsys.readouterr().out)
        for comp in blob["components"]:
            assert f"depth {comp['depth']}: degree {comp['degree']}" in text
        for r, v in blob["fixed_dims"].items():
            assert f"{r}:{v}" in text

    def test_square_class_cli(self, capsys):
        assert cli_main(["--p", "5", "square-class", "--scalar=-1:3"]) == 0
        assert capsys.readouterr().out.strip() in ("pi", "eps*pi")

    def test_serve_route_table_complete(self):
        from sl2lce.cli import _ROUTE_TABLE
        paths = {p for p, _, _ in _ROUTE_TABLE}
        spec_cmds = {"/square-class", "/nil-support", "/orbit-of-coset",
                     "/wavefront", "/branch", "/dims", "/verify",
                     "/char-table", "/gg-table", "/shalika", "/tau", "/mu-hat"}
        assert spec_cmds <= paths


@pytest.fixture(scope="module")
def server_url():
    import socket
    import threading
    import time

    import uvicorn

    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        port = s.getsockname()[1]
    config = uvicorn.Config(app, host="127.0.0.1", port=port,
                            log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    for _ in range(100):
        if server.started:
            break
        time.sleep(0.05)
    else:
        pytest.skip("server did not start")
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


class TestLiveServer:
    def test_cli_against_live_server(self, server_url, capsys):
        rc = cli_main(["--server", server_url, "--p", "3",
                       "nil-support", "--gamma", "0,1,1:1"])
        assert rc == 0
        assert capsys.readouterr().out == "{1, eps*pi}\n"
        rc = cli_main(["--server", server_url, "--p", "3",
                       "verify", "main", "--rep", "triv", "--nmax", "2"])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.strip().endswith("PASS")


class TestGolden:
    @pytest.mark.parametrize("p", [3, 5])
    @pytest.mark.parametrize("name", ["n-x", "c0", "h-plus", "depth-zero", "wf"])
    def test_tables_match_fixtures(self, p, name, capsys):
        rc = cli_main(["--p", str(p), "tables", "--name", name])
        assert rc == 0
        got = capsys.readouterr().out
        want = (GOLDEN / f"table_{name}_p{p}.txt").read_text()
        assert got == want

    @pytest.mark.parametrize("p", [3, 5])
    def test_verify_tables_scope(self, p):
        r = client.post("/verify", json={"p": p, "scope": "tables"})
        tables = r.json()["tables"]
        for name, text in tables.items():
            want = (GOLDEN / f"table_{name}_p{p}.txt").read_text()
            assert text == want
