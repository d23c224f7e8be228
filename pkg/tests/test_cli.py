import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from harmonica.canvas import Subgraph, validate_canvas
from harmonica.cli import run

from helpers import cycle, diamond

DATA = Path(__file__).parent / "data"


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out else None


def test_decide_single_edge(capsys):
    code, out = call(capsys, "decide", "-i", DATA / "single_edge.json", "--p1", 1, "--p2", 2)
    assert code == 0
    assert out == {"colorable": True, "coloring": {"1": 1, "2": 2}}


def test_certify_then_verify(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, out = call(capsys, "certify", "-i", DATA / "k2_strip.json", "--p1", 1, "--p2", 4, "-o", cert)
    assert code == 2 and out["colorable"] is False
    assert json.loads(cert.read_text()) == out
    code, out = call(capsys, "verify-cert", "-i", DATA / "k2_strip.json", "-c", cert)
    assert code == 2 and out["valid"] is True


@pytest.mark.parametrize("route", ["solver", "governments"])
def test_routes_agree(capsys, route):
    code, out = call(capsys, "decide", "-i", DATA / "k3_strip.json", "--p1", 1, "--p2", 7, "--route", route)
    assert code == 2


def test_verify_rejects_wrong_certificate(capsys, tmp_path):
    cert = tmp_path / "c.json"
    call(capsys, "certify", "-i", DATA / "k2_strip.json", "--p1", 1, "--p2", 4, "-o", cert)
    code, out = call(capsys, "verify-cert", "-i", DATA / "k3_strip.json", "-c", cert)
    assert code == 3 and out["valid"] is False
    bad = tmp_path / "col.json"
    bad.write_text(json.dumps({"coloring": {"1": 1, "2": 1}}))
    code, out = call(capsys, "verify-cert", "-i", DATA / "single_edge.json", "-c", bad)
    assert code == 3


def test_verify_accepts_coloring(capsys, tmp_path):
    c = tmp_path / "col.json"
    c.write_text(json.dumps({"coloring": {"1": 1, "2": 2}}))
    code, out = call(capsys, "verify-cert", "-i", DATA / "single_edge.json", "-c", c)
    assert code == 0 and out["valid"]


def test_phi(capsys, tmp_path):
    L = {1: {1, 2}, 2: {1, 2, 3}, 3: {1, 2, 3}, 4: {1, 2, 3}}
    f = tmp_path / "diamond.json"
    f.write_text(json.dumps(validate_canvas(diamond(), Subgraph.path(1, 2), L).to_json()))
    code, out = call(capsys, "phi", "-i", f, "--p", "1,2", "--pprime", "4,3", "--colorings", "[[1,2],[2,1]]")
    assert code == 0
    assert out["phi"]["colorings"] == [[1, 3], [2, 3]]
    assert out["kind"] == "dictatorship"
    assert out["government"]["dictator"] == 3


def test_reduce(capsys, tmp_path):
    L = {1: {1, 2, 3}, 2: {1, 2, 3}, 3: {1, 2, 3}, 4: {1, 2, 3}}
    f = tmp_path / "c4.json"
    f.write_text(json.dumps(validate_canvas(cycle(1, 2, 3, 4), Subgraph.of(), L).to_json()))
    code, out = call(capsys, "reduce", "-i", f, "--path", "2", "--l0", "1,2", "--center", 1)
    assert code == 0
    assert out["reduced"]["lists"]["1"] == [3]
    assert out["reduced"]["S"]["vertices"] == [1]
    code, out = call(capsys, "reduce", "-i", f, "--path", "2", "--l0", "1,2,3", "--center", 1)
    assert code == 1 and out["clause"] == "L0 must have two colors"


def test_gen_writes_replayable_instance(capsys, tmp_path):
    f = tmp_path / "g.json"
    code, out = call(capsys, "gen", "--profile", "thm3", "--seed", 4, "-o", f)
    assert code == 0
    r = out["roles"]
    code, _ = call(capsys, "decide", "-i", f, "--p1", r["p1"], "--p2", r["p2"])
    assert code in (0, 2)


def test_fuzz_thm3(capsys):
    code, out = call(capsys, "fuzz", "--profile", "thm3", "--trials", 100, "--seed", 7, "--compact")
    assert code == 0
    assert out["counts"]["thm3.equivalence"] == {"fail": 0, "pass": 100, "skip": 0}


@pytest.mark.parametrize(
    "argv",
    [
        ["decide", "-i", "missing.json", "--p1", "1", "--p2", "2"],
        ["decide", "-i", str(DATA / "k2_strip.json"), "--p1", "1", "--p2", "1"],
        ["decide", "-i", str(DATA / "k2_strip.json"), "--p1", "x", "--p2", "1"],
        ["--palette", "2", "decide", "-i", str(DATA / "k2_strip.json"), "--p1", "1", "--p2", "4"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(argv) == 1


def test_malformed_json(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, out = call(capsys, "decide", "-i", f, "--p1", 1, "--p2", 2)
    assert code == 1 and "malformed JSON" in out["error"]


def test_hypothesis_report_names_clauses(capsys, tmp_path):
    data = json.loads((DATA / "k2_strip.json").read_text())
    data["lists"]["2"] = [1, 2]
    f = tmp_path / "h.json"
    f.write_text(json.dumps(data))
    code, out = call(capsys, "decide", "-i", f, "--p1", 1, "--p2", 4)
    assert code == 1 and "outer vertex below 3" in out["report"]


def test_module_entry_point_and_fallback_agree():
    argv = [sys.executable, "-m", "harmonica", "fuzz", "--profile", "thm3", "--trials", "30", "--seed", "2"]
    fast = subprocess.run(argv, capture_output=True, text=True, check=True)
    env = dict(os.environ, HARMONICA_DISABLE_NUMBA="1")
    slow = subprocess.run(argv, capture_output=True, text=True, check=True, env=env)
    assert fast.stdout == slow.stdout


def test_env_flag_disables_numba():
    env = dict(os.environ, HARMONICA_DISABLE_NUMBA="1")
    probe = [sys.executable, "-c", "import harmonica; print(harmonica.NUMBA_ENABLED)"]
    assert subprocess.run(probe, capture_output=True, text=True, env=env).stdout.strip() == "False"
