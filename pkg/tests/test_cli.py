import csv
import io
import json
import subprocess
import sys

import pytest

from optinterp.cli import parse_body, run
from optinterp.geometry import Ball, Cube


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue().strip(), err.getvalue()


def test_evol_exact():
    code, out, err = call("evol", "exact", "--n", "3", "--gamma", "2")
    assert code == 0 and out == "2.8333333333333335"
    assert '"gamma": 2.0' in err


def test_absorb_hadamard_7():
    code, out, _ = call("absorb", "--body", "cube", "--n", "7", "--simplex", "catalog:hadamard_7")
    lines = dict(line.split("=") for line in out.splitlines())
    assert code == 0
    assert float(lines["xi"]) == pytest.approx(7) and float(lines["alpha"]) == pytest.approx(7)
    assert lines["circumscribed"] == "true"


def test_legendre_inv():
    assert call("legendre", "inv", "--n", "2", "--s", "5.5")[:2] == (0, "2.0")
    assert call("legendre", "eval", "--n", "2", "--t", "2")[:2] == (0, "5.5")


def test_json_output_embeds_config():
    code, out, _ = call("--format", "json", "evol", "mc", "--n", "2", "--gamma", "2", "--samples", "20000", "--seed", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["config"]["seed"] == 4 and doc["config"]["samples"] == 20000
    assert doc["result"]["exact"] == 2.75
    # format flag is also accepted after the subcommand
    code, out2, _ = call("evol", "mc", "--n", "2", "--gamma", "2", "--samples", "20000", "--seed", "4", "--format", "json")
    assert json.loads(out2)["result"] == doc["result"]


def test_csv_table():
    code, out, _ = call("tables", "nu", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[10]["nu"] == "9/246400"


def test_ball_k_table():
    code, out, _ = call("tables", "ball-k", "--format", "csv")
    rows = {int(r["n"]): r for r in csv.DictReader(io.StringIO(out))}
    assert rows[14]["k"] == "6" and rows[1000]["k"] == "485"


def test_norm_and_bounds():
    code, out, _ = call("norm", "--body", "cube:2", "--simplex", "catalog:golden_triangle")
    assert code == 0 and out.startswith("norm=1.894427190999915")
    code, out, _ = call("--format", "json", "bounds", "--body", "ball", "--n", "5")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["consistent"]


def test_construct_and_file_input(tmp_path):
    code, out, _ = call("--format", "json", "construct", "regular-cube", "--n", "3")
    simplex = json.loads(out)["result"]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(simplex))
    code, out, _ = call("norm", "--body", "cube:3", "--simplex", str(path))
    assert code == 0 and out.splitlines()[0] == "norm=2.0"
    poly = tmp_path / "tri.json"
    poly.write_text(json.dumps({"n": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}))
    code, out, _ = call("norm", "--body", f"poly:{poly}", "--simplex", str(poly))
    assert code == 0 and out.splitlines()[0] == "norm=1.0"
    code, out, _ = call("absorb", "--body", f"poly:{poly}", "--simplex", "catalog:golden_triangle")
    assert code == 3  # golden triangle nodes lie outside the corner triangle


def test_exit_codes():
    assert call("evol", "exact", "--n", "3", "--gamma", "0.5")[0] == 3
    assert call("construct", "hadamard", "--m", "92")[0] == 4
    assert call("frobnicate")[0] == 2
    assert call("evol", "exact", "--n", "3", "--gamma", "2", "--bogus")[0] == 2
    assert call("norm", "--body", "cube", "--simplex", "catalog:golden_triangle")[0] == 2
    assert call("construct", "catalog", "--name", "nope")[0] == 2


def test_search_command():
    code, out, _ = call("--format", "json", "search", "--body", "cube:3", "--mode", "exhaustive")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["norm"] == pytest.approx(2)


def test_reproduce(tmp_path):
    code, out, _ = call("reproduce", "--out", str(tmp_path))
    assert code == 0 and "mismatches=0" in out
    nu = list(csv.DictReader((tmp_path / "nu.csv").open()))
    assert nu[10]["nu"] == "9/246400"
    exact = {int(r["n"]): r for r in csv.DictReader((tmp_path / "exact_checks.csv").open())}
    assert float(exact[2]["diff"]) < 1e-9
    k = {int(r["n"]): r for r in csv.DictReader((tmp_path / "ball_k.csv").open())}
    assert k[14]["k"] == "6"
    theta = list(csv.DictReader((tmp_path / "theta_upper.csv").open()))
    assert len(theta) == 27


def test_parse_body():
    assert parse_body("cube:7") == Cube(7)
    assert isinstance(parse_body("ball", 3), Ball)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "optinterp", "evol", "exact", "--n", "2", "--gamma", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "2.75"
