import csv
import io
import json
import os
import subprocess
import sys

import pytest

import importlib

from hallq import cli
from hallq.report import Report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "a2")
    assert code == 0
    assert "admissible order: [0,1] [1,1] [1,0]" in out
    code, out, _ = run(capsys, "roots", "--quiver", "a3-quasisplit", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["roots"]) == 6


def test_count_and_mult(capsys):
    assert run(capsys, "count", "--quiver", "a1", "--outer", "[1],[1]", "--total", "[1]^2",
               "--prime", "3")[1].strip() == "4"
    code, out, _ = run(capsys, "mult", "--quiver", "a1", "u{[1]}", "u{[1]}")
    assert code == 0 and "K[1]" in out and "u{[1]^2}" in out


def test_chi_omega_idelta_hopf(capsys):
    assert run(capsys, "chi", "--quiver", "a1", "u{[1]^2}")[1].strip() == "v^5 - v^3"
    code, out, _ = run(capsys, "omega", "--quiver", "a3-quasisplit", "u{[1,0,0]}")
    assert code == 0 and out.count("\n") == 2
    code, out, _ = run(capsys, "idelta", "--quiver", "a2", "u{[1,0]}")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "hopf", "--quiver", "a2", "--op", "delta", "--algebra", "borel",
                       "u{[1,0]}")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "hopf", "--quiver", "a2", "--op", "pairing", "--algebra", "borel",
                       "u{[1,1]}", "u{[1,1]}")
    assert code == 0 and out.strip() == "v^2 - 1"


def test_dcb_command(capsys):
    code, out, _ = run(capsys, "dcb", "--quiver", "a2", "--grading", "1,1")
    assert code == 0
    assert "L{[0,1]+[1,0]} = (1) U{[0,1]+[1,0]} + (-v^(-1)) U{[1,1]}" in out


def test_positivity_csv(capsys):
    code, out, _ = run(capsys, "positivity", "--map", "omega", "--quiver", "a3-quasisplit",
                       "--max-height", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["integral"] == "true" for r in rows)
    src = {r["source"] for r in rows}
    assert "L{[1,1,1]}" in src
    coeffs = {r["coefficient"] for r in rows if r["source"] == "L{[1,1,1]}"}
    # the v^2 and 1 families land on the same label K[1,1,1]<>L{[0,1,0]}
    assert coeffs == {"1", "v", "v^2 + 1"}


@pytest.mark.parametrize("suite,quiver", [("tU-relations", "a2dbl"), ("chi", "a2"),
                                          ("associativity", "a3-quasisplit"), ("dcb", "a2"),
                                          ("hopf-axioms", "a1"), ("qsp-diagrams", "a1")])
def test_verify_suites(capsys, suite, quiver):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--quiver", quiver, "--depth", "2",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["reports"]
    assert all(r["schema"] == 1 for r in data["reports"])


def test_verification_failure_exit_code(capsys, monkeypatch):
    def failing(q, depth, tiebreak):
        r = Report("chi")
        r.record("forced", False, "x")
        return r
    monkeypatch.setattr(importlib.import_module("hallq.qsp"), "chi_properties_check", failing)
    assert run(capsys, "verify", "--suite", "chi", "--quiver", "a1")[0] == 1


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "roots", "no-such-quiver")[0] == 2
    assert run(capsys, "roots", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("vertices = 2\narrow 1 5\n")
    assert run(capsys, "roots", str(bad))[0] == 2
    assert run(capsys, "mult", "--quiver", "a1", "u{[7]}", "u{[1]}")[0] == 2
    assert run(capsys, "verify", "--suite", "chi", "--quiver", "a1", "--depth", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "hall-table", "--quiver", "a1", "--max-dim", "2", "--primes", "7,7")[0] == 2
    excluded = tmp_path / "a2swap.txt"
    excluded.write_text("vertices = 2\narrow 1 2\ninvolution 1 2\n")
    assert run(capsys, "roots", str(excluded))[0] == 2


def test_spec_file_and_hall_table(capsys, tmp_path):
    spec = tmp_path / "q.txt"
    spec.write_text("vertices = 3\narrow 1 2\narrow 3 2\ninvolution 1 3\ninvolution 2 2\n")
    assert run(capsys, "roots", str(spec))[0] == 0
    out_file = tmp_path / "table.json"
    code, _, _ = run(capsys, "hall-table", "--quiver", str(spec), "--max-dim", "2",
                     "--out", str(out_file))
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["schema"] == 1 and data["entries"]
    assert run(capsys, "hall-table", "--quiver", str(spec), "--max-dim", "2")[0] == 0
    cache = os.environ["HALLQ_CACHE_DIR"]
    assert any(name.startswith("hall-") for name in os.listdir(cache))


def test_output_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "hallq.cli", "positivity", "--map", "idelta", "--quiver", "a2",
           "--max-height", "2"]
    env = dict(os.environ, PYTHONHASHSEED="1")
    first = subprocess.run(cmd, capture_output=True, text=True, env=env, check=True).stdout
    env["PYTHONHASHSEED"] = "2"
    env["HALLQ_CACHE_DIR"] = str(tmp_path / "other")
    second = subprocess.run(cmd, capture_output=True, text=True, env=env, check=True).stdout
    assert first == second and first.count("\n") > 1
