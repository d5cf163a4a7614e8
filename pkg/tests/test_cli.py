"""Command-line surface: grammar, determinism, schema, config, exit codes."""

from __future__ import annotations

import json
import os
import subprocess
import sys

import jsonschema
import pytest

from thhforge import cli

SCHEMA_PATH = os.path.join(os.path.dirname(cli.__file__), "schemas", "result.schema.json")


def run_cli(args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "thhforge.cli", *args],
        capture_output=True, text=True, **kw,
    )


@pytest.fixture(scope="module")
def schema():
    with open(SCHEMA_PATH) as fh:
        return json.load(fh)


def test_steenrod_rank(capsys):
    assert cli.main(["steenrod", "rank", "--subalgebra", "A2"]) == 0
    assert capsys.readouterr().out.strip() == "64"


def test_steenrod_quotient_total_rank(capsys):
    code = cli.main(
        ["steenrod", "quotient", "--subalgebra", "A2", "--ideal", "Sq1,Sq2Sq3",
         "--total-rank"]
    )
    assert code == 0
    assert capsys.readouterr().out.strip() == "24"


def test_steenrod_basis_degree_zero(capsys):
    assert cli.main(["steenrod", "basis", "--degree", "0"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_steenrod_kernel(capsys):
    code = cli.main(
        ["steenrod", "kernel", "--subalgebra", "A2", "--ideal", "Sq1,Sq2Sq3",
         "--target-ideal", "Sq1,Sq2", "--map", "Sq4", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["kernel_rank"] == 17
    assert payload["result"]["cokernel_rank"] == 1


def test_steenrod_pair(capsys):
    assert cli.main(["steenrod", "pair", "--element", "Sq2", "--monomial", "xi1^2"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_hh_idempotent_preset(capsys, schema):
    code = cli.main(["hh", "compute", "--preset", "idempotent", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, schema)
    assert payload["result"] == {"0,0": 2}


def test_hh_squarezero_preset(capsys):
    code = cli.main(["hh", "compute", "--preset", "squarezero", "--maxdeg", "6",
                     "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    # two odd generators: first homology has total rank five
    assert sum(v for k, v in payload["result"].items() if k.startswith("1,")) == 5


def test_hh_custom_presentation(tmp_path, capsys, schema):
    pres = {
        "p": 2,
        "max_degree": 10,
        "generators": [{"name": "x", "degree": 2, "kind": "polynomial"}],
    }
    path = tmp_path / "pres.json"
    path.write_text(json.dumps(pres))
    code = cli.main(["hh", "compute", "--spectrum", str(path), "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, schema)
    assert payload["result"]["1,2"] == 1


def test_bokstedt_run_deterministic(tmp_path, schema):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        assert cli.main(
            ["bokstedt", "run", "--spectrum", "ku", "--p", "2", "--maxdeg", "24",
             "--out", str(out)]
        ) == 0
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    jsonschema.validate(payload, schema)
    assert payload["result"]["collapse"]["method"] == "generator-filtrations"


def test_adams_run_chart(tmp_path, capsys):
    chart = tmp_path / "chart.svg"
    code = cli.main(
        ["adams", "run", "--target", "thh-ku-mod2", "--maxdeg", "20",
         "--chart", str(chart), "--format", "json", "--out", str(tmp_path / "o.json")]
    )
    assert code == 0
    assert chart.read_text().startswith("<svg")
    payload = json.loads((tmp_path / "o.json").read_text())
    table = {row["degree"]: row["generators"] for row in payload["result"]["homotopy"]}
    assert table[3][0]["label"] == "x(1,0)"


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("p = 2\nmaxdeg = 16\nformat = json\n")
    code = cli.main(["--config", str(cfg), "bokstedt", "run", "--spectrum", "hf"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["params"]["maxdeg"] == 16
    # flags beat the config file
    code = cli.main(
        ["--config", str(cfg), "bokstedt", "run", "--spectrum", "hf", "--maxdeg", "12"]
    )
    payload = json.loads(capsys.readouterr().out)
    assert code == 0 and payload["params"]["maxdeg"] == 12


def test_bad_spectrum_exits_one(capsys):
    code = cli.main(["bokstedt", "run", "--spectrum", "nope"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_bad_args_exit_two():
    proc = run_cli(["steenrod", "basis"])  # missing --degree
    assert proc.returncode == 2


def test_verify_refuses_small_range(capsys):
    assert cli.main(["verify", "--maxdeg", "10"]) == 3
    assert "refusing" in capsys.readouterr().err


def test_verify_jobs_and_report(tmp_path, capsys, monkeypatch):
    from thhforge import acceptance

    monkeypatch.setattr(
        cli, "CRITERIA", [acceptance.criterion_1, acceptance.criterion_3]
    )
    report = tmp_path / "report.json"
    assert cli.main(["verify", "--jobs", "2", "--report", str(report)]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 2
    payload = json.loads(report.read_text())
    assert [r["id"] for r in payload["result"]] == ["1", "3"]
    assert all(r["passed"] for r in payload["result"])


def test_verify_reports_failure_exit(monkeypatch, capsys):
    monkeypatch.setattr(
        cli, "CRITERIA",
        [lambda: {"id": "x", "description": "forced failure", "passed": False,
                  "elapsed": 0.0}],
    )
    assert cli.main(["verify"]) == 1
    assert "[FAIL]" in capsys.readouterr().out


def test_cache_env_and_corruption(tmp_path, capsys, monkeypatch):
    from thhforge import steenrod as st

    monkeypatch.setenv("THHFORGE_CACHE", str(tmp_path))
    st._basis_memo.clear()
    assert cli.main(["steenrod", "rank", "--subalgebra", "A1"]) == 0
    capsys.readouterr()
    files = list(tmp_path.iterdir())
    assert files
    for f in files:
        f.write_text("garbage")
    st._basis_memo.clear()
    assert cli.main(["steenrod", "rank", "--subalgebra", "A1"]) == 0
    assert capsys.readouterr().out.strip() == "8"
