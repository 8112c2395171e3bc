from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqspec import cli
from eqspec.closed_form import pi_times
from eqspec.report import Check, ReportBundle, dumps


@settings(max_examples=100, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_roundtrip(x):
    assert json.loads(dumps({"x": x}))["x"] == x


def test_nonfinite_become_null():
    out = json.loads(dumps({"a": math.nan, "b": [math.inf, 1.5], "c": np.float64(-math.inf)}))
    assert out == {"a": None, "b": [None, 1.5], "c": None}


def test_dumps_sorted_and_typed():
    text = dumps({"b": np.int64(3), "a": np.array([0.5, 1.0]), "c": pi_times(4), "d": 1 + 2j, "e": np.bool_(True)})
    obj = json.loads(text)
    assert list(obj) == ["a", "b", "c", "d", "e"]
    assert obj["c"]["symbolic"] == "4*pi"
    assert obj["d"] == {"im": 2.0, "re": 1.0}
    assert obj["e"] is True


def test_check_provenance_validated():
    with pytest.raises(ValueError):
        Check("x", 1, 1, True, "GUESS")


def test_bundle_write(tmp_path):
    rep = ReportBundle("demo", {"k": 2})
    rep.tables["t"] = [{"a": 1, "b": 0.1}, {"a": 2, "c": "x"}]
    rep.check("ok", 1, 1, True, "TRIVIAL")
    paths = rep.write(tmp_path)
    assert {p.name for p in paths} == {"demo_t.csv", "demo.json"}
    assert (tmp_path / "demo_t.csv").read_text().splitlines()[0] == "a,b,c"
    data = json.loads((tmp_path / "demo.json").read_text())
    assert data["schema"] == 1 and data["all_passed"] is True
    assert data["artifacts"] == ["demo.json", "demo_t.csv"]


def run(args, tmp_path):
    return cli.main(args + ["--out", str(tmp_path)])


def test_cli_tables_pass(tmp_path):
    assert run(["lambda-table", "--group", "O", "--k-max", "70"], tmp_path) == 0
    assert run(["admissible", "--group", "I"], tmp_path) == 0
    assert run(["steklov-table", "--n", "4", "--k-max", "20"], tmp_path) == 0
    assert run(["mckay", "--group", "2O", "--k-max", "8"], tmp_path) == 0
    data = json.loads((tmp_path / "lambda-table.json").read_text())
    assert data["all_passed"] and len(data["tables"]["lambda"]) == 70


def test_cli_json_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    codes = {cli.main(["glue-sweep", "--n", "3", "--k", "5", "--steps", "4", "--N", "128", "--out", str(d)]) for d in (a, b)}
    assert len(codes) == 1
    for name in ("glue-sweep.json", "glue-sweep_sweep.csv", "glue_sweep_n3_k5.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_cli_failed_check_exit_1(tmp_path, capsys):
    # multi-factor product: the combinatorial index bound does not hold
    assert run(["blaschke", "--zeros", "0,0.5", "--N", "128"], tmp_path) == 1
    assert "check failed" in capsys.readouterr().err


def test_cli_bad_values_exit_2(tmp_path, capsys):
    assert run(["blaschke", "--zeros", "1.5"], tmp_path) == 2
    assert run(["index", "--map", "nope"], tmp_path) == 2
    assert run(["lambda-table", "--k-max", "x"], tmp_path) == 2
    assert cli.main([]) == 2
    err = capsys.readouterr().err
    assert "not inside the unit disk" in err and "unknown map" in err


def test_cli_config_and_out_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text(f"# demo\nk_max = 5\ngroup = I\nout = {tmp_path / 'from_config'}\n")
    monkeypatch.delenv("EQSPEC_OUT", raising=False)
    assert cli.main(["lambda-table", "--config", str(cfg)]) == 0
    data = json.loads((tmp_path / "from_config" / "lambda-table.json").read_text())
    assert data["parameters"]["k_max"] == "5" or data["parameters"]["k_max"] == 5
    assert data["parameters"]["group"] == "I"
    # flags beat the config file; the environment beats the config's out
    monkeypatch.setenv("EQSPEC_OUT", str(tmp_path / "from_env"))
    assert cli.main(["lambda-table", "--config", str(cfg), "--k-max", "3"]) == 0
    data = json.loads((tmp_path / "from_env" / "lambda-table.json").read_text())
    assert len(data["tables"]["lambda"]) == 3
    assert cli.main(["lambda-table", "--config", str(cfg), "--out", str(tmp_path / "flag")]) == 0
    assert (tmp_path / "flag" / "lambda-table.json").exists()


def test_cli_config_errors(tmp_path):
    cfg = tmp_path / "bad.txt"
    cfg.write_text("nonsense_key = 1\n")
    assert cli.main(["hps", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    cfg.write_text("plot = maybe\n")
    assert cli.main(["glue-sweep", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    cfg.write_text("no equals sign\n")
    assert cli.main(["hps", "--config", str(cfg), "--out", str(tmp_path)]) == 2


def test_cli_config_boolean(tmp_path):
    cfg = tmp_path / "c.txt"
    cfg.write_text("plot = no\nsteps = 3\nN = 64\n")
    assert cli.main(["glue-sweep", "--n", "3", "--k", "5", "--config", str(cfg), "--out", str(tmp_path)]) in (0, 1)
    assert not list(tmp_path.glob("*.svg"))
    data = json.loads((tmp_path / "glue-sweep.json").read_text())
    assert data["parameters"]["plot"] is False and len(data["tables"]["sweep"]) == 3


def test_cli_maximize_plot(tmp_path):
    assert run(["maximize", "--k", "1", "--iterations", "10"], tmp_path) == 0
    assert (tmp_path / "maximize_k1_n1.svg").read_text().startswith("<?xml")


def test_cli_solvers(tmp_path):
    assert run(["disk-solve", "--density", "poisson", "--centers", "0.3+0.2i"], tmp_path) == 0
    assert run(["sphere-solve", "--density", "harmonic", "--m", "2", "--L", "8", "--k-max", "20"], tmp_path) == 0
    assert run(["groups", "--group", "Ih"], tmp_path) == 0
    assert run(["configurations", "--n", "3", "--k", "7"], tmp_path) == 0
    assert run(["semigroup", "--group", "T", "--upto", "12"], tmp_path) == 0
