import json

import pytest

from tangentrank.cli import main
from tangentrank.fixtures import load_reference_cases
from tangentrank.reporting import strip_timing

CASES = load_reference_cases()


@pytest.fixture()
def worked_params_file(tmp_path):
    case = CASES["worked_n4_d5"]
    path = tmp_path / "params.json"
    path.write_text(json.dumps({"n": 4, "d": 5, "l": case["params"]["l"],
                                "p": case["params"]["p"]}))
    return path


def test_dims_command(capsys):
    assert main(["dims", "--n", "4", "--d", "5"]) == 0
    out = capsys.readouterr().out
    assert "q=1 a=3 b=1" in out and "domain=45" in out and "difference=24" in out
    assert main(["dims", "--n", "2", "--d", "3"]) == 0
    assert "difference=8" in capsys.readouterr().out


def test_dims_out_of_scope(capsys):
    assert main(["dims", "--n", "3", "--d", "3"]) == 3
    err = capsys.readouterr().err
    assert "rational normal curve" in err
    assert main(["dims", "--n", "4", "--d", "2"]) == 3


def test_dims_json(capsys):
    assert main(["dims", "--n", "5", "--d", "9", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["domain_dim"] == 84 and data["codomain_dim"] == 49


def test_example_command(worked_params_file, capsys):
    assert main(["example", str(worked_params_file)]) == 0
    out = capsys.readouterr().out
    assert "4*s^5" in out and "20*s^4" in out
    assert "16*s*t^3 + 8*s^2*t^2 + 4*s^3*t" in out


def test_example_json_format(worked_params_file, capsys):
    assert main(["example", str(worked_params_file), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["g"][0] == "4*s^5"
    assert data["f"][0] == "4*s^4"
    assert data["h"] == ["16*s^3*t^2 + 8*s^4*t"]


def test_example_error_paths(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["example", str(bad)]) == 3
    missing = tmp_path / "none.json"
    assert main(["example", str(missing)]) == 3
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps({
        "n": 2, "d": 3,
        "l": [[[0, 0], [0, 0], [0, 0]]],
        "p": [[[0, 0, 0], [0, 0, 0], [0, 0, 0]]]}))
    assert main(["example", str(zero)]) == 2
    capsys.readouterr()


def test_certify_command(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["certify", "--n", "2", "--d", "3", "--seed", "42",
                 "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["verdict"] == "dominant-certified"
    assert data["observed_rank"] == 7 and data["target_rank"] == 7
    assert data["schema_version"] == 1
    assert data["param_order"]["names"][0] == "l100"
    capsys.readouterr()


def test_certify_negative_control_exit(tmp_path, capsys):
    out = tmp_path / "cert45.json"
    assert main(["certify", "--n", "4", "--d", "5", "--seed", "1",
                 "--out", str(out)]) == 2
    data = json.loads(out.read_text())
    assert data["verdict"] == "not-full-rank-at-point"
    capsys.readouterr()


def test_certify_determinism_bytes(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    main(["certify", "--n", "2", "--d", "4", "--seed", "11", "--out", str(a)])
    main(["certify", "--n", "2", "--d", "4", "--seed", "11", "--out", str(b)])
    assert strip_timing(a.read_text()) == strip_timing(b.read_text())
    capsys.readouterr()


def test_relations_command(tmp_path, capsys):
    out = tmp_path / "rel.json"
    assert main(["relations", "--n", "4", "--trials", "2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["verdict"] == "relation-detected"
    assert data["notion"] == "first-order-syzygy"
    assert len(data["primes"]) == 2 and all(p > 10 ** 6 for p in data["primes"])
    capsys.readouterr()
    assert main(["relations", "--n", "3", "--trials", "2"]) == 2
    capsys.readouterr()


def test_relations_literal_notion(tmp_path, capsys):
    out = tmp_path / "rel_lit.json"
    code = main(["relations", "--n", "4", "--trials", "2",
                 "--notion", "coefficient-rank", "--out", str(out)])
    assert code == 2
    data = json.loads(out.read_text())
    assert data["verdict"] == "no-relation-detected"
    capsys.readouterr()


def test_relations_symbolic_flag(tmp_path, capsys):
    out = tmp_path / "rel_sym.json"
    assert main(["relations", "--n", "4", "--field", "q", "--trials", "2",
                 "--symbolic", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["symbolic_proof"]["conclusion"] == "relation-proved"
    capsys.readouterr()


def test_reproduce_thm12_subset(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"seed": 3, "grid": [[2, 3], [3, 4]]}))
    out = tmp_path / "rep12"
    assert main(["reproduce", "--thm", "12", "--config", str(config),
                 "--out", str(out), "--jobs", "1"]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["all_match"] is True
    assert summary["cell_count"] == 2
    assert (out / "cell_n2_d3.json").exists()
    assert (out / "summary.csv").read_text().count("dominant-certified") == 2
    capsys.readouterr()


def test_reproduce_thm13_subset(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({
        "seed": 3, "cells": [4], "prime_trials": 2, "rational_trials": 1,
        "symbolic": False}))
    out = tmp_path / "rep13"
    assert main(["reproduce", "--thm", "13", "--config", str(config),
                 "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["suite"] == "relation-cells"
    assert summary["cells"][0]["verdict"] == "relation-detected"
    capsys.readouterr()


def test_reproduce_bad_config(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert main(["reproduce", "--thm", "12", "--config", str(bad),
                 "--out", str(tmp_path / "x")]) == 3
    assert main(["reproduce", "--thm", "12", "--config", str(tmp_path / "no.json"),
                 "--out", str(tmp_path / "x")]) == 3
    capsys.readouterr()


def test_outdir_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TANGENTRANK_OUTDIR", str(tmp_path))
    assert main(["certify", "--n", "2", "--d", "3", "--seed", "1"]) == 0
    assert (tmp_path / "certify_n2_d3.json").exists()
    capsys.readouterr()
