"""End-to-end CLI runs through main(argv)."""
import json

import pytest

from lkholonomy import serialization as S
from lkholonomy.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def gk_potential(tmp_path):
    return _write(tmp_path, "gk.json", {
        "kind": "descriptor", "order": 8,
        "descriptor": {"family": "GK", "n": 1,
                       "k_basis": [{"a": [1.0, 0.0], "A": [[[0.0, 0.0]]]},
                                   {"a": [0.0, 0.0], "A": [[[0.0, 1.0]]]}]}})


def test_holonomy_verified(tmp_path, gk_potential, capsys):
    expect = _write(tmp_path, "expect.json",
                    {"matched_family": "GK", "stabilized": True})
    assert main(["holonomy", "--potential", gk_potential,
                 "--expect", expect]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["matched_family"] == "GK"
    assert report["result"]["realizable"] == "yes"


def test_holonomy_mismatch(tmp_path, gk_potential, capsys):
    expect = _write(tmp_path, "expect.json", {"matched_family": "GKL"})
    assert main(["holonomy", "--potential", gk_potential,
                 "--expect", expect]) == EXIT_MISMATCH
    report = json.loads(capsys.readouterr().out)
    assert report["expectation_errors"]


def test_missing_file_is_input_error(capsys):
    assert main(["holonomy", "--potential", "/nonexistent.json"]) == EXIT_INPUT


def test_bad_potential_kind_is_input_error(tmp_path, capsys):
    p = _write(tmp_path, "bad.json", {"kind": "bogus"})
    assert main(["holonomy", "--potential", p]) == EXIT_INPUT


def test_ppwave_flags(tmp_path, capsys):
    pp = _write(tmp_path, "pp.json", {
        "kind": "ppwave", "n": 1, "order": 8,
        "phi_terms": [{"coeff": [1.0, 0.0], "z": [2], "u": 0, "ubar": 2}]})
    assert main(["ppwave", "--metric", pp]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    res = report["result"]
    assert res["parallel_p"] and res["cond1_holonomy"] and res["cond4_coefficients"]


def test_classify_and_berger(tmp_path, capsys):
    alg = _write(tmp_path, "g1.json", {"family": "G1"})
    assert main(["classify", "--algebra", alg]) == EXIT_OK
    out1 = json.loads(capsys.readouterr().out)
    assert out1["result"]["matched_family"] == "G1"
    assert main(["berger", "--algebra", alg]) == EXIT_OK
    out2 = json.loads(capsys.readouterr().out)
    assert out2["result"]["is_berger"] is True


def test_symspace_and_out_file(tmp_path, capsys):
    out = str(tmp_path / "rep.json")
    assert main(["symspace", "--family", "f", "--n", "2", "--m", "1",
                 "--out", out]) == EXIT_OK
    with open(out) as fh:
        rep = json.load(fh)
    assert rep["result"]["jacobi"] is True
    assert rep["result"]["calabi_yau"] is False


def test_validate(tmp_path, capsys):
    p = _write(tmp_path, "flat.json", {"kind": "flat", "n": 1, "order": 6})
    assert main(["validate", "--potential", p]) == EXIT_OK


def test_catalog_dimensions(capsys):
    assert main(["catalog", "--n", "1"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    fams = {e["descriptor"]["family"] for e in rep["result"]["families"]}
    assert {"GK", "GKJL", "GKL"} <= fams
    assert all(e["dim"] >= 1 for e in rep["result"]["families"])

    assert main(["catalog", "--n", "0"]) == EXIT_OK
    rep0 = json.loads(capsys.readouterr().out)
    assert {e["descriptor"]["family"] for e in rep0["result"]["families"]} == \
        {"G0", "G1", "G2", "G3"}


def test_determinism(tmp_path, gk_potential, capsys):
    main(["holonomy", "--potential", gk_potential])
    out1 = capsys.readouterr().out
    main(["holonomy", "--potential", gk_potential])
    out2 = capsys.readouterr().out
    assert out1 == out2
