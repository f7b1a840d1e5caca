import json
from importlib import resources
from pathlib import Path

import pytest

from qlr.cli import main

CORPUS = resources.files("qlr").joinpath("corpus")
GOLDEN = Path(__file__).parent / "golden"


def prog(name):
    return str(CORPUS.joinpath(name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_env_config(monkeypatch):
    monkeypatch.delenv("QLR_CONFIG", raising=False)


def test_check(capsys):
    assert run(capsys, "check", prog("sin.stlc"))[:2] == (0, "Real -> Real\n")


def test_check_ill_typed_is_positioned(capsys):
    code, _, err = run(capsys, "check", prog("bad.stlc"))
    assert code == 1
    assert "bad.stlc:2:11:" in err


def test_missing_file_is_an_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "nope.stlc"))
    assert code == 2 and "nope.stlc" in err


def test_eval(capsys):
    assert run(capsys, "eval", prog("sin.stlc"), "--arg", "0.0")[:2] == (0, "0.0\n")
    assert run(capsys, "eval", prog("pair.stlc"))[:2] == (0, "(1.0, 2.0)\n")
    assert run(capsys, "eval", prog("mul.stlc"), "--arg", "2", "--arg", "3")[:2] == (0, "6.0\n")


def test_eval_arity_mismatch_is_a_usage_error(capsys):
    code, _, err = run(capsys, "eval", prog("sin.stlc"), "--arg", "1", "--arg", "2")
    assert code == 2 and "usage error" in err


def test_dist_models(capsys):
    def dist(a, b, model, r):
        code, out, _ = run(capsys, "dist", prog(a), prog(b), "--model", model, "--at", "0",
                           "--radius", str(r), "--format", "json")
        assert code == 0
        return json.loads(out)["results"][0]["distance"]

    assert dist("sin.stlc", "id.stlc", "q", 1.5708) == pytest.approx(1.5708, abs=1e-6)
    assert dist("sin.stlc", "sin.stlc", "qr", 1) == 0
    assert dist("sin.stlc", "id.stlc", "pv", 0.1) == pytest.approx(0.2)


def test_dist_json_has_grid_metadata(capsys):
    _, out, _ = run(capsys, "dist", prog("sin.stlc"), prog("id.stlc"), "--format", "json",
                    "--resolution", "51")
    assert json.loads(out)["grid"] == {"resolution": 51}


def test_bound_q_at_the_point(capsys):
    code, out, _ = run(capsys, "bound", prog("ctx0.stlc"), prog("sin.stlc"), prog("id.stlc"),
                       "--model", "q", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["actual"] == 0 and rep["actual"] <= rep["bound"]


def test_bound_ll_reports_the_gate(capsys):
    code, out, _ = run(capsys, "bound", prog("ctx0.stlc"), prog("sin.stlc"), prog("id.stlc"),
                       "--model", "ll", "--delta", "2", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "ok"
    _, out, _ = run(capsys, "bound", prog("ctx0.stlc"), prog("sin.stlc"), prog("id.stlc"),
                    "--model", "ll", "--delta", "0.1", "--format", "json")
    assert json.loads(out)["status"] == "out of local regime"


def test_bound_incompatible_hole_type(capsys):
    code, _, err = run(capsys, "bound", prog("ctx0.stlc"), prog("sin.stlc"), prog("pair.stlc"))
    assert code == 1 and "type" in err


@pytest.mark.parametrize("panel,variant", [("a", "calibrated"), ("b", "calibrated"),
                                           ("a", "drawn"), ("b", "drawn")])
def test_counterexample_matches_golden(capsys, panel, variant):
    code, out, _ = run(capsys, "counterexample", "--panel", panel, "--variant", variant)
    suffix = "" if variant == "calibrated" else "_drawn"
    assert code == 0
    assert out == (GOLDEN / f"fig1{panel}{suffix}.csv").read_text()


def test_verify_fig1_emits_csv_and_passes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "fig1", "--emit-dir", str(tmp_path))
    assert code == 0 and "PASS" in out
    for panel in "ab":
        assert (tmp_path / f"fig1{panel}.csv").read_bytes() == (GOLDEN / f"fig1{panel}.csv").read_bytes()


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_verify_space_file(capsys, tmp_path):
    f = tmp_path / "x.qlr"
    f.write_text("quantale: trunc:2\ncarrier: a b c\na: 0 0 1\nb: 0 0 0\nc: 1 0 0\n")
    code, out, _ = run(capsys, "verify", "--space", str(f))
    assert code == 1
    assert "FAIL transitive" in out and "witness=('a', 'b', 'c')" in out


def test_verify_space_axiom_filter(capsys, tmp_path):
    f = tmp_path / "line.qlr"
    f.write_text("quantale: trunc:2\ncarrier: a b c\na: 0 1 2\nb: 1 0 1\nc: 2 1 0\n")
    code, out, _ = run(capsys, "verify", "--space", str(f), "--axioms", "symmetric,transitive")
    assert code == 0
    assert "PASS transitive" in out and "ultraMetric" not in out
    code, out, _ = run(capsys, "verify", "--space", str(f), "--axioms", "ultraMetric")
    assert code == 1 and "FAIL ultraMetric" in out
    assert run(capsys, "verify", "--space", str(f), "--axioms", "bogus")[0] == 2


def test_json_output_is_deterministic(capsys):
    args = ("verify", "--suite", "motivating,nonadditivity", "--format", "json", "--seed", "4")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first
    assert json.loads(first)["config"]["seed"] == 4


def test_config_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"format": "json", "resolution": 21, "radii": [0.5]}))
    monkeypatch.setenv("QLR_CONFIG", str(cfg))
    _, out, _ = run(capsys, "dist", prog("sin.stlc"), prog("id.stlc"))
    rep = json.loads(out)
    assert rep["grid"]["resolution"] == 21 and rep["results"][0]["radius"] == 0.5
    _, out, _ = run(capsys, "dist", prog("sin.stlc"), prog("id.stlc"), "--resolution", "31")
    assert json.loads(out)["grid"]["resolution"] == 31


def test_bad_config(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"resolution": 2}))
    monkeypatch.setenv("QLR_CONFIG", str(cfg))
    assert run(capsys, "check", prog("sin.stlc"))[0] == 2
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, "check", prog("sin.stlc"))[0] == 2


def test_no_subcommand_is_a_usage_error(capsys):
    assert run(capsys)[0] == 2
