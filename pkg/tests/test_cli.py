import json

import pytest

from weil.cli import main


@pytest.fixture
def run(tmp_path, capsys):
    session = str(tmp_path / "session.json")

    def go(*argv):
        code = main(["--session", session, *argv])
        out = capsys.readouterr()
        return code, out.out, out.err
    return go


def test_algebra_show(run):
    code, out, _ = run("algebra", "show", "dual")
    assert code == 0
    assert "dim 2" in out and "basis [1, x0]" in out and "k = 2" in out


def test_algebra_tensor_registers_name(run):
    code, out, _ = run("algebra", "tensor", "dual", "dual", "as", "TT")
    assert code == 0 and "dim 4" in out
    code, out, _ = run("--json", "algebra", "show", "TT")
    assert json.loads(out)["dim"] == 4
    code, _, err = run("algebra", "tensor", "dual", "dual", "as", "TT")
    assert code == 2 and "DuplicateName" in err


def test_presets_cannot_be_redefined(run, tmp_path):
    path = tmp_path / "dual.json"
    path.write_text(json.dumps({"format_version": 1, "generators": 1, "relations": ["x0^2"]}))
    code, _, err = run("algebra", "define", str(path), "--name", "dual")
    assert code == 2 and "DuplicateName" in err
    code, out, _ = run("algebra", "define", str(path), "--name", "eps")
    assert code == 0


def test_algebra_define_rejects_non_local(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"format_version": 1, "generators": 1, "relations": ["x0^2 - x0"]}))
    code, _, err = run("algebra", "define", str(bad))
    assert code == 2 and "NotLocal" in err


def test_eval_cube(run):
    code, out, _ = run("--json", "eval", "x0^3", "dual", "--point", "2 + x0")
    assert code == 0
    assert json.loads(out)["outputs"] == [[8, 12]]


def test_eval_identity_on_reals(run):
    code, out, _ = run("--json", "eval", "x0", "R", "--point", "5")
    assert json.loads(out)["outputs"] == [[5]]


def test_eval_hessian(run):
    run("algebra", "tensor", "dual", "dual", "as", "TT")
    code, out, _ = run("--json", "eval", "sin(x0)*exp(x1)", "TT",
                       "--point", "0.3 + x0, -0.2 + x1", "--extract", "hessian")
    assert code == 0
    h = json.loads(out)["hessian"][0]
    assert h[0][0] is None and h[1][1] is None
    assert abs(h[0][1] - 0.7821633631846826) < 1e-9 and h[0][1] == h[1][0]


def test_eval_full_hessian_and_gradient(run):
    code, out, _ = run("--json", "eval", "x0^2*x1", "W2,2", "--point", "1 + x0, 2 + x1",
                       "--extract", "hessian")
    assert json.loads(out)["hessian"][0] == [[4, 2], [2, 0]]
    code, out, _ = run("--json", "eval", "x0^2*x1", "Dn2", "--point", "1 + x0, 2 + x1",
                       "--extract", "gradient")
    assert json.loads(out)["gradient"][0] == [4, 1]


def test_eval_jet(run):
    code, out, _ = run("eval", "x0^4", "jet3", "--point", "1 + x0", "--extract", "jet")
    assert code == 0 and '"x0^3": 24' in out


def test_eval_errors(run):
    code, _, err = run("eval", "log(x0)", "dual", "--point", "-1 + x0")
    assert code == 2 and "domain" in err
    code, _, err = run("eval", "x0 +", "dual", "--point", "1")
    assert code == 2 and "position" in err
    code, _, err = run("eval", "x0*x1", "Dn2", "--point", "1 + x0, 2 + x1", "--extract", "hessian")
    assert code == 2


def test_laws_exit_codes(run, tmp_path):
    code, out, _ = run("laws", "embedding", "--seed", "42", "--trials", "3")
    assert code == 0 and "all pass" in out
    report = tmp_path / "report.json"
    code, _, _ = run("laws", "alpha", "--trials", "3", "--maps", "2",
                     "--inject-fault", "drop_factorial", "--report", str(report))
    assert code == 1
    doc = json.loads(report.read_text())
    assert any(r["status"] == "fail" for r in doc["results"])


def test_report_bytes_are_reproducible(run, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run("laws", "coherence", "--seed", "5", "--trials", "2", "--maps", "2", "--report", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_limits_commands(run):
    code, out, _ = run("limits", "compute", "pullback-D2")
    assert code == 0 and "apex dim 3" in out
    code, out, _ = run("limits", "microlinear", "--chart", "R1", "--diagram", "pullback-D2")
    assert code == 0 and "pass" in out
    code, out, _ = run("limits", "vertical", "--base", "1", "--fiber", "2", "--algebra", "dual")
    assert code == 0 and "R^1 x (dual)^2" in out
    code, _, _ = run("limits", "transversal", "--cone", "zero", "--probes", "R")
    assert code == 1
    code, _, _ = run("limits", "compute", "no-such-diagram")
    assert code == 2


def test_usage_error(run):
    assert run("frobnicate")[0] == 2
