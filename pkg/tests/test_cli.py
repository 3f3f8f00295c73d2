import json
import math
import subprocess
import sys

import pytest

import orthonorm.ortho_general as og
from orthonorm.cli import main
from orthonorm.errors import ConvergenceError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_gegenbauer(capsys):
    code, out, _ = run(capsys, "eval", "--family", "gegenbauer", "--lambda", "0.5", "--mu", "0.5", "--n", "0", "--x", "0.7")
    assert code == 0 and out.strip() == "1.0"


def test_eval_jacobi_and_general(capsys):
    code, out, _ = run(capsys, "eval", "--family", "jacobi", "--alpha", "1.5", "--beta", "0.5", "--n", "4", "--x", "1")
    assert code == 0 and float(out) == pytest.approx(9.0234375, rel=1e-14)
    code, out, _ = run(capsys, "eval", "--family", "general", "--n", "1", "--x", "0.4")
    assert code == 0 and float(out) == pytest.approx(math.sqrt(1.5) * 0.4, rel=1e-12)


def test_norm_constant(capsys):
    code, out, _ = run(capsys, "norm", "--family", "general", "--n", "0", "--p", "1", "--walpha", "0", "--wbeta", "0", "--wgamma", "0")
    assert code == 0 and float(out) == pytest.approx(math.sqrt(2), rel=1e-12)


def test_norm_inf(capsys):
    code, out, _ = run(capsys, "norm", "--family", "jacobi", "--n", "7", "--p", "inf")
    assert code == 0 and float(out) == pytest.approx(1.0, rel=1e-12)


def test_sharpness_summary(capsys, tmp_path):
    out_csv = tmp_path / "s.csv"
    code, out, _ = run(
        capsys, "sharpness", "--alpha", "0", "--beta", "0", "--mu", "0", "--p", "2", "--q", "inf",
        "--nmin", "64", "--nmax", "512", "--out", str(out_csv), "--plot", str(tmp_path / "s.gp"),
    )
    assert code == 0 and "slope" in out
    summary = out_csv.read_text().splitlines()[-1].split(",")
    assert summary[0] == "summary" and float(summary[6]) == 1.0
    plot = (tmp_path / "s.gp").read_text()
    assert str(out_csv) in plot and "set logscale xy" in plot
    manifest = json.loads((tmp_path / "s.csv.manifest.json").read_text())
    assert manifest["command"] == "sharpness"
    assert manifest["outputs"] == [str(out_csv), str(tmp_path / "s.gp")]
    assert manifest["params"]["q"] == "inf" and "timestamp" in manifest


def test_sharpness_byte_identical(capsys, tmp_path):
    paths = []
    for k, workers in enumerate(("1", "3")):
        p = tmp_path / f"r{k}.csv"
        args = ["sharpness", "--alpha", "-0.5", "--beta", "-0.5", "--mu", "3", "--p", "2", "--q", "4",
                "--nmin", "64", "--nmax", "256", "--workers", workers, "--out", str(p)]
        assert run(capsys, *args)[0] == 0
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_recurrence_and_manifest(capsys, tmp_path):
    out_csv, man = tmp_path / "rec.csv", tmp_path / "m.json"
    code, _, _ = run(capsys, "recurrence", "--alpha", "0", "--beta", "0", "--gamma", "2", "--count", "12",
                     "--out", str(out_csv), "--manifest", str(man))
    assert code == 0
    table = og.read_recurrence_csv(out_csv)
    assert len(table) == 12
    assert json.loads(man.read_text())["outputs"] == [str(out_csv)]


def test_lemma_output(capsys):
    code, out, _ = run(capsys, "lemma", "--part", "right", "--tilde", "-0.5", "--p", "2", "--alpha", "0.5",
                       "--beta", "0.5", "--gamma", "0", "--nmin", "64", "--nmax", "256")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "regime power, exponent 1"
    assert lines[1] == "n,integral,ratio_to_previous" and len(lines) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["sharpness", "--alpha", "0", "--beta", "0.5", "--mu", "0", "--p", "2", "--q", "inf", "--out", "x.csv"],
        ["eval", "--family", "jacobi", "--n", "2", "--x", "3"],
        ["eval", "--family", "jacobi", "--n", "-1", "--x", "0"],
        ["eval", "--family", "gegenbauer", "--n", "2", "--x", "0"],
        ["recurrence", "--alpha", "0", "--beta", "0", "--gamma", "0", "--count", "9000", "--out", "x.csv"],
        ["eval", "--family", "jacobi", "--n", "2", "--x", "0", "--bogus", "1"],
        ["norm", "--family", "jacobi", "--n", "2", "--p", "often"],
        [],
    ],
)
def test_validation_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("orthonorm: error:")


def test_domain_message_cites_constraint(capsys):
    _, _, err = run(capsys, "sharpness", "--alpha", "0", "--beta", "0.5", "--mu", "0", "--p", "2", "--q", "inf", "--out", "x.csv")
    assert "requires alpha >= beta >= -1/2" in err


def test_convergence_exit_code(capsys, monkeypatch):
    def fail(*a, **k):
        raise ConvergenceError("did not converge")

    monkeypatch.setattr(og, "build_recurrence", fail)
    monkeypatch.setattr(og, "_memory", {})
    code, _, err = run(capsys, "eval", "--family", "general", "--alpha", "0.3", "--n", "3", "--x", "0")
    assert code == 2 and "did not converge" in err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "orthonorm", "eval", "--family", "jacobi", "--n", "0", "--x", "0.2"],
        capture_output=True, text=True, check=True,
    )
    assert res.stdout.strip() == "1.0"
