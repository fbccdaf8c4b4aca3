import json
import subprocess
import sys

import pytest

from tautverify.checks import (
    CHECKS,
    check_ids,
    compute_f31,
    compute_h4plus,
    compute_hyp31,
    export_report,
    run_all,
    run_check,
    solve_multiplicities,
)
from tautverify.cli import main
from tautverify.errors import UnknownNameError


def test_run_all_passes(repo):
    report = run_all(repo)
    assert report.all_passed
    assert len(report.results) == len(CHECKS)


def test_run_check_grr_spin(repo):
    result = run_check("grr_spin", repo)
    assert result.passed
    assert "kappa1=-1/24" in result.expected
    assert "kappa3=7/5760" in result.expected


def test_run_check_unknown_id(repo):
    with pytest.raises(UnknownNameError):
        run_check("nonexistent", repo)


def test_checks_independent_of_order(repo):
    # rerunning in reverse order changes nothing: checks are pure
    forward = {c.id: run_check(c.id, repo) for c in CHECKS}
    for cid in reversed(check_ids()):
        again = run_check(cid, repo)
        assert (again.expected, again.actual, again.passed) == (
            forward[cid].expected,
            forward[cid].actual,
            forward[cid].passed,
        )


def test_json_export_deterministic(repo):
    a = export_report(run_all(repo), "json")
    b = export_report(run_all(repo), "json")
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"version", "checks", "summary"}
    assert doc["summary"]["failed"] == 0
    assert doc["summary"]["total"] == len(CHECKS)
    for entry in doc["checks"]:
        assert set(entry) == {"id", "anchor", "expected", "actual", "passed", "micros"}


def test_human_export_lists_every_check(repo):
    text = export_report(run_all(repo), "human")
    for cid in check_ids():
        assert f" {cid} " in text or f" {cid}\n" in text


def test_multiplicity_solutions(repo):
    assignment, redundant, _ = solve_multiplicities("F31", repo)
    assert assignment == {"m": 7, "n": 2, "k": 3, "l": 3, "j": 12}
    assert len(redundant) >= 1
    assignment4, redundant4, _ = solve_multiplicities("H4plus", repo)
    assert assignment4 == {"m": 320, "n": 2, "k": 96, "l": 216}
    assert len(redundant4) >= 1


def test_computed_classes_match_catalog(repo):
    m31, m4 = repo.space("M31"), repo.space("M4")
    hyp31, _ = compute_hyp31(repo)
    assert hyp31 == repo.catalog_class("Hyp31_theorem")
    f31, _ = compute_f31(repo)
    assert f31 == repo.catalog_class("F31_theorem")
    assert f31.coeff("kappa2", m31) == 3
    h4plus, _ = compute_h4plus(repo)
    assert h4plus == repo.catalog_class("H4plus_theorem")
    assert h4plus.coeff("lam^2", m4) == 2448


def test_inconsistent_system_fails_with_certificate(tmp_path):
    # perturbing one published divisor coefficient makes the genus-4 system
    # inconsistent; the checks must fail with a witness, never crash
    import json
    import shutil
    from importlib import resources

    from tautverify.data import Repo

    src = resources.files("tautverify").joinpath("data")
    with resources.as_file(src) as p:
        shutil.copytree(p, tmp_path / "data")
    path = tmp_path / "data" / "catalog.json"
    raw = json.loads(path.read_text())
    raw["classes"]["Theta_null_M4"]["coeffs"]["lam"] = 35
    path.write_text(json.dumps(raw))
    broken = Repo(tmp_path / "data")
    result = run_check("multiplicities_h4plus", broken)
    assert not result.passed
    assert "witness" in result.actual
    assembled = run_check("h4plus", broken)
    assert not assembled.passed


def test_failure_reports_minimal_diff(repo):
    # corrupt one golden entry: the failing check must name just that part
    import copy

    patched = copy.copy(repo)
    patched.golden = copy.deepcopy(repo.golden)
    patched.golden["lambda2_values"]["H4_minus"] = 5311
    result = run_check("lambda2_values", patched)
    assert not result.passed
    assert result.expected == "H4_minus: 5311"
    assert result.actual == "H4_minus: 5310"


# --- command line interface ---------------------------------------------


def test_cli_run_all_exit_zero(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["run-all", "--json", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert "checks passed" in captured.out
    doc = json.loads(out.read_text())
    assert doc["summary"]["failed"] == 0


def test_cli_check_and_errors(capsys):
    assert main(["check", "enumerative"]) == 0
    assert main(["check", "not_a_check"]) == 2
    assert main(["show-class", "W31"]) == 0
    captured = capsys.readouterr()
    assert "psi" in captured.out
    assert main(["show-class", "NoSuch"]) == 2


def test_cli_eval(capsys):
    assert main(["eval", "--surface", "V1", "--class", "Hyp4"]) == 0
    captured = capsys.readouterr()
    assert "= 36" in captured.out


def test_cli_data_dir_override(tmp_path):
    # a bit-for-bit copy of the embedded data behaves identically
    import shutil
    from importlib import resources

    src = resources.files("tautverify").joinpath("data")
    with resources.as_file(src) as p:
        shutil.copytree(p, tmp_path / "data")
    assert main(["--data-dir", str(tmp_path / "data"), "check", "basis_m31"]) == 0


def test_cli_bad_data_dir(tmp_path):
    assert main(["--data-dir", str(tmp_path / "empty"), "run-all"]) == 2


def test_console_entry_point_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "tautverify.cli", "check", "grr_spin"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


def test_cli_eval_rejects_divisor_class(capsys):
    # the pairing is defined on degree-2 classes only
    assert main(["eval", "--surface", "V1", "--class", "Theta_null_M4"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_eval_rejects_space_mismatch(capsys):
    assert main(["eval", "--surface", "S1", "--class", "Hyp4"]) == 2
    assert "error" in capsys.readouterr().err
