import json
import subprocess
import sys

import pytest

from cubic_pell.cli import EXIT_DOMAIN, EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, kbessel_grid, main
from cubic_pell.specfun import kbessel_branch


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out), out


def test_tau_one(capsys):
    code, doc, _ = run_json(capsys, "tau", "1")
    assert code == EXIT_OK
    assert doc["tau"] == [27.0, 0.0]
    assert doc["form"] == "F4" and doc["n"] == 1


def test_tau_from_numerator(capsys):
    _, a, _ = run_json(capsys, "tau", "-3,-6", "--numerator")
    _, b, _ = run_json(capsys, "tau", "1,0")
    assert a["tau"] == b["tau"]


def test_json_round_trip(capsys):
    for argv in (["gauss", "2,-3", "-2,-3", "--direct"], ["picard", "--s", "0.75+12j", "--x", "2.25"],
                 ["lseries", "--d", "2", "--s", "2", "--R", "2", "--variant", "Lstar"]):
        _, doc, out = run_json(capsys, *argv)
        again = json.dumps(json.loads(out), indent=2)
        assert json.loads(again) == doc
        # values survive the text form bit for bit
        for key in ("g", "value", "derivative"):
            if key in doc:
                assert all(isinstance(v, float) for v in doc[key])


def test_gauss_direct_agrees(capsys):
    _, doc, _ = run_json(capsys, "gauss", "1", "-2,-3", "--direct")
    assert doc["difference"] < 1e-12
    assert abs(complex(*doc["g"])) ** 2 == pytest.approx(7.0)


def test_picard_value(capsys):
    _, doc, _ = run_json(capsys, "picard", "--s", "1", "--x", "2")
    assert doc["value"][0] == pytest.approx(2.4183991523122904675, rel=1e-13)


def test_lseries_at_radius_half(capsys):
    # expected to be an empty sum; it is not, see the test below, and stays red
    code, doc, _ = run_json(capsys, "lseries", "--d", "2", "--s", "3", "--R", "0.5")
    assert code == EXIT_OK
    assert doc["terms_nonzero"] == 0
    assert doc["value"] == [0.0, 0.0]


def test_lseries_radius_half_support(capsys):
    import zw_oracle as zo
    _, doc, _ = run_json(capsys, "lseries", "--d", "2", "--s", "3", "--R", "0.5")
    # nu = +-lam^-3, +-2 lam^-3 (|nu| = 0.19, 0.38) are F4 with n = 0, and 1 + 2 nu is in the support too
    assert zo.pell_support(2, 0.5) == {(1, 0), (-1, 0), (2, 0), (-2, 0)}
    assert doc["terms_nonzero"] == 4


def test_lseries_variants(capsys):
    for variant in ("L", "Lstar", "Lsharp", "Sd"):
        code, doc, _ = run_json(capsys, "lseries", "--d", "2", "--s", "1.5", "--R", "1", "--variant", variant)
        assert code == EXIT_OK and doc["variant"] == variant
        assert doc["terms_nonzero"] > 0


def test_threads_do_not_change_output(capsys):
    _, a, _ = run_json(capsys, "--threads", "1", "lseries", "--d", "3", "--s", "1.7+2j", "--R", "8")
    _, b, _ = run_json(capsys, "lseries", "--d", "3", "--s", "1.7+2j", "--R", "8", "--threads", "4")
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_threads_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CUBIC_PELL_THREADS", "2")
    code, _, _ = run_json(capsys, "pell", "--d", "2", "--R", "2")
    assert code == EXIT_OK
    monkeypatch.setenv("CUBIC_PELL_THREADS", "many")
    code, _ = run(capsys, "pell", "--d", "2", "--R", "2")
    assert code == EXIT_DOMAIN


def test_pell(capsys):
    _, doc, _ = run_json(capsys, "pell", "--d", "2", "--R", "3", "--limit", "5")
    assert doc["count"] >= len(doc["witnesses"]) == 5


def test_identities_first_integral(capsys):
    code, doc, _ = run_json(capsys, "identities", "first_integral")
    assert code == EXIT_OK
    assert doc["failed"] == 0
    for rec in doc["checks"]:
        assert rec["residual"] <= 1e-8 and rec["formula"]


def test_identity_tolerance_failure_exit_code(capsys):
    # the suite carries the stated residue constant, which is off by a factor 2
    code, doc, _ = run_json(capsys, "identities", "residue")
    assert code == EXIT_TOLERANCE
    assert [r["passed"] for r in doc["checks"]] == [False, True]


def test_scan_csv(capsys):
    code, out = run(capsys, "scan", "--d", "2", "--re", "0.6,0.7", "--im", "0,0.1", "--grid", "0.05",
                    "--format", "csv")
    lines = out.strip().splitlines()
    assert code == EXIT_OK
    assert lines[0] == "re_lo,re_hi,im_lo,im_hi,winding_phase,winding_logderiv,min_abs,samples,flag"
    assert len(lines) == 1 + 2 * 2


def test_usage_errors(capsys):
    for argv in (["tau"], ["tau", "x,y"], ["lseries", "--d", "2"], ["nope"], ["scan", "--re", "1"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == EXIT_USAGE
    capsys.readouterr()


def test_domain_errors(capsys):
    for argv in (["lseries", "--d", "8", "--s", "2", "--R", "1"], ["picard", "--s", "0.2", "--x", "1"],
                 ["gauss", "1", "1,2"]):
        code, out = run(capsys, *argv)
        assert code == EXIT_DOMAIN


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "cubic_pell", "tau", "1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["tau"] == [27.0, 0.0]


def test_kbessel_grid_covers_all_branches():
    pts = kbessel_grid()
    assert len(pts) == 400
    assert len({t for t, _ in pts}) == 20
    assert {kbessel_branch(t, y) for t, y in pts} == {"i", "ii", "iii"}
