"""Integration tests for the verify command and its determinism."""

from unittest.mock import patch

from marked_lattices.algebra import matk


def test_suite_passes(run_cli):
    """The scalars suite passes on a small run."""
    code, report, _ = run_cli("verify", "scalars", "--trials", "3", "--seed", "4")
    assert code == 0
    assert report["passed"] is True
    assert report["summary"]["failed"] == 0
    assert all(entry["counterexample"] is None for entry in report["properties"])


def test_unsampled_properties_run_once(run_cli):
    """The octonion table is checked once whatever the trial count."""
    code, report, _ = run_cli("verify", "octo", "--trials", "2")
    assert code == 0
    trials = {entry["property"]: entry["trials"] for entry in report["properties"]}
    assert trials["octonion table"] == 1
    assert trials["det_h2 signature"] == 1
    assert trials["octonionic polarization"] == 2


def test_reports_are_byte_identical(run_cli):
    """Same seed and trials give the same bytes."""
    first = run_cli("verify", "strata", "--trials", "3", "--seed", "21")[2]
    second = run_cli("verify", "strata", "--trials", "3", "--seed", "21")[2]
    assert first == second


def test_workers_do_not_change_the_report(run_cli):
    """Threaded and serial runs agree byte for byte."""
    serial = run_cli("verify", "symplectic", "--trials", "4", "--workers", "1")[2]
    threaded = run_cli("verify", "symplectic", "--trials", "4", "--workers", "4")[2]
    assert serial == threaded


def test_properties_are_sorted(run_cli):
    """Entries are ordered by suite, then property name."""
    _, report, _ = run_cli("verify", "all", "--trials", "1")
    keys = [(entry["suite"], entry["property"]) for entry in report["properties"]]
    assert keys == sorted(keys)
    assert {entry["suite"] for entry in report["properties"]} == {
        "scalars", "matk", "lattices", "bridge", "symplectic", "octo", "strata"
    }


def test_all_suites_pass(run_cli):
    """Every suite passes one trial at the default seed."""
    code, report, _ = run_cli("verify", "all", "--trials", "1")
    assert code == 0
    assert report["passed"] is True


def test_unknown_suite_exits_4(run_cli):
    """Suite names are checked by the parser."""
    code, report, _ = run_cli("verify", "jordan")
    assert code == 4
    assert report["error"] == "UsageError"


def test_broken_eta_is_caught(run_cli):
    """Flipping the sign of the upper-right block of eta fails the matk suite."""
    original = matk.eta_exact

    def broken(a):
        out = original(a)
        half = out.shape[1] // 2
        out[:, :half, half:] *= -1
        return out

    with patch("marked_lattices.algebra.matk.eta_exact", side_effect=broken):
        code, report, _ = run_cli("verify", "matk", "--trials", "5")

    assert code == 1
    assert report["passed"] is False
    failed = {entry["property"]: entry for entry in report["properties"] if not entry["passed"]}
    assert "eta multiplicativity" in failed
    counterexample = failed["eta multiplicativity"]["counterexample"]
    assert set(counterexample) >= {"a", "b", "trial"}


def test_zero_trials_is_a_usage_error(run_cli):
    """At least one trial is required."""
    assert run_cli("verify", "scalars", "--trials", "0")[0] == 4
