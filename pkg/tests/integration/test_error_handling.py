"""Integration tests for error handling and exit codes."""

import importlib
import logging
from unittest.mock import patch

import pytest

from marked_lattices.constants import ExitCode
from marked_lattices.core import error_report, exit_code_for, handle_error
from marked_lattices.core.errors import NoConvergenceError, NotPSDError, UsageError


def test_missing_input_file(run_cli, tmp_path):
    """An unreadable --in path is a usage error."""
    code, report, _ = run_cli("reduce", "--in", str(tmp_path / "absent.json"))
    assert code == 4
    assert report["status"] == "error"
    assert "cannot read input" in report["message"]


def test_malformed_json(run_cli, tmp_path):
    """Invalid JSON maps to exit code 4."""
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, report, _ = run_cli("compare", "--in", str(path))
    assert code == 4
    assert report["error"] == "JSONDecodeError"


def test_non_object_document(run_cli, write_document):
    """Top-level arrays are rejected."""
    path = write_document([1, 2, 3])
    assert run_cli("split", "--in", str(path))[0] == 4


def test_empty_document(run_cli, write_document):
    """An empty object fails input validation."""
    code, report, _ = run_cli("compactify", "--in", str(write_document({})))
    assert code == 4
    assert report["error"] == "ValidationError"


def test_unknown_family_kind(run_cli, write_document):
    """Schema violations inside a document are usage errors."""
    code, report, _ = run_cli("compactify", "--in", str(write_document({"kind": "spiral"})))
    assert code == 4
    assert report["status"] == "error"


def test_missing_command(run_cli):
    """A bare invocation is a usage error."""
    code, report, _ = run_cli()
    assert code == 4
    assert "missing command" in report["message"]


def test_missing_config_file(run_cli, tmp_path):
    """--config must point at an existing file."""
    code, _, _ = run_cli("--config", str(tmp_path / "absent.yaml"), "verify", "scalars")
    assert code == 4


def test_config_with_unknown_key(run_cli, tmp_path):
    """Configuration files are validated strictly."""
    config = tmp_path / "run.yaml"
    config.write_text("trials: 3\ncolour: blue\n", encoding="utf-8")
    assert run_cli("--config", str(config), "verify", "scalars")[0] == 4


def test_not_psd_gram_is_a_domain_error(run_cli, write_document):
    """Indefinite Grams are rejected with exit code 2."""
    document = {
        "left": {"type": "satake", "gram": {"entries": [[1, 0], [0, -1]]}},
        "right": {"type": "satake", "gram": {"entries": [[1, 0], [0, 1]]}},
    }
    code, report, _ = run_cli("compare", "--in", str(write_document(document)))
    assert code == 2
    assert report["error"] == "NotPSDError"


def test_internal_error_exits_1(run_cli, write_document):
    """Unexpected exceptions are reported as failures."""
    path = write_document({"g": 1, "A": [[1, 0], [0, 1]]})
    reduce_module = importlib.import_module("marked_lattices.tools.reduce")
    with patch.object(reduce_module, "symplectic_reduce", side_effect=RuntimeError("boom")):
        code, report, _ = run_cli("reduce", "--in", str(path))
    assert code == 1
    assert report["error"] == "RuntimeError"
    assert report["message"] == "boom"


@pytest.mark.parametrize(
    ("error", "expected"),
    [
        (NotPSDError("x"), ExitCode.DOMAIN),
        (NoConvergenceError("x", [], 1.0), ExitCode.NO_CONVERGENCE),
        (UsageError("x"), ExitCode.USAGE),
        (ValueError("x"), ExitCode.USAGE),
        (KeyError("x"), ExitCode.FAILURE),
    ],
)
def test_exit_code_mapping(error, expected):
    """Each exception class maps to its stable exit code."""
    assert exit_code_for(error) is expected


def test_error_report_carries_details():
    """Domain errors add their structured details to the report."""
    report = error_report(NoConvergenceError("stuck", [[[1.0]]], 0.5), "compactify")
    assert report == {
        "status": "error",
        "error": "NoConvergenceError",
        "message": "stuck",
        "exit_code": 3,
        "last_grams": [[[1.0]]],
        "gap": 0.5,
    }


def test_error_report_logs_through_logging(caplog):
    """Failures go to the package logger at ERROR level."""
    with caplog.at_level(logging.ERROR, logger="marked_lattices"):
        error_report(NotPSDError("negative eigenvalue"), "compare")

    [record] = [r for r in caplog.records if r.name.startswith("marked_lattices")]
    assert record.levelno == logging.ERROR
    assert record.getMessage() == "Error: NotPSDError in compare: negative eigenvalue"


def test_handle_error_can_stay_silent(caplog):
    """log=False only formats the message."""
    with caplog.at_level(logging.DEBUG, logger="marked_lattices"):
        message = handle_error(UsageError("bad suite"), "check", log=False)

    assert message == "Error: UsageError in check: bad suite"
    assert not caplog.records
