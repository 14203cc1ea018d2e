"""Shared fixtures for marked-lattices tests."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from marked_lattices.cli import main


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so sampled inputs are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def write_document(tmp_path: Path) -> Callable[[dict[str, Any]], Path]:
    """Write a JSON document into the test directory and return its path."""
    counter = {"n": 0}

    def _write(document: dict[str, Any]) -> Path:
        counter["n"] += 1
        path = tmp_path / f"document-{counter['n']}.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., tuple[int, dict[str, Any], str]]:
    """Run the command line in-process; returns (exit code, parsed report, raw stdout)."""

    def _run(*argv: str) -> tuple[int, dict[str, Any], str]:
        code = main(list(argv))
        out = capsys.readouterr().out
        return code, json.loads(out) if out else {}, out

    return _run
