"""Core utilities for marked-lattices.

This package contains focused modules for different utility categories:
- errors: Exception hierarchy, exit codes and error formatting
- exact: Rational matrices as numpy object arrays of Fractions
- responses: Deterministic JSON reports
- config: YAML run configuration files
- seeding: Splittable per-trial seeds for the verification harness
"""

# Configuration
from .config import load_config, save_config

# Error handling
from .errors import (
    MarkedLatticeError,
    error_report,
    exit_code_for,
    handle_error,
)

# Report formatting
from .responses import dump_report, safe_json_dumps, to_jsonable

# Seeding
from .seeding import derive_seed, trial_rng

__all__ = [
    # Configuration
    "load_config",
    "save_config",
    # Error handling
    "MarkedLatticeError",
    "error_report",
    "exit_code_for",
    "handle_error",
    # Report formatting
    "dump_report",
    "safe_json_dumps",
    "to_jsonable",
    # Seeding
    "derive_seed",
    "trial_rng",
]
