"""Configuration file management utilities.

This module loads and saves marked-lattices YAML run configurations, writing a
commented guide below the values when saving.
"""

from pathlib import Path
from typing import Any

import yaml


def load_config(config_path: Path) -> dict[str, Any] | None:
    """Load a YAML run configuration.

    Returns:
        The parsed mapping, or None when the file does not exist

    Raises:
        ValueError: If the file is not a YAML mapping
    """
    if not config_path.exists():
        return None

    with open(config_path, encoding="utf-8") as f:
        config = yaml.safe_load(f)

    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ValueError(f"Configuration must be a mapping, got {type(config).__name__}")
    return config


def save_config(config_path: Path, config: dict[str, Any]) -> bool:
    """Save a run configuration with a commented guide."""
    try:
        with open(config_path, "w", encoding="utf-8") as f:
            yaml.dump(config, f, default_flow_style=False, sort_keys=True)

            f.write("\n")
            f.write("# " + "=" * 76 + "\n")
            f.write("# Configuration Guide\n")
            f.write("# " + "=" * 76 + "\n")
            f.write("#\n")
            f.write("# tolerance: relative tolerance for class comparisons (default 1e-9)\n")
            f.write("# seed:      master seed; trial seeds are derived from\n")
            f.write("#            sha256('seed:suite:property:trial')\n")
            f.write("# trials:    trials per sampled property (exhaustive checks run once)\n")
            f.write("# workers:   verification thread pool size; reports do not depend on it\n")
            f.write("# window:    trailing samples compared by the Cauchy test (default 3)\n")
            f.write("# rtol:      relative tolerance of the Cauchy test (default 1e-6)\n")
            f.write("#\n")
            f.write("# Command-line flags override every value in this file.\n")
        return True
    except OSError:
        return False
