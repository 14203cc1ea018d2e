"""Shared types for the property suites."""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np

Counterexample = dict[str, Any] | None
Check = Callable[[np.random.Generator, float], Counterexample]


@dataclass(frozen=True)
class Property:
    """A named check run once per trial.

    Attributes:
        name: Property name shown in reports
        check: Returns None on success or a JSON-ready counterexample
        sampled: False for exhaustive checks, which run exactly once
    """

    name: str
    check: Check
    sampled: bool = True


def relative_gap(observed: float, expected: float) -> float:
    return abs(observed - expected) / max(abs(expected), 1e-300)
