"""Pydantic schema for marked-lattices run configuration files.

The file is optional and user-edited; every field can also be given on the
command line, where flags win over file values.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from marked_lattices.constants import (
    CAUCHY_RTOL,
    CAUCHY_WINDOW,
    CLASS_TOLERANCE,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
)


class RunConfig(BaseModel):
    """Schema for a marked-lattices YAML configuration file."""

    model_config = ConfigDict(extra="forbid")

    tolerance: float = Field(
        default=CLASS_TOLERANCE,
        description="Relative tolerance for class comparisons and floating checks",
    )
    seed: int = Field(
        default=DEFAULT_SEED,
        description="Master seed of the verification harness",
    )
    trials: int = Field(
        default=DEFAULT_TRIALS,
        description="Trials per sampled property",
    )
    workers: int = Field(
        default=DEFAULT_WORKERS,
        description="Thread pool size for verification trials",
    )
    window: int = Field(
        default=CAUCHY_WINDOW,
        description="Number of trailing samples in the Cauchy convergence test",
    )
    rtol: float = Field(
        default=CAUCHY_RTOL,
        description="Relative tolerance of the Cauchy convergence test",
    )

    @field_validator("tolerance", "rtol")
    @classmethod
    def validate_positive_float(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("tolerances must be positive")
        return v

    @field_validator("trials", "workers", "window")
    @classmethod
    def validate_positive_int(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        if v < 0:
            raise ValueError("seed must be non-negative")
        return v


def validate_config(data: dict[str, Any] | None) -> RunConfig:
    """Validate a parsed configuration mapping.

    Raises:
        pydantic.ValidationError: If a field is unknown or out of range
    """
    return RunConfig(**(data or {}))
