"""Pydantic models for marked-lattices command inputs."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .constants import (
    CAUCHY_RTOL,
    CAUCHY_WINDOW,
    CLASS_TOLERANCE,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
    SPLIT_TOLERANCE,
    Suite,
)


def _validate_tolerance(v: float, field_name: str = "tolerance") -> float:
    """Shared validator for tolerance fields.

    Raises:
        ValueError: If the tolerance is not a positive finite number below 1
    """
    if not 0 < v < 1:
        raise ValueError(f"Invalid {field_name}: must lie in (0, 1), got {v}")
    return v


def _validate_document(v: dict[str, Any], field_name: str = "document") -> dict[str, Any]:
    """Shared validator for raw input documents.

    Raises:
        ValueError: If the document is empty
    """
    if not v:
        raise ValueError(f"Invalid {field_name}: input document is empty")
    return v


class _CommandInput(BaseModel):
    model_config = ConfigDict(validate_assignment=True, extra="forbid")


class CompactifyInput(_CommandInput):
    """Input for computing the boundary limit of a degeneration family."""

    document: dict[str, Any] = Field(..., description="Family document (explicit, diag-power or regularized)")
    window: int = Field(default=CAUCHY_WINDOW, ge=2, description="Trailing samples in the Cauchy test")
    rtol: float = Field(default=CAUCHY_RTOL, description="Relative Cauchy tolerance")
    tolerance: float = Field(default=SPLIT_TOLERANCE, description="Off-block tolerance for candidate splittings")

    @field_validator("document")
    @classmethod
    def validate_document(cls, v: dict[str, Any]) -> dict[str, Any]:
        return _validate_document(v)

    @field_validator("rtol", "tolerance")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        return _validate_tolerance(v)


class ReduceInput(_CommandInput):
    """Input for reducing an autodual lattice to the standard lattice."""

    document: dict[str, Any] = Field(..., description="Lattice document {g, A} with an optional form")

    @field_validator("document")
    @classmethod
    def validate_document(cls, v: dict[str, Any]) -> dict[str, Any]:
        return _validate_document(v)


class CompareInput(_CommandInput):
    """Input for deciding whether two documents define the same length class."""

    document: dict[str, Any] = Field(..., description="Comparison document {left, right}")
    tolerance: float = Field(default=CLASS_TOLERANCE, description="Entrywise tolerance on normalized Grams")

    @field_validator("document")
    @classmethod
    def validate_document(cls, v: dict[str, Any]) -> dict[str, Any]:
        return _validate_document(v)

    @field_validator("tolerance")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        return _validate_tolerance(v)


class SplitInput(_CommandInput):
    """Input for splitting detection or stratum assembly."""

    document: dict[str, Any] = Field(..., description="Detection or assembly document")
    tolerance: float = Field(default=SPLIT_TOLERANCE, description="Off-block tolerance")

    @field_validator("document")
    @classmethod
    def validate_document(cls, v: dict[str, Any]) -> dict[str, Any]:
        return _validate_document(v)

    @field_validator("tolerance")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        return _validate_tolerance(v)


class VerifyInput(_CommandInput):
    """Input for running a property suite."""

    suite: Suite = Field(..., description="Suite name, or 'all'")
    seed: int = Field(default=DEFAULT_SEED, ge=0, description="Master seed; per-trial seeds derive from it")
    trials: int = Field(default=DEFAULT_TRIALS, ge=1, description="Trials per sampled property")
    workers: int = Field(default=DEFAULT_WORKERS, ge=1, description="Thread pool size")
    tolerance: float = Field(default=CLASS_TOLERANCE, description="Tolerance for floating checks")

    @field_validator("tolerance")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        return _validate_tolerance(v)
