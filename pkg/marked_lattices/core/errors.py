"""Error handling utilities.

This module defines the exception hierarchy shared by every algebra module and
the consistent error formatting used by the command-line tools.
"""

import logging
from typing import Any

from marked_lattices.constants import ExitCode

logger = logging.getLogger(__name__)


class MarkedLatticeError(Exception):
    """Base class for domain rejections.

    Attributes:
        exit_code: CLI exit code reported when the error reaches the command line
    """

    exit_code: ExitCode = ExitCode.DOMAIN

    def details(self) -> dict[str, Any]:
        """Extra JSON-ready fields included in error reports."""
        return {}


class AlgebraMismatchError(MarkedLatticeError):
    """Operands live over different scalar algebras (tag mismatch)."""


class DegenerateProbeError(MarkedLatticeError):
    """Polarization probes do not form a real basis of the algebra."""


class NotHermitianError(MarkedLatticeError):
    """Matrix differs from its adjoint beyond tolerance."""


class NotPSDError(MarkedLatticeError):
    """Matrix has an eigenvalue below the PSD tolerance floor."""


class ZeroMarkingError(MarkedLatticeError):
    """Marking f is the zero map."""


class SingularMarkingError(MarkedLatticeError):
    """Marking f is not invertible, so it has no covolume-1 representative."""


class IncompleteProbeError(MarkedLatticeError):
    """Probe table misses a point of the canonical probe set."""

    def __init__(self, message: str, missing: tuple[int, ...] | None = None):
        super().__init__(message)
        self.missing = missing

    def details(self) -> dict[str, Any]:
        return {"missing": list(self.missing) if self.missing is not None else None}


class InconsistentLengthsError(MarkedLatticeError):
    """Probe lengths are not the lengths of any PSD Gram matrix."""


class SingularGramError(MarkedLatticeError):
    """Gram matrix is rank deficient where full rank is required."""


class SingularActionError(MarkedLatticeError):
    """Acting group element is not invertible."""


class ClassMismatchError(MarkedLatticeError):
    """Compared classes have different sizes or algebras."""


class SingularLatticeError(MarkedLatticeError):
    """Lattice basis matrix is singular over the rationals."""


class NotAutodualError(MarkedLatticeError):
    """Lattice is not equal to its dual for the symplectic form."""


class ReductionFailureError(MarkedLatticeError):
    """Internal assertion: the reduction produced a matrix that fails verification."""

    def __init__(self, message: str, residual: Any = None):
        super().__init__(message)
        self.residual = residual

    def details(self) -> dict[str, Any]:
        return {"residual": self.residual}


class BlockMismatchError(MarkedLatticeError):
    """Block length functions do not match the splitting's block sizes."""


class InvalidSplittingError(MarkedLatticeError):
    """Blocks do not form a symplectic splitting of the lattice."""


class InvalidOrderError(MarkedLatticeError):
    """Basis does not span a multiplication-closed order containing 1."""


class NoConvergenceError(MarkedLatticeError):
    """Normalized Grams of a degeneration family are not Cauchy over the window.

    Attributes:
        last_grams: The last two trace-normalized Gram matrices
        gap: Largest windowed distance observed
    """

    exit_code = ExitCode.NO_CONVERGENCE

    def __init__(self, message: str, last_grams: list[Any], gap: float):
        super().__init__(message)
        self.last_grams = last_grams
        self.gap = gap

    def details(self) -> dict[str, Any]:
        return {"last_grams": self.last_grams, "gap": self.gap}


class UsageError(MarkedLatticeError):
    """Bad command line, unknown suite or schema-invalid input document."""

    exit_code = ExitCode.USAGE


def handle_error(e: Exception, context: str = "", log: bool = True) -> str:
    """Consistent error formatting across all tools.

    Args:
        e: Exception that occurred
        context: Context where error occurred (e.g., command name, operation)
        log: Whether to emit the message on the module logger at ERROR level

    Returns:
        Formatted error message string
    """
    error_msg = f"Error: {type(e).__name__}"
    if context:
        error_msg += f" in {context}"
    error_msg += f": {e}"

    if log:
        logger.error(error_msg)

    return error_msg


def exit_code_for(e: Exception) -> ExitCode:
    """Map an exception to its stable CLI exit code.

    Schema and parse failures (``ValueError`` covers pydantic's ``ValidationError``
    and ``json.JSONDecodeError``) are usage errors; anything else is internal.
    """
    if isinstance(e, MarkedLatticeError):
        return e.exit_code
    if isinstance(e, ValueError):
        return ExitCode.USAGE
    return ExitCode.FAILURE


def error_report(e: Exception, context: str = "") -> dict[str, Any]:
    """Report dict for a failed command, logged through :func:`handle_error`."""
    report: dict[str, Any] = {
        "status": "error",
        "error": type(e).__name__,
        "message": str(e),
        "exit_code": int(exit_code_for(e)),
    }
    handle_error(e, context)
    if isinstance(e, MarkedLatticeError):
        report.update(e.details())
    return report
