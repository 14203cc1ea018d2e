"""Boundary limits of degeneration families."""

import logging
from typing import Any

from marked_lattices.algebra.bridge import BoundaryLimit, boundary_limit
from marked_lattices.algebra.lattices import LengthFunction, named_order
from marked_lattices.algebra.strata import SymplecticSplitting, detect_splitting
from marked_lattices.constants import Algebra
from marked_lattices.core import error_report
from marked_lattices.core.errors import InvalidSplittingError
from marked_lattices.models import CompactifyInput
from marked_lattices.schemas import FamilyDocument

logger = logging.getLogger(__name__)


def _check_candidates(
    limit: BoundaryLimit, candidates: list[SymplecticSplitting], tol: float
) -> dict[str, Any] | None:
    """Splittings of the limit among the candidates, for real families of even size."""
    gram = limit.point.gram
    if not candidates or gram.algebra is not Algebra.R or gram.m % 2:
        return None
    for k, candidate in enumerate(candidates):
        if 2 * candidate.g != gram.m:
            raise InvalidSplittingError(
                f"candidate {k} has genus {candidate.g}, the family acts on Z^{gram.m}"
            )
    detection = detect_splitting(LengthFunction(gram, named_order("Z")), candidates, tol)
    return detection.to_document()


def compactify(params: CompactifyInput) -> dict[str, Any]:
    """Compute the limit class of a degeneration family.

    Args:
        params: CompactifyInput with the family document and Cauchy settings

    Returns:
        dict with the limit Gram, rank, candidate splittings and diagnostics;
        an error report with exit code 3 when the family does not converge
    """
    try:
        document = FamilyDocument.model_validate(params.document)
        family = document.to_family()
        limit = boundary_limit(family, params.window, params.rtol)
        logger.info("family of %d samples converged to rank %d", len(family.samples), limit.rank)
        return {
            "status": "success",
            "kind": family.kind,
            **limit.to_document(),
            "splittings": _check_candidates(limit, document.to_candidates(), params.tolerance),
        }
    except Exception as e:
        return error_report(e, "compactify")
