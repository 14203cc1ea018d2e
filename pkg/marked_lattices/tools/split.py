"""Splitting detection and stratum assembly."""

from typing import Any

from marked_lattices.algebra.lattices import ProjectiveLengthClass
from marked_lattices.algebra.strata import check_splitting, detect_splitting, psi_sigma
from marked_lattices.core import error_report
from marked_lattices.models import SplitInput
from marked_lattices.schemas import SplitDocument


def split(params: SplitInput) -> dict[str, Any]:
    """Detect the candidate splittings of a length function, or assemble one.

    Args:
        params: SplitInput with a detection or assembly document

    Returns:
        Detection: accepted candidate indices, the finest ones among them and
        the candidates where the quadratic identity disagrees.
        Assembly: the assembled length function, its class, the Gram verdict
        ``splits`` and the quadratic identity result ``cross_check``.
    """
    try:
        document = SplitDocument.model_validate(params.document)
        if document.mode == "detect":
            length = document.length.to_length() if document.length else None
            candidates = [c.to_splitting() for c in document.candidates or []]
            if length is None:
                raise ValueError("detection needs a 'length'")
            detection = detect_splitting(length, candidates, params.tolerance)
            return {"status": "success", "mode": "detect", **detection.to_document()}

        if document.splitting is None:
            raise ValueError("assembly needs a 'splitting'")
        splitting = document.splitting.to_splitting()
        length = psi_sigma(splitting, [b.to_matk() for b in document.blocks or []])
        return {
            "status": "success",
            "mode": "assemble",
            "length": length,
            **check_splitting(length, splitting, params.tolerance).to_document(),
            "class": ProjectiveLengthClass.of(length),
        }
    except Exception as e:
        return error_report(e, "split")
