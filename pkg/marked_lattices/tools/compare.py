"""Equality of projective length classes given by different models."""

from typing import Any

from marked_lattices.algebra import octo
from marked_lattices.algebra.bridge import classes_equal, xi
from marked_lattices.algebra.lattices import ProjectiveLengthClass, class_distance, phi
from marked_lattices.core import error_report
from marked_lattices.models import CompareInput
from marked_lattices.schemas import (
    CompareDocument,
    EndpointDocument,
    LengthDocument,
    MarkedLatticeDocument,
    OctonionicDocument,
    SatakeDocument,
)

_OCTONIONIC_MODELS = ("thurston", "satake")


def _satake_class(payload: dict[str, Any], key: str) -> ProjectiveLengthClass:
    if key not in payload:
        raise ValueError(f"this endpoint needs '{key}'")
    return xi(SatakeDocument.model_validate(payload).to_point())


def resolve_endpoint(endpoint: EndpointDocument) -> ProjectiveLengthClass:
    """Class of one side of a comparison.

    Raises:
        ValueError: If the payload does not match the endpoint type
    """
    payload = endpoint.payload()
    if endpoint.type == "marked-lattice":
        return phi(MarkedLatticeDocument.model_validate(payload).to_lattice())
    if endpoint.type == "satake":
        return _satake_class(payload, "gram")
    if endpoint.type == "satake-point":
        return _satake_class(payload, "g")
    if endpoint.type == "length":
        return ProjectiveLengthClass.of(LengthDocument.model_validate(payload).to_length())

    model = payload.pop("model", "thurston")
    if model not in _OCTONIONIC_MODELS:
        raise ValueError(f"octonionic model must be one of {_OCTONIONIC_MODELS}, got {model!r}")
    matrix = OctonionicDocument.model_validate(payload).to_hermitian()
    return octo.oct_phi(matrix) if model == "thurston" else octo.oct_satake(matrix)


def compare(params: CompareInput) -> dict[str, Any]:
    """Decide whether two documents define the same projective length class.

    Args:
        params: CompareInput with {left, right} endpoints and a tolerance

    Returns:
        dict with the verdict, the class distance and both normalized Grams
    """
    try:
        document = CompareDocument.model_validate(params.document)
        left = resolve_endpoint(document.left)
        right = resolve_endpoint(document.right)
        return {
            "status": "success",
            "equal": classes_equal(left, right, params.tolerance),
            "distance": class_distance(left, right),
            "left": left,
            "right": right,
        }
    except Exception as e:
        return error_report(e, "compare")
