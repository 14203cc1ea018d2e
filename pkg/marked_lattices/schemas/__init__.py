"""Pydantic schemas for marked-lattices documents and config files."""

from .config import RunConfig, validate_config
from .documents import (
    CompareDocument,
    EndpointDocument,
    FamilyDocument,
    LatticeDocument,
    LengthDocument,
    MarkedLatticeDocument,
    MatrixDocument,
    OctonionicDocument,
    SatakeDocument,
    ScalarDocument,
    SplitDocument,
    SplittingDocument,
    parse_real,
)

__all__ = [
    # Config
    "RunConfig",
    "validate_config",
    # Documents
    "CompareDocument",
    "EndpointDocument",
    "FamilyDocument",
    "LatticeDocument",
    "LengthDocument",
    "MarkedLatticeDocument",
    "MatrixDocument",
    "OctonionicDocument",
    "SatakeDocument",
    "ScalarDocument",
    "SplitDocument",
    "SplittingDocument",
    "parse_real",
]
