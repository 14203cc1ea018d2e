"""Pydantic schemas for the JSON documents read by the command-line tools.

Reals may be JSON numbers or ``[numerator, denominator]`` pairs. Integers and
pairs select the exact rational path; a single float anywhere in a matrix moves
the whole matrix to floating point.
"""

from fractions import Fraction
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from marked_lattices.algebra.bridge import DegenerationFamily, SatakePoint, satake_point
from marked_lattices.algebra.lattices import (
    LengthFunction,
    MarkedLattice,
    Order,
    default_order,
    gram_from_probes,
    named_order,
)
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.octo import HermitianOct
from marked_lattices.algebra.scalars import Real, Scalar
from marked_lattices.algebra.strata import SymplecticSplitting
from marked_lattices.algebra.symplectic import FormB, SymplecticLattice
from marked_lattices.constants import (
    DEFAULT_POWER_SCHEDULE,
    DEFAULT_REGULARIZED_SCHEDULE,
    NAMED_ORDERS,
    STANDARD_FORM,
    Algebra,
    FamilyKind,
)
from marked_lattices.core import exact


def parse_real(value: Any) -> Real:
    """JSON number or ``[num, den]`` pair to a Fraction (exact) or float.

    Raises:
        ValueError: If the value is not a real
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not reals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, list | tuple) and len(value) == 2:
        num, den = value
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (num, den)):
            raise ValueError(f"rational pairs need integer parts, got {value!r}")
        if den == 0:
            raise ValueError("rational pair with zero denominator")
        return Fraction(num, den)
    raise ValueError(f"expected a number or a [num, den] pair, got {value!r}")


def _unify(values: list[Real]) -> list[Real]:
    """Keep Fractions only when every value is exact."""
    if all(isinstance(v, Fraction) for v in values):
        return values
    return [float(v) for v in values]


def parse_rational_matrix(rows: Any) -> np.ndarray:
    """Exact object matrix from nested rows of integers or pairs.

    Raises:
        ValueError: If rows are ragged or an entry is a float
    """
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("expected a non-empty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("matrix rows have different lengths")
    out = exact.zeros(len(rows), width)
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            value = parse_real(cell)
            if not isinstance(value, Fraction):
                raise ValueError("lattice and splitting matrices must be exact rationals")
            out[i, j] = value
    return out


class ScalarDocument(BaseModel):
    """{"algebra": tag, "coords": [reals], "exact": optional [num, den] pairs}."""

    model_config = ConfigDict(extra="forbid")

    algebra: Algebra
    coords: list[Any] | None = None
    exact: list[Any] | None = None

    @model_validator(mode="after")
    def check_coords(self) -> "ScalarDocument":
        values = self.exact if self.exact is not None else self.coords
        if values is None:
            raise ValueError("scalar needs 'coords' or 'exact'")
        if len(values) != self.algebra.dim:
            raise ValueError(f"{self.algebra.value} scalars need {self.algebra.dim} coordinates")
        return self

    def to_scalar(self) -> Scalar:
        if self.exact is not None:
            return Scalar(self.algebra, tuple(exact.to_fraction(parse_real(v)) for v in self.exact))
        values = _unify([parse_real(v) for v in self.coords or []])
        return Scalar(self.algebra, tuple(values))


def _cell(algebra: Algebra, cell: Any) -> list[Real]:
    if isinstance(cell, dict):
        scalar = ScalarDocument(**cell).to_scalar()
        if scalar.algebra is not algebra:
            raise ValueError("matrix entry lives over another algebra")
        return list(scalar.coords)
    if algebra is Algebra.R:
        return [parse_real(cell)]
    if not isinstance(cell, list) or len(cell) != algebra.dim:
        raise ValueError(f"{algebra.value} entries need {algebra.dim} coordinates")
    return [parse_real(v) for v in cell]


class MatrixDocument(BaseModel):
    """{"algebra": tag, "m": int, "entries": row-major scalar array}.

    Real entries are numbers or pairs; other algebras take a list of ``dim``
    coordinates or a scalar document per entry.
    """

    model_config = ConfigDict(extra="forbid")

    algebra: Algebra = Algebra.R
    m: int | None = None
    cols: int | None = None
    entries: list[list[Any]]

    @model_validator(mode="after")
    def check_shape(self) -> "MatrixDocument":
        if not self.entries:
            raise ValueError("matrix has no rows")
        width = len(self.entries[0])
        if width == 0 or any(len(row) != width for row in self.entries):
            raise ValueError("matrix rows must be non-empty and of equal length")
        if self.m is not None and self.m != len(self.entries):
            raise ValueError(f"'m' is {self.m} but the matrix has {len(self.entries)} rows")
        if self.cols is not None and self.cols != width:
            raise ValueError(f"'cols' is {self.cols} but rows have {width} entries")
        return self

    def to_matk(self) -> MatK:
        cells = [[_cell(self.algebra, c) for c in row] for row in self.entries]
        flat = _unify([v for row in cells for c in row for v in c])
        as_exact = bool(flat) and isinstance(flat[0], Fraction)
        data = np.array(flat, dtype=object if as_exact else float)
        rows, cols = len(cells), len(cells[0])
        return MatK(self.algebra, data.reshape(rows, cols, self.algebra.dim))


class OrderDocument(BaseModel):
    """Explicit order: {"algebra": tag, "basis": [scalar documents]}."""

    model_config = ConfigDict(extra="forbid")

    algebra: Algebra
    basis: list[ScalarDocument]

    def to_order(self) -> Order:
        return Order.from_basis(self.algebra, [b.to_scalar() for b in self.basis])


def parse_order(order: str | OrderDocument | None, algebra: Algebra) -> Order:
    if order is None:
        return default_order(algebra)
    if isinstance(order, str):
        return named_order(order)
    return order.to_order()


def _check_order_name(v: Any) -> Any:
    if isinstance(v, str) and v not in NAMED_ORDERS:
        raise ValueError(f"unknown order {v!r}; named orders are {', '.join(NAMED_ORDERS)}")
    return v


class MarkedLatticeDocument(BaseModel):
    """{"order": name or explicit basis, "m": int, "f": matrix}."""

    model_config = ConfigDict(extra="forbid")

    order: str | OrderDocument | None = None
    m: int | None = None
    f: MatrixDocument

    @field_validator("order")
    @classmethod
    def validate_order(cls, v: Any) -> Any:
        return _check_order_name(v)

    def to_lattice(self) -> MarkedLattice:
        f = self.f.to_matk()
        if self.m is not None and f.shape != (self.m, self.m):
            raise ValueError(f"'m' is {self.m} but f has shape {f.shape}")
        return MarkedLattice(parse_order(self.order, f.algebra), f)


class ProbeEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    u: list[int]
    value: Any


class LengthDocument(BaseModel):
    """{"gram": matrix} or {"probes": [{"u": [...], "value": ...}], "m": int}.

    Probe values are lengths, or squared lengths when ``squared`` is set;
    squared values keep rational tables exact.
    """

    model_config = ConfigDict(extra="forbid")

    gram: MatrixDocument | None = None
    probes: list[ProbeEntry] | None = None
    squared: bool = False
    order: str | OrderDocument | None = None
    algebra: Algebra = Algebra.R
    m: int | None = None

    @field_validator("order")
    @classmethod
    def validate_order(cls, v: Any) -> Any:
        return _check_order_name(v)

    @model_validator(mode="after")
    def check_source(self) -> "LengthDocument":
        if (self.gram is None) == (self.probes is None):
            raise ValueError("length function needs exactly one of 'gram' or 'probes'")
        if self.probes is not None and self.m is None:
            raise ValueError("probe tables need 'm'")
        return self

    def to_length(self) -> LengthFunction:
        if self.gram is not None:
            gram = self.gram.to_matk()
            return LengthFunction.from_gram(gram, parse_order(self.order, gram.algebra))
        order = parse_order(self.order, self.algebra)
        table = {tuple(p.u): parse_real(p.value) for p in self.probes or []}
        gram = gram_from_probes(table, order, self.m or 0, squared=self.squared)
        return LengthFunction(gram, order)


class OctonionicDocument(BaseModel):
    """{"m": 2|3, "diag": [reals], "off": [octonions]} in the layout x, y, z."""

    model_config = ConfigDict(extra="forbid")

    m: Literal[2, 3] = 3
    diag: list[Any]
    off: list[ScalarDocument | list[Any]]

    def to_hermitian(self) -> HermitianOct:
        diag = _unify([parse_real(v) for v in self.diag])
        off = []
        for x in self.off:
            if isinstance(x, ScalarDocument):
                off.append(x.to_scalar())
            else:
                off.append(ScalarDocument(algebra=Algebra.O, coords=x).to_scalar())
        if len(diag) != self.m:
            raise ValueError(f"h_{self.m}(O) needs {self.m} diagonal entries")
        return HermitianOct.build(diag, off)


class SplittingDocument(BaseModel):
    """{"g": int, "blocks": [[indices]], "basis": optional unimodular matrix}."""

    model_config = ConfigDict(extra="forbid")

    g: int = Field(ge=1)
    blocks: list[list[int]]
    basis: list[list[Any]] | None = None

    def to_splitting(self) -> SymplecticSplitting:
        basis = parse_rational_matrix(self.basis) if self.basis is not None else None
        return SymplecticSplitting.create(self.g, self.blocks, basis)


class FamilyDocument(BaseModel):
    """Degeneration family.

    ``explicit`` takes ``samples``; ``diag-power`` takes ``base``, ``exponents``
    and the schedule ``t``; ``regularized`` takes a PSD ``target`` and the
    schedule ``n``. ``candidates`` are splittings the limit is tested against.
    """

    model_config = ConfigDict(extra="forbid")

    kind: FamilyKind
    samples: list[MatrixDocument] | None = None
    base: list[Any] | None = None
    exponents: list[Any] | None = None
    t: list[Any] | None = None
    algebra: Algebra = Algebra.R
    target: MatrixDocument | None = None
    n: list[int] | None = None
    candidates: list[SplittingDocument] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_kind_fields(self) -> "FamilyDocument":
        required = {
            FamilyKind.EXPLICIT: ("samples",),
            FamilyKind.DIAG_POWER: ("base", "exponents"),
            FamilyKind.REGULARIZED: ("target",),
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind.value} families need {', '.join(missing)}")
        if self.kind is FamilyKind.EXPLICIT and not self.samples:
            raise ValueError("explicit families need at least one sample")
        return self

    def to_family(self) -> DegenerationFamily:
        if self.kind is FamilyKind.EXPLICIT:
            return DegenerationFamily.explicit([s.to_matk() for s in self.samples or []])
        if self.kind is FamilyKind.DIAG_POWER:
            schedule = [float(parse_real(t)) for t in self.t] if self.t else DEFAULT_POWER_SCHEDULE
            return DegenerationFamily.diag_power(
                [float(parse_real(b)) for b in self.base or []],
                [float(parse_real(e)) for e in self.exponents or []],
                schedule,
                self.algebra,
            )
        if self.target is None:
            raise ValueError("regularized families need a target")
        schedule = self.n or DEFAULT_REGULARIZED_SCHEDULE
        return DegenerationFamily.regularized(self.target.to_matk(), schedule)

    def to_candidates(self) -> list[SymplecticSplitting]:
        return [c.to_splitting() for c in self.candidates]


class LatticeDocument(BaseModel):
    """{"g": int, "A": rational matrix, "form": "symplectic-standard" or a J matrix}.

    With an explicit form, ``A`` may instead be given as a matrix document ``f``
    over any associative algebra.
    """

    model_config = ConfigDict(extra="forbid")

    g: int | None = Field(default=None, ge=1)
    A: list[list[Any]] | None = None
    f: MatrixDocument | None = None
    form: str | MatrixDocument = STANDARD_FORM
    order: str | None = None

    @field_validator("order")
    @classmethod
    def validate_order(cls, v: Any) -> Any:
        return _check_order_name(v)

    @model_validator(mode="after")
    def check_lattice(self) -> "LatticeDocument":
        if isinstance(self.form, str) and self.form != STANDARD_FORM:
            raise ValueError(f"unknown form {self.form!r}; use {STANDARD_FORM!r} or a matrix")
        if self.standard:
            if self.g is None or self.A is None:
                raise ValueError("symplectic lattices need 'g' and 'A'")
        elif self.f is None and self.A is None:
            raise ValueError("lattices with an explicit form need 'f' or 'A'")
        return self

    @property
    def standard(self) -> bool:
        return isinstance(self.form, str)

    def to_lattice(self) -> SymplecticLattice:
        return SymplecticLattice.from_matrix(self.g or 0, parse_rational_matrix(self.A))

    def to_form(self) -> FormB:
        if not isinstance(self.form, MatrixDocument):
            return FormB.standard(self.g or 0)
        return FormB.from_matrix(self.form.to_matk())

    def to_marking(self) -> MatK:
        if self.f is not None:
            return self.f.to_matk()
        algebra = self.form.algebra if isinstance(self.form, MatrixDocument) else Algebra.R
        return MatK.from_real(algebra, parse_rational_matrix(self.A))


EndpointType = Literal["marked-lattice", "satake", "satake-point", "length", "octonionic"]


class EndpointDocument(BaseModel):
    """One side of a comparison, resolved to a projective length class.

    ``marked-lattice`` uses ``order``/``f``; ``satake`` a PSD ``gram``;
    ``satake-point`` a group element ``g`` (the point g g*); ``length`` a
    length document; ``octonionic`` an h_m(O) element read through the
    Thurston (``model: thurston``) or Satake (``model: satake``) side.
    """

    model_config = ConfigDict(extra="allow")

    type: EndpointType

    def payload(self) -> dict[str, Any]:
        return {k: v for k, v in (self.model_extra or {}).items()}


class CompareDocument(BaseModel):
    """{"left": endpoint, "right": endpoint}."""

    model_config = ConfigDict(extra="forbid")

    left: EndpointDocument
    right: EndpointDocument


class SatakeDocument(BaseModel):
    """{"gram": PSD matrix} or {"g": group element}."""

    model_config = ConfigDict(extra="forbid")

    gram: MatrixDocument | None = None
    g: MatrixDocument | None = None

    @model_validator(mode="after")
    def check_source(self) -> "SatakeDocument":
        if (self.gram is None) == (self.g is None):
            raise ValueError("Satake points need exactly one of 'gram' or 'g'")
        return self

    def to_point(self) -> SatakePoint:
        if self.g is not None:
            return satake_point(self.g.to_matk())
        if self.gram is None:
            raise ValueError("Satake points need 'gram' or 'g'")
        return SatakePoint.of(self.gram.to_matk())


class SplitDocument(BaseModel):
    """Either detection or assembly.

    Detection: {"length": length document, "candidates": [splittings]}.
    Assembly: {"splitting": splitting, "blocks": [block Gram matrices]}.
    """

    model_config = ConfigDict(extra="forbid")

    length: LengthDocument | None = None
    candidates: list[SplittingDocument] | None = None
    splitting: SplittingDocument | None = None
    blocks: list[MatrixDocument] | None = None

    @model_validator(mode="after")
    def check_mode(self) -> "SplitDocument":
        detect = self.length is not None or self.candidates is not None
        assemble = self.splitting is not None or self.blocks is not None
        if detect == assemble:
            raise ValueError("give either 'length' + 'candidates' or 'splitting' + 'blocks'")
        if detect and (self.length is None or not self.candidates):
            raise ValueError("detection needs a 'length' and at least one candidate")
        if assemble and (self.splitting is None or self.blocks is None):
            raise ValueError("assembly needs a 'splitting' and its 'blocks'")
        return self

    @property
    def mode(self) -> Literal["detect", "assemble"]:
        return "detect" if self.length is not None else "assemble"
