"""Satake points, the map xi onto length classes, and boundary limits.

Both models share one representation: a trace-normalized Hermitian PSD Gram
matrix. A Satake point a maps to the length class u -> ||sqrt(a) u||, whose
Gram is a itself; the interior point gK corresponds to the marking f = g*.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from marked_lattices.algebra import matk
from marked_lattices.algebra.lattices import (
    LengthFunction,
    MarkedLattice,
    Order,
    ProjectiveLengthClass,
    default_order,
    normalize_gram,
)
from marked_lattices.algebra.matk import MatK
from marked_lattices.constants import (
    CAUCHY_RTOL,
    CAUCHY_WINDOW,
    CLASS_TOLERANCE,
    DEFAULT_POWER_SCHEDULE,
    DEFAULT_REGULARIZED_SCHEDULE,
    DEFAULT_TOLERANCE,
    RANK_TOLERANCE,
    Algebra,
    FamilyKind,
)
from marked_lattices.core import exact
from marked_lattices.core.errors import (
    ClassMismatchError,
    NoConvergenceError,
    SingularActionError,
    SingularMarkingError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SatakePoint:
    """Homothety class of a nonzero Hermitian PSD matrix, stored with real trace 1."""

    gram: MatK

    @classmethod
    def of(cls, a: MatK, tol: float = DEFAULT_TOLERANCE) -> "SatakePoint":
        """Normalize and validate a PSD matrix.

        Raises:
            NotHermitianError: If ``a`` is not Hermitian
            NotPSDError: If ``a`` has a negative eigenvalue below the floor
            ZeroMarkingError: If ``a`` is zero
        """
        LengthFunction.from_gram(a, default_order(a.algebra), tol)
        return cls(normalize_gram(a))

    @property
    def algebra(self) -> Algebra:
        return self.gram.algebra

    @property
    def m(self) -> int:
        return self.gram.m

    def rank(self, rtol: float = RANK_TOLERANCE) -> int:
        return LengthFunction(self.gram, default_order(self.algebra)).rank(rtol)

    def is_interior(self) -> bool:
        return self.rank() == self.m

    def to_document(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra.value,
            "gram": self.gram.to_document(),
            "rank": self.rank(),
            "interior": self.is_interior(),
        }


def _require_invertible(g: MatK) -> None:
    if matk.is_singular(g):
        raise SingularActionError("group element is singular")


def satake_point(g: MatK) -> SatakePoint:
    """Class of g g*.

    Raises:
        SingularActionError: If g is singular
    """
    _require_invertible(g)
    return SatakePoint(normalize_gram(g @ matk.adjoint(g)))


def xi(a: SatakePoint, order: Order | None = None) -> ProjectiveLengthClass:
    """Length class u -> ||sqrt(a) u||, whose Gram matrix is a."""
    order = order or default_order(a.algebra)
    return ProjectiveLengthClass.of(LengthFunction(a.gram, order))


def satake_action(g: MatK, a: SatakePoint) -> SatakePoint:
    """Class of g a g*.

    Raises:
        SingularActionError: If g is singular
    """
    _require_invertible(g)
    return SatakePoint(normalize_gram(g @ a.gram @ matk.adjoint(g)))


def interior_lattice(g: MatK, order: Order | None = None) -> MarkedLattice:
    """Marked lattice with marking f = g*, so that f*f = g g*."""
    return MarkedLattice(order or default_order(g.algebra), matk.adjoint(g))


def classes_equal(
    x: ProjectiveLengthClass | SatakePoint,
    y: ProjectiveLengthClass | SatakePoint,
    tol: float = CLASS_TOLERANCE,
) -> bool:
    """Entrywise comparison of the trace-normalized Grams.

    Raises:
        ClassMismatchError: If the classes differ in size or algebra
    """
    if x.algebra is not y.algebra or x.gram.shape != y.gram.shape:
        raise ClassMismatchError(
            f"cannot compare a {x.m}x{x.m} {x.algebra.value} class with a "
            f"{y.m}x{y.m} {y.algebra.value} class"
        )
    if x.gram.exact and y.gram.exact:
        return bool(np.all(x.gram.entries == y.gram.entries))
    diff = np.abs(x.gram.to_float().entries - y.gram.to_float().entries)
    return bool(np.max(diff) <= tol) if diff.size else True


# degeneration families


@dataclass(frozen=True, eq=False)
class DegenerationFamily:
    """A sampled sequence of markings f_n with its parameter schedule.

    Attributes:
        kind: How the samples were produced
        samples: Invertible markings, in schedule order
        schedule: Parameter value of each sample (t or n)
    """

    kind: FamilyKind
    samples: tuple[MatK, ...]
    schedule: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        for k, f in enumerate(self.samples):
            if matk.dieudonne_det(f) == 0:
                raise SingularMarkingError(f"family sample {k} is singular")

    @classmethod
    def explicit(cls, samples: Sequence[MatK]) -> "DegenerationFamily":
        return cls(FamilyKind.EXPLICIT, tuple(samples), tuple(float(k) for k in range(len(samples))))

    @classmethod
    def diag_power(
        cls,
        base: Sequence[float],
        exponents: Sequence[float],
        schedule: Sequence[float] = DEFAULT_POWER_SCHEDULE,
        algebra: Algebra = Algebra.R,
    ) -> "DegenerationFamily":
        """f(t) = diag(b_i t^e_i) sampled at each t of the schedule."""
        if len(base) != len(exponents):
            raise ValueError("base and exponents must have the same length")
        samples = tuple(
            MatK.from_real(
                algebra,
                np.diag([float(b) * float(t) ** float(e) for b, e in zip(base, exponents, strict=True)]),
            )
            for t in schedule
        )
        return cls(FamilyKind.DIAG_POWER, samples, tuple(float(t) for t in schedule))

    @classmethod
    def regularized(
        cls, target: MatK, schedule: Sequence[int] = DEFAULT_REGULARIZED_SCHEDULE
    ) -> "DegenerationFamily":
        """f_n = sqrt(a) + I/(n+1), rescaled to covolume 1, for a PSD target a."""
        root = matk.psd_sqrt(target.to_float())
        identity = MatK.identity(target.algebra, target.m, as_exact=False)
        order = default_order(target.algebra)
        samples = tuple(
            MarkedLattice(order, root + identity.scale(1.0 / (n + 1))).normalized().f
            for n in schedule
        )
        return cls(FamilyKind.REGULARIZED, samples, tuple(float(n) for n in schedule))

    def normalized_grams(self) -> list[MatK]:
        return [normalize_gram(matk.adjoint(f) @ f).to_float() for f in self.samples]

    def rescaled(self, factors: Sequence[float]) -> "DegenerationFamily":
        """Multiply sample n by the positive real factors[n]."""
        return DegenerationFamily(
            self.kind,
            tuple(f.scale(float(c)) for f, c in zip(self.samples, factors, strict=True)),
            self.schedule,
        )


@dataclass(frozen=True, eq=False)
class BoundaryLimit:
    """Limit of a degeneration family.

    Attributes:
        point: Limit class, with eigenvalues below the rank threshold cleared
        rank: Rank of the limit (m for interior points)
        interior: Whether the limit is full rank
        gap: Largest relative distance between normalized Grams in the window
        samples: Number of samples compared
    """

    point: SatakePoint
    rank: int
    interior: bool
    gap: float
    samples: int

    def to_document(self) -> dict[str, Any]:
        return {
            "limit": self.point.gram.to_document(),
            "rank": self.rank,
            "interior": self.interior,
            "diagnostics": {"gap": self.gap, "window": self.samples},
        }


def _truncate(gram: MatK, rtol: float) -> MatK:
    u, values = matk.hermitian_eig(gram)
    cleared = np.where(values > rtol * values[0], values, 0.0)
    return normalize_gram(
        u @ MatK.from_real(gram.algebra, np.diag(cleared)) @ matk.adjoint(u)
    )


def boundary_limit(
    family: DegenerationFamily,
    window: int = CAUCHY_WINDOW,
    rtol: float = CAUCHY_RTOL,
) -> BoundaryLimit:
    """Limit of the trace-normalized Grams f_n* f_n by a windowed Cauchy test.

    Raises:
        ValueError: If the family has no samples
        NoConvergenceError: If the last ``window`` samples are not within ``rtol``
    """
    grams = family.normalized_grams()
    if not grams:
        raise ValueError("degeneration family has no samples")
    k = min(window, len(grams))
    tail = grams[-k:]
    scale = max(tail[-1].frobenius_norm(), 1e-300)
    gap = max(
        ((a - b).frobenius_norm() / scale for i, a in enumerate(tail) for b in tail[i + 1:]),
        default=0.0,
    )
    logger.debug("boundary limit over %d samples, Cauchy gap %.3e", k, gap)
    if gap > rtol:
        last = [exact.to_float(g.entries) for g in grams[-2:]]
        raise NoConvergenceError(
            f"normalized Grams are not Cauchy within {rtol:g} over the last {k} samples "
            f"(gap {gap:.3e})",
            [g.tolist() for g in last],
            gap,
        )
    point = SatakePoint(_truncate(tail[-1], RANK_TOLERANCE))
    rank = point.rank()
    return BoundaryLimit(point, rank, rank == point.m, gap, k)
