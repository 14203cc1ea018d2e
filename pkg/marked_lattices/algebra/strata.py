"""Symplectic splittings of Z^{2g} and the length functions that split along them.

A splitting is given by a unimodular basis P of Z^{2g} and a partition of its
columns into blocks that are pairwise orthogonal for the standard symplectic
form. Coordinates in the splitting basis are c = P^{-1} w; block j sees the
rows E_j = (P^{-1})[block_j, :].
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from marked_lattices.algebra.lattices import LengthFunction, named_order
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.symplectic import is_unimodular, standard_form
from marked_lattices.constants import SPLIT_TOLERANCE, Algebra
from marked_lattices.core import exact
from marked_lattices.core.errors import (
    AlgebraMismatchError,
    BlockMismatchError,
    InvalidSplittingError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SymplecticSplitting:
    """Decomposition of Z^{2g} into symplectically orthogonal unimodular blocks.

    Attributes:
        g: Genus
        blocks: Column indices of ``basis`` forming each block
        basis: Exact unimodular 2g x 2g matrix P
    """

    g: int
    blocks: tuple[tuple[int, ...], ...]
    basis: np.ndarray

    @classmethod
    def create(
        cls, g: int, blocks: Sequence[Sequence[int]], basis: Any = None
    ) -> "SymplecticSplitting":
        """Validate the splitting data.

        Raises:
            InvalidSplittingError: If the blocks do not partition the basis, the
                basis is not unimodular, or the blocks are not orthogonal and
                nondegenerate
        """
        n = 2 * g
        p = exact.identity(n) if basis is None else exact.fraction_array(basis)
        if p.shape != (n, n):
            raise InvalidSplittingError(f"genus {g} splittings need a {n}x{n} basis")
        if not is_unimodular(p):
            raise InvalidSplittingError("splitting basis is not unimodular")
        normalized = tuple(tuple(sorted(int(i) for i in block)) for block in blocks)
        flat = sorted(i for block in normalized for i in block)
        if flat != list(range(n)) or any(not block for block in normalized):
            raise InvalidSplittingError("blocks must partition the 2g basis vectors")

        form = p.T @ standard_form(g) @ p
        for a, first in enumerate(normalized):
            for second in normalized[a + 1:]:
                if any(form[i, j] != 0 for i in first for j in second):
                    raise InvalidSplittingError("blocks are not symplectically orthogonal")
            if not is_unimodular(form[np.ix_(first, first)]):
                raise InvalidSplittingError(f"block {a} is not a unimodular symplectic sublattice")
        return cls(g, normalized, p)

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(len(block) // 2 for block in self.blocks)

    @property
    def inverse_basis(self) -> np.ndarray:
        return exact.inverse(self.basis)

    def projection(self, j: int) -> np.ndarray:
        """E_j, the block-j coordinates of a vector of Z^{2g}."""
        return self.inverse_basis[list(self.blocks[j]), :]

    def to_document(self) -> dict[str, Any]:
        return {
            "g": self.g,
            "blocks": [list(block) for block in self.blocks],
            "basis": exact.to_int_matrix(self.basis),
        }


def standard_splitting(genera: Sequence[int], basis: Any = None) -> SymplecticSplitting:
    """Coordinate splitting with block j = {p, g + p : p in the j-th genus range}."""
    g = sum(genera)
    blocks = []
    offset = 0
    for gj in genera:
        block = list(range(offset, offset + gj)) + list(range(g + offset, g + offset + gj))
        blocks.append(block)
        offset += gj
    return SymplecticSplitting.create(g, blocks, basis)


def _gram_array(length: LengthFunction | MatK) -> np.ndarray:
    gram = length.gram if isinstance(length, LengthFunction) else length
    if gram.algebra is not Algebra.R:
        raise AlgebraMismatchError("splittings act on real Gram matrices of Z^{2g}")
    return gram.real_part()


def psi_sigma(
    splitting: SymplecticSplitting, blocks: Sequence[LengthFunction | MatK]
) -> LengthFunction:
    """Assemble l(w)^2 = sum_j l_j(E_j w)^2, i.e. G = sum_j E_j^T G_j E_j.

    Raises:
        BlockMismatchError: If the block Grams do not match the block sizes
    """
    if len(blocks) != len(splitting.blocks):
        raise BlockMismatchError(
            f"splitting has {len(splitting.blocks)} blocks, got {len(blocks)} length functions"
        )
    grams = [_gram_array(b) for b in blocks]
    as_exact = all(g.dtype == object for g in grams)
    n = 2 * splitting.g
    total = exact.zeros(n, n) if as_exact else np.zeros((n, n))
    for j, gram in enumerate(grams):
        size = len(splitting.blocks[j])
        if gram.shape != (size, size):
            raise BlockMismatchError(f"block {j} has size {size}, its Gram is {gram.shape}")
        projection = splitting.projection(j)
        if not as_exact:
            projection = exact.to_float(projection)
            gram = exact.to_float(gram)
        total = total + projection.T @ gram @ projection
    return LengthFunction(MatK.from_real(Algebra.R, total), named_order("Z"))


def splitting_gram(length: LengthFunction | MatK, splitting: SymplecticSplitting) -> np.ndarray:
    """P^T G P, the Gram matrix in the splitting basis."""
    gram = _gram_array(length)
    basis = splitting.basis if gram.dtype == object else exact.to_float(splitting.basis)
    return basis.T @ gram @ basis


def _quadratic_cross_check(gram: np.ndarray, splitting: SymplecticSplitting, tol: float) -> bool:
    """l(w_a + w_b)^2 = l(w_a)^2 + l(w_b)^2 for basis vectors w_a, w_b in different blocks."""
    basis = splitting.basis if gram.dtype == object else exact.to_float(splitting.basis)
    squares = [basis[:, i] @ gram @ basis[:, i] for i in range(basis.shape[1])]
    scale = max(max(abs(float(s)) for s in squares), 1e-300)
    for a, first in enumerate(splitting.blocks):
        for second in splitting.blocks[a + 1:]:
            for i in first:
                for j in second:
                    w = basis[:, i] + basis[:, j]
                    defect = w @ gram @ w - squares[i] - squares[j]
                    if abs(float(defect)) > 2 * tol * scale:
                        return False
    return True


class SplitCheck(NamedTuple):
    """Gram criterion verdict next to the quadratic identity on basis sums."""

    splits: bool
    cross_check: bool

    @property
    def agrees(self) -> bool:
        return self.splits == self.cross_check

    def to_document(self) -> dict[str, Any]:
        return {"splits": self.splits, "cross_check": self.cross_check}


def check_splitting(
    length: LengthFunction | MatK,
    splitting: SymplecticSplitting,
    tol: float = SPLIT_TOLERANCE,
) -> SplitCheck:
    """Both splitting tests; the Gram criterion is the verdict.

    Exact Grams are compared exactly; floating ones relative to the largest
    diagonal entry.
    """
    h = splitting_gram(length, splitting)
    if h.dtype == object:
        verdict = all(
            h[i, j] == 0
            for a, first in enumerate(splitting.blocks)
            for second in splitting.blocks[a + 1:]
            for i in first
            for j in second
        )
    else:
        scale = max(float(np.max(np.abs(np.diag(h)))), 1e-300)
        verdict = all(
            abs(h[i, j]) <= tol * scale
            for a, first in enumerate(splitting.blocks)
            for second in splitting.blocks[a + 1:]
            for i in first
            for j in second
        )
    check = SplitCheck(verdict, _quadratic_cross_check(_gram_array(length), splitting, tol))
    if not check.agrees:
        logger.warning("quadratic splitting identity disagrees with the Gram criterion")
    return check


def splits_along(
    length: LengthFunction | MatK,
    splitting: SymplecticSplitting,
    tol: float = SPLIT_TOLERANCE,
) -> bool:
    """Whether the Gram is block diagonal in the splitting basis."""
    return check_splitting(length, splitting, tol).splits


def refines(fine: SymplecticSplitting, coarse: SymplecticSplitting) -> bool:
    """Every block sublattice of ``fine`` lies in a block sublattice of ``coarse``."""
    if fine.g != coarse.g:
        return False
    for block in fine.blocks:
        vectors = fine.basis[:, list(block)]
        if not any(
            exact.column_space_contains(coarse.basis[:, list(target)], vectors)
            for target in coarse.blocks
        ):
            return False
    return True


@dataclass(frozen=True, eq=False)
class Detection:
    """Accepted candidates (input order) and the refinement-maximal ones among them.

    ``disagreements`` lists candidates where the quadratic identity contradicts
    the Gram criterion.
    """

    accepted: tuple[int, ...]
    finest: tuple[int, ...]
    disagreements: tuple[int, ...] = ()

    def to_document(self) -> dict[str, Any]:
        return {
            "accepted": list(self.accepted),
            "finest": list(self.finest),
            "disagreements": list(self.disagreements),
        }


def detect_splitting(
    length: LengthFunction | MatK,
    candidates: Sequence[SymplecticSplitting],
    tol: float = SPLIT_TOLERANCE,
) -> Detection:
    """Filter candidates by :func:`splits_along` and report the finest accepted ones.

    Raises:
        ValueError: If no candidates are given
    """
    if not candidates:
        raise ValueError("detect_splitting needs at least one candidate")
    checks = [check_splitting(length, c, tol) for c in candidates]
    accepted = [k for k, check in enumerate(checks) if check.splits]
    disagreements = tuple(k for k, check in enumerate(checks) if not check.agrees)
    finest = []
    for k in accepted:
        strictly_finer = any(
            refines(candidates[other], candidates[k])
            and not refines(candidates[k], candidates[other])
            for other in accepted
            if other != k
        )
        if not strictly_finer:
            finest.append(k)
    return Detection(tuple(accepted), tuple(finest), disagreements)


def splitting_involution(splitting: SymplecticSplitting, j: int) -> np.ndarray:
    """P D P^{-1} with D = -1 on block j and +1 elsewhere; integral and symplectic."""
    n = 2 * splitting.g
    signs = exact.identity(n)
    for i in splitting.blocks[j]:
        signs[i, i] = -signs[i, i]
    return splitting.basis @ signs @ splitting.inverse_basis
