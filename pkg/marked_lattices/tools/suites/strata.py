"""Properties of symplectic splittings and the stratum assembly psi_sigma."""

import numpy as np

from marked_lattices.algebra.sampling import random_block_grams, random_psd, random_splitting
from marked_lattices.algebra.strata import (
    SymplecticSplitting,
    psi_sigma,
    refines,
    splits_along,
    splitting_involution,
)
from marked_lattices.algebra.symplectic import is_symplectic
from marked_lattices.constants import Algebra
from marked_lattices.core import exact

from ._base import Counterexample, Property

_CANDIDATES = 20


def _genus(rng: np.random.Generator) -> int:
    return int(rng.integers(2, 4))


def _comparable(first: SymplecticSplitting, second: SymplecticSplitting) -> bool:
    return refines(first, second) or refines(second, first)


def round_trip(rng: np.random.Generator, tol: float) -> Counterexample:
    splitting = random_splitting(rng, _genus(rng))
    length = psi_sigma(splitting, random_block_grams(rng, splitting, as_exact=True))
    if splits_along(length, splitting, tol):
        return None
    return {"splitting": splitting, "gram": length.gram}


def disjointness(rng: np.random.Generator, tol: float) -> Counterexample:
    """An assembled length function splits along no candidate incomparable with its own."""
    g = _genus(rng)
    splitting = random_splitting(rng, g)
    length = psi_sigma(splitting, random_block_grams(rng, splitting))
    for _ in range(_CANDIDATES):
        candidate = random_splitting(rng, g)
        if _comparable(splitting, candidate):
            continue
        if splits_along(length, candidate, tol):
            return {"splitting": splitting, "candidate": candidate, "gram": length.gram}
    return None


def dense_grams_split_nowhere(rng: np.random.Generator, tol: float) -> Counterexample:
    g = _genus(rng)
    gram = random_psd(rng, Algebra.R, 2 * g)
    for _ in range(_CANDIDATES):
        candidate = random_splitting(rng, g)
        if len(candidate.blocks) < 2:
            continue
        if splits_along(gram, candidate, tol):
            return {"gram": gram, "candidate": candidate}
    return None


def monotonicity(rng: np.random.Generator, tol: float) -> Counterexample:
    """Splitting along a fine splitting implies splitting along any coarsening of it."""
    g = _genus(rng)
    fine = random_splitting(rng, g, [1] * g)
    cut = int(rng.integers(1, g))
    merged = [
        [i for block in fine.blocks[:cut] for i in block],
        [i for block in fine.blocks[cut:] for i in block],
    ]
    coarse = SymplecticSplitting.create(g, merged, fine.basis)
    length = psi_sigma(fine, random_block_grams(rng, fine))
    if not splits_along(length, fine, tol):
        return {"fine": fine, "gram": length.gram, "reason": "assembled length does not split"}
    if refines(fine, coarse) and splits_along(length, coarse, tol):
        return None
    return {"fine": fine, "coarse": coarse, "gram": length.gram}


def involution_invariance(rng: np.random.Generator, tol: float) -> Counterexample:
    splitting = random_splitting(rng, _genus(rng))
    gram = psi_sigma(splitting, random_block_grams(rng, splitting, as_exact=True)).gram.real_part()
    j = int(rng.integers(0, len(splitting.blocks)))
    involution = splitting_involution(splitting, j)
    moved = involution.T @ gram @ involution
    if np.all(moved == gram) and is_symplectic(involution):
        return None
    return {"splitting": splitting, "block": j, "involution": exact.matrix_to_pairs(involution)}


PROPERTIES = (
    Property("round trip", round_trip),
    Property("disjointness", disjointness),
    Property("dense grams split nowhere", dense_grams_split_nowhere),
    Property("monotonicity", monotonicity),
    Property("involution invariance", involution_invariance),
)
