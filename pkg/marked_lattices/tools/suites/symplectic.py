"""Properties of autodual lattices and their reduction."""

import numpy as np

from marked_lattices.algebra.bridge import classes_equal
from marked_lattices.algebra.lattices import MarkedLattice, named_order, phi, thurston_action
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.sampling import random_autodual, random_unimodular
from marked_lattices.algebra.symplectic import (
    SymplecticLattice,
    is_autodual,
    is_symplectic,
    is_unimodular,
    symplectic_reduce,
)
from marked_lattices.constants import Algebra
from marked_lattices.core import exact

from ._base import Counterexample, Property


def _genus(rng: np.random.Generator) -> int:
    return int(rng.integers(1, 4))


def reduction_soundness(rng: np.random.Generator, tol: float) -> Counterexample:
    g = _genus(rng)
    lattice = SymplecticLattice.from_matrix(g, random_autodual(rng, g))
    reduction = symplectic_reduce(lattice)
    if is_symplectic(reduction.C) and is_unimodular(reduction.C @ lattice.A):
        return None
    return {"lattice": lattice, "reduction": reduction}


def orbit_consistency(rng: np.random.Generator, tol: float) -> Counterexample:
    """phi(A) is the class of the Sp-image C^{-1} Z^{2g}, re-marked by U = C A."""
    g = _genus(rng)
    lattice = SymplecticLattice.from_matrix(g, random_autodual(rng, g))
    c = symplectic_reduce(lattice).C
    image = exact.inverse(c)
    remarking = c @ lattice.A
    order = named_order("Z")
    marked = phi(MarkedLattice(order, MatK.from_real(Algebra.R, lattice.A)))
    standard_image = phi(MarkedLattice(order, MatK.from_real(Algebra.R, image)))
    moved = thurston_action(MatK.from_real(Algebra.R, remarking.T), standard_image)
    if is_symplectic(image) and classes_equal(marked, moved):
        return None
    return {"lattice": lattice, "C": exact.matrix_to_pairs(c)}


def right_unimodular_invariance(rng: np.random.Generator, tol: float) -> Counterexample:
    g = _genus(rng)
    autodual = random_autodual(rng, g)
    scaled = autodual.copy()
    scaled[:, 0] = scaled[:, 0] * 2
    for basis in (autodual, scaled):
        u = random_unimodular(rng, 2 * g)
        before = is_autodual(SymplecticLattice.from_matrix(g, basis))
        after = is_autodual(SymplecticLattice.from_matrix(g, basis @ u))
        if before != after:
            return {
                "A": exact.matrix_to_pairs(basis),
                "U": exact.matrix_to_pairs(u),
                "before": before,
                "after": after,
            }
    return None


PROPERTIES = (
    Property("reduction soundness", reduction_soundness),
    Property("orbit consistency", orbit_consistency),
    Property("right unimodular invariance", right_unimodular_invariance),
)
