"""Properties of length functions and the embedding phi."""

import math

import numpy as np

from marked_lattices.algebra import matk
from marked_lattices.algebra.bridge import DegenerationFamily, classes_equal
from marked_lattices.algebra.lattices import (
    LengthFunction,
    MarkedLattice,
    ProjectiveLengthClass,
    class_distance,
    default_order,
    interior_margin,
    lattice_systole,
    normalize_gram,
    phi,
)
from marked_lattices.algebra.sampling import random_invertible, random_psd, random_unitary
from marked_lattices.constants import Algebra

from ._base import Counterexample, Property

_ASSOCIATIVE = (Algebra.R, Algebra.C, Algebra.H)
_CLOSURE_SCHEDULE = (10, 100, 1000)


def _pick_algebra(rng: np.random.Generator) -> Algebra:
    return _ASSOCIATIVE[int(rng.integers(0, len(_ASSOCIATIVE)))]


def embedding_rigidity(rng: np.random.Generator, tol: float) -> Counterexample:
    algebra = _pick_algebra(rng)
    m = int(rng.integers(2, 4))
    order = default_order(algebra)
    f = MarkedLattice(order, random_invertible(rng, algebra, m)).normalized()
    moved = random_unitary(rng, algebra, m) @ f.f
    g = MarkedLattice(order, moved.scale(float(rng.uniform(0.5, 2.0)))).normalized()
    if not classes_equal(phi(f), phi(g), tol):
        return {"algebra": algebra, "f": f.f, "g": g.f, "reason": "isometric markings separated"}
    if matk.isometry_witness(f.f, g.f) is None:
        return {"algebra": algebra, "f": f.f, "g": g.f, "reason": "no witness after normalization"}

    h = MarkedLattice(order, random_invertible(rng, algebra, m)).normalized()
    equal = classes_equal(phi(f), phi(h), tol)
    witnessed = matk.isometry_witness(f.f, h.f) is not None
    if equal or witnessed:
        return {"algebra": algebra, "f": f.f, "g": h.f, "equal": equal, "witnessed": witnessed}
    return None


def closure_stability(rng: np.random.Generator, tol: float) -> Counterexample:
    algebra = _pick_algebra(rng)
    m = int(rng.integers(2, 4))
    target = random_psd(rng, algebra, m, int(rng.integers(1, m + 1)))
    limit = normalize_gram(target)
    family = DegenerationFamily.regularized(target, _CLOSURE_SCHEDULE)
    distances = [(g - limit).frobenius_norm() for g in family.normalized_grams()]
    if all(later < earlier for earlier, later in zip(distances, distances[1:], strict=False)):
        return None
    return {"algebra": algebra, "target": target, "distances": distances}


def interior_openness(rng: np.random.Generator, tol: float) -> Counterexample:
    algebra = _pick_algebra(rng)
    m = int(rng.integers(2, 4))
    x = ProjectiveLengthClass.from_gram(random_psd(rng, algebra, m))
    margin = interior_margin(x)
    for _ in range(5):
        y = ProjectiveLengthClass.from_gram(random_psd(rng, algebra, m, m - 1))
        distance = class_distance(x, y) * math.sqrt(algebra.dim)
        if distance < margin * (1 - 1e-9) - 1e-12:
            return {"algebra": algebra, "x": x, "y": y, "distance": distance, "margin": margin}
    return None


def scale_covariance(rng: np.random.Generator, tol: float) -> Counterexample:
    m = int(rng.integers(2, 4))
    order = default_order(Algebra.R)
    f = random_invertible(rng, Algebra.R, m)
    factor = 2.0 ** int(rng.integers(-3, 4))
    scaled = f.scale(factor)
    if not classes_equal(
        phi(MarkedLattice(order, f).normalized()), phi(MarkedLattice(order, scaled).normalized()), tol
    ):
        return {"f": f, "factor": factor, "reason": "class moved under rescaling"}
    before = lattice_systole(LengthFunction(matk.adjoint(f) @ f, order))
    after = lattice_systole(LengthFunction(matk.adjoint(scaled) @ scaled, order))
    if before.witness != after.witness:
        return {"f": f, "factor": factor, "before": before, "after": after}
    return None


PROPERTIES = (
    Property("embedding rigidity", embedding_rigidity),
    Property("closure stability", closure_stability),
    Property("interior openness", interior_openness),
    Property("scale covariance", scale_covariance),
)
