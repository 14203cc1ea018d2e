"""Properties linking Satake points, length classes and boundary limits."""

import numpy as np

from marked_lattices.algebra.bridge import (
    DegenerationFamily,
    SatakePoint,
    boundary_limit,
    classes_equal,
    interior_lattice,
    satake_action,
    satake_point,
    xi,
)
from marked_lattices.algebra.lattices import class_distance, phi, thurston_action
from marked_lattices.algebra.sampling import random_invertible, random_psd
from marked_lattices.constants import Algebra

from ._base import Counterexample, Property

_ASSOCIATIVE = (Algebra.R, Algebra.C, Algebra.H)
_IDENTITY_TOLERANCE = 1e-10
_LIMIT_TOLERANCE = 1e-6


def satake_thurston_identity(rng: np.random.Generator, tol: float) -> Counterexample:
    for algebra in _ASSOCIATIVE:
        m = int(rng.integers(2, 5))
        g = random_invertible(rng, algebra, m)
        left = xi(satake_point(g))
        right = phi(interior_lattice(g))
        if class_distance(left, right) > _IDENTITY_TOLERANCE:
            return {"algebra": algebra, "g": g, "distance": class_distance(left, right)}
    return None


def equivariance(rng: np.random.Generator, tol: float) -> Counterexample:
    for algebra in _ASSOCIATIVE:
        m = int(rng.integers(2, 5))
        g = random_invertible(rng, algebra, m)
        a = SatakePoint.of(random_psd(rng, algebra, m, int(rng.integers(1, m + 1))))
        left = xi(satake_action(g, a))
        right = thurston_action(g, xi(a))
        if not classes_equal(left, right, tol):
            return {"algebra": algebra, "g": g, "a": a, "distance": class_distance(left, right)}
    return None


def boundary_closure(rng: np.random.Generator, tol: float) -> Counterexample:
    algebra = _ASSOCIATIVE[int(rng.integers(0, len(_ASSOCIATIVE)))]
    m = int(rng.integers(2, 5))
    rank = int(rng.integers(1, m))
    target = random_psd(rng, algebra, m, rank)
    limit = boundary_limit(DegenerationFamily.regularized(target))
    expected = SatakePoint.of(target)
    distance = (limit.point.gram - expected.gram).frobenius_norm()
    if limit.rank != rank or limit.interior or distance > _LIMIT_TOLERANCE:
        return {
            "algebra": algebra,
            "target": target,
            "rank": rank,
            "limit": limit,
            "distance": distance,
        }
    return None


def homothety_soundness(rng: np.random.Generator, tol: float) -> Counterexample:
    algebra = _ASSOCIATIVE[int(rng.integers(0, len(_ASSOCIATIVE)))]
    m = int(rng.integers(2, 4))
    target = random_psd(rng, algebra, m, int(rng.integers(1, m)))
    family = DegenerationFamily.regularized(target)
    factors = [float(x) for x in np.exp(rng.uniform(-3.0, 3.0, len(family.samples)))]
    plain = boundary_limit(family)
    rescaled = boundary_limit(family.rescaled(factors))
    distance = (plain.point.gram - rescaled.point.gram).frobenius_norm()
    if plain.rank != rescaled.rank or distance > _LIMIT_TOLERANCE:
        return {"algebra": algebra, "target": target, "factors": factors, "distance": distance}
    return None


PROPERTIES = (
    Property("satake thurston identity", satake_thurston_identity),
    Property("equivariance", equivariance),
    Property("boundary closure", boundary_closure),
    Property("homothety soundness", homothety_soundness),
)
