"""Properties of matrices over the associative algebras."""

import numpy as np

from marked_lattices.algebra import matk
from marked_lattices.algebra.sampling import random_invertible, random_matk, random_unitary
from marked_lattices.constants import Algebra

from ._base import Counterexample, Property

_ASSOCIATIVE = (Algebra.R, Algebra.C, Algebra.H)


def _size(rng: np.random.Generator) -> int:
    return int(rng.integers(2, 4))


def _complex_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product of exact complex matrices stored as stacked (real, imaginary) parts."""
    real = x[0] @ y[0] - x[1] @ y[1]
    imag = x[0] @ y[1] + x[1] @ y[0]
    return np.stack([real, imag])


def eta_multiplicativity(rng: np.random.Generator, tol: float) -> Counterexample:
    m = _size(rng)
    a = random_matk(rng, Algebra.H, m, as_exact=True)
    b = random_matk(rng, Algebra.H, m, as_exact=True)
    expected = _complex_product(matk.eta_exact(a), matk.eta_exact(b))
    observed = matk.eta_exact(a @ b)
    if np.all(observed == expected):
        return None
    return {"a": a, "b": b}


def eta_adjoint_equivariance(rng: np.random.Generator, tol: float) -> Counterexample:
    a = random_matk(rng, Algebra.H, _size(rng), as_exact=True)
    direct = matk.eta_exact(a)
    of_adjoint = matk.eta_exact(matk.adjoint(a))
    if np.all(of_adjoint[0] == direct[0].T) and np.all(of_adjoint[1] == -direct[1].T):
        return None
    return {"a": a}


def dieudonne_multiplicativity(rng: np.random.Generator, tol: float) -> Counterexample:
    for algebra in _ASSOCIATIVE:
        m = _size(rng)
        a = random_matk(rng, algebra, m)
        b = random_matk(rng, algebra, m)
        expected = float(matk.dieudonne_det(a)) * float(matk.dieudonne_det(b))
        observed = float(matk.dieudonne_det(a @ b))
        if abs(observed - expected) > 1e-9 * expected:
            return {"algebra": algebra, "a": a, "b": b, "expected": expected, "observed": observed}
    return None


def gram_rigidity(rng: np.random.Generator, tol: float) -> Counterexample:
    for algebra in _ASSOCIATIVE:
        m = _size(rng)
        a = random_invertible(rng, algebra, m)
        k = random_unitary(rng, algebra, m)
        b = k @ a
        witness = matk.isometry_witness(a, b)
        if witness is None:
            return {"algebra": algebra, "a": a, "b": b, "reason": "no witness for an isometric pair"}
        residual = (witness @ a - b).frobenius_norm() / max(b.frobenius_norm(), 1e-300)
        if residual > 1e-9 or not matk.is_unitary(witness, 1e-9):
            return {"algebra": algebra, "a": a, "b": b, "residual": residual}
        other = random_invertible(rng, algebra, m)
        if matk.isometry_witness(a, other) is not None:
            return {"algebra": algebra, "a": a, "b": other, "reason": "witness for distinct Grams"}
    return None


def polar_sqrt_consistency(rng: np.random.Generator, tol: float) -> Counterexample:
    for algebra in _ASSOCIATIVE:
        a = random_matk(rng, algebra, _size(rng))
        decomposition = matk.polar(a)
        root = matk.psd_sqrt(a @ matk.adjoint(a))
        gap = (decomposition.P - root).frobenius_norm() / max(root.frobenius_norm(), 1e-300)
        product = (decomposition.P @ decomposition.U - a).frobenius_norm()
        if gap > 1e-9 or product > 1e-9 * max(a.frobenius_norm(), 1.0):
            return {"algebra": algebra, "a": a, "gap": gap, "product_residual": product}
    return None


PROPERTIES = (
    Property("eta multiplicativity", eta_multiplicativity),
    Property("eta adjoint equivariance", eta_adjoint_equivariance),
    Property("dieudonne multiplicativity", dieudonne_multiplicativity),
    Property("gram rigidity", gram_rigidity),
    Property("polar and psd_sqrt agree", polar_sqrt_consistency),
)
