"""Properties of octonionic Hermitian matrices."""

from fractions import Fraction

import numpy as np

from marked_lattices.algebra import matk, octo, scalars
from marked_lattices.algebra.bridge import classes_equal
from marked_lattices.algebra.lattices import (
    LengthFunction,
    class_distance,
    gram_from_probes,
    named_order,
    probe_table,
)
from marked_lattices.algebra.octo import HermitianOct
from marked_lattices.algebra.sampling import random_hermitian_oct, random_octonion
from marked_lattices.algebra.scalars import Scalar
from marked_lattices.constants import Algebra

from ._base import Counterexample, Property

_COINCIDENCE_TOLERANCE = 1e-9
_SQRT_IMAGE_TOLERANCE = 1e-8


# Oriented lines (i, j, k) with e_i e_j = e_k; the remaining products follow by
# cyclic rotation of each line and anticommutation.
FANO_LINES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


def fano_products() -> dict[tuple[int, int], tuple[int, int]]:
    """(a, b) -> (sign, c) with e_a e_b = sign e_c, built from the oriented lines."""
    products = {(a, a): (-1, 0) for a in range(1, 8)}
    for i, j, k in FANO_LINES:
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            products[(x, y)] = (1, z)
            products[(y, x)] = (-1, z)
    return products


def octonion_table(rng: np.random.Generator, tol: float) -> Counterexample:
    """All 49 products e_a e_b, a, b in 1..7, against the oriented lines.

    The stored table is checked against the same products so that a typo in
    either place is reported.
    """
    expected_products = fano_products()
    stored = scalars.parse_octonion_table()
    for (a, b), (sign, c) in sorted(expected_products.items()):
        expected = Scalar.unit(Algebra.O, c).scale(Fraction(sign))
        product = scalars.mul(Scalar.unit(Algebra.O, a), Scalar.unit(Algebra.O, b))
        if product != expected or stored[(a, b)] != (sign, c):
            return {
                "units": [a, b],
                "expected": expected,
                "observed": product,
                "stored": list(stored[(a, b)]),
            }
    return None


def octonionic_polarization(rng: np.random.Generator, tol: float) -> Counterexample:
    matrix = random_hermitian_oct(rng, as_exact=True)
    order = named_order("Zo")
    gram = matrix.to_matk()
    table = probe_table(LengthFunction.from_gram(gram, order), squared=True)
    rebuilt = gram_from_probes(table, order, matrix.m, squared=True)
    if matk.allclose(rebuilt, gram):
        return None
    return {"matrix": matrix, "rebuilt": rebuilt}


def _cycled(matrix: HermitianOct) -> HermitianOct:
    alpha, beta, gamma = matrix.diag
    x, y, z = matrix.off
    return HermitianOct((beta, gamma, alpha), (y, z, x))


def _re_triple(x: Scalar, y: Scalar, z: Scalar) -> Fraction | float:
    return scalars.re(scalars.mul(scalars.mul(x, y), z))


def det_h3_symmetry(rng: np.random.Generator, tol: float) -> Counterexample:
    matrix = random_hermitian_oct(rng, as_exact=True)
    x, y, z = matrix.off
    triples = {_re_triple(x, y, z), _re_triple(y, z, x), _re_triple(z, x, y)}
    if octo.det_h3(matrix) == octo.det_h3(_cycled(matrix)) and len(triples) == 1:
        return None
    return {"matrix": matrix, "det": octo.det_h3(matrix), "cycled": octo.det_h3(_cycled(matrix))}


def det_h3_diagonal(rng: np.random.Generator, tol: float) -> Counterexample:
    diag = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(3)]
    matrix = HermitianOct.build(diag, [Scalar.zero(Algebra.O)] * 3)
    if octo.det_h3(matrix) == diag[0] * diag[1] * diag[2]:
        return None
    return {"diag": diag, "det": octo.det_h3(matrix)}


def positivity_implies_determinant(rng: np.random.Generator, tol: float) -> Counterexample:
    """Entries in span(1, e1, e2, e4), where det_h3 is the Moore determinant."""
    matrix = random_hermitian_oct(rng, quaternionic=True, radius=float(rng.uniform(0.2, 1.5)))
    if not octo.is_positive_definite(matrix):
        return None
    alpha, beta, _ = matrix.diag
    z = matrix.off[2]
    minor = alpha * beta - scalars.norm_squared(z)
    if octo.det_h3(matrix) > 0 and alpha > 0 and minor > 0:
        return None
    return {"matrix": matrix, "det": octo.det_h3(matrix), "minor": minor}


def thurston_satake_coincidence(rng: np.random.Generator, tol: float) -> Counterexample:
    matrix = random_hermitian_oct(rng)
    unit = matrix.scale(float(octo.det_h3(matrix)) ** (-1.0 / 3.0))
    thurston = octo.oct_phi(unit)
    satake = octo.oct_satake(unit)
    if classes_equal(thurston, satake, _COINCIDENCE_TOLERANCE):
        return None
    return {"matrix": unit, "distance": class_distance(thurston, satake)}


def det_h2_signature(rng: np.random.Generator, tol: float) -> Counterexample:
    signature = octo.signature_h2()
    if signature.label == "(9,1)" and signature.zero == 0:
        return None
    return {"signature": signature}


def quaternionic_sqrt_image(rng: np.random.Generator, tol: float) -> Counterexample:
    matrix = random_hermitian_oct(rng, quaternionic=True)
    residual = octo.sqrt_image_residual(matrix)
    if residual <= _SQRT_IMAGE_TOLERANCE:
        return None
    return {"matrix": matrix, "residual": residual}


def octonion_norm_multiplicativity(rng: np.random.Generator, tol: float) -> Counterexample:
    x = random_octonion(rng)
    y = random_octonion(rng)
    expected = scalars.norm(x) * scalars.norm(y)
    observed = scalars.norm(scalars.mul(x, y))
    if abs(observed - expected) <= 1e-12 * max(expected, 1e-300):
        return None
    return {"x": x, "y": y, "expected": expected, "observed": observed}


PROPERTIES = (
    Property("octonion table", octonion_table, sampled=False),
    Property("octonion norm multiplicativity", octonion_norm_multiplicativity),
    Property("octonionic polarization", octonionic_polarization),
    Property("det_h3 cyclic symmetry", det_h3_symmetry),
    Property("det_h3 diagonal", det_h3_diagonal),
    Property("positivity implies det_h3 > 0", positivity_implies_determinant),
    Property("thurston satake coincidence", thurston_satake_coincidence),
    Property("det_h2 signature", det_h2_signature, sampled=False),
    Property("quaternionic sqrt image", quaternionic_sqrt_image),
)
