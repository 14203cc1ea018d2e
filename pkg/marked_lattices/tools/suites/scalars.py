"""Properties of the scalar algebras."""

import numpy as np

from marked_lattices.algebra import scalars
from marked_lattices.algebra.sampling import random_octonion, random_scalar
from marked_lattices.algebra.scalars import Scalar
from marked_lattices.constants import Algebra

from ._base import Counterexample, Property, relative_gap

_VECTOR_SIZE = 2


def norm_multiplicativity(rng: np.random.Generator, tol: float) -> Counterexample:
    for algebra in Algebra:
        x = random_scalar(rng, algebra)
        y = random_scalar(rng, algebra)
        expected = scalars.norm(x) * scalars.norm(y)
        observed = scalars.norm(scalars.mul(x, y))
        if abs(observed - expected) > 1e-12 * expected:
            return {"algebra": algebra, "x": x, "y": y, "gap": relative_gap(observed, expected)}
    return None


def octonion_alternativity(rng: np.random.Generator, tol: float) -> Counterexample:
    x = random_octonion(rng, as_exact=True)
    y = random_octonion(rng, as_exact=True)
    xx = scalars.mul(x, x)
    left = scalars.mul(x, scalars.mul(x, y)) == scalars.mul(xx, y)
    right = scalars.mul(scalars.mul(y, x), x) == scalars.mul(y, xx)
    if left and right:
        return None
    return {"x": x, "y": y, "left_alternative": left, "right_alternative": right}


def table_antisymmetry(rng: np.random.Generator, tol: float) -> Counterexample:
    minus_one = -Scalar.one(Algebra.O)
    for a in range(1, 8):
        ea = Scalar.unit(Algebra.O, a)
        if scalars.mul(ea, ea) != minus_one:
            return {"unit": a, "square": scalars.mul(ea, ea)}
        for b in range(a + 1, 8):
            eb = Scalar.unit(Algebra.O, b)
            if scalars.mul(ea, eb) != -scalars.mul(eb, ea):
                return {"units": [a, b], "product": scalars.mul(ea, eb)}
    return None


def real_part_cyclicity(rng: np.random.Generator, tol: float) -> Counterexample:
    u, v, q = (random_octonion(rng, as_exact=True) for _ in range(3))
    ubar = scalars.conj(u)
    left = scalars.re(scalars.mul(ubar, scalars.mul(v, q)))
    right = scalars.re(scalars.mul(scalars.mul(ubar, v), q))
    if left == right:
        return None
    return {"u": u, "v": v, "q": q, "left": left, "right": right}


def polarization_recovery(rng: np.random.Generator, tol: float) -> Counterexample:
    for algebra in Algebra:
        for as_exact in (True, False):
            scheme = scalars.solve_polarization(
                algebra, scalars.standard_probes(algebra, as_exact)
            )
            u = [random_scalar(rng, algebra, as_exact) for _ in range(_VECTOR_SIZE)]
            v = [random_scalar(rng, algebra, as_exact) for _ in range(_VECTOR_SIZE)]
            expected = scalars.hermitian_product(u, v)
            observed = scheme.inner_product(u, v)
            if as_exact:
                ok = observed == expected
            else:
                scale = max(
                    float(np.sqrt(float(scalars.vector_norm_squared(u))))
                    * float(np.sqrt(float(scalars.vector_norm_squared(v)))),
                    1e-300,
                )
                ok = scalars.norm(observed - expected) <= 1e-10 * scale
            if not ok:
                return {
                    "algebra": algebra,
                    "exact": as_exact,
                    "u": u,
                    "v": v,
                    "expected": expected,
                    "observed": observed,
                }
    return None


PROPERTIES = (
    Property("norm multiplicativity", norm_multiplicativity),
    Property("octonion alternativity", octonion_alternativity),
    Property("table antisymmetry", table_antisymmetry, sampled=False),
    Property("real-part cyclicity", real_part_cyclicity),
    Property("polarization recovery", polarization_recovery),
)
