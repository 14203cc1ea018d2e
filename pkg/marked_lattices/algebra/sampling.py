"""Random inputs for the property suites and tests.

Every generator takes an explicit ``numpy.random.Generator`` so that trials
are reproducible from their derived seeds.
"""

from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from marked_lattices.algebra import matk
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.octo import HermitianOct
from marked_lattices.algebra.scalars import Scalar
from marked_lattices.algebra.strata import SymplecticSplitting, standard_splitting
from marked_lattices.constants import OCTONION_QUATERNION_UNITS, Algebra
from marked_lattices.core import exact


def random_fraction(rng: np.random.Generator, bound: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))


def random_scalar(
    rng: np.random.Generator, algebra: Algebra, as_exact: bool = False, scale: float = 1.0
) -> Scalar:
    d = Algebra(algebra).dim
    if as_exact:
        return Scalar(Algebra(algebra), tuple(random_fraction(rng) for _ in range(d)))
    return Scalar(Algebra(algebra), tuple(float(x) for x in scale * rng.standard_normal(d)))


def random_matk(
    rng: np.random.Generator,
    algebra: Algebra,
    rows: int,
    cols: int | None = None,
    as_exact: bool = False,
) -> MatK:
    cols = rows if cols is None else cols
    return MatK.from_scalars(
        [[random_scalar(rng, algebra, as_exact) for _ in range(cols)] for _ in range(rows)]
    )


def random_invertible(
    rng: np.random.Generator, algebra: Algebra, m: int, as_exact: bool = False
) -> MatK:
    while True:
        candidate = random_matk(rng, algebra, m, as_exact=as_exact)
        sigma = matk.singular_values(candidate)
        if sigma[-1] > 1e-3 * sigma[0]:
            return candidate


def random_unitary(rng: np.random.Generator, algebra: Algebra, m: int) -> MatK:
    return matk.polar(random_invertible(rng, algebra, m)).U


def random_special(rng: np.random.Generator, algebra: Algebra, m: int) -> MatK:
    """Random element of SL_m(K) (Dieudonne determinant 1)."""
    g = random_invertible(rng, algebra, m)
    return g.scale(float(matk.dieudonne_det(g)) ** (-1.0 / m))


def random_psd(rng: np.random.Generator, algebra: Algebra, m: int, rank: int | None = None) -> MatK:
    """f f* for a random m x rank matrix f."""
    factor = random_matk(rng, algebra, m, m if rank is None else rank)
    return factor @ matk.adjoint(factor)


def random_octonion(
    rng: np.random.Generator, as_exact: bool = False, quaternionic: bool = False, radius: float = 1.0
) -> Scalar:
    """Random octonion of norm at most ``radius`` (float) or with small rational coordinates."""
    units = (0, *OCTONION_QUATERNION_UNITS) if quaternionic else tuple(range(8))
    if as_exact:
        coords = [Fraction(0)] * 8
        for c in units:
            coords[c] = Fraction(int(rng.integers(-3, 4)), 20)
        return Scalar(Algebra.O, tuple(coords))
    direction = np.zeros(8)
    direction[list(units)] = rng.standard_normal(len(units))
    direction *= radius * float(rng.uniform()) / max(float(np.linalg.norm(direction)), 1e-300)
    return Scalar(Algebra.O, tuple(float(x) for x in direction))


def random_hermitian_oct(
    rng: np.random.Generator,
    m: int = 3,
    as_exact: bool = False,
    quaternionic: bool = False,
    radius: float = 0.3,
) -> HermitianOct:
    """Positive definite element near the identity: diagonal in [1, 2], off-diagonals of norm <= radius."""
    n_off = 1 if m == 2 else 3
    if as_exact:
        diag = [1 + Fraction(int(rng.integers(0, 5)), 4) for _ in range(m)]
    else:
        diag = [1.0 + float(rng.uniform()) for _ in range(m)]
    off = [random_octonion(rng, as_exact, quaternionic, radius) for _ in range(n_off)]
    return HermitianOct.build(diag, off)


def _transvection(g: int, symmetric: np.ndarray, upper: bool) -> np.ndarray:
    out = exact.identity(2 * g)
    if upper:
        out[:g, g:] = symmetric
    else:
        out[g:, :g] = symmetric
    return out


def _random_symmetric(rng: np.random.Generator, g: int, integral: bool) -> np.ndarray:
    out = exact.zeros(g, g)
    for i in range(g):
        for j in range(i, g):
            value = (
                Fraction(int(rng.integers(-2, 3)))
                if integral
                else Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 5)))
            )
            out[i, j] = out[j, i] = value
    return out


def random_symplectic(
    rng: np.random.Generator, g: int, integral: bool = True, steps: int = 4
) -> np.ndarray:
    """Product of elementary symplectic transvections [[I, X], [0, I]] and [[I, 0], [Y, I]]."""
    out = exact.identity(2 * g)
    for step in range(steps):
        out = out @ _transvection(g, _random_symmetric(rng, g, integral), upper=step % 2 == 0)
    return out


def random_unimodular(rng: np.random.Generator, n: int, steps: int = 6) -> np.ndarray:
    out = exact.identity(n)
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        out[:, i] = out[:, i] + int(rng.integers(-2, 3)) * out[:, j]
    if rng.integers(0, 2):
        out[:, 0] = -out[:, 0]
    return out


def random_diagonal_scaling(rng: np.random.Generator, g: int) -> np.ndarray:
    """Diag(r, 1/r) with small positive rational r."""
    out = exact.zeros(2 * g, 2 * g)
    for p in range(g):
        r = Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        out[p, p] = r
        out[g + p, g + p] = 1 / r
    return out


def random_autodual(rng: np.random.Generator, g: int) -> np.ndarray:
    """A = S_int D_r S_rat U: a symplectic image of Z^{2g} written in a random lattice basis."""
    return (
        random_symplectic(rng, g, integral=True)
        @ random_diagonal_scaling(rng, g)
        @ random_symplectic(rng, g, integral=False)
        @ random_unimodular(rng, 2 * g)
    )


def random_composition(rng: np.random.Generator, g: int) -> list[int]:
    """Random ordered composition of g into positive parts."""
    parts: list[int] = []
    remaining = g
    while remaining:
        part = int(rng.integers(1, remaining + 1))
        parts.append(part)
        remaining -= part
    return parts


def random_splitting(
    rng: np.random.Generator, g: int, genera: Sequence[int] | None = None
) -> SymplecticSplitting:
    """Standard splitting of a random composition composed with a random Sp_{2g}(Z) basis."""
    parts = list(genera) if genera is not None else random_composition(rng, g)
    return standard_splitting(parts, random_symplectic(rng, g, integral=True, steps=3))


def random_block_grams(
    rng: np.random.Generator, splitting: SymplecticSplitting, as_exact: bool = False
) -> list[MatK]:
    """Full-rank positive definite Gram for every block."""
    grams = []
    for block in splitting.blocks:
        n = len(block)
        if as_exact:
            factor = exact.fraction_array(
                [
                    [
                        6 + int(rng.integers(0, 3)) if i == j else int(rng.integers(-1, 2))
                        for j in range(n)
                    ]
                    for i in range(n)
                ]
            )
            grams.append(MatK.from_real(Algebra.R, factor.T @ factor))
        else:
            factor = rng.standard_normal((n, n)) + n * np.eye(n)
            grams.append(MatK.from_real(Algebra.R, factor.T @ factor))
    return grams
