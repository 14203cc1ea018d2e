"""Self-dual lattices and their reduction to the standard lattice.

Everything here runs on exact rationals (object arrays of Fractions). A
symplectic lattice is A Z^{2g} for a rational basis matrix A, with the standard
form J = [[0, -I], [I, 0]].
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from marked_lattices.algebra import matk
from marked_lattices.algebra.lattices import Order, default_order
from marked_lattices.algebra.matk import MatK
from marked_lattices.constants import DEFAULT_TOLERANCE, Algebra, ReductionPath
from marked_lattices.core import exact
from marked_lattices.core.errors import (
    NotAutodualError,
    ReductionFailureError,
    SingularLatticeError,
)

logger = logging.getLogger(__name__)


def standard_form(g: int) -> np.ndarray:
    """Exact J_{2g} = [[0, -I_g], [I_g, 0]]."""
    form = exact.zeros(2 * g, 2 * g)
    for p in range(g):
        form[p, g + p] = Fraction(-1)
        form[g + p, p] = Fraction(1)
    return form


def is_unimodular(matrix: np.ndarray) -> bool:
    """Integral with determinant +-1."""
    return exact.is_integral(matrix) and abs(exact.det(matrix)) == 1


def is_symplectic(matrix: np.ndarray) -> bool:
    g = matrix.shape[0] // 2
    form = standard_form(g)
    return bool(np.all(matrix.T @ form @ matrix == form))


@dataclass(frozen=True, eq=False)
class SymplecticLattice:
    """The lattice A Z^{2g} in R^{2g} with the standard symplectic form.

    Attributes:
        g: Genus
        A: Exact 2g x 2g basis matrix, invertible over Q
    """

    g: int
    A: np.ndarray

    @classmethod
    def from_matrix(cls, g: int, matrix: Any) -> "SymplecticLattice":
        """Validate a rational basis matrix.

        Raises:
            ValueError: If the shape does not match the genus
            SingularLatticeError: If the matrix is singular
        """
        basis = exact.fraction_array(matrix)
        if basis.shape != (2 * g, 2 * g):
            raise ValueError(f"genus {g} lattices need a {2 * g}x{2 * g} basis matrix")
        if exact.det(basis) == 0:
            raise SingularLatticeError("lattice basis matrix is singular")
        return cls(g, basis)

    @property
    def J(self) -> np.ndarray:
        return standard_form(self.g)

    def intersection_form(self) -> np.ndarray:
        """A^T J A, the form in the lattice basis."""
        return self.A.T @ self.J @ self.A

    def to_document(self) -> dict[str, Any]:
        return {"g": self.g, "A": exact.matrix_to_pairs(self.A)}


def is_autodual(lattice: SymplecticLattice) -> bool:
    """True iff A^T J A is integral with determinant +-1 (the lattice equals its dual)."""
    return is_unimodular(lattice.intersection_form())


def _symplectic_gram_schmidt(form: np.ndarray, g: int) -> np.ndarray:
    """B over Q with B^T form B = J, pivoting on the largest |entry| (first pair on ties)."""
    vectors = [exact.identity(2 * g)[:, i] for i in range(2 * g)]
    first: list[np.ndarray] = []
    second: list[np.ndarray] = []

    def omega(x: np.ndarray, y: np.ndarray) -> Fraction:
        return x @ form @ y

    for _ in range(g):
        best = (Fraction(0), 0, 0)
        for i in range(len(vectors)):
            for j in range(i + 1, len(vectors)):
                value = omega(vectors[i], vectors[j])
                if abs(value) > abs(best[0]):
                    best = (value, i, j)
        c, i, j = best
        if c == 0:
            raise ReductionFailureError("alternating form is degenerate", exact.matrix_to_pairs(form))
        e = vectors[i]
        f = -vectors[j] / c
        first.append(e)
        second.append(f)
        rest = [w for k, w in enumerate(vectors) if k not in (i, j)]
        vectors = [w + omega(w, f) * e - omega(w, e) * f for w in rest]
    return np.column_stack(first + second)


def _integral_symplectic_basis(form: np.ndarray, g: int) -> np.ndarray:
    """P in GL(Z) with P^T form P = J for an integral unimodular alternating form."""
    rest = [exact.identity(2 * g)[:, i] for i in range(2 * g)]
    first: list[np.ndarray] = []
    second: list[np.ndarray] = []

    def omega(x: np.ndarray, y: np.ndarray) -> Fraction:
        return x @ form @ y

    for _ in range(g):
        e = rest.pop(0)
        values = [omega(e, r) for r in rest]
        while True:
            nonzero = [i for i, v in enumerate(values) if v != 0]
            if not nonzero:
                raise ReductionFailureError(
                    "alternating form is degenerate", exact.matrix_to_pairs(form)
                )
            k = min(nonzero, key=lambda i: (abs(values[i]), i))
            if len(nonzero) == 1:
                break
            for i in nonzero:
                if i != k:
                    q = values[i] // values[k]
                    rest[i] = rest[i] - q * rest[k]
                    values[i] -= q * values[k]
        if abs(values[k]) != 1:
            raise ReductionFailureError("alternating form is not unimodular", exact.matrix_to_pairs(form))
        f = rest.pop(k) * values[k]
        rest = [r + omega(f, r) * e for r in rest]
        first.append(f)
        second.append(e)
    return np.column_stack(first + second)


def _diagonal_correction(b_inverse: np.ndarray, g: int) -> np.ndarray | None:
    """Diag(1/r, r) when B^{-1} Z^{2g} is the diagonal lattice (+) Z r_j e_j (+) Z e_{g+j} / r_j."""
    steps = [exact.rational_gcd(b_inverse[i]) for i in range(2 * g)]
    for p in range(g):
        if steps[g + p] * steps[p] != 1:
            return None
    scaling = exact.zeros(2 * g, 2 * g)
    unscaled = b_inverse.copy()
    for i in range(2 * g):
        scaling[i, i] = 1 / steps[i]
        unscaled[i] = unscaled[i] / steps[i]
    if not is_unimodular(unscaled):
        return None
    return scaling


@dataclass(frozen=True, eq=False)
class Reduction:
    """Result of :func:`symplectic_reduce`.

    Attributes:
        C: Exact symplectic matrix with C A unimodular
        path: Which stage produced C
        transcript: Intermediate matrices and checks, as rational pairs
    """

    C: np.ndarray
    path: ReductionPath
    transcript: dict[str, Any] = field(default_factory=dict)

    def to_document(self) -> dict[str, Any]:
        return {
            "C": exact.matrix_to_pairs(self.C),
            "path": self.path,
            "transcript": self.transcript,
        }


def symplectic_reduce(lattice: SymplecticLattice) -> Reduction:
    """Exact C in Sp_{2g}(Q) with C A in GL_{2g}(Z).

    The form A^T J A is first brought to J over Q by a symplectic Gram-Schmidt
    B; when the residual lattice B^{-1} Z^{2g} is diagonal it is rescaled by
    Diag(1/r, r), otherwise an integral symplectic basis P gives C = (AP)^{-1}.

    Raises:
        NotAutodualError: If the lattice is not autodual
        ReductionFailureError: If the result fails verification
    """
    g = lattice.g
    form = lattice.intersection_form()
    if not is_unimodular(form):
        raise NotAutodualError("lattice is not autodual: A^T J A is not in GL(Z)")

    b = _symplectic_gram_schmidt(form, g)
    b_inverse = exact.inverse(b)
    transcript: dict[str, Any] = {
        "form": exact.matrix_to_pairs(form),
        "gram_schmidt": exact.matrix_to_pairs(b),
    }
    correction = _diagonal_correction(b_inverse, g)
    if correction is not None:
        c = correction @ exact.inverse(lattice.A @ b)
        path = ReductionPath.DIAGONAL
        transcript["scaling"] = [exact.to_fraction(correction[i, i]) for i in range(2 * g)]
    else:
        basis = _integral_symplectic_basis(form, g)
        c = exact.inverse(lattice.A @ basis)
        path = ReductionPath.INTEGRAL_BASIS
        transcript["integral_basis"] = exact.matrix_to_pairs(basis)
    logger.debug("genus %d lattice reduced along the %s path", g, path.value)

    image = c @ lattice.A
    symplectic_ok = is_symplectic(c)
    unimodular_ok = is_unimodular(image)
    transcript["checks"] = {"symplectic": symplectic_ok, "unimodular_image": unimodular_ok}
    if not (symplectic_ok and unimodular_ok):
        raise ReductionFailureError("reduction produced an invalid matrix", exact.matrix_to_pairs(image))
    transcript["image"] = exact.matrix_to_pairs(image)
    return Reduction(c, path, transcript)


# general forms


@dataclass(frozen=True, eq=False)
class FormB:
    """Sesquilinear form b(x, y) = tau(x)* J y with J unitary and (anti-)Hermitian.

    Attributes:
        J: Exact form matrix
        hermitian: True when J* = J, False when J* = -J
        conjugate: Whether the form conjugates its first argument
    """

    J: MatK
    hermitian: bool
    conjugate: bool = True

    @classmethod
    def from_matrix(cls, form: MatK, conjugate: bool = True) -> "FormB":
        """Classify J as Hermitian or anti-Hermitian.

        Raises:
            ValueError: If J is not unitary or neither Hermitian nor anti-Hermitian
        """
        if not matk.is_unitary(form):
            raise ValueError("form matrix must be unitary")
        adj = matk.adjoint(form)
        if matk.allclose(adj, form):
            return cls(form, True, conjugate)
        if matk.allclose(adj, -form):
            return cls(form, False, conjugate)
        raise ValueError("form matrix must be Hermitian or anti-Hermitian")

    @classmethod
    def standard(cls, g: int, algebra: Algebra = Algebra.R) -> "FormB":
        return cls(MatK.from_real(algebra, standard_form(g)), False)

    @property
    def m(self) -> int:
        return self.J.m


def _pullback(f: MatK, form: FormB) -> MatK:
    left = matk.adjoint(f) if form.conjugate else MatK(f.algebra, f.entries.transpose(1, 0, 2))
    return left @ form.J @ f


def autodual_orbit_check(f: MatK, form: FormB, tol: float = DEFAULT_TOLERANCE) -> bool:
    """True iff f* J f = J, exactly for exact f and within ``tol`` otherwise."""
    if f.algebra is not form.J.algebra or f.shape != form.J.shape:
        return False
    return matk.allclose(_pullback(f, form), form.J, tol)


def is_autodual_for_form(f: MatK, form: FormB, order: Order | None = None) -> bool:
    """Whether f(O^m) is its own dual for b: N = f* J f must lie in GL_m(O).

    N is realized on order coordinates, where membership in GL_m(O) is
    integrality with determinant +-1.

    Raises:
        ValueError: If f is not exact
        SingularLatticeError: If f is singular
    """
    if not f.exact:
        raise ValueError("autoduality is decided on exact markings")
    order = order or default_order(f.algebra)
    if matk.is_singular(f):
        raise SingularLatticeError("marking is singular")
    pulled = _pullback(f, form)
    basis = order.block_basis(f.m)
    realized = exact.inverse(basis) @ matk.real_realization(pulled) @ basis
    return is_unimodular(realized)
