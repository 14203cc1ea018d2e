"""Matrices over R, C, H (and O as plain data).

A :class:`MatK` stores its entries as a ``(rows, cols, d)`` array of real
coordinates, float or exact (object array of Fractions). Quaternionic spectral
work goes through the complex realization eta(M) = [[A, -conj(B)], [B, conj(A)]]
of M = A + jB; real and complex matrices use numpy directly.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple

import numpy as np

from marked_lattices.algebra import scalars
from marked_lattices.algebra.scalars import Scalar
from marked_lattices.constants import (
    CLUSTER_GAP,
    DEFAULT_TOLERANCE,
    PSD_FLOOR,
    RANK_TOLERANCE,
    SINGULAR_TOLERANCE,
    Algebra,
)
from marked_lattices.core import exact
from marked_lattices.core.errors import AlgebraMismatchError, NotHermitianError, NotPSDError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MatK:
    """A rows x cols matrix over one scalar algebra.

    Attributes:
        algebra: Scalar algebra of the entries
        entries: Real coordinates, shape (rows, cols, algebra.dim)
    """

    algebra: Algebra
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.entries.ndim != 3 or self.entries.shape[2] != self.algebra.dim:
            raise ValueError(
                f"{self.algebra.value} matrices need entries of shape (rows, cols, "
                f"{self.algebra.dim}), got {self.entries.shape}"
            )

    # construction

    @classmethod
    def from_scalars(cls, rows: Sequence[Sequence[Scalar]]) -> "MatK":
        algebra = rows[0][0].algebra
        cells = [s for row in rows for s in row]
        if any(s.algebra is not algebra for s in cells):
            raise AlgebraMismatchError("matrix entries live over different algebras")
        as_exact = all(s.exact for s in cells)
        data = [[list(s.coords) for s in row] for row in rows]
        entries = np.array(data, dtype=object if as_exact else float)
        return cls(algebra, entries)

    @classmethod
    def from_real(cls, algebra: Algebra, matrix: Any) -> "MatK":
        """Embed a real matrix (floats, or ints/Fractions for the exact path)."""
        algebra = Algebra(algebra)
        arr = np.asarray(matrix, dtype=object)
        as_exact = all(isinstance(x, int | Fraction | np.integer) for x in arr.flat)
        rows, cols = arr.shape
        if as_exact:
            entries = np.empty((rows, cols, algebra.dim), dtype=object)
            entries.fill(Fraction(0))
            entries[:, :, 0] = exact.fraction_array(arr)
        else:
            entries = np.zeros((rows, cols, algebra.dim))
            entries[:, :, 0] = arr.astype(float)
        return cls(algebra, entries)

    @classmethod
    def identity(cls, algebra: Algebra, m: int, as_exact: bool = True) -> "MatK":
        return cls.from_real(algebra, exact.identity(m) if as_exact else np.eye(m))

    @classmethod
    def zeros(cls, algebra: Algebra, rows: int, cols: int, as_exact: bool = True) -> "MatK":
        return cls.from_real(algebra, exact.zeros(rows, cols) if as_exact else np.zeros((rows, cols)))

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "MatK":
        algebra = values[0].algebra
        as_exact = all(v.exact for v in values)
        zero = Scalar.zero(algebra, as_exact)
        n = len(values)
        return cls.from_scalars(
            [[values[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    # shape and access

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape[0], self.entries.shape[1]

    @property
    def m(self) -> int:
        """Size of a square matrix."""
        rows, cols = self.shape
        if rows != cols:
            raise ValueError(f"matrix is {rows}x{cols}, not square")
        return rows

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.algebra, tuple(self.entries[i, j]))

    def to_float(self) -> "MatK":
        if not self.exact:
            return self
        return MatK(self.algebra, exact.to_float(self.entries))

    def real_part(self) -> np.ndarray:
        return self.entries[:, :, 0]

    # arithmetic

    def _pair(self, other: "MatK") -> tuple[np.ndarray, np.ndarray, bool]:
        if self.algebra is not other.algebra:
            raise AlgebraMismatchError(
                f"cannot combine {self.algebra.value} and {other.algebra.value} matrices"
            )
        if self.exact and other.exact:
            return self.entries, other.entries, True
        return self.to_float().entries, other.to_float().entries, False

    def __add__(self, other: "MatK") -> "MatK":
        a, b, _ = self._pair(other)
        return MatK(self.algebra, a + b)

    def __sub__(self, other: "MatK") -> "MatK":
        a, b, _ = self._pair(other)
        return MatK(self.algebra, a - b)

    def __neg__(self) -> "MatK":
        return MatK(self.algebra, -self.entries)

    def __matmul__(self, other: "MatK") -> "MatK":
        return matmul(self, other)

    def scale(self, factor: float | Fraction | int) -> "MatK":
        """Multiply by a real number."""
        if self.exact and isinstance(factor, int | Fraction):
            return MatK(self.algebra, self.entries * exact.to_fraction(factor))
        return MatK(self.algebra, self.to_float().entries * float(factor))

    def adjoint(self) -> "MatK":
        return adjoint(self)

    def real_trace(self) -> float | Fraction:
        """Sum of the real parts of the diagonal."""
        n = min(self.shape)
        start: Any = Fraction(0) if self.exact else 0.0
        return sum((self.entries[i, i, 0] for i in range(n)), start)

    def frobenius_norm(self) -> float:
        return math.sqrt(float(np.sum(exact.to_float(self.entries) ** 2)))

    def to_document(self) -> dict[str, Any]:
        rows, cols = self.shape
        if self.algebra is Algebra.R:
            entries: Any = self.entries[:, :, 0].tolist()
        else:
            entries = self.entries.tolist()
        return {"algebra": self.algebra.value, "m": rows, "cols": cols, "entries": entries}


def matmul(a: MatK, b: MatK) -> MatK:
    """Matrix product, entry (i, k) = sum_j a_ij b_jk in the algebra."""
    left, right, as_exact = a._pair(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape} matrices")
    tensor = (
        scalars.structure_tensor_exact(a.algebra)
        if as_exact
        else scalars.structure_tensor(a.algebra).astype(float)
    )
    left_action = np.tensordot(left, tensor, axes=([2], [0]))  # (i, j, b, c)
    product = np.tensordot(left_action, right, axes=([1, 2], [0, 2]))  # (i, c, k)
    return MatK(a.algebra, product.transpose(0, 2, 1))


def adjoint(a: MatK) -> MatK:
    """Conjugate transpose."""
    signs = scalars.conj_signs(a.algebra)
    if a.exact:
        signs = signs.astype(object)
    return MatK(a.algebra, a.entries.transpose(1, 0, 2) * signs)


def real_realization(a: MatK) -> np.ndarray:
    """Matrix of the real-linear map x -> a x on coordinates, shape (rows*d, cols*d).

    Row index i*d + c and column index j*d + b. Works for all four algebras;
    the realization of the adjoint is the transpose.
    """
    rows, cols = a.shape
    d = a.algebra.dim
    tensor = (
        scalars.structure_tensor_exact(a.algebra)
        if a.exact
        else scalars.structure_tensor(a.algebra).astype(float)
    )
    action = np.tensordot(a.entries, tensor, axes=([2], [0]))  # (i, j, b, c)
    return action.transpose(0, 3, 1, 2).reshape(rows * d, cols * d)


def to_complex(a: MatK) -> np.ndarray:
    """Complex realization: the real matrix for R, A + iB for C, eta(a) for H."""
    if a.algebra is Algebra.O:
        raise AlgebraMismatchError("octonionic matrices have no complex realization here")
    coords = exact.to_float(a.entries)
    if a.algebra is Algebra.R:
        return coords[:, :, 0].astype(float)
    if a.algebra is Algebra.C:
        return coords[:, :, 0] + 1j * coords[:, :, 1]
    block_a = coords[:, :, 0] + 1j * coords[:, :, 1]
    block_b = coords[:, :, 2] - 1j * coords[:, :, 3]
    return np.block([[block_a, -block_b.conj()], [block_b, block_a.conj()]])


def from_complex(algebra: Algebra, z: np.ndarray) -> MatK:
    """Inverse of :func:`to_complex`; for H only the left block column is read."""
    algebra = Algebra(algebra)
    if algebra is Algebra.R:
        arr = np.asarray(z)
        return MatK(algebra, np.real(arr).astype(float)[:, :, None])
    if algebra is Algebra.C:
        return MatK(algebra, np.stack([z.real, z.imag], axis=2).astype(float))
    if algebra is Algebra.H:
        rows, cols = z.shape[0] // 2, z.shape[1] // 2
        block_a = z[:rows, :cols]
        block_b = z[rows:, :cols]
        return MatK(
            algebra,
            np.stack([block_a.real, block_a.imag, block_b.real, -block_b.imag], axis=2),
        )
    raise AlgebraMismatchError("octonionic matrices have no complex realization here")


def eta(a: MatK) -> np.ndarray:
    """Complex 2m x 2m block matrix [[A, -conj(B)], [B, conj(A)]] of a quaternionic M = A + jB."""
    if a.algebra is not Algebra.H:
        raise AlgebraMismatchError("eta is defined on quaternionic matrices")
    return to_complex(a)


def eta_exact(a: MatK) -> np.ndarray:
    """Exact eta as a pair of rational blocks (real part, imaginary part)."""
    if a.algebra is not Algebra.H:
        raise AlgebraMismatchError("eta is defined on quaternionic matrices")
    q = a.entries if a.exact else exact.fraction_array(a.entries)
    re_a, im_a, re_b, im_b = q[:, :, 0], q[:, :, 1], q[:, :, 2], -q[:, :, 3]
    real = np.block([[re_a, -re_b], [re_b, re_a]])
    imag = np.block([[im_a, im_b], [im_b, -im_a]])
    return np.stack([real, imag])


def alpha(w: np.ndarray) -> np.ndarray:
    """Antiunitary map (a; b) -> (-conj(b); conj(a)), right multiplication by j."""
    half = w.shape[0] // 2
    return np.concatenate([-w[half:].conj(), w[:half].conj()])


def _alpha_paired_basis(space: np.ndarray, count: int) -> list[np.ndarray]:
    """Pick ``count`` vectors w of ``space`` so that all w and alpha(w) are orthonormal."""
    picks: list[np.ndarray] = []
    chosen: list[np.ndarray] = []
    for _ in range(count):
        residuals = space.copy()
        if chosen:
            q = np.column_stack(chosen)
            residuals = space - q @ (q.conj().T @ space)
        norms = np.linalg.norm(residuals, axis=0)
        k = int(np.argmax(norms))
        w = residuals[:, k] / norms[k]
        picks.append(w)
        chosen.extend([w, alpha(w)])
    return picks


def _quaternionic_columns(picks: list[np.ndarray]) -> np.ndarray:
    """Complex 2m x 2r matrix eta(U) of the quaternionic columns defined by ``picks``."""
    return np.column_stack(picks + [alpha(w) for w in picks])


class EigenDecomposition(NamedTuple):
    """M = U diag(D) U* with D real and nonincreasing."""

    U: MatK
    D: np.ndarray


def is_hermitian(a: MatK, tol: float = DEFAULT_TOLERANCE) -> bool:
    rows, cols = a.shape
    if rows != cols:
        return False
    diff = a - adjoint(a)
    if a.exact:
        return all(x == 0 for x in diff.entries.flat)
    return diff.frobenius_norm() <= tol * max(a.frobenius_norm(), 1e-300)


def _require_hermitian(a: MatK, tol: float) -> None:
    if a.algebra is Algebra.O:
        raise AlgebraMismatchError("spectral work over O uses the real realization")
    if not is_hermitian(a, tol):
        raise NotHermitianError(f"matrix differs from its adjoint beyond tolerance {tol:g}")


def _clusters(values: np.ndarray, gap: float) -> list[list[int]]:
    groups: list[list[int]] = [[0]]
    for k in range(1, len(values)):
        if abs(values[k - 1] - values[k]) <= gap:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def hermitian_eig(a: MatK, tol: float = DEFAULT_TOLERANCE) -> EigenDecomposition:
    """Unitary diagonalization of a Hermitian matrix.

    For H the eigenvectors of eta(M) come in pairs (w, alpha(w)); each eigenvalue
    cluster is split into quaternionic columns by greedy orthonormalization.

    Raises:
        NotHermitianError: If M differs from M* beyond ``tol``
    """
    _require_hermitian(a, tol)
    z = to_complex(a)
    z = (z + z.conj().T) / 2
    values, vectors = np.linalg.eigh(z)
    values, vectors = values[::-1], vectors[:, ::-1]

    if a.algebra is not Algebra.H:
        return EigenDecomposition(from_complex(a.algebra, vectors), values.copy())

    scale = max(float(np.max(np.abs(values))), 1e-300)
    groups = _clusters(values, CLUSTER_GAP * scale)
    merged: list[list[int]] = []
    for group in groups:
        if merged and len(merged[-1]) % 2:
            merged[-1].extend(group)
        else:
            merged.append(group)
    if len(merged[-1]) % 2:
        raise NotHermitianError("eta(M) spectrum does not come in pairs")
    if len(merged) != len(groups):
        logger.debug("merged odd eigenvalue clusters: %s", merged)

    picks: list[np.ndarray] = []
    for group in merged:
        picks.extend(_alpha_paired_basis(vectors[:, group], len(group) // 2))
    d = np.array([float(np.real(w.conj() @ z @ w)) for w in picks])
    order = np.argsort(-d, kind="stable")
    picks = [picks[k] for k in order]
    return EigenDecomposition(
        from_complex(Algebra.H, _quaternionic_columns(picks)), d[order]
    )


def reconstruct(decomposition: EigenDecomposition) -> MatK:
    """U diag(D) U*."""
    u = decomposition.U
    diag = MatK.from_real(u.algebra, np.diag(decomposition.D.astype(float)))
    return u @ diag @ adjoint(u)


def psd_sqrt_array(z: np.ndarray, floor: float) -> np.ndarray:
    z = (z + z.conj().T) / 2
    values, vectors = np.linalg.eigh(z)
    scale = max(float(np.max(np.abs(values))), 1e-300) if values.size else 1.0
    if values.size and values[0] < -floor * scale:
        raise NotPSDError(f"smallest eigenvalue {values[0]:.3e} is below the PSD floor")
    roots = np.sqrt(np.clip(values, 0.0, None))
    return (vectors * roots) @ vectors.conj().T


@dataclass(frozen=True, eq=False)
class HermitianPSD:
    """A positive semidefinite Hermitian matrix with its cached eigendecomposition."""

    matrix: MatK
    decomposition: EigenDecomposition

    @classmethod
    def from_matrix(
        cls, a: MatK, tol: float = DEFAULT_TOLERANCE, floor: float = PSD_FLOOR
    ) -> "HermitianPSD":
        """Validate and diagonalize.

        Raises:
            NotHermitianError: If ``a`` is not Hermitian within ``tol``
            NotPSDError: If an eigenvalue is below ``-floor * ||a||``
        """
        decomposition = hermitian_eig(a, tol)
        values = decomposition.D
        scale = max(float(np.max(np.abs(values))), 1e-300) if values.size else 1.0
        if values.size and values[-1] < -floor * scale:
            raise NotPSDError(f"smallest eigenvalue {values[-1]:.3e} is below the PSD floor")
        return cls(a, decomposition)

    @property
    def m(self) -> int:
        return self.matrix.m

    def rank(self, rtol: float = RANK_TOLERANCE) -> int:
        values = self.decomposition.D
        if not values.size or values[0] <= 0:
            return 0
        return int(np.sum(values > rtol * values[0]))

    def sqrt(self) -> "HermitianPSD":
        u, values = self.decomposition
        roots = np.sqrt(np.clip(values, 0.0, None))
        root = u @ MatK.from_real(u.algebra, np.diag(roots)) @ adjoint(u)
        return HermitianPSD(root, EigenDecomposition(u, roots))


def psd_sqrt(a: MatK, floor: float = PSD_FLOOR, tol: float = DEFAULT_TOLERANCE) -> MatK:
    """Unique PSD square root, eigenvalues clamped at zero.

    Raises:
        NotHermitianError: If ``a`` is not Hermitian
        NotPSDError: If an eigenvalue is below ``-floor * ||a||``
    """
    _require_hermitian(a, tol)
    return from_complex(a.algebra, psd_sqrt_array(to_complex(a), floor))


class PolarDecomposition(NamedTuple):
    """M = P U with P positive semidefinite and U unitary."""

    P: MatK
    U: MatK


def polar(a: MatK) -> PolarDecomposition:
    """Polar decomposition M = P U with P = sqrt(M M*).

    For singular M the unitary factor maps ker(M) onto ker(P) through an
    arbitrary orthonormal (for H, alpha-paired) choice of bases.
    """
    if a.algebra is Algebra.O:
        raise AlgebraMismatchError("polar decomposition is defined over R, C and H")
    z = to_complex(a)
    w, sigma, vh = np.linalg.svd(z)
    p = (w * sigma) @ w.conj().T
    p = (p + p.conj().T) / 2
    cutoff = SINGULAR_TOLERANCE * 100 * (sigma[0] if sigma.size else 0.0)
    rank = int(np.sum(sigma > cutoff))

    if a.algebra is not Algebra.H or rank == len(sigma):
        u = w @ vh
    else:
        v0 = w[:, :rank] @ vh[:rank]
        source = _alpha_paired_basis(vh[rank:].conj().T, (len(sigma) - rank) // 2)
        target = _alpha_paired_basis(w[:, rank:], (len(sigma) - rank) // 2)
        completion = sum(
            np.outer(k, h.conj()) + np.outer(alpha(k), alpha(h).conj())
            for h, k in zip(source, target, strict=True)
        )
        u = v0 + completion
        logger.debug("completed singular polar factor on a kernel of dimension %d", len(source))
    return PolarDecomposition(from_complex(a.algebra, p), from_complex(a.algebra, u))


def singular_values(a: MatK) -> np.ndarray:
    """Singular values of the complex realization (doubled for H)."""
    if a.algebra is Algebra.O:
        return np.linalg.svd(exact.to_float(real_realization(a)), compute_uv=False)
    return np.linalg.svd(to_complex(a), compute_uv=False)


def is_singular(a: MatK, rtol: float = SINGULAR_TOLERANCE) -> bool:
    if a.exact and a.algebra is Algebra.R:
        return exact.det(a.real_part()) == 0
    sigma = singular_values(a)
    return not sigma.size or sigma[0] == 0 or sigma[-1] <= rtol * sigma[0]


def inverse(a: MatK) -> MatK:
    """Matrix inverse; exact for exact real matrices.

    Raises:
        ZeroDivisionError: If ``a`` is singular on the exact path
        numpy.linalg.LinAlgError: If ``a`` is singular on the floating path
    """
    if a.exact and a.algebra is Algebra.R:
        return MatK.from_real(Algebra.R, exact.inverse(a.real_part()))
    return from_complex(a.algebra, np.linalg.inv(to_complex(a)))


def dieudonne_det(a: MatK) -> float | Fraction:
    """Nonnegative determinant: sqrt(det eta(M)) over H, |det M| over R and C."""
    if a.algebra is Algebra.R and a.exact:
        return abs(exact.det(a.real_part()))
    z = to_complex(a)
    sign, logdet = np.linalg.slogdet(z)
    if sign == 0:
        return 0.0
    if a.algebra is Algebra.H:
        return math.exp(logdet / 2)
    return math.exp(logdet)


def isometry_witness(a: MatK, b: MatK, tol: float = 1e-9) -> MatK | None:
    """Unitary K with K a = b, or None when a*a and b*b differ beyond ``tol``."""
    if a.algebra is not b.algebra or a.shape != b.shape:
        return None
    gram_a = adjoint(a) @ a
    gram_b = adjoint(b) @ b
    scale = max(gram_a.frobenius_norm(), gram_b.frobenius_norm(), 1e-300)
    if (gram_a - gram_b).frobenius_norm() > tol * scale:
        return None
    if not is_singular(a):
        return b.to_float() @ inverse(a.to_float())
    polar_a = polar(adjoint(a))
    polar_b = polar(adjoint(b))
    return adjoint(polar_b.U) @ polar_a.U


def is_unitary(a: MatK, tol: float = DEFAULT_TOLERANCE) -> bool:
    n = a.m
    residual = adjoint(a) @ a - MatK.identity(a.algebra, n, a.exact)
    if a.exact:
        return all(x == 0 for x in residual.entries.flat)
    return residual.frobenius_norm() <= tol * n


def allclose(a: MatK, b: MatK, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Relative Frobenius comparison; exact equality when both are exact."""
    if a.algebra is not b.algebra or a.shape != b.shape:
        return False
    if a.exact and b.exact:
        return bool(np.all(a.entries == b.entries))
    scale = max(a.frobenius_norm(), b.frobenius_norm(), 1.0)
    return (a - b).frobenius_norm() <= tol * scale
