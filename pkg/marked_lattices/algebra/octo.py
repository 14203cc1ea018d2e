"""Octonionic Hermitian matrices of size 2 and 3.

Spectral questions are answered on the real symmetric realization eta_R(M) of
size 8m, never in a Jordan-algebra calculus. Layouts:

    m = 2:  [[alpha, x], [conj(x), beta]]
    m = 3:  [[alpha, z, conj(y)], [conj(z), beta, x], [y, conj(x), gamma]]

With z above the diagonal, det_h3 is the Moore determinant whenever the
entries lie in an associative subalgebra.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple

import numpy as np

from marked_lattices.algebra import matk, scalars
from marked_lattices.algebra.lattices import (
    LengthFunction,
    Order,
    ProjectiveLengthClass,
    gram_from_probes,
    named_order,
    probe_table,
)
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.scalars import Real, Scalar
from marked_lattices.constants import RANK_TOLERANCE, Algebra
from marked_lattices.core import exact
from marked_lattices.core.errors import AlgebraMismatchError, NotHermitianError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HermitianOct:
    """Element of h_2(O) or h_3(O).

    Attributes:
        diag: Real diagonal (alpha, beta) or (alpha, beta, gamma)
        off: Octonions (x,) or (x, y, z)
    """

    diag: tuple[Real, ...]
    off: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if (len(self.diag), len(self.off)) not in ((2, 1), (3, 3)):
            raise ValueError("h_2(O) needs 2 reals and 1 octonion, h_3(O) 3 reals and 3 octonions")
        if any(x.algebra is not Algebra.O for x in self.off):
            raise AlgebraMismatchError("off-diagonal entries must be octonions")

    @classmethod
    def build(cls, diag: list[Any], off: list[Scalar]) -> "HermitianOct":
        as_exact = all(isinstance(v, int | Fraction) for v in diag) and all(x.exact for x in off)
        values = tuple(exact.to_fraction(v) if as_exact else float(v) for v in diag)
        octonions = tuple(x if as_exact else x.to_float() for x in off)
        return cls(values, octonions)

    @classmethod
    def identity(cls, m: int = 3) -> "HermitianOct":
        zero = Scalar.zero(Algebra.O)
        return cls.build([1] * m, [zero] * (1 if m == 2 else 3))

    @classmethod
    def from_matk(cls, matrix: MatK) -> "HermitianOct":
        """Read the layout back from a Hermitian octonionic matrix.

        Raises:
            NotHermitianError: If the matrix is not Hermitian
        """
        if matrix.algebra is not Algebra.O:
            raise AlgebraMismatchError("expected an octonionic matrix")
        if not matk.is_hermitian(matrix):
            raise NotHermitianError("octonionic matrix is not Hermitian")
        m = matrix.m
        diag = [matrix.entries[i, i, 0] for i in range(m)]
        if m == 2:
            return cls.build(diag, [matrix.entry(0, 1)])
        if m == 3:
            return cls.build(diag, [matrix.entry(1, 2), matrix.entry(2, 0), matrix.entry(0, 1)])
        raise ValueError("octonionic Hermitian matrices have size 2 or 3")

    @property
    def m(self) -> int:
        return len(self.diag)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.diag) and all(x.exact for x in self.off)

    def to_matk(self) -> MatK:
        real = [Scalar.real(Algebra.O, v) for v in self.diag]
        if self.m == 2:
            (x,) = self.off
            return MatK.from_scalars([[real[0], x], [x.conj(), real[1]]])
        x, y, z = self.off
        return MatK.from_scalars(
            [
                [real[0], z, y.conj()],
                [z.conj(), real[1], x],
                [y, x.conj(), real[2]],
            ]
        )

    def scale(self, factor: Real) -> "HermitianOct":
        return HermitianOct(
            tuple(v * factor for v in self.diag), tuple(x.scale(factor) for x in self.off)
        )

    def to_document(self) -> dict[str, Any]:
        return {"m": self.m, "diag": list(self.diag), "off": [x.to_document() for x in self.off]}


def det_h2(matrix: HermitianOct) -> Real:
    """alpha beta - |x|^2."""
    if matrix.m != 2:
        raise ValueError("det_h2 needs a 2x2 octonionic matrix")
    alpha, beta = matrix.diag
    return alpha * beta - scalars.norm_squared(matrix.off[0])


def det_h3(matrix: HermitianOct) -> Real:
    """alpha beta gamma - (alpha |x|^2 + beta |y|^2 + gamma |z|^2) + 2 Re((x y) z)."""
    if matrix.m != 3:
        raise ValueError("det_h3 needs a 3x3 octonionic matrix")
    alpha, beta, gamma = matrix.diag
    x, y, z = matrix.off
    norms = (
        alpha * scalars.norm_squared(x)
        + beta * scalars.norm_squared(y)
        + gamma * scalars.norm_squared(z)
    )
    return alpha * beta * gamma - norms + 2 * scalars.re(scalars.mul(scalars.mul(x, y), z))


def eta_real(matrix: HermitianOct | MatK) -> np.ndarray:
    """Real 8m x 8m matrix of u -> M u; symmetric for Hermitian M."""
    if isinstance(matrix, HermitianOct):
        matrix = matrix.to_matk()
    return matk.real_realization(matrix)


def is_positive_definite(matrix: HermitianOct) -> bool:
    values = np.linalg.eigvalsh(exact.to_float(eta_real(matrix)))
    return bool(values[0] > RANK_TOLERANCE * max(values[-1], 1e-300))


def oct_length(
    matrix: HermitianOct, u: tuple[int, ...], order: Order | None = None
) -> Fraction | float:
    """l(u) = sqrt(<u, eta_R(M) u>) at a point of O^m given in order coordinates.

    Raises:
        NotPSDError: If eta_R(M) is not positive semidefinite
    """
    length = LengthFunction.from_gram(matrix.to_matk(), order or named_order("Zo"))
    return length.evaluate(u)


def _real_class(real_gram: np.ndarray) -> ProjectiveLengthClass:
    return ProjectiveLengthClass.of(
        LengthFunction(MatK.from_real(Algebra.R, real_gram), named_order("Z"))
    )


def oct_phi(matrix: HermitianOct, order: Order | None = None) -> ProjectiveLengthClass:
    """Length class over R^{8m}, rebuilt from lengths on the octonionic probe set.

    The octonionic Gram is reconstructed by octonionic polarization from the
    squared lengths of the canonical probes, then realized as a real Gram.

    Raises:
        NotPSDError: If eta_R(M) is not positive semidefinite
        InconsistentLengthsError: If reconstruction fails its consistency checks
    """
    order = order or named_order("Zo")
    length = LengthFunction.from_gram(matrix.to_matk(), order)
    table = probe_table(length, squared=True)
    reconstructed = gram_from_probes(table, order, matrix.m, squared=True)
    return _real_class(matk.real_realization(reconstructed))


def oct_satake(matrix: HermitianOct) -> ProjectiveLengthClass:
    """Class of eta_R(M) taken directly."""
    return _real_class(eta_real(matrix))


def _coordinate_basis(m: int) -> list[HermitianOct]:
    zero = Scalar.zero(Algebra.O)
    n_off = 1 if m == 2 else 3
    out = []
    for i in range(m):
        diag = [0] * m
        diag[i] = 1
        out.append(HermitianOct.build(diag, [zero] * n_off))
    for k in range(n_off):
        for c in range(8):
            off = [zero] * n_off
            off[k] = Scalar.unit(Algebra.O, c)
            out.append(HermitianOct.build([0] * m, off))
    return out


def sqrt_image_residual(matrix: HermitianOct) -> float:
    """Relative distance of sqrt(eta_R(M)) from the linear image eta_R(h_m(O)).

    Vanishes up to rounding when the off-diagonal entries lie in a quaternion
    subalgebra such as span(1, e1, e2, e4).

    Raises:
        NotPSDError: If eta_R(M) is not positive semidefinite
    """
    real = exact.to_float(eta_real(matrix))
    root = matk.psd_sqrt_array(real, 1e-10).real
    image = np.column_stack(
        [exact.to_float(eta_real(b)).ravel() for b in _coordinate_basis(matrix.m)]
    )
    target = root.ravel()
    coefficients, *_ = np.linalg.lstsq(image, target, rcond=None)
    residual = np.linalg.norm(image @ coefficients - target)
    return float(residual / max(np.linalg.norm(target), 1e-300))


class Signature(NamedTuple):
    """Counts of positive, negative and zero eigenvalues of a symmetric form."""

    positive: int
    negative: int
    zero: int

    @property
    def label(self) -> str:
        """Larger count first, as in (9,1)."""
        high, low = sorted((self.positive, self.negative), reverse=True)
        return f"({high},{low})"

    def to_document(self) -> dict[str, Any]:
        return {
            "positive": self.positive,
            "negative": self.negative,
            "zero": self.zero,
            "label": self.label,
        }


def det_h2_form() -> np.ndarray:
    """Symmetric 10x10 matrix S with det_h2 = v^T S v for v = (alpha, beta, x_0..x_7)."""
    form = np.zeros((10, 10))
    form[0, 1] = form[1, 0] = 0.5
    form[2:, 2:] = -np.eye(8)
    return form


def form_signature(form: np.ndarray, rtol: float = RANK_TOLERANCE) -> Signature:
    values = np.linalg.eigvalsh((form + form.T) / 2)
    scale = max(float(np.max(np.abs(values))), 1e-300)
    positive = int(np.sum(values > rtol * scale))
    negative = int(np.sum(values < -rtol * scale))
    return Signature(positive, negative, len(values) - positive - negative)


def signature_h2() -> Signature:
    """Signature of det_h2 on R^10: one positive direction, nine negative."""
    return form_signature(det_h2_form())
