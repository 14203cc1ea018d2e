"""Arithmetic for the scalar algebras R, C, H and O.

Values are stored as real coordinate vectors in the bases (1), (1, i),
(1, i, j, k) and (e0, ..., e7). Coordinates are either all Fractions (the exact
path) or all floats. Every product is driven by one structure table generated
from the octonion multiplication table in :mod:`marked_lattices.constants`; the
quaternions sit inside it as span(e0, e1, e2, e4) and the complex numbers as
span(e0, e1).
"""

import math
import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Any

import numpy as np

from marked_lattices.constants import OCTONION_QUATERNION_UNITS, OCTONION_TABLE, Algebra
from marked_lattices.core import exact
from marked_lattices.core.errors import AlgebraMismatchError, DegenerateProbeError

Real = float | Fraction

_TABLE_CELL = re.compile(r"^([+-])(1|e([1-7]))$")

# Coordinate positions of each algebra inside the octonions.
_EMBEDDING: dict[Algebra, tuple[int, ...]] = {
    Algebra.R: (0,),
    Algebra.C: (0, 1),
    Algebra.H: (0, *OCTONION_QUATERNION_UNITS),
    Algebra.O: tuple(range(8)),
}


def parse_octonion_table() -> dict[tuple[int, int], tuple[int, int]]:
    """Parse the 49-entry table into ``(a, b) -> (sign, c)`` with e_a e_b = sign * e_c.

    Raises:
        ValueError: If a row or cell is malformed
    """
    entries: dict[tuple[int, int], tuple[int, int]] = {}
    if len(OCTONION_TABLE) != 7:
        raise ValueError("octonion table must have 7 rows")
    for a, row in enumerate(OCTONION_TABLE, start=1):
        cells = row.split()
        if len(cells) != 7:
            raise ValueError(f"octonion table row e{a} must have 7 cells")
        for b, cell in enumerate(cells, start=1):
            match = _TABLE_CELL.match(cell)
            if match is None:
                raise ValueError(f"malformed octonion table cell {cell!r}")
            sign = 1 if match.group(1) == "+" else -1
            c = 0 if match.group(2) == "1" else int(match.group(3))
            entries[(a, b)] = (sign, c)
    return entries


def _validate_table(entries: dict[tuple[int, int], tuple[int, int]]) -> None:
    for a in range(1, 8):
        if entries[(a, a)] != (-1, 0):
            raise ValueError(f"e{a}^2 must be -1")
        for b in range(1, 8):
            if a == b:
                continue
            sign, c = entries[(a, b)]
            if c == 0 or entries[(b, a)] != (-sign, c):
                raise ValueError(f"e{a}e{b} must be an imaginary unit anticommuting with e{b}e{a}")


@cache
def _octonion_products() -> tuple[tuple[int, int, int, int], ...]:
    entries = parse_octonion_table()
    _validate_table(entries)
    terms = [(0, b, b, 1) for b in range(8)]
    terms += [(a, 0, a, 1) for a in range(1, 8)]
    terms += [(a, b, c, s) for (a, b), (s, c) in sorted(entries.items())]
    return tuple(terms)


@cache
def product_terms(algebra: Algebra) -> tuple[tuple[int, int, int, int], ...]:
    """Nonzero structure constants ``(a, b, c, sign)`` with e_a e_b = sign * e_c."""
    index = {o: k for k, o in enumerate(_EMBEDDING[algebra])}
    terms = []
    for a, b, c, s in _octonion_products():
        if a in index and b in index:
            if c not in index:
                raise ValueError(f"{algebra.value} is not closed in the octonion table")
            terms.append((index[a], index[b], index[c], s))
    return tuple(terms)


@cache
def structure_tensor(algebra: Algebra) -> np.ndarray:
    """Integer tensor T with e_a e_b = sum_c T[a, b, c] e_c."""
    d = algebra.dim
    tensor = np.zeros((d, d, d), dtype=np.int64)
    for a, b, c, s in product_terms(algebra):
        tensor[a, b, c] = s
    tensor.setflags(write=False)
    return tensor


def structure_tensor_exact(algebra: Algebra) -> np.ndarray:
    """Structure tensor as an object array of Python ints (safe to mix with Fractions)."""
    return structure_tensor(algebra).astype(object)


def conj_signs(algebra: Algebra) -> np.ndarray:
    signs = -np.ones(algebra.dim, dtype=np.int64)
    signs[0] = 1
    return signs


def _coerce(coords: Sequence[Any], as_exact: bool | None) -> tuple[Real, ...]:
    if as_exact is None:
        as_exact = all(isinstance(x, int | Fraction | np.integer) for x in coords)
    if as_exact:
        return tuple(exact.to_fraction(x) for x in coords)
    return tuple(float(x) for x in coords)


@dataclass(frozen=True)
class Scalar:
    """An element of one of the four scalar algebras.

    Attributes:
        algebra: Which algebra the value lives in
        coords: Real coordinates in the algebra's fixed basis
    """

    algebra: Algebra
    coords: tuple[Real, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.algebra.dim:
            raise ValueError(
                f"{self.algebra.value} scalars need {self.algebra.dim} coordinates, "
                f"got {len(self.coords)}"
            )

    @classmethod
    def from_coords(
        cls, algebra: Algebra, coords: Sequence[Any], as_exact: bool | None = None
    ) -> "Scalar":
        """Build a scalar; ints and Fractions give the exact path unless told otherwise."""
        return cls(Algebra(algebra), _coerce(list(coords), as_exact))

    @classmethod
    def zero(cls, algebra: Algebra, as_exact: bool = True) -> "Scalar":
        return cls.from_coords(algebra, [0] * Algebra(algebra).dim, as_exact)

    @classmethod
    def one(cls, algebra: Algebra, as_exact: bool = True) -> "Scalar":
        return cls.unit(algebra, 0, as_exact)

    @classmethod
    def unit(cls, algebra: Algebra, index: int, as_exact: bool = True) -> "Scalar":
        """Basis element ``index`` (0 is the real unit)."""
        coords = [0] * Algebra(algebra).dim
        coords[index] = 1
        return cls.from_coords(algebra, coords, as_exact)

    @classmethod
    def real(cls, algebra: Algebra, value: Any) -> "Scalar":
        coords: list[Any] = [value] + [0] * (Algebra(algebra).dim - 1)
        return cls.from_coords(algebra, coords, isinstance(value, int | Fraction))

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.coords)

    def to_float(self) -> "Scalar":
        return Scalar(self.algebra, tuple(float(x) for x in self.coords))

    def vector(self) -> np.ndarray:
        if self.exact:
            return np.array(self.coords, dtype=object)
        return np.array(self.coords, dtype=float)

    def _check(self, other: "Scalar") -> None:
        if self.algebra is not other.algebra:
            raise AlgebraMismatchError(
                f"cannot combine {self.algebra.value} and {other.algebra.value} scalars"
            )

    def _pair(self, other: "Scalar") -> tuple[tuple[Real, ...], tuple[Real, ...]]:
        self._check(other)
        if self.exact and other.exact:
            return self.coords, other.coords
        return self.to_float().coords, other.to_float().coords

    def __add__(self, other: "Scalar") -> "Scalar":
        x, y = self._pair(other)
        return Scalar(self.algebra, tuple(a + b for a, b in zip(x, y, strict=True)))

    def __sub__(self, other: "Scalar") -> "Scalar":
        x, y = self._pair(other)
        return Scalar(self.algebra, tuple(a - b for a, b in zip(x, y, strict=True)))

    def __neg__(self) -> "Scalar":
        return Scalar(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other: "Scalar") -> "Scalar":
        return mul(self, other)

    def scale(self, factor: Real) -> "Scalar":
        """Multiply by a real number."""
        if isinstance(factor, int | Fraction) and self.exact:
            f = exact.to_fraction(factor)
            return Scalar(self.algebra, tuple(a * f for a in self.coords))
        return Scalar(self.algebra, tuple(float(a) * float(factor) for a in self.coords))

    def conj(self) -> "Scalar":
        return conj(self)

    def re(self) -> Real:
        return re(self)

    def norm(self) -> float:
        return norm(self)

    def norm_squared(self) -> Real:
        return norm_squared(self)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def to_document(self) -> dict[str, Any]:
        return {"algebra": self.algebra.value, "coords": list(self.coords)}


def mul(x: Scalar, y: Scalar) -> Scalar:
    """Product x * y following the algebra's structure constants.

    Raises:
        AlgebraMismatchError: If x and y live in different algebras
    """
    a_coords, b_coords = x._pair(y)
    zero: Real = Fraction(0) if isinstance(a_coords[0], Fraction) else 0.0
    out = [zero] * x.algebra.dim
    for a, b, c, s in product_terms(x.algebra):
        out[c] += s * a_coords[a] * b_coords[b]
    return Scalar(x.algebra, tuple(out))


def conj(x: Scalar) -> Scalar:
    return Scalar(x.algebra, (x.coords[0], *(-a for a in x.coords[1:])))


def re(x: Scalar) -> Real:
    return x.coords[0]


def norm_squared(x: Scalar) -> Real:
    """Sum of squared coordinates, exact for rational coordinates."""
    return sum((a * a for a in x.coords), Fraction(0) if x.exact else 0.0)


def norm(x: Scalar) -> float:
    return math.sqrt(norm_squared(x))


def hermitian_product(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """<u|v> = sum_i conj(u_i) v_i."""
    if len(u) != len(v):
        raise ValueError("vectors must have the same length")
    total = Scalar.zero(u[0].algebra, all(s.exact for s in (*u, *v)))
    for a, b in zip(u, v, strict=True):
        total = total + mul(conj(a), b)
    return total


def vector_norm_squared(u: Sequence[Scalar]) -> Real:
    return sum((norm_squared(s) for s in u), Fraction(0) if all(s.exact for s in u) else 0.0)


def polarization_differences(
    u: Sequence[Scalar], v: Sequence[Scalar], probes: Sequence[Scalar]
) -> list[Real]:
    """||u + v q_l||^2 - ||u - v q_l||^2 for every probe q_l (v multiplied on the right)."""
    out = []
    for q in probes:
        vq = [mul(b, q) for b in v]
        plus = [a + b for a, b in zip(u, vq, strict=True)]
        minus = [a - b for a, b in zip(u, vq, strict=True)]
        out.append(vector_norm_squared(plus) - vector_norm_squared(minus))
    return out


@dataclass(frozen=True)
class PolarizationScheme:
    """Coefficients recovering inner products from norm differences.

    ``coefficients[l]`` is the scalar Lambda_l = phi^{-1}(f_l) for the map
    phi(q) = (4 Re(q q_l))_l. Recovery sums d_l * Lambda_l; for octonions the
    real coefficients Re(Lambda_l) recover the real part only.

    Attributes:
        algebra: Algebra of the probes
        probes: Real basis q_1..q_d of the algebra
        coefficients: Lambda_1..Lambda_d
    """

    algebra: Algebra
    probes: tuple[Scalar, ...]
    coefficients: tuple[Scalar, ...]

    @property
    def real_coefficients(self) -> tuple[Real, ...]:
        return tuple(re(c) for c in self.coefficients)

    def recover(self, differences: Sequence[Real]) -> Scalar:
        """Sum of d_l * Lambda_l."""
        if len(differences) != len(self.coefficients):
            raise ValueError("one difference per probe is required")
        total = Scalar.zero(self.algebra, all(c.exact for c in self.coefficients))
        for d, c in zip(differences, self.coefficients, strict=True):
            total = total + c.scale(d)
        return total

    def recover_real(self, differences: Sequence[Real]) -> Real:
        """Sum of d_l * Re(Lambda_l), the real part of the recovered value."""
        return sum(
            (d * lam for d, lam in zip(differences, self.real_coefficients, strict=True)),
            Fraction(0) if all(c.exact for c in self.coefficients) else 0.0,
        )

    def inner_product(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
        """Recover <u|v> from the 2d norms ||u +- v q_l||."""
        return self.recover(polarization_differences(u, v, self.probes))

    def to_document(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra.value,
            "probes": [p.to_document() for p in self.probes],
            "coefficients": [c.to_document() for c in self.coefficients],
        }


def complex_polarization(tau: Scalar) -> PolarizationScheme:
    """Closed-form complex scheme for the probes (1, tau), tau = a + ib with b != 0.

    Lambda_1 = (1 + i a / b) / 4 and Lambda_2 = -i / (4 b).
    """
    if tau.algebra is not Algebra.C:
        raise AlgebraMismatchError("complex polarization needs a complex tau")
    a, b = tau.coords
    if b == 0:
        raise DegenerateProbeError("tau must not be real")
    one = Scalar.one(Algebra.C, tau.exact)
    if tau.exact:
        lam1 = Scalar(Algebra.C, (Fraction(1, 4), a / (4 * b)))
        lam2 = Scalar(Algebra.C, (Fraction(0), -1 / (4 * b)))
    else:
        lam1 = Scalar(Algebra.C, (0.25, a / (4.0 * b)))
        lam2 = Scalar(Algebra.C, (0.0, -1.0 / (4.0 * b)))
    return PolarizationScheme(Algebra.C, (one, tau), (lam1, lam2))


def solve_polarization(algebra: Algebra, probes: Sequence[Scalar]) -> PolarizationScheme:
    """Invert q -> (4 Re(q q_l))_l to get the recovery coefficients.

    Raises:
        AlgebraMismatchError: If a probe lives in another algebra
        DegenerateProbeError: If the probes are not a real basis
    """
    algebra = Algebra(algebra)
    d = algebra.dim
    if len(probes) != d:
        raise DegenerateProbeError(f"{algebra.value} needs {d} probes, got {len(probes)}")
    for q in probes:
        if q.algebra is not algebra:
            raise AlgebraMismatchError(f"probe over {q.algebra.value} in a {algebra.value} scheme")

    if algebra is Algebra.C and probes[0] == Scalar.one(Algebra.C):
        return complex_polarization(probes[1])

    use_exact = all(q.exact for q in probes)
    units = [Scalar.unit(algebra, c, use_exact) for c in range(d)]
    phi = [[4 * re(mul(units[c], q)) for c in range(d)] for q in probes]

    if use_exact:
        try:
            inv = exact.inverse(exact.fraction_array(phi))
        except ZeroDivisionError as e:
            raise DegenerateProbeError("probes are not a real basis of the algebra") from e
        columns = [[inv[c, l] for c in range(d)] for l in range(d)]  # noqa: E741
    else:
        matrix = np.array(phi, dtype=float)
        if np.linalg.matrix_rank(matrix) < d:
            raise DegenerateProbeError("probes are not a real basis of the algebra")
        inv_f = np.linalg.inv(matrix)
        columns = [[float(inv_f[c, l]) for c in range(d)] for l in range(d)]  # noqa: E741

    coefficients = tuple(Scalar.from_coords(algebra, col, use_exact) for col in columns)
    return PolarizationScheme(algebra, tuple(probes), coefficients)


def standard_probes(algebra: Algebra, as_exact: bool = True) -> tuple[Scalar, ...]:
    """The coordinate basis of the algebra."""
    return tuple(Scalar.unit(algebra, c, as_exact) for c in range(Algebra(algebra).dim))
