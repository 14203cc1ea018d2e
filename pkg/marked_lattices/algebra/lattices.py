"""Orders, marked lattices and translation-length functions.

A lattice point of O^m is stored by its integer coordinates in the order basis
(m * d integers, slot-major). A length function is represented by its Gram
matrix G with l(u)^2 = Re(u* G u); on integer coordinates this is the
quadratic form Q = B^T R(G) B where R is the real realization and B the block
diagonal basis matrix of the order.
"""

import logging
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property
from typing import Any, NamedTuple

import numpy as np
import scipy.linalg

from marked_lattices.algebra import matk, scalars
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.scalars import Scalar
from marked_lattices.constants import (
    DEFAULT_TOLERANCE,
    PROBE_TOLERANCE,
    PSD_FLOOR,
    RANK_TOLERANCE,
    SYSTOLE_MAX_DOUBLINGS,
    SYSTOLE_TIE_RTOL,
    Algebra,
)
from marked_lattices.core import exact
from marked_lattices.core.errors import (
    AlgebraMismatchError,
    InconsistentLengthsError,
    IncompleteProbeError,
    InvalidOrderError,
    NotHermitianError,
    NotPSDError,
    SingularActionError,
    SingularGramError,
    SingularMarkingError,
    ZeroMarkingError,
)

logger = logging.getLogger(__name__)

Point = tuple[int, ...]


def _half(*coords: int) -> Scalar:
    return Scalar(Algebra.H, tuple(Fraction(c, 2) for c in coords))


@dataclass(frozen=True, eq=False)
class Order:
    """A multiplication-closed Z-lattice of the algebra containing 1.

    Attributes:
        algebra: Ambient algebra
        basis: Exact Z-basis b_0..b_{d-1}
        name: Built-in name, or None for user-supplied bases
    """

    algebra: Algebra
    basis: tuple[Scalar, ...]
    name: str | None = None

    @classmethod
    def from_basis(
        cls, algebra: Algebra, basis: Sequence[Scalar], name: str | None = None
    ) -> "Order":
        """Validate a basis and build the order.

        Raises:
            InvalidOrderError: If the basis is not a basis, misses 1 or is not closed
        """
        algebra = Algebra(algebra)
        if len(basis) != algebra.dim:
            raise InvalidOrderError(f"{algebra.value} orders need {algebra.dim} basis elements")
        if any(b.algebra is not algebra or not b.exact for b in basis):
            raise InvalidOrderError("order bases must be exact elements of the algebra")
        order = cls(algebra, tuple(basis), name)
        try:
            exact.inverse(order.basis_matrix)
        except ZeroDivisionError as e:
            raise InvalidOrderError("basis elements are linearly dependent") from e
        if not order.contains(Scalar.one(algebra)):
            raise InvalidOrderError("order does not contain 1")
        for a in basis:
            for b in basis:
                if not order.contains(scalars.mul(a, b)):
                    raise InvalidOrderError("basis products leave the order")
        return order

    @cached_property
    def basis_matrix(self) -> np.ndarray:
        """Exact d x d matrix whose columns are the basis coordinates."""
        return exact.fraction_array([list(b.coords) for b in self.basis]).T

    @cached_property
    def _inverse_basis(self) -> np.ndarray:
        return exact.inverse(self.basis_matrix)

    @property
    def d(self) -> int:
        return self.algebra.dim

    def coordinates(self, x: Scalar) -> tuple[Fraction, ...]:
        """Rational coordinates of x in the order basis."""
        vector = exact.fraction_array(list(x.coords)) if not x.exact else np.array(x.coords)
        return tuple(self._inverse_basis @ vector)

    def contains(self, x: Scalar) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def element(self, coords: Sequence[int]) -> Scalar:
        values = self.basis_matrix @ exact.fraction_array(list(coords))
        return Scalar(self.algebra, tuple(values))

    def integer_coordinates(self, x: Scalar) -> tuple[int, ...]:
        coords = self.coordinates(x)
        if any(c.denominator != 1 for c in coords):
            raise ValueError(f"{x.coords} is not in the order")
        return tuple(c.numerator for c in coords)

    def block_basis(self, m: int, as_exact: bool = True) -> np.ndarray:
        """Block diagonal matrix mapping order coordinates of O^m to real coordinates."""
        if as_exact:
            return exact.block_diagonal([self.basis_matrix] * m)
        return scipy.linalg.block_diag(*[exact.to_float(self.basis_matrix)] * m)

    def to_document(self) -> Any:
        if self.name is not None:
            return self.name
        return {"algebra": self.algebra.value, "basis": [b.to_document() for b in self.basis]}


@cache
def named_order(name: str) -> Order:
    """Built-in orders: Z, Zi, hurwitz and the octonionic Zo = Z[e0..e7].

    Raises:
        InvalidOrderError: If the name is unknown
    """
    if name == "Z":
        return Order.from_basis(Algebra.R, scalars.standard_probes(Algebra.R), name)
    if name == "Zi":
        return Order.from_basis(Algebra.C, scalars.standard_probes(Algebra.C), name)
    if name == "hurwitz":
        units = scalars.standard_probes(Algebra.H)
        return Order.from_basis(Algebra.H, [*units[:3], _half(1, 1, 1, 1)], name)
    if name == "Zo":
        return Order.from_basis(Algebra.O, scalars.standard_probes(Algebra.O), name)
    raise InvalidOrderError(f"unknown order {name!r}")


def default_order(algebra: Algebra) -> Order:
    return named_order({"R": "Z", "C": "Zi", "H": "hurwitz", "O": "Zo"}[Algebra(algebra).value])


def _psd_real_check(real_gram: np.ndarray, floor: float) -> np.ndarray:
    values = np.linalg.eigvalsh(exact.to_float(real_gram))
    scale = max(float(np.max(np.abs(values))), 1e-300) if values.size else 1.0
    if values.size and values[0] < -floor * scale:
        raise NotPSDError(f"smallest eigenvalue {values[0]:.3e} is below the PSD floor")
    return values


def _maybe_exact_sqrt(value: Fraction | float) -> Fraction | float:
    if isinstance(value, Fraction) and value >= 0:
        num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if num * num == value.numerator and den * den == value.denominator:
            return Fraction(num, den)
    return math.sqrt(max(float(value), 0.0))


@dataclass(frozen=True, eq=False)
class LengthFunction:
    """Translation-length function l(u) = sqrt(Re(u* G u)) on O^m.

    Attributes:
        gram: Hermitian positive semidefinite Gram matrix, possibly singular
        order: Order whose points are measured
    """

    gram: MatK
    order: Order

    @classmethod
    def from_gram(
        cls, gram: MatK, order: Order | None = None, tol: float = DEFAULT_TOLERANCE
    ) -> "LengthFunction":
        """Validate a Gram matrix.

        Raises:
            AlgebraMismatchError: If the order lives over another algebra
            NotHermitianError: If the Gram is not Hermitian
            NotPSDError: If the Gram has a negative eigenvalue below the floor
        """
        order = order or default_order(gram.algebra)
        if order.algebra is not gram.algebra:
            raise AlgebraMismatchError("Gram matrix and order live over different algebras")
        if not matk.is_hermitian(gram, tol):
            raise NotHermitianError("Gram matrix is not Hermitian")
        _psd_real_check(matk.real_realization(gram), PSD_FLOOR)
        return cls(gram, order)

    @property
    def algebra(self) -> Algebra:
        return self.gram.algebra

    @property
    def m(self) -> int:
        return self.gram.m

    @property
    def exact(self) -> bool:
        return self.gram.exact

    @cached_property
    def quadratic_form(self) -> np.ndarray:
        """Q = B^T R(G) B on order coordinates (exact when G is exact)."""
        basis = self.order.block_basis(self.m, self.exact)
        real_gram = matk.real_realization(self.gram)
        q = basis.T @ real_gram @ basis
        return q if self.exact else (q + q.T) / 2

    def evaluate_squared(self, u: Sequence[int]) -> Fraction | float:
        """Re(u* G u) = u^T Q u, exact on an exact Gram."""
        vector = np.array([int(x) for x in u], dtype=object if self.exact else float)
        if vector.shape[0] != self.m * self.order.d:
            raise ValueError(f"lattice points need {self.m * self.order.d} coordinates")
        value = vector @ self.quadratic_form @ vector
        return value if self.exact else float(value)

    def evaluate(self, u: Sequence[int]) -> Fraction | float:
        return _maybe_exact_sqrt(self.evaluate_squared(u))

    def real_eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(exact.to_float(matk.real_realization(self.gram)))

    def rank(self, rtol: float = RANK_TOLERANCE) -> int:
        """Rank over the algebra, counted through the real realization."""
        values = self.real_eigenvalues()
        if not values.size or values[-1] <= 0:
            return 0
        real_rank = int(np.sum(values > rtol * values[-1]))
        return -(-real_rank // self.order.d)

    def to_document(self) -> dict[str, Any]:
        return {"gram": self.gram.to_document(), "order": self.order.to_document()}


def normalize_gram(gram: MatK) -> MatK:
    """Rescale so the real trace is 1.

    Raises:
        ZeroMarkingError: If the trace vanishes (zero PSD matrix)
    """
    trace = gram.real_trace()
    if trace == 0 or float(trace) <= 0:
        raise ZeroMarkingError("Gram matrix is zero, so its class is undefined")
    if gram.exact:
        return gram.scale(1 / trace)
    return gram.scale(1.0 / float(trace))


@dataclass(frozen=True, eq=False)
class ProjectiveLengthClass:
    """A length function up to positive homothety, stored with real trace 1."""

    length: LengthFunction

    @classmethod
    def of(cls, length: LengthFunction) -> "ProjectiveLengthClass":
        return cls(LengthFunction(normalize_gram(length.gram), length.order))

    @classmethod
    def from_gram(cls, gram: MatK, order: Order | None = None) -> "ProjectiveLengthClass":
        return cls.of(LengthFunction.from_gram(gram, order))

    @property
    def gram(self) -> MatK:
        return self.length.gram

    @property
    def algebra(self) -> Algebra:
        return self.length.algebra

    @property
    def m(self) -> int:
        return self.length.m

    def rank(self, rtol: float = RANK_TOLERANCE) -> int:
        return self.length.rank(rtol)

    def is_interior(self) -> bool:
        return self.rank() == self.m

    def to_document(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra.value,
            "gram": self.gram.to_document(),
            "rank": self.rank(),
            "interior": self.is_interior(),
        }


def class_distance(x: ProjectiveLengthClass, y: ProjectiveLengthClass) -> float:
    """Frobenius distance between trace-normalized Grams."""
    return (x.gram.to_float() - y.gram.to_float()).frobenius_norm()


def interior_margin(x: ProjectiveLengthClass) -> float:
    """Smallest eigenvalue of the normalized Gram.

    It bounds from below the distance from x to every rank-deficient class.
    """
    return float(x.length.real_eigenvalues()[0])


def is_proper(length: LengthFunction) -> bool:
    """Full-rank Gram, i.e. finitely many lattice points below every bound."""
    return length.rank() == length.m


@dataclass(frozen=True, eq=False)
class MarkedLattice:
    """The lattice f(O^m) in K^m with its marking f.

    Attributes:
        order: Order O
        f: Marking, an m x m matrix over the order's algebra
    """

    order: Order
    f: MatK

    @property
    def m(self) -> int:
        return self.f.m

    def covolume(self) -> float | Fraction:
        """dieudonne_det(f)^d, with the standard lattice at covolume 1."""
        det = matk.dieudonne_det(self.f)
        return det ** self.order.d

    def normalized(self) -> "MarkedLattice":
        """Covolume-1 representative f / |det f|^(1/m).

        Raises:
            SingularMarkingError: If f is singular
        """
        if self.f.algebra is Algebra.O:
            raise AlgebraMismatchError("octonionic markings use the octo module")
        det = matk.dieudonne_det(self.f)
        if det == 0 or matk.is_singular(self.f):
            raise SingularMarkingError("singular marking has no covolume-1 representative")
        if det == 1:
            return self
        return MarkedLattice(self.order, self.f.scale(float(det) ** (-1.0 / self.m)))

    def gram(self) -> MatK:
        return matk.adjoint(self.f) @ self.f

    def length_function(self) -> LengthFunction:
        return LengthFunction(self.gram(), self.order)

    def to_document(self) -> dict[str, Any]:
        return {"order": self.order.to_document(), "m": self.m, "f": self.f.to_document()}


def phi(lattice: MarkedLattice) -> ProjectiveLengthClass:
    """Class of the translation-length function u -> ||f(u)||, with Gram f*f.

    Raises:
        ZeroMarkingError: If f = 0
    """
    if lattice.f.algebra is Algebra.O:
        raise AlgebraMismatchError("octonionic classes are built by octo.oct_phi")
    if all(x == 0 for x in lattice.f.entries.flat):
        raise ZeroMarkingError("marking is the zero map")
    return ProjectiveLengthClass.of(lattice.length_function())


def evaluate(length: LengthFunction, u: Sequence[int]) -> Fraction | float:
    """sqrt(Re(u* G u)) at a lattice point given by order coordinates."""
    return length.evaluate(u)


# probes


def canonical_probes(order: Order, m: int) -> list[Point]:
    """e_j, then e_j + e_k q_l and e_j - e_k q_l for j < k and each order basis element q_l."""
    d = order.d
    one = order.integer_coordinates(Scalar.one(order.algebra))
    points: list[Point] = []
    for j in range(m):
        u = [0] * (m * d)
        u[j * d:(j + 1) * d] = one
        points.append(tuple(u))
    for j in range(m):
        for k in range(j + 1, m):
            for lo in range(d):
                for sign in (1, -1):
                    u = [0] * (m * d)
                    u[j * d:(j + 1) * d] = one
                    u[k * d + lo] = sign
                    points.append(tuple(u))
    return points


def probe_table(length: LengthFunction, squared: bool = False) -> dict[Point, Fraction | float]:
    """Lengths (or squared lengths) of ``length`` on the canonical probe set."""
    evaluate_at = length.evaluate_squared if squared else length.evaluate
    return {u: evaluate_at(u) for u in canonical_probes(length.order, length.m)}


def _lookup(table: Mapping[Point, Any], u: Point, squared: bool) -> Fraction | float:
    if u not in table:
        raise IncompleteProbeError(f"probe table is missing the point {list(u)}", u)
    value = table[u]
    if isinstance(value, int | Fraction) and not isinstance(value, bool):
        q = exact.to_fraction(value)
        return q if squared else q * q
    value = float(value)
    return value if squared else value * value


def gram_from_probes(
    table: Mapping[Point, Any],
    order: Order,
    m: int,
    squared: bool = False,
    tol: float = PROBE_TOLERANCE,
) -> MatK:
    """Reconstruct the Gram matrix from lengths on the canonical probe set.

    Diagonal entries are l(e_j)^2; off-diagonal entries come from the
    polarization scheme of the order basis. Each mirrored pair is also checked
    against the diagonal: l(e_j + e_k q)^2 + l(e_j - e_k q)^2 = 2(G_jj + |q|^2 G_kk).

    Raises:
        IncompleteProbeError: If a canonical probe is missing
        InconsistentLengthsError: If the lengths come from no PSD Gram matrix
    """
    algebra = order.algebra
    d = order.d
    points = canonical_probes(order, m)
    values = [_lookup(table, u, squared) for u in points]
    as_exact = all(isinstance(v, Fraction) for v in values)
    if not as_exact:
        values = [float(v) for v in values]
    scheme = scalars.solve_polarization(algebra, list(order.basis))
    if not as_exact:
        scheme = scalars.PolarizationScheme(
            algebra, scheme.probes, tuple(c.to_float() for c in scheme.coefficients)
        )

    zero = Scalar.zero(algebra, as_exact)
    grid = [[zero] * m for _ in range(m)]
    diag = values[:m]
    for j in range(m):
        if diag[j] < 0:
            raise InconsistentLengthsError(f"negative squared length at e_{j}")
        grid[j][j] = Scalar.real(algebra, diag[j])

    cursor = m
    for j in range(m):
        for k in range(j + 1, m):
            differences = []
            for lo in range(d):
                plus, minus = values[cursor], values[cursor + 1]
                cursor += 2
                predicted = 2 * (diag[j] + scalars.norm_squared(order.basis[lo]) * diag[k])
                observed = plus + minus
                if as_exact:
                    consistent = observed == predicted
                else:
                    consistent = abs(observed - float(predicted)) <= tol * max(
                        abs(float(predicted)), 1e-300
                    )
                if not consistent:
                    raise InconsistentLengthsError(
                        f"mirrored probes at (e_{j}, e_{k}, q_{lo}) disagree with the diagonal"
                    )
                differences.append(plus - minus)
            entry = scheme.recover(differences)
            grid[j][k] = entry
            grid[k][j] = scalars.conj(entry)

    gram = MatK.from_scalars(grid)
    try:
        _psd_real_check(matk.real_realization(gram), PSD_FLOOR)
    except NotPSDError as e:
        raise InconsistentLengthsError("reconstructed Gram matrix is not PSD") from e
    return gram


# systole


class Systole(NamedTuple):
    """Shortest nonzero lattice vector within a search bound."""

    found: bool
    value: Fraction | float | None
    witness: Point | None
    bound: float

    def to_document(self) -> dict[str, Any]:
        return {
            "found": self.found,
            "value": self.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "bound": self.bound,
        }


def _sign_normalized(u: Point) -> Point:
    first = next(x for x in u if x != 0)
    return u if first > 0 else tuple(-x for x in u)


def _witness_key(u: Point) -> tuple[int, int, Point]:
    first = next(i for i, x in enumerate(u) if x != 0)
    return sum(abs(x) for x in u), first, u


def _enumerate_ellipsoid(q: np.ndarray, bound_sq: float) -> list[Point]:
    """All nonzero integer u with u^T Q u <= bound_sq (Fincke-Pohst depth-first walk)."""
    r = np.linalg.cholesky(q).T
    n = r.shape[0]
    diag = np.diag(r)
    mu = r / diag[:, None]
    qd = diag**2
    slack = bound_sq * 1e-9 + 1e-12
    u = [0] * n
    found: list[Point] = []

    def walk(i: int, remaining: float) -> None:
        center = -sum(mu[i, j] * u[j] for j in range(i + 1, n))
        radius = math.sqrt(max(remaining + slack, 0.0) / qd[i])
        for x in range(math.ceil(center - radius), math.floor(center + radius) + 1):
            t = qd[i] * (x - center) ** 2
            if t > remaining + slack:
                continue
            u[i] = x
            if i == 0:
                if any(u):
                    found.append(tuple(u))
            else:
                walk(i - 1, remaining - t)
        u[i] = 0

    walk(n - 1, bound_sq)
    return found


def lattice_systole(length: LengthFunction, bound: float | None = None) -> Systole:
    """Minimum of l over nonzero lattice points.

    Without an explicit bound the search starts at sqrt(n) det(Q)^(1/2n) and
    doubles until a vector is found. The witness is sign-normalized (first
    nonzero coordinate positive) and ties are broken by L1 norm, then position
    of the first nonzero coordinate, then lexicographically.

    Raises:
        SingularGramError: If the Gram matrix is rank deficient
    """
    q = exact.to_float(length.quadratic_form)
    q = (q + q.T) / 2
    n = q.shape[0]
    values = np.linalg.eigvalsh(q)
    if values[-1] <= 0 or values[0] <= RANK_TOLERANCE * values[-1]:
        raise SingularGramError("systole needs a full-rank Gram matrix")

    explicit = bound is not None
    if bound is None:
        _, logdet = np.linalg.slogdet(q)
        bound = math.sqrt(n) * math.exp(logdet / (2 * n))
    search = float(bound)
    attempts = 1 if explicit else SYSTOLE_MAX_DOUBLINGS + 1
    candidates: list[Point] = []
    for attempt in range(attempts):
        candidates = _enumerate_ellipsoid(q, search * search)
        if candidates:
            break
        if attempt + 1 < attempts:
            logger.debug("no lattice vector below %.6g, doubling the bound", search)
            search *= 2
    if not candidates:
        return Systole(False, None, None, search)

    lengths = {u: float(np.array(u) @ q @ np.array(u)) for u in candidates}
    best = min(lengths.values())
    ties = {_sign_normalized(u) for u, v in lengths.items() if v <= best * (1 + SYSTOLE_TIE_RTOL)}
    witness = min(ties, key=_witness_key)
    return Systole(True, length.evaluate(witness), witness, search)


def thurston_action(g: MatK, cls: ProjectiveLengthClass) -> ProjectiveLengthClass:
    """Class of u -> ||f(g* u)||, i.e. Gram g G g*.

    Raises:
        SingularActionError: If g is not invertible
    """
    if g.algebra is not cls.algebra:
        raise AlgebraMismatchError("group element and class live over different algebras")
    if matk.is_singular(g):
        raise SingularActionError("acting matrix is singular")
    gram = g @ cls.gram @ matk.adjoint(g)
    return ProjectiveLengthClass.of(LengthFunction(gram, cls.length.order))
