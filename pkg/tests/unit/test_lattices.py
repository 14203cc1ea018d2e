"""Tests for orders, length functions, probe reconstruction and systoles."""

import math
from fractions import Fraction

import pytest

from marked_lattices.algebra import lattices, matk, sampling
from marked_lattices.algebra.lattices import (
    LengthFunction,
    MarkedLattice,
    Order,
    ProjectiveLengthClass,
    named_order,
)
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.scalars import Scalar
from marked_lattices.constants import Algebra
from marked_lattices.core.errors import (
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

Z = named_order("Z")


def real_gram(rows) -> MatK:
    return MatK.from_real(Algebra.R, rows)


class TestOrders:
    """Tests for order validation."""

    def test_hurwitz_contains_half_units(self):
        """(1 + i + j + k) / 2 is a Hurwitz integer."""
        hurwitz = named_order("hurwitz")
        assert hurwitz.contains(Scalar.from_coords(Algebra.H, [Fraction(1, 2)] * 4))
        assert not hurwitz.contains(Scalar.from_coords(Algebra.H, [Fraction(1, 2), Fraction(1, 2), 0, 0]))

    def test_non_maximal_order_is_accepted(self):
        """Z[2i] is an order of C."""
        basis = [Scalar.one(Algebra.C), Scalar.from_coords(Algebra.C, [0, 2])]
        assert Order.from_basis(Algebra.C, basis).contains(Scalar.from_coords(Algebra.C, [-4, 0]))

    def test_products_must_stay_in_the_order(self):
        """i/2 squares to -1/4, outside Z + Z i/2."""
        basis = [Scalar.one(Algebra.C), Scalar.from_coords(Algebra.C, [0, Fraction(1, 2)])]
        with pytest.raises(InvalidOrderError):
            Order.from_basis(Algebra.C, basis)

    def test_dependent_basis_rejected(self):
        """1 and 2 do not span Z[i]."""
        with pytest.raises(InvalidOrderError):
            Order.from_basis(Algebra.C, [Scalar.one(Algebra.C), Scalar.real(Algebra.C, 2)])

    def test_unknown_name(self):
        """Only the built-in names resolve."""
        with pytest.raises(InvalidOrderError):
            named_order("eisenstein")


class TestLengthFunction:
    """Tests for evaluation and validation of length functions."""

    def test_exact_evaluation(self):
        """Perfect squares give exact lengths."""
        length = LengthFunction.from_gram(real_gram([[4, 0], [0, 9]]), Z)
        assert length.evaluate([1, 0]) == Fraction(2)
        assert length.evaluate([0, 1]) == Fraction(3)
        assert length.evaluate([1, 1]) == pytest.approx(math.sqrt(13))

    def test_hurwitz_coordinates(self):
        """The last Hurwitz basis element has norm 1."""
        length = LengthFunction.from_gram(MatK.identity(Algebra.H, 1), named_order("hurwitz"))
        assert length.evaluate_squared([0, 0, 0, 1]) == Fraction(1)
        assert length.evaluate_squared([1, 0, 0, -1]) == Fraction(1)

    def test_wrong_point_size(self):
        """Points need m * d coordinates."""
        length = LengthFunction.from_gram(MatK.identity(Algebra.C, 2), named_order("Zi"))
        with pytest.raises(ValueError):
            length.evaluate([1, 0])

    def test_not_hermitian(self):
        """Non-symmetric real Grams are rejected."""
        with pytest.raises(NotHermitianError):
            LengthFunction.from_gram(real_gram([[1, 1], [0, 1]]), Z)

    def test_not_psd(self):
        """Negative eigenvalues are rejected."""
        with pytest.raises(NotPSDError):
            LengthFunction.from_gram(real_gram([[1, 0], [0, -1]]), Z)

    def test_rank_over_the_algebra(self, rng):
        """A rank-one quaternionic Gram has rank 1."""
        length = LengthFunction.from_gram(sampling.random_psd(rng, Algebra.H, 3, rank=1))
        assert length.rank() == 1
        assert not lattices.is_proper(length)


class TestClasses:
    """Tests for projective classes and the embedding."""

    def test_normalization_has_unit_trace(self):
        """Classes are stored with real trace 1."""
        cls = ProjectiveLengthClass.from_gram(real_gram([[4, 0], [0, 9]]), Z)
        assert cls.gram.real_trace() == 1
        assert cls.gram.entry(0, 0).coords[0] == Fraction(4, 13)

    def test_zero_gram_has_no_class(self):
        """The zero matrix has no trace to normalize by."""
        with pytest.raises(ZeroMarkingError):
            lattices.normalize_gram(MatK.zeros(Algebra.R, 2, 2))

    def test_phi_uses_f_star_f(self):
        """The class of diag(2, 3) is diag(4, 9) / 13."""
        cls = lattices.phi(MarkedLattice(Z, real_gram([[2, 0], [0, 3]])))
        assert matk.allclose(cls.gram, real_gram([[Fraction(4, 13), 0], [0, Fraction(9, 13)]]))
        assert cls.is_interior()

    def test_phi_rejects_zero_marking(self):
        """The zero marking has no class."""
        with pytest.raises(ZeroMarkingError):
            lattices.phi(MarkedLattice(Z, MatK.zeros(Algebra.R, 2, 2)))

    def test_phi_is_unitarily_invariant(self, rng):
        """U f and f give the same class."""
        order = lattices.default_order(Algebra.H)
        f = sampling.random_invertible(rng, Algebra.H, 3)
        u = sampling.random_unitary(rng, Algebra.H, 3)
        left = lattices.phi(MarkedLattice(order, f))
        right = lattices.phi(MarkedLattice(order, u @ f))
        assert lattices.class_distance(left, right) < 1e-9

    def test_covolume_and_normalization(self):
        """diag(2, 3) has covolume 6 and normalizes to determinant 1."""
        lattice = MarkedLattice(Z, real_gram([[2, 0], [0, 3]]))
        assert lattice.covolume() == 6
        assert matk.dieudonne_det(lattice.normalized().f) == pytest.approx(1.0)

    def test_singular_marking_cannot_normalize(self):
        """Rank-one markings have no covolume-1 representative."""
        with pytest.raises(SingularMarkingError):
            MarkedLattice(Z, real_gram([[1, 2], [2, 4]])).normalized()

    def test_interior_margin_is_smallest_eigenvalue(self):
        """diag(1, 3) / 4 has margin 1/4."""
        cls = ProjectiveLengthClass.from_gram(real_gram([[1, 0], [0, 3]]), Z)
        assert lattices.interior_margin(cls) == pytest.approx(0.25)


class TestProbes:
    """Tests for Gram reconstruction from probe lengths."""

    def test_probe_count(self):
        """m points e_j plus two per (j < k, basis element)."""
        assert len(lattices.canonical_probes(named_order("hurwitz"), 3)) == 3 + 3 * 2 * 4

    @pytest.mark.parametrize("name", ["Z", "Zi", "hurwitz", "Zo"])
    def test_exact_reconstruction(self, rng, name):
        """Squared lengths on the probes give back the Gram exactly."""
        order = named_order(name)
        algebra = order.algebra
        grid = [[Scalar.real(algebra, 100)] * 3 for _ in range(3)]
        for j in range(3):
            for k in range(j + 1, 3):
                grid[j][k] = sampling.random_scalar(rng, algebra, as_exact=True)
                grid[k][j] = grid[j][k].conj()
        gram = MatK.from_scalars(grid)
        length = LengthFunction.from_gram(gram, order)
        recovered = lattices.gram_from_probes(lattices.probe_table(length, squared=True), order, 3, squared=True)
        assert recovered.exact
        assert matk.allclose(recovered, gram)

    def test_float_reconstruction_from_lengths(self, rng):
        """Unsquared floating lengths reconstruct within tolerance."""
        order = named_order("Zi")
        gram = sampling.random_psd(rng, Algebra.C, 3)
        length = LengthFunction.from_gram(gram, order)
        recovered = lattices.gram_from_probes(lattices.probe_table(length), order, 3)
        assert matk.allclose(recovered, gram, tol=1e-9)

    def test_missing_probe(self):
        """Every canonical probe must be present."""
        table = lattices.probe_table(LengthFunction(MatK.identity(Algebra.R, 2), Z), squared=True)
        del table[(1, -1)]
        with pytest.raises(IncompleteProbeError):
            lattices.gram_from_probes(table, Z, 2, squared=True)

    def test_inconsistent_mirror_pair(self):
        """l(e1 + e2)^2 + l(e1 - e2)^2 must equal 2 (l(e1)^2 + l(e2)^2)."""
        table = {(1, 0): 1, (0, 1): 1, (1, 1): 5, (1, -1): 2}
        with pytest.raises(InconsistentLengthsError):
            lattices.gram_from_probes(table, Z, 2, squared=True)


class TestSystole:
    """Tests for the shortest-vector search."""

    def test_diagonal(self):
        """diag(4, 9) has systole 2 at (1, 0)."""
        systole = lattices.lattice_systole(LengthFunction(real_gram([[4, 0], [0, 9]]), Z))
        assert systole.found
        assert systole.value == Fraction(2)
        assert systole.witness == (1, 0)

    def test_hexagonal_tie_break(self):
        """Three minimal vectors tie; the smallest L1 norm with earliest support wins."""
        systole = lattices.lattice_systole(LengthFunction(real_gram([[2, 1], [1, 2]]), Z))
        assert systole.witness == (1, 0)
        assert systole.value == pytest.approx(math.sqrt(2))

    def test_explicit_bound_can_miss(self):
        """Nothing below 1 in diag(4, 9)."""
        systole = lattices.lattice_systole(LengthFunction(real_gram([[4, 0], [0, 9]]), Z), bound=1.0)
        assert not systole.found
        assert systole.value is None

    def test_singular_gram(self):
        """Rank-deficient Grams have no systole."""
        with pytest.raises(SingularGramError):
            lattices.lattice_systole(LengthFunction(real_gram([[1, 1], [1, 1]]), Z))


class TestThurstonAction:
    """Tests for the group action on classes."""

    def test_action_composes(self):
        """g . (h . x) = (g h) . x exactly."""
        x = ProjectiveLengthClass.from_gram(real_gram([[2, 1], [1, 3]]), Z)
        g = real_gram([[1, 1], [0, 1]])
        h = real_gram([[2, 0], [1, 1]])
        left = lattices.thurston_action(g, lattices.thurston_action(h, x))
        right = lattices.thurston_action(g @ h, x)
        assert matk.allclose(left.gram, right.gram)

    def test_singular_action(self):
        """Singular matrices do not act."""
        x = ProjectiveLengthClass.from_gram(MatK.identity(Algebra.R, 2), Z)
        with pytest.raises(SingularActionError):
            lattices.thurston_action(real_gram([[1, 2], [2, 4]]), x)
