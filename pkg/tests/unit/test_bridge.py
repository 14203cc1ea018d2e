"""Tests for Satake points, the map xi and boundary limits."""

import numpy as np
import pytest

from marked_lattices.algebra import bridge, lattices, matk, sampling
from marked_lattices.algebra.bridge import DegenerationFamily, SatakePoint
from marked_lattices.algebra.matk import MatK
from marked_lattices.constants import Algebra, FamilyKind
from marked_lattices.core.errors import (
    ClassMismatchError,
    NoConvergenceError,
    NotPSDError,
    SingularActionError,
    SingularMarkingError,
)


class TestSatakePoints:
    """Tests for the Satake model and its identification with length classes."""

    def test_xi_agrees_with_phi_exactly(self):
        """xi(g g*) and phi(g*) are the same class."""
        g = MatK.from_real(Algebra.R, [[2, 1], [0, 3]])
        left = bridge.xi(bridge.satake_point(g))
        right = lattices.phi(bridge.interior_lattice(g))
        assert bridge.classes_equal(left, right)

    @pytest.mark.parametrize("algebra", [Algebra.C, Algebra.H])
    def test_xi_agrees_with_phi(self, rng, algebra):
        """Same identity on the floating path."""
        g = sampling.random_invertible(rng, algebra, 3)
        assert bridge.classes_equal(
            bridge.xi(bridge.satake_point(g)), lattices.phi(bridge.interior_lattice(g))
        )

    def test_xi_is_equivariant(self, rng):
        """xi(h . a) = h . xi(a)."""
        a = SatakePoint.of(sampling.random_psd(rng, Algebra.H, 2, rank=1))
        h = sampling.random_invertible(rng, Algebra.H, 2)
        moved = bridge.xi(bridge.satake_action(h, a))
        assert bridge.classes_equal(moved, lattices.thurston_action(h, bridge.xi(a)))

    def test_boundary_point_rank(self, rng):
        """A rank-one PSD matrix is a boundary point."""
        a = SatakePoint.of(sampling.random_psd(rng, Algebra.C, 3, rank=1))
        assert a.rank() == 1
        assert not a.is_interior()

    def test_not_psd(self):
        """Satake points come from PSD matrices."""
        with pytest.raises(NotPSDError):
            SatakePoint.of(MatK.from_real(Algebra.R, [[1.0, 0.0], [0.0, -2.0]]))

    def test_singular_group_element(self):
        """Only invertible g give interior points."""
        with pytest.raises(SingularActionError):
            bridge.satake_point(MatK.from_real(Algebra.R, [[1, 1], [1, 1]]))

    def test_mismatched_classes(self):
        """Comparing 2x2 with 3x3 classes is an error."""
        x = SatakePoint.of(MatK.identity(Algebra.R, 2))
        y = SatakePoint.of(MatK.identity(Algebra.R, 3))
        with pytest.raises(ClassMismatchError):
            bridge.classes_equal(x, y)

    def test_different_classes(self):
        """diag(1, 2) and the identity are different classes."""
        x = SatakePoint.of(MatK.from_real(Algebra.R, [[1, 0], [0, 2]]))
        y = SatakePoint.of(MatK.identity(Algebra.R, 2))
        assert not bridge.classes_equal(x, y)


class TestBoundaryLimits:
    """Tests for limits of degeneration families."""

    def test_diag_power_reaches_the_boundary(self):
        """diag(t^2, 1) degenerates to the rank-one class diag(1, 0)."""
        family = DegenerationFamily.diag_power([1.0, 1.0], [2.0, 0.0])
        limit = bridge.boundary_limit(family)
        assert limit.rank == 1
        assert not limit.interior
        np.testing.assert_allclose(limit.point.gram.real_part().astype(float), [[1.0, 0.0], [0.0, 0.0]], atol=1e-12)

    def test_slow_family_does_not_converge(self):
        """diag(t, 1) moves by about 1e-4 over the last three samples."""
        family = DegenerationFamily.diag_power([1.0, 1.0], [1.0, 0.0])
        with pytest.raises(NoConvergenceError) as info:
            bridge.boundary_limit(family)
        assert info.value.gap > 1e-6
        assert len(info.value.last_grams) == 2

    def test_wider_tolerance_accepts_slow_family(self):
        """The same family passes a looser Cauchy test."""
        family = DegenerationFamily.diag_power([1.0, 1.0], [1.0, 0.0])
        assert bridge.boundary_limit(family, rtol=1e-3).samples == 3

    def test_oscillating_family(self):
        """Alternating samples never settle."""
        a = MatK.from_real(Algebra.R, [[1, 0], [0, 1]])
        b = MatK.from_real(Algebra.R, [[2, 0], [0, 1]])
        with pytest.raises(NoConvergenceError):
            bridge.boundary_limit(DegenerationFamily.explicit([a, b, a, b, a]))

    def test_constant_family_is_interior(self):
        """A constant family converges to its own class."""
        f = MatK.from_real(Algebra.R, [[2, 1], [0, 1]])
        limit = bridge.boundary_limit(DegenerationFamily.explicit([f, f, f]))
        assert limit.interior
        assert limit.gap == 0.0
        expected = SatakePoint.of(matk.adjoint(f) @ f)
        assert bridge.classes_equal(limit.point, expected)

    def test_regularized_family_recovers_the_target(self, rng):
        """sqrt(a) + I/(n+1) tends to the class of a."""
        target = sampling.random_psd(rng, Algebra.C, 3, rank=1)
        family = DegenerationFamily.regularized(target)
        assert family.kind is FamilyKind.REGULARIZED
        limit = bridge.boundary_limit(family)
        assert limit.rank == 1
        assert bridge.classes_equal(limit.point, SatakePoint.of(target), tol=1e-6)

    @staticmethod
    def _distances_to_target(rows, schedule):
        target = MatK.from_real(Algebra.R, rows)
        expected = lattices.normalize_gram(target).to_float()
        family = DegenerationFamily.regularized(target, schedule)
        return [(g - expected).frobenius_norm() for g in family.normalized_grams()]

    def test_regularized_decay_with_unequal_eigenvalues(self):
        """diag(4, 1, 0) is approached at rate 1/n, about 2.3e-5 at n = 10^4."""
        near, far = self._distances_to_target([[4, 0, 0], [0, 1, 0], [0, 0, 0]], [10**4, 10**5])
        assert 1e-5 < near < 1e-4
        assert 0.09 < far / near < 0.11

    def test_regularized_decay_with_equal_eigenvalues(self):
        """A rank-one target is approached at rate 1/n^2, below 1e-6 by n = 10^4."""
        near, far = self._distances_to_target([[1, 1], [1, 1]], [10**4, 10**5])
        assert near < 1e-6
        assert 0.008 < far / near < 0.012

    def test_rescaling_does_not_move_the_limit(self):
        """Positive factors leave every normalized Gram unchanged."""
        family = DegenerationFamily.diag_power([1.0, 2.0], [2.0, 0.0])
        rescaled = family.rescaled([1.0, 0.5, 3.0, 7.0, 0.1])
        for a, b in zip(family.normalized_grams(), rescaled.normalized_grams(), strict=True):
            assert matk.allclose(a, b, tol=1e-12)

    def test_singular_sample(self):
        """Family samples must be invertible."""
        with pytest.raises(SingularMarkingError):
            DegenerationFamily.explicit([MatK.from_real(Algebra.R, [[1, 1], [1, 1]])])

    def test_mismatched_power_lengths(self):
        """Base and exponents must pair up."""
        with pytest.raises(ValueError):
            DegenerationFamily.diag_power([1.0, 1.0], [1.0])
