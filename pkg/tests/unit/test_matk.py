"""Tests for matrices over R, C and H."""

from fractions import Fraction

import numpy as np
import pytest

from marked_lattices.algebra import matk, sampling
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.scalars import Scalar
from marked_lattices.constants import Algebra
from marked_lattices.core import exact
from marked_lattices.core.errors import AlgebraMismatchError, NotHermitianError, NotPSDError


class TestConstruction:
    """Tests for building matrices."""

    def test_from_real_integers_is_exact(self):
        """Integer input selects the exact path."""
        a = MatK.from_real(Algebra.C, [[1, 2], [3, 4]])
        assert a.exact
        assert a.entry(1, 0) == Scalar.from_coords(Algebra.C, [3, 0])

    def test_from_real_floats_is_float(self):
        """Float input selects the floating path."""
        assert not MatK.from_real(Algebra.H, [[1.5]]).exact

    def test_entry_shape_is_checked(self):
        """A quaternionic matrix needs four coordinates per entry."""
        with pytest.raises(ValueError):
            MatK(Algebra.H, np.zeros((2, 2, 2)))

    def test_mixed_algebras_rejected(self):
        """from_scalars refuses entries over different algebras."""
        with pytest.raises(AlgebraMismatchError):
            MatK.from_scalars([[Scalar.one(Algebra.C), Scalar.one(Algebra.H)]])

    def test_m_requires_square(self):
        """m is only defined for square matrices."""
        with pytest.raises(ValueError):
            _ = MatK.zeros(Algebra.R, 2, 3).m


class TestRealizations:
    """Tests for the complex and real realizations."""

    def test_eta_is_multiplicative(self, rng):
        """eta(A B) = eta(A) eta(B)."""
        a = sampling.random_matk(rng, Algebra.H, 3)
        b = sampling.random_matk(rng, Algebra.H, 3)
        np.testing.assert_allclose(matk.eta(a @ b), matk.eta(a) @ matk.eta(b), atol=1e-10)

    def test_eta_of_adjoint_is_conjugate_transpose(self, rng):
        """eta(M*) = eta(M)*."""
        a = sampling.random_matk(rng, Algebra.H, 2)
        np.testing.assert_allclose(matk.eta(matk.adjoint(a)), matk.eta(a).conj().T, atol=1e-12)

    def test_exact_eta_matches_float_eta(self, rng):
        """The rational (real, imaginary) blocks agree with the complex eta."""
        a = sampling.random_matk(rng, Algebra.H, 2, as_exact=True)
        blocks = exact.to_float(matk.eta_exact(a))
        np.testing.assert_allclose(blocks[0] + 1j * blocks[1], matk.eta(a), atol=1e-12)

    def test_eta_rejects_complex_input(self):
        """eta is quaternionic only."""
        with pytest.raises(AlgebraMismatchError):
            matk.eta(MatK.identity(Algebra.C, 2))

    def test_from_complex_inverts_to_complex(self, rng):
        """Reading back the left block column recovers the quaternionic matrix."""
        a = sampling.random_matk(rng, Algebra.H, 3)
        assert matk.allclose(matk.from_complex(Algebra.H, matk.to_complex(a)), a)

    def test_real_realization_of_adjoint_is_transpose(self, rng):
        """The adjoint acts by the transpose on real coordinates, exactly."""
        a = sampling.random_matk(rng, Algebra.O, 2, as_exact=True)
        left = matk.real_realization(matk.adjoint(a))
        right = matk.real_realization(a).T
        assert bool(np.all(left == right))


class TestSpectral:
    """Tests for eigendecomposition, square roots and polar decomposition."""

    @pytest.mark.parametrize("algebra", [Algebra.R, Algebra.C, Algebra.H])
    def test_eig_reconstructs(self, rng, algebra):
        """U diag(D) U* gives back the matrix, with U unitary and D nonincreasing."""
        a = sampling.random_psd(rng, algebra, 3)
        decomposition = matk.hermitian_eig(a)
        assert matk.allclose(matk.reconstruct(decomposition), a, tol=1e-9)
        assert matk.is_unitary(decomposition.U, tol=1e-9)
        assert np.all(np.diff(decomposition.D) <= 1e-12)

    def test_quaternionic_eig_with_repeated_eigenvalue(self):
        """The identity has one cluster that still splits into quaternionic columns."""
        decomposition = matk.hermitian_eig(MatK.identity(Algebra.H, 3, as_exact=False))
        np.testing.assert_allclose(decomposition.D, [1.0, 1.0, 1.0])
        assert matk.is_unitary(decomposition.U, tol=1e-9)

    @pytest.mark.parametrize("algebra", [Algebra.R, Algebra.C, Algebra.H])
    def test_psd_sqrt_squares_back(self, rng, algebra):
        """sqrt(P)^2 = P."""
        p = sampling.random_psd(rng, algebra, 3)
        root = matk.psd_sqrt(p)
        assert matk.is_hermitian(root, tol=1e-9)
        assert matk.allclose(root @ root, p, tol=1e-9)

    def test_psd_sqrt_of_rank_deficient(self, rng):
        """Rank-one PSD matrices still have a square root."""
        p = sampling.random_psd(rng, Algebra.C, 3, rank=1)
        root = matk.psd_sqrt(p)
        assert matk.allclose(root @ root, p, tol=1e-8)

    def test_negative_eigenvalue_rejected(self):
        """diag(1, -1) is not PSD."""
        with pytest.raises(NotPSDError):
            matk.psd_sqrt(MatK.from_real(Algebra.R, [[1.0, 0.0], [0.0, -1.0]]))

    def test_non_hermitian_rejected(self):
        """An upper triangular matrix is not Hermitian."""
        with pytest.raises(NotHermitianError):
            matk.hermitian_eig(MatK.from_real(Algebra.C, [[1.0, 1.0], [0.0, 1.0]]))

    def test_hermitian_psd_rank(self, rng):
        """Rank counts eigenvalues above the relative floor."""
        p = matk.HermitianPSD.from_matrix(sampling.random_psd(rng, Algebra.H, 3, rank=2))
        assert p.rank() == 2
        assert matk.allclose(p.sqrt().matrix @ p.sqrt().matrix, p.matrix, tol=1e-8)

    @pytest.mark.parametrize("algebra", [Algebra.R, Algebra.C, Algebra.H])
    def test_polar_factors(self, rng, algebra):
        """M = P U with P PSD and U unitary."""
        a = sampling.random_invertible(rng, algebra, 3)
        p, u = matk.polar(a)
        assert matk.is_unitary(u, tol=1e-9)
        assert matk.allclose(p @ u, a, tol=1e-9)

    def test_polar_of_singular_quaternionic(self, rng):
        """A singular quaternionic matrix still gets a unitary factor."""
        f = sampling.random_matk(rng, Algebra.H, 3, 2)
        a = f @ matk.adjoint(sampling.random_matk(rng, Algebra.H, 3, 2))
        p, u = matk.polar(a)
        assert matk.is_unitary(u, tol=1e-8)
        assert matk.allclose(p @ u, a, tol=1e-8)

    def test_polar_rejects_octonions(self):
        """Octonionic matrices have no polar decomposition here."""
        with pytest.raises(AlgebraMismatchError):
            matk.polar(MatK.identity(Algebra.O, 2))


class TestDeterminants:
    """Tests for singularity and determinants."""

    def test_exact_real_determinant(self):
        """|det| of an exact real matrix is a Fraction."""
        a = MatK.from_real(Algebra.R, [[2, 1], [0, Fraction(-3, 2)]])
        assert matk.dieudonne_det(a) == Fraction(3)

    def test_quaternionic_determinant_of_scaled_identity(self):
        """Dieudonne determinant of 2 I_2 over H is 4."""
        a = MatK.identity(Algebra.H, 2, as_exact=False).scale(2.0)
        assert matk.dieudonne_det(a) == pytest.approx(4.0)

    def test_exact_singularity(self):
        """Rank-one exact real matrices are singular."""
        assert matk.is_singular(MatK.from_real(Algebra.R, [[1, 2], [2, 4]]))
        assert not matk.is_singular(MatK.identity(Algebra.R, 2))

    def test_exact_inverse(self):
        """The exact inverse multiplies back to the identity."""
        a = MatK.from_real(Algebra.R, [[2, 1], [1, 1]])
        assert matk.allclose(a @ matk.inverse(a), MatK.identity(Algebra.R, 2))


class TestIsometries:
    """Tests for unitary witnesses."""

    def test_witness_maps_a_to_b(self, rng):
        """K a = b for b = U a."""
        a = sampling.random_invertible(rng, Algebra.H, 3)
        u = sampling.random_unitary(rng, Algebra.H, 3)
        b = u @ a
        witness = matk.isometry_witness(a, b)
        assert witness is not None
        assert matk.allclose(witness @ a, b, tol=1e-8)

    def test_no_witness_for_different_grams(self):
        """Different a*a means no isometry."""
        a = MatK.identity(Algebra.C, 2, as_exact=False)
        assert matk.isometry_witness(a, a.scale(2.0)) is None
