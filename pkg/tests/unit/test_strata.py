"""Tests for symplectic splittings and split length functions."""

from fractions import Fraction
from unittest.mock import patch

import numpy as np
import pytest

from marked_lattices.algebra import sampling, strata
from marked_lattices.algebra.matk import MatK
from marked_lattices.algebra.strata import SymplecticSplitting, standard_splitting
from marked_lattices.algebra.symplectic import is_symplectic, is_unimodular
from marked_lattices.constants import Algebra
from marked_lattices.core import exact
from marked_lattices.core.errors import AlgebraMismatchError, BlockMismatchError, InvalidSplittingError


def real(rows) -> MatK:
    return MatK.from_real(Algebra.R, rows)


@pytest.fixture
def genus_two() -> SymplecticSplitting:
    return standard_splitting([1, 1])


@pytest.fixture
def split_gram(genus_two):
    return strata.psi_sigma(genus_two, [real([[4, 0], [0, Fraction(1, 4)]]), real([[1, 0], [0, 1]])])


class TestSplittings:
    """Tests for splitting validation."""

    def test_standard_blocks(self, genus_two):
        """Block j pairs p with g + p."""
        assert genus_two.blocks == ((0, 2), (1, 3))
        assert genus_two.genera == (1, 1)

    def test_blocks_must_partition(self):
        """Index 3 is missing."""
        with pytest.raises(InvalidSplittingError):
            SymplecticSplitting.create(2, [[0, 2], [1]])

    def test_blocks_must_be_orthogonal(self):
        """{e1, e2} and {f1, f2} pair nontrivially."""
        with pytest.raises(InvalidSplittingError):
            SymplecticSplitting.create(2, [[0, 1], [2, 3]])

    def test_basis_must_be_unimodular(self):
        """2 I is not a basis of Z^{2g}."""
        with pytest.raises(InvalidSplittingError):
            SymplecticSplitting.create(1, [[0, 1]], [[2, 0], [0, 2]])

    def test_random_splittings_validate(self, rng):
        """Random compositions composed with symplectic bases are splittings."""
        splitting = sampling.random_splitting(rng, 3)
        assert sum(splitting.genera) == 3
        assert is_unimodular(splitting.basis)


class TestAssembly:
    """Tests for assembling length functions from blocks."""

    def test_psi_sigma_on_coordinate_blocks(self, split_gram):
        """diag(4, 1/4) and I assemble to diag(4, 1, 1/4, 1)."""
        expected = exact.fraction_array(
            [[4, 0, 0, 0], [0, 1, 0, 0], [0, 0, Fraction(1, 4), 0], [0, 0, 0, 1]]
        )
        assert split_gram.exact
        assert np.all(split_gram.gram.real_part() == expected)

    def test_block_count_checked(self, genus_two):
        """Two blocks need two Grams."""
        with pytest.raises(BlockMismatchError):
            strata.psi_sigma(genus_two, [real([[1, 0], [0, 1]])])

    def test_block_size_checked(self, genus_two):
        """Genus-one blocks need 2x2 Grams."""
        with pytest.raises(BlockMismatchError):
            strata.psi_sigma(genus_two, [real([[1]]), real([[1, 0], [0, 1]])])

    def test_complex_gram_rejected(self, genus_two):
        """Splittings live over R."""
        with pytest.raises(AlgebraMismatchError):
            strata.psi_sigma(genus_two, [MatK.identity(Algebra.C, 2), MatK.identity(Algebra.C, 2)])

    def test_assembled_gram_splits(self, rng):
        """psi_sigma lands in the stratum of its splitting."""
        splitting = sampling.random_splitting(rng, 3, [1, 2])
        length = strata.psi_sigma(splitting, sampling.random_block_grams(rng, splitting, as_exact=True))
        assert strata.splits_along(length, splitting)

    def test_dense_gram_does_not_split(self, rng, genus_two):
        """A generic positive definite Gram has nonzero off-block entries."""
        assert not strata.splits_along(sampling.random_psd(rng, Algebra.R, 4), genus_two)


class TestRefinement:
    """Tests for refinement and detection."""

    def test_finer_splitting_refines_coarse(self, genus_two):
        """[1, 1] refines the trivial splitting [2], not the reverse."""
        coarse = standard_splitting([2])
        assert strata.refines(genus_two, coarse)
        assert not strata.refines(coarse, genus_two)

    def test_detection_reports_the_finest(self, split_gram, genus_two):
        """Both candidates accept; only [1, 1] is finest."""
        detection = strata.detect_splitting(split_gram, [standard_splitting([2]), genus_two])
        assert detection.accepted == (0, 1)
        assert detection.finest == (1,)
        assert detection.to_document() == {"accepted": [0, 1], "finest": [1], "disagreements": []}

    def test_both_criteria_are_reported(self, split_gram, genus_two):
        """An exact split Gram passes the Gram criterion and the quadratic identity."""
        check = strata.check_splitting(split_gram, genus_two)
        assert check.to_document() == {"splits": True, "cross_check": True}
        assert check.agrees

    def test_dense_gram_fails_both_criteria(self, rng, genus_two):
        """Both tests reject a coupled Gram."""
        check = strata.check_splitting(sampling.random_psd(rng, Algebra.R, 4), genus_two)
        assert check == (False, False)

    def test_disagreement_is_recorded(self, split_gram, genus_two):
        """The Gram verdict stands and the candidate is listed as disagreeing."""
        with patch("marked_lattices.algebra.strata._quadratic_cross_check", return_value=False):
            detection = strata.detect_splitting(split_gram, [standard_splitting([2]), genus_two])
        assert detection.accepted == (0, 1)
        assert detection.disagreements == (0, 1)

    def test_detection_needs_candidates(self, split_gram):
        """An empty candidate list is an error."""
        with pytest.raises(ValueError):
            strata.detect_splitting(split_gram, [])


class TestInvolution:
    """Tests for the block sign involution."""

    def test_involution_is_integral_symplectic(self, rng):
        """P D P^{-1} is in Sp_{2g}(Z) and squares to the identity."""
        splitting = sampling.random_splitting(rng, 3, [1, 2])
        t = strata.splitting_involution(splitting, 0)
        assert is_symplectic(t)
        assert is_unimodular(t)
        assert np.all(t @ t == exact.identity(6))

    def test_involution_preserves_split_grams(self, split_gram, genus_two):
        """T^T G T = G for G in the stratum."""
        t = strata.splitting_involution(genus_two, 1)
        g = split_gram.gram.real_part()
        assert np.all(t.T @ g @ t == g)
