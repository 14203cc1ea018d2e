"""Tests for scalar algebra arithmetic and polarization."""

import math
from fractions import Fraction
from unittest.mock import patch

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from marked_lattices.algebra import scalars
from marked_lattices.algebra.scalars import Scalar
from marked_lattices.constants import Algebra
from marked_lattices.core.errors import AlgebraMismatchError, DegenerateProbeError
from marked_lattices.tools.suites import octo as octo_suite

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def octonions(elements: st.SearchStrategy) -> st.SearchStrategy:
    return st.lists(elements, min_size=8, max_size=8).map(lambda c: Scalar.from_coords(Algebra.O, c))


def e(index: int) -> Scalar:
    return Scalar.unit(Algebra.O, index)


# Row a lists e_a e_b for b = 1..7 as signed unit indices; None marks e_a e_a = -1.
PRODUCT_ROWS = {
    1: (None, 4, 7, -2, 6, -5, -3),
    2: (-4, None, 5, 1, -3, 7, -6),
    3: (-7, -5, None, 6, 2, -4, 1),
    4: (2, -1, -6, None, 7, 3, -5),
    5: (-6, 3, -2, -7, None, 1, 4),
    6: (5, -7, 4, -3, -1, None, 2),
    7: (3, 6, -1, 5, -4, -2, None),
}
PRODUCTS = [
    (a, b, -1 if cell is None else (1 if cell > 0 else -1), 0 if cell is None else abs(cell))
    for a, row in PRODUCT_ROWS.items()
    for b, cell in enumerate(row, start=1)
]


class TestOctonionTable:
    """Tests for the parsed multiplication table."""

    def test_table_has_49_entries(self):
        """Every product e_a e_b with a, b in 1..7 is listed."""
        assert len(scalars.parse_octonion_table()) == 49

    @pytest.mark.parametrize(("a", "b", "sign", "c"), PRODUCTS)
    def test_every_product(self, a, b, sign, c):
        """e_a e_b matches the reference row for e_a."""
        assert e(a) * e(b) == e(c).scale(Fraction(sign))
        assert scalars.parse_octonion_table()[(a, b)] == (sign, c)

    def test_e3_e5_is_e2(self):
        """The product off the quaternion triple: e3 e5 = e2, e5 e3 = -e2."""
        assert e(3) * e(5) == e(2)
        assert e(5) * e(3) == -e(2)

    def test_oriented_lines_give_the_same_products(self):
        """The seven oriented lines generate exactly the reference rows."""
        assert octo_suite.fano_products() == {(a, b): (sign, c) for a, b, sign, c in PRODUCTS}

    def test_table_check_passes(self):
        """The exhaustive table property holds."""
        assert octo_suite.octonion_table(np.random.default_rng(0), 1e-9) is None

    def test_table_check_reports_a_flipped_product(self):
        """Negating e3 e5 alone is caught and named."""
        original = scalars.mul

        def flipped(x, y):
            product = original(x, y)
            return -product if (x, y) == (e(3), e(5)) else product

        with patch("marked_lattices.algebra.scalars.mul", side_effect=flipped):
            counterexample = octo_suite.octonion_table(np.random.default_rng(0), 1e-9)

        assert counterexample is not None
        assert counterexample["units"] == [3, 5]
        assert counterexample["observed"] == -e(2)

    def test_e1_e2_is_e4(self):
        """The quaternion triple (e1, e2, e4) multiplies as (i, j, k)."""
        assert e(1) * e(2) == e(4)
        assert e(2) * e(1) == -e(4)

    def test_units_square_to_minus_one(self):
        """Imaginary units square to -1."""
        for a in range(1, 8):
            assert e(a) * e(a) == -Scalar.one(Algebra.O)

    def test_octonions_are_not_associative(self):
        """(e1 e2) e3 and e1 (e2 e3) differ by a sign."""
        assert (e(1) * e(2)) * e(3) == -(e(1) * (e(2) * e(3)))
        assert (e(1) * e(2)) * e(3) != e(1) * (e(2) * e(3))

    def test_quaternions_embed_as_span_e0_e1_e2_e4(self):
        """i j = k inside H."""
        i, j, k = (Scalar.unit(Algebra.H, c) for c in (1, 2, 3))
        assert i * j == k
        assert j * k == i
        assert k * i == j


class TestArithmetic:
    """Tests for exact and floating arithmetic."""

    def test_exact_norm_squared(self):
        """Norm squared is exact on rational coordinates."""
        x = Scalar.from_coords(Algebra.O, range(1, 9))
        assert scalars.norm_squared(x) == Fraction(204)

    def test_conjugate_negates_imaginary_part(self):
        """conj(a + b i) = a - b i."""
        z = Scalar.from_coords(Algebra.C, [3, 4])
        assert z.conj() == Scalar.from_coords(Algebra.C, [3, -4])
        assert (z * z.conj()) == Scalar.real(Algebra.C, 25)

    def test_mixed_algebras_rejected(self):
        """Adding a complex and a quaternionic scalar raises."""
        with pytest.raises(AlgebraMismatchError):
            _ = Scalar.one(Algebra.C) + Scalar.one(Algebra.H)

    def test_wrong_coordinate_count_rejected(self):
        """A quaternion needs four coordinates."""
        with pytest.raises(ValueError):
            Scalar(Algebra.H, (Fraction(1),))

    @settings(max_examples=200, deadline=None)
    @given(octonions(finite), octonions(finite))
    def test_norm_multiplicativity(self, x, y):
        """||x y|| = ||x|| ||y|| for floating octonions."""
        expected = scalars.norm(x) * scalars.norm(y)
        assert math.isclose(scalars.norm(x * y), expected, rel_tol=1e-12, abs_tol=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(octonions(rationals), octonions(rationals))
    def test_alternativity(self, x, y):
        """x (x y) = (x x) y exactly."""
        assert x * (x * y) == (x * x) * y


class TestPolarization:
    """Tests for recovery of inner products from norms."""

    @settings(max_examples=30, deadline=None)
    @given(
        st.sampled_from(list(Algebra)),
        st.lists(rationals, min_size=16, max_size=16),
        st.lists(rationals, min_size=16, max_size=16),
    )
    def test_exact_recovery_in_every_algebra(self, algebra, left, right):
        """<u|v> is recovered exactly from the 2d norm differences."""
        d = algebra.dim
        u = [Scalar.from_coords(algebra, left[k * d:(k + 1) * d]) for k in range(2)]
        v = [Scalar.from_coords(algebra, right[k * d:(k + 1) * d]) for k in range(2)]
        scheme = scalars.solve_polarization(algebra, scalars.standard_probes(algebra))
        assert scheme.inner_product(u, v) == scalars.hermitian_product(u, v)

    def test_real_scheme_coefficient(self):
        """Over R the single coefficient is 1/4."""
        scheme = scalars.solve_polarization(Algebra.R, scalars.standard_probes(Algebra.R))
        assert scheme.real_coefficients == (Fraction(1, 4),)

    def test_complex_closed_form(self):
        """Probes (1, tau) use the closed two-probe formula."""
        tau = Scalar.from_coords(Algebra.C, [1, 2])
        scheme = scalars.complex_polarization(tau)
        u = [Scalar.from_coords(Algebra.C, [2, -1])]
        v = [Scalar.from_coords(Algebra.C, [Fraction(1, 3), 5])]
        assert scheme.inner_product(u, v) == scalars.hermitian_product(u, v)

    def test_octonionic_real_coefficients(self):
        """recover_real returns the real part of the recovered value."""
        scheme = scalars.solve_polarization(Algebra.O, scalars.standard_probes(Algebra.O))
        u = [e(3), Scalar.from_coords(Algebra.O, [1, 0, 2, 0, 0, 1, 0, 0])]
        v = [e(5), Scalar.from_coords(Algebra.O, [0, 1, 1, 0, 3, 0, 0, 1])]
        differences = scalars.polarization_differences(u, v, scheme.probes)
        assert scheme.recover_real(differences) == scalars.re(scalars.hermitian_product(u, v))

    def test_real_tau_is_degenerate(self):
        """(1, 2) is not a real basis of C."""
        with pytest.raises(DegenerateProbeError):
            scalars.solve_polarization(Algebra.C, [Scalar.one(Algebra.C), Scalar.real(Algebra.C, 2)])

    def test_dependent_probes_are_degenerate(self):
        """(i, 2i) is not a real basis of C."""
        i = Scalar.unit(Algebra.C, 1)
        with pytest.raises(DegenerateProbeError):
            scalars.solve_polarization(Algebra.C, [i, i.scale(2)])

    def test_probe_count_checked(self):
        """Quaternionic schemes need four probes."""
        with pytest.raises(DegenerateProbeError):
            scalars.solve_polarization(Algebra.H, scalars.standard_probes(Algebra.C))
