"""
Tests for dvf.py - dressed vacuum forms, tableau sums and determinant formulas.

Tests cover:
- BetheData construction, boundaries and serialization
- Structure of the box functions z(a; u)
- Tableau terms: signs and pole labels of the worked (+,-,+) example
- Pole-freeness of tableau sums on on-shell sl(2) data
- Jacobi-Trudi and Giambelli determinants, exact and certified
- Operator generating series and the character limit
"""

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "scripts"))

from certify import MODULAR, CertificationError
from diagrams import SkewShape, all_skew_shapes, contains_forbidden_rectangle
from dvf import (
    VACUUM,
    BetheData,
    DVFTerm,
    OperatorSeries,
    TableauSumExpr,
    character_jacobi_trudi,
    character_limit,
    elementary_characters,
    generating_series_lower,
    generating_series_upper,
    giambelli_dual_det,
    jacobi_trudi_det,
    p_poly,
    q_poly,
    random_bethe_data,
    transfer_tableau_sum,
    transfer_terms,
    transfer_value,
    verify_determinants,
    verify_series,
    z_fn,
    z_term,
)
from ratfun import EXACT, FLOAT, Poly, RatFun
from superalgebra import Grading, enumerate_gradings

WORKED_EXAMPLE_SIGNS = [-1, 1, 1, -1, -1, 1, 1, -1]


@pytest.fixture
def sl2_on_shell() -> BetheData:
    """sl(2), two sites at 0, one root at 0 (a solution of the Bethe equations)."""
    return BetheData(Grading.parse("++"), ((Fraction(0),),), (Fraction(0), Fraction(0)), EXACT)


@pytest.mark.deterministic
@pytest.mark.unit
class TestBetheData:
    """Tests for BetheData."""

    def test_backend_inferred(self, worked_example_data):
        assert worked_example_data.backend == EXACT
        data = BetheData(Grading.parse("+-"), ((0.5,),), (0,))
        assert data.backend == FLOAT

    def test_wrong_color_count(self, g_sl21_mixed):
        with pytest.raises(ValueError, match="root sets"):
            BetheData(g_sl21_mixed, ((1,),), ())

    def test_boundaries(self, worked_example_data):
        d = worked_example_data
        assert d.roots_of(0) == ()
        assert d.roots_of(3) == ()
        assert d.factor_poly(3) == Poly.one()
        assert q_poly(d, 0) == Poly.one()
        assert q_poly(d, 3) == Poly.one()
        assert p_poly(d) == Poly.from_roots([0, Fraction(1, 2)])

    def test_factor_degrees(self, worked_example_data):
        d = worked_example_data
        assert [d.factor_degree(c) for c in range(4)] == [2, 2, 1, 0]
        assert d.factor_roots(VACUUM) == d.inhomogeneities

    def test_json_round_trip(self, worked_example_data):
        assert BetheData.from_json(worked_example_data.to_json()) == worked_example_data

    def test_to_float(self, worked_example_data):
        f = worked_example_data.to_backend(FLOAT)
        assert f.backend == FLOAT
        assert f.roots_of(2) == (complex(5 / 7),)
        with pytest.raises(ValueError):
            f.to_backend(EXACT)


@pytest.mark.deterministic
@pytest.mark.unit
class TestStructuralTerms:
    """Tests for DVFTerm, z_term and tableau terms."""

    def test_build_cancels_common_factors(self):
        term = DVFTerm.build(1, {(1, 0): 2, (0, 1): 1}, {(1, 0): 1, (2, 3): 1})
        assert term.num == (((0, 1), 1), ((1, 0), 1))
        assert term.den == (((2, 3), 1),)

    def test_shifted(self):
        term = DVFTerm(1, (((0, 1), 1),), (((1, -1), 1),))
        assert term.shifted(2) == DVFTerm(1, (((0, 3), 1),), (((1, 1), 1),))

    def test_z_sl2_matches_baxter_form(self, sl2_on_shell):
        """Test z(1) = P(u+2)Q(u-1)/Q(u+1) and z(2) = P(u)Q(u+3)/Q(u+1) for grading (+,+)."""
        d = sl2_on_shell
        p, q = p_poly(d), q_poly(d, 1)
        assert z_fn(d, 1) == RatFun(p.shift(2) * q.shift(-1), q.shift(1))
        assert z_fn(d, 2) == RatFun(p * q.shift(3), q.shift(1))

    def test_z_index_range(self, g_sl21_mixed):
        with pytest.raises(ValueError):
            z_term(g_sl21_mixed, 4)

    def test_worked_example_signs(self, g_sl21_mixed):
        terms = transfer_terms(g_sl21_mixed, SkewShape.straight(2, 1))
        assert [term.sign for _, term in terms] == WORKED_EXAMPLE_SIGNS

    def test_worked_example_pole_labels(self, g_sl21_mixed):
        """Test that '1 1 / 2' has one pole per color: (1,-3) and (2,2)."""
        tableau, term = transfer_terms(g_sl21_mixed, SkewShape.straight(2, 1))[0]
        assert str(tableau) == "1 1 / 2"
        assert term.pole_labels(1) == [(1, -3)]
        assert term.pole_labels(2) == [(2, 2)]

    def test_term_value_matches_ratfun(self, worked_example_data):
        _, term = transfer_terms(worked_example_data.grading, SkewShape.straight(2, 1))[3]
        x = Fraction(9, 4)
        assert term.value(worked_example_data, x) == term.ratfun(worked_example_data).eval(x)

    def test_envelope_covers_denominator(self, worked_example_data):
        term = z_term(worked_example_data.grading, 2)
        env = term.envelope(worked_example_data)
        assert env.den_degree == 3
        assert z_fn(worked_example_data, 2).den == Poly.from_roots(sorted(env.den))


@pytest.mark.deterministic
@pytest.mark.unit
class TestTableauSums:
    """Tests for transfer_tableau_sum() and transfer_value()."""

    def test_empty_shape_is_one(self, worked_example_data):
        assert transfer_tableau_sum(worked_example_data, SkewShape.parse("1/1")) == RatFun.one()

    def test_column_is_signed_z_sum(self, worked_example_data):
        d = worked_example_data
        expected = z_fn(d, 1) - z_fn(d, 2) + z_fn(d, 3)
        assert transfer_tableau_sum(d, SkewShape.straight(1)) == expected

    @pytest.mark.parametrize("shape", ["1", "2", "1,1", "2,1"])
    def test_pole_free_on_shell(self, sl2_on_shell, shape):
        """Test that the sl(2) tableau sums are polynomials when the Bethe equations hold."""
        t = transfer_tableau_sum(sl2_on_shell, SkewShape.parse(shape))
        assert t.den == Poly.one()

    def test_off_shell_has_poles(self):
        d = BetheData(Grading.parse("++"), ((Fraction(1),),), (Fraction(0), Fraction(0)), EXACT)
        assert transfer_tableau_sum(d, SkewShape.straight(1)).den.degree == 1

    def test_value_matches_ratfun(self, worked_example_data):
        sh = SkewShape.parse("2,2/1")
        x = Fraction(11, 5)
        assert transfer_value(worked_example_data, sh, x) == transfer_tableau_sum(worked_example_data, sh).eval(x)

    def test_value_at_complex_point(self, worked_example_data):
        sh = SkewShape.straight(2, 1)
        x = 0.3 + 1.1j
        expected = complex(transfer_tableau_sum(worked_example_data, sh).eval(x))
        assert transfer_value(worked_example_data, sh, x) == pytest.approx(expected)

    def test_expression_needs_exact_data(self, worked_example_data):
        with pytest.raises(CertificationError):
            TableauSumExpr(worked_example_data.to_backend(FLOAT), SkewShape.straight(1))


@pytest.mark.deterministic
@pytest.mark.unit
class TestDeterminants:
    """Tests for the Jacobi-Trudi and Giambelli formulas."""

    @pytest.mark.parametrize("shape", ["2,1", "2,2/1", "3,1/1", "1,1", "3"])
    def test_exact_determinants(self, worked_example_data, shape):
        sh = SkewShape.parse(shape)
        tableau_sum = transfer_tableau_sum(worked_example_data, sh)
        assert jacobi_trudi_det(worked_example_data, sh) == tableau_sum
        assert giambelli_dual_det(worked_example_data, sh) == tableau_sum

    def test_certified_worked_example(self, worked_example_data):
        certs = verify_determinants(worked_example_data, SkewShape.straight(2, 1))
        assert [c.passed for c in certs] == [True, True]

    def test_wrong_sign_detected(self, worked_example_data):
        certs = verify_determinants(worked_example_data, SkewShape.straight(2, 1), flip=0)
        assert not any(c.passed for c in certs)

    @pytest.mark.slow
    @pytest.mark.parametrize("r,s", [(0, 0), (1, 0), (0, 1), (1, 1)])
    def test_small_shapes_sampled(self, r, s, rng):
        for g in enumerate_gradings(r, s):
            d = random_bethe_data(g, rng, max_roots=1, max_sites=1)
            for sh in all_skew_shapes(2):
                assert all(c.passed for c in verify_determinants(d, sh)), f"{g.label()} {sh}"

    @pytest.mark.slow
    @pytest.mark.parametrize("r,s", [(0, 0), (1, 0), (0, 1), (1, 1)])
    def test_side_four_grid_modular(self, r, s, rng):
        """Every grading, every skew shape inside a 4x4 box, up to two roots per color."""
        shapes = all_skew_shapes(4)
        for g in enumerate_gradings(r, s):
            d = random_bethe_data(g, rng, max_roots=2, max_sites=2)
            failed = [str(sh) for sh in shapes
                      if not all(c.passed for c in verify_determinants(d, sh, MODULAR))]
            assert failed == [], g.label()

    def test_modular_detects_flipped_sign(self, worked_example_data):
        certs = verify_determinants(worked_example_data, SkewShape.straight(2, 1), MODULAR, flip=0)
        assert not any(c.passed for c in certs)


@pytest.mark.deterministic
@pytest.mark.unit
class TestGeneratingSeries:
    """Tests for the operator generating series."""

    def test_series_coefficients(self, worked_example_data):
        assert all(c.passed for c in verify_series(worked_example_data, 3))

    @pytest.mark.slow
    @pytest.mark.parametrize("r,s", [(0, 0), (1, 0), (0, 1), (1, 1)])
    def test_order_four_every_grading(self, r, s, rng):
        for g in enumerate_gradings(r, s):
            d = random_bethe_data(g, rng, max_roots=2, max_sites=2)
            failed = [c.identity for c in verify_series(d, 4) if not c.passed]
            assert failed == [], g.label()

    def test_upper_first_coefficient(self, worked_example_data):
        upper = generating_series_upper(worked_example_data, 1)
        assert upper.coefficient(1) == transfer_tableau_sum(worked_example_data, SkewShape.straight(1))

    def test_identity_series(self):
        one = OperatorSeries.identity(2)
        assert one.is_identity()
        assert (one * one).is_identity()
        with pytest.raises(IndexError):
            one.coefficient(3)

    def test_negative_order_rejected(self, worked_example_data):
        with pytest.raises(ValueError):
            generating_series_lower(worked_example_data, -1)


@pytest.mark.deterministic
@pytest.mark.unit
class TestCharacterLimit:
    """Tests for the character limit of tableau sums."""

    def test_column_character(self, g_sl21_mixed):
        x = [Fraction(2), Fraction(3), Fraction(5)]
        assert character_limit(g_sl21_mixed, SkewShape.straight(1), x) == 2 - 3 + 5

    def test_elementary_characters(self):
        """Test (1 + a t) / (1 + b t) = 1 + (a - b) t - b (a - b) t^2."""
        a, b = Fraction(2), Fraction(5)
        assert elementary_characters(Grading.parse("+-"), [a, b], 2) == [1, a - b, -b * (a - b)]

    @pytest.mark.parametrize("grading", ["+-+", "++-", "-+-+"])
    def test_jacobi_trudi_character(self, grading):
        g = Grading.parse(grading)
        x = [Fraction(k + 2, k + 1) for k in range(g.n)]
        for sh in all_skew_shapes(2):
            assert character_limit(g, sh, x) == character_jacobi_trudi(g, sh, x), str(sh)

    def test_forbidden_rectangle_character_vanishes(self):
        g = Grading.parse("++-")
        sh = SkewShape.straight(2, 2, 2)
        assert contains_forbidden_rectangle(sh, g.r, g.s)
        x = [Fraction(2), Fraction(7), Fraction(3)]
        assert character_limit(g, sh, x) == 0


@pytest.mark.deterministic
@pytest.mark.unit
class TestRandomData:
    """Tests for random_bethe_data()."""

    def test_reproducible(self, g_sl21_mixed):
        a = random_bethe_data(g_sl21_mixed, np.random.default_rng(5))
        b = random_bethe_data(g_sl21_mixed, np.random.default_rng(5))
        assert a == b

    def test_denominator(self, g_sl21_mixed, rng):
        d = random_bethe_data(g_sl21_mixed, rng, max_roots=3, denominator=7)
        for col in d.roots:
            for x in col:
                assert 7 % x.denominator == 0

    def test_at_least_one_site(self, g_sl21_mixed):
        for seed in range(20):
            d = random_bethe_data(g_sl21_mixed, np.random.default_rng(seed), max_sites=2)
            assert 1 <= d.n_sites <= 2

    def test_sites_may_be_disabled(self, g_sl21_mixed, rng):
        assert random_bethe_data(g_sl21_mixed, rng, max_sites=0).n_sites == 0
