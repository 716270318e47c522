"""
Tests for certify.py - certification of rational-function identities.

Tests cover:
- Sample point selection avoiding known poles
- Bareiss determinants over fractions and rational functions
- Envelope arithmetic
- The canonical, sampled, modular and float-spot methods, passing and failing
- Nonzero witnesses and certificate summaries
"""

import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "scripts"))

from certify import (
    CANONICAL,
    FLOAT_SPOT,
    MODULAR,
    SAMPLED,
    Certificate,
    CertificationError,
    Const,
    Determinant,
    Envelope,
    Expr,
    certify_equal,
    certify_nonzero,
    certify_zero,
    determinant,
    ratfun_determinant,
    sample_points,
    summarize,
)
from ratfun import MODULUS, Poly, PoleError, RatFun


class Linear(Expr):
    """u - a"""

    def __init__(self, a):
        self.a = Fraction(a)

    def value(self, x):
        return x - self.a

    def envelope(self):
        return Envelope(Counter(), 1)

    def ratfun(self):
        return RatFun(Poly.from_roots([self.a]))


class Reciprocal(Expr):
    """1 / (u - a)"""

    def __init__(self, a):
        self.a = Fraction(a)

    def value(self, x):
        if x == self.a:
            raise PoleError(f"pole at {self.a}")
        return 1 / (x - self.a)

    def envelope(self):
        return Envelope(Counter({self.a: 1}), 0)

    def ratfun(self):
        return RatFun(Poly.one(), Poly.from_roots([self.a]))


@pytest.mark.deterministic
@pytest.mark.unit
class TestHelpers:
    """Tests for sample points, determinants and envelopes."""

    def test_sample_points_skip_avoided(self):
        assert sample_points(Counter({Fraction(1, 3): 1}), 2) == [Fraction(-2, 3), Fraction(4, 3)]

    def test_sample_points_distinct(self):
        points = sample_points(Counter(), 9)
        assert len(set(points)) == 9

    def test_determinant(self):
        assert determinant([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]) == -2

    def test_determinant_needs_pivot(self):
        assert determinant([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]) == -1

    def test_singular_determinant(self):
        assert determinant([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 0

    def test_empty_determinant(self):
        assert determinant([]) == 1

    def test_ratfun_determinant(self):
        u = RatFun(Poly.x())
        one = RatFun.one()
        assert ratfun_determinant([[u, one], [one, u]]) == RatFun(Poly([-1, 0, 1]))

    def test_envelope_sum_takes_union(self):
        a = Envelope(Counter({Fraction(1): 1}), 0)
        b = Envelope(Counter({Fraction(2): 1}), 0)
        total = a + b
        assert total.den == Counter({Fraction(1): 1, Fraction(2): 1})
        assert total.bound == 1

    def test_envelope_shift(self):
        env = Envelope(Counter({Fraction(1): 2}), 3).shift(2)
        assert env.den == Counter({Fraction(-1): 2})


@pytest.mark.deterministic
@pytest.mark.unit
class TestCertifyEqual:
    """Tests for certify_equal() and certify_zero()."""

    @pytest.mark.parametrize("method", [CANONICAL, SAMPLED, MODULAR, FLOAT_SPOT])
    def test_difference_of_squares(self, method):
        lhs = Linear(1) * Linear(-1)
        rhs = Linear(0) * Linear(0) - Const(1)
        cert = certify_equal(lhs, rhs, "difference of squares", method)
        assert cert.passed
        assert cert.method == method

    def test_sampled_uses_bound_plus_one_points(self):
        cert = certify_equal(Linear(1) * Linear(-1), Linear(0) * Linear(0) - Const(1), "squares")
        assert cert.degree_bound == 2
        assert cert.samples == 3

    @pytest.mark.parametrize("method", [CANONICAL, SAMPLED, MODULAR, FLOAT_SPOT])
    def test_partial_fractions(self, method):
        lhs = Reciprocal(1) - Reciprocal(2)
        rhs = -(Reciprocal(1) * Reciprocal(2))
        assert certify_equal(lhs, rhs, "partial fractions", method).passed

    @pytest.mark.parametrize("method", [CANONICAL, SAMPLED, MODULAR, FLOAT_SPOT])
    def test_false_identity_fails(self, method):
        cert = certify_equal(Linear(1) * Linear(1), Linear(0) * Linear(0), "wrong", method)
        assert not cert.passed

    def test_modular_reports_failure_bound(self):
        cert = certify_equal(Linear(1) * Linear(-1), Linear(0) * Linear(0) - Const(1), "squares", MODULAR)
        assert cert.samples == 2
        assert cert.degree_bound == 2
        assert cert.details["modulus"] == MODULUS
        assert 0 < cert.details["failure_bound"] < 1e-30

    def test_modular_seed_changes_points(self):
        a = certify_equal(Linear(1), Linear(2), "wrong", MODULAR, seed=0)
        b = certify_equal(Linear(1), Linear(2), "wrong", MODULAR, seed=1)
        assert not a.passed and not b.passed
        assert a.details["point"] != b.details["point"]

    def test_failure_reports_point(self):
        cert = certify_equal(Linear(1), Linear(2), "wrong")
        assert set(cert.details) == {"point", "lhs", "rhs"}

    def test_shifted_expression(self):
        """Test that shifting 1/(u-1) by 1 gives 1/u."""
        assert certify_equal(Reciprocal(1).shift(1), Reciprocal(0), "shift").passed

    def test_determinant_expression(self):
        det = Determinant([[Linear(0), Const(1)], [Const(1), Linear(0)]])
        assert certify_equal(det, Linear(1) * Linear(-1), "2x2 determinant").passed

    def test_certify_zero(self):
        assert certify_zero(Linear(2) - Linear(2), "zero").passed

    def test_unknown_method(self):
        with pytest.raises(CertificationError, match="Unknown certification method"):
            certify_equal(Const(1), Const(1), "x", method="interval")


@pytest.mark.deterministic
@pytest.mark.unit
class TestCertificates:
    """Tests for nonzero witnesses, summaries and serialization."""

    def test_nonzero_witness(self):
        cert = certify_nonzero(Linear(Fraction(1, 3)), "nonzero")
        assert cert.passed
        assert cert.details["point"] != "1/3"

    def test_nonzero_fails_for_zero(self):
        assert not certify_nonzero(Linear(1) - Linear(1), "zero").passed

    def test_summarize(self):
        certs = [Certificate("a", True, SAMPLED), Certificate("b", False, SAMPLED)]
        assert summarize(certs) == {"total": 2, "passed": 1, "failed": ["b"]}

    def test_json_round_trip(self):
        cert = Certificate("jt", True, SAMPLED, 4, 3, {"known_poles": 2})
        assert Certificate.from_json(cert.to_json()) == cert
