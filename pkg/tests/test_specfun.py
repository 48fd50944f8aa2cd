"""Special-function unit tests: gamma, Mittag-Leffler, argument sectors."""

import cmath
import math

import numpy as np
import pytest

from fracio import specfun
from fracio.errors import PoleError, RegimeError
from fracio.specfun import (
    ALGEBRAIC_REGIME,
    EXPONENTIAL_REGIME,
    MLParams,
    classify_arg_sector,
    gamma,
    gamma_reciprocal,
    ml_asymptotic,
    ml_one,
    ml_two,
    sector_threshold,
)

SQRT_PI = math.sqrt(math.pi)

# E_{0.5}(-1) frozen from a 60-digit direct series summation (mpmath),
# cross-checked against exp(1)*erfc(1)
ML_HALF_MINUS_ONE = 0.42758357615580700441


class TestGamma:
    def test_one(self):
        assert gamma(1.0) == pytest.approx(1.0, rel=1e-13)

    def test_half(self):
        assert gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-13)

    def test_three_halves(self):
        # Gamma(1.5) = 0.5 * Gamma(0.5)
        assert gamma(1.5) == pytest.approx(0.5 * SQRT_PI, rel=1e-13)
        assert gamma(1.5) == pytest.approx(0.8862269255, abs=1e-9)

    def test_recursion_on_grid(self):
        # Gamma(x+1) = x * Gamma(x), scanning the spec'd range
        for x in np.linspace(-19.6, 49.0, 231):
            x = float(x)
            if abs(x - round(x)) < 1e-2 and x < 1:
                continue
            assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)

    def test_reference_values(self):
        # against a Stirling-style reference via lgamma (independent path)
        for x in [2.5, 7.0, 13.3, 24.8, 50.0]:
            assert gamma(x) == pytest.approx(math.exp(math.lgamma(x)), rel=1e-13)

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -17.0])
    def test_poles(self, x):
        with pytest.raises(PoleError):
            gamma(x)

    def test_reciprocal_zero_at_poles(self):
        assert gamma_reciprocal(0.0) == 0.0
        assert gamma_reciprocal(-3.0) == 0.0
        assert gamma_reciprocal(2.0) == pytest.approx(1.0, rel=1e-13)


class TestMittagLeffler:
    def test_exp_reduction_spot(self):
        assert ml_one(1.0, 1.0) == pytest.approx(math.e, rel=1e-10)

    def test_value_at_zero(self):
        assert ml_one(0.7, 0.0) == 1.0
        assert ml_two(0.8, 2.0, 0.0) == pytest.approx(1.0, rel=1e-14)

    def test_cosh_reduction(self):
        assert ml_one(2.0, 1.0) == pytest.approx(math.cosh(1.0), rel=1e-12)
        assert ml_one(2.0, 1.0) == pytest.approx(1.5430806348, abs=1e-9)

    def test_two_parameter_reductions(self):
        # E_{1,2}(z) = (e^z - 1)/z ; E_{2,2}(z) = sinh(sqrt(z))/sqrt(z)
        assert ml_two(1.0, 2.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-12)
        assert ml_two(2.0, 2.0, 1.0) == pytest.approx(math.sinh(1.0), rel=1e-12)

    def test_half_order_negative_unit(self):
        assert ml_one(0.5, -1.0) == pytest.approx(ML_HALF_MINUS_ONE, rel=1e-10)

    def test_half_order_erfc_identity(self):
        # E_{1/2}(-x) = exp(x^2) erfc(x): independent of the series path
        for x in [0.25, 1.0, 2.5, 4.0, 5.5, 7.9, 12.0, 20.0]:
            ref = math.exp(x * x) * math.erfc(x)
            assert ml_one(0.5, -x) == pytest.approx(ref, rel=1e-10), x

    def test_exp_identity_across_range(self):
        # |E_1(z) - exp(z)| <= 1e-9 |exp(z)| for |z| <= 30
        for x in np.linspace(-30.0, 30.0, 61):
            z = float(x)
            assert abs(ml_one(1.0, z) - math.exp(z)) <= 1e-9 * abs(math.exp(z))
        rng = np.random.default_rng(3)
        for _ in range(40):
            r = rng.uniform(0.0, 30.0)
            phi = rng.uniform(-math.pi, math.pi)
            z = r * cmath.exp(1j * phi)
            assert abs(ml_one(1.0, z) - cmath.exp(z)) <= 1e-9 * abs(cmath.exp(z))

    def test_recurrence(self):
        # E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b) on a random grid
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 120:
            a = float(rng.uniform(0.05, 1.95))
            b = float(rng.choice([1.0, 2.0]))
            z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
            if abs(z) > 10:
                continue
            lhs = ml_two(a, b, z)
            if not cmath.isfinite(lhs):  # value beyond float range
                continue
            rhs = z * ml_two(a, a + b, z) + 1.0 / gamma(b)
            assert abs(lhs - rhs) <= 1e-8 * max(abs(lhs), 1.0), (a, b, z)
            checked += 1

    def test_one_vs_two_same_path(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            a = float(rng.uniform(0.1, 1.9))
            z = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
            assert ml_one(a, z) == ml_two(a, 1.0, z)

    def test_monotone_on_positive_axis(self):
        for a in [0.3, 0.6, 1.0]:
            ts = np.linspace(0.01, 12.0, 60)
            vals = [ml_one(a, 0.8 * t**a).real for t in ts]
            assert all(x < y for x, y in zip(vals, vals[1:]))

    def test_overflow_is_signed_infinity(self):
        v = ml_one(0.1, 5.0)  # value exceeds float range
        assert v.real == math.inf and v.imag == 0.0

    def test_small_order_band(self):
        # adaptive expansion region; self-consistent via the recurrence
        a, z = 0.1, -6.0
        lhs = ml_two(a, 1.0, z)
        rhs = z * ml_two(a, 1.0 + a, z) + 1.0
        assert abs(lhs - rhs) <= 1e-8 * abs(lhs)

    def test_invalid_orders(self):
        with pytest.raises(ValueError):
            ml_one(0.0, 1.0)
        with pytest.raises(ValueError):
            ml_one(2.3, 1.0)
        with pytest.raises(ValueError):
            ml_two(0.5, -1.0, 1.0)


class TestAsymptotic:
    def test_matches_series_exponential_regime(self):
        lam, t = 0.5287886305, 50.0
        va = ml_asymptotic(MLParams(0.5), lam, t, 3)
        vs = ml_one(0.5, lam * t**0.5)
        assert abs(va - vs) <= 1e-6 * abs(vs)

    def test_algebraic_branch_leading_term(self):
        lam, t, a = -5.578788631, 50.0, 0.5
        va = ml_asymptotic(MLParams(a), lam, t, 3)
        lead = -(1.0 / lam) / (gamma(1.0 - a) * t**a)
        assert va.real == pytest.approx(lead, rel=2e-3)
        assert ml_one(a, lam * t**a) == pytest.approx(va, rel=1e-6)

    def test_alpha_one_reduces_to_exp(self):
        va = ml_asymptotic(MLParams(1.0), 1.0, 10.0, 1)
        assert va.real == pytest.approx(math.exp(10.0), rel=1e-12)

    def test_consistency_invariant(self):
        # exp regime, |lam t^a| >= 30: m=3 expansion within 1e-4 of series
        # (orders chosen so exp(z**(1/a)) still fits in a double)
        for a, lam, t in [(0.6, 0.9, 400.0), (0.8, 1.1, 80.0), (1.2, 2.0, 12.0)]:
            z = lam * t**a
            assert abs(z) >= 30
            va = ml_asymptotic(MLParams(a), lam, t, 3)
            vs = ml_one(a, z)
            assert abs(va - vs) <= 1e-4 * abs(vs), (a, lam, t)

    def test_regime_error_below_threshold(self):
        with pytest.raises(RegimeError):
            ml_asymptotic(MLParams(0.5), 0.001, 1.0, 3)

    def test_beta_two_form(self):
        # E_{a,2} branch against direct series evaluation
        a, lam, t = 0.8, 1.3, 30.0
        z = lam * t**a
        va = ml_asymptotic(MLParams(a, beta=2.0), lam, t, 5)
        vs = ml_two(a, 2.0, z)
        assert abs(va - vs) <= 1e-6 * abs(vs)


class TestArgSector:
    def test_threshold_bounds(self):
        for a in [0.1, 0.5, 0.9, 1.0, 1.5, 1.9]:
            th = sector_threshold(a)
            assert math.pi * a / 2 < th < min(math.pi, math.pi * a) or math.isclose(
                th, min(math.pi, math.pi * a)
            )

    def test_positive_real_is_exponential(self):
        s = classify_arg_sector(0.5, 1.0 + 0.0j)
        assert s.classification == EXPONENTIAL_REGIME

    def test_negative_real_is_algebraic_below_one(self):
        s = classify_arg_sector(0.5, -1.0 + 0.0j)
        assert s.classification == ALGEBRAIC_REGIME

    def test_negative_real_above_one_still_algebraic(self):
        # theta < pi for any alpha < 2, so arg = pi stays algebraic
        s = classify_arg_sector(1.5, -1.0 + 0.0j)
        assert s.classification == ALGEBRAIC_REGIME

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            classify_arg_sector(0.5, 0.0)
