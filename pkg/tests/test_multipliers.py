"""Wave and ball multiplier eigenvalue formulas, floors, and norm bounds."""

import math

import numpy as np
import pytest

from hypdeloc.errors import (
    DeltaTooLarge,
    HypothesisViolated,
    NegativeEigenvalue,
    UntemperedInput,
)
from hypdeloc.fuchsian import GeometryParams, default_c0
from hypdeloc.multipliers import (
    BallMultiplierSpec,
    WaveMultiplierSpec,
    a_factor,
    b_multiplier,
    b_norm_bound,
    ball_tempered_floor,
    ball_tempered_threshold,
    ball_untempered_floor,
    fejer,
    spectral_parameter,
    w_lower_bound,
    w_multiplier_direct,
    w_multiplier_fejer,
    w_norm_bound,
    w_self_lower_bound,
)


def test_spectral_parameter_branches():
    p = spectral_parameter(1.25)
    assert p.tempered and p.s == pytest.approx(1.0) and p.a is None
    q = spectral_parameter(0.25)
    assert q.tempered and q.s == 0.0
    u = spectral_parameter(0.0)
    assert not u.tempered and u.a == 0.5
    u2 = spectral_parameter(0.16)
    assert u2.a == pytest.approx(0.3)
    with pytest.raises(NegativeEigenvalue):
        spectral_parameter(-0.1)
    with pytest.raises(NegativeEigenvalue):
        spectral_parameter(math.nan)


def test_spectral_parameter_factors():
    p = spectral_parameter(1.25)  # s = 1
    assert p.cos_factor(math.pi) == pytest.approx(-1.0)
    assert p.half_pi_factor() == pytest.approx(math.cosh(math.pi / 2.0))
    u = spectral_parameter(0.16)  # a = 0.3
    assert u.cos_factor(2.0) == pytest.approx(math.cosh(0.6))
    assert u.half_pi_factor() == pytest.approx(math.cos(0.15 * math.pi))


def test_fejer_closed_form_values():
    # F_2(s) = sin^2(s) / (2 sin^2(s/2)) = 2 cos^2(s/2)
    for s in (0.5, 1.0, 2.0):
        assert fejer(2, s) == pytest.approx(2.0 * math.cos(s / 2.0) ** 2, rel=1e-13)
    assert fejer(2, math.pi) == pytest.approx(0.0, abs=1e-30)


def test_fejer_peak_is_exact():
    # the cosine-sum path at s = 0 is an integer identity, so equality is exact
    for N in range(1, 65):
        assert fejer(N, 0.0) == float(N)


def test_fejer_continuity_across_singular_switch():
    # values just inside and outside the |sin(s/2)| < 1e-6 window must agree
    for N in (3, 16, 64):
        lo, hi = fejer(N, 1.999e-6), fejer(N, 2.001e-6)
        assert lo == pytest.approx(hi, rel=1e-9)
    near_2pi = 2.0 * math.pi + 1e-7
    assert fejer(8, near_2pi) == pytest.approx(8.0, rel=1e-10)


def test_fejer_nonnegative_and_vectorized():
    s = np.linspace(-12.0, 12.0, 4001)
    vals = fejer(9, s)
    assert vals.shape == s.shape
    assert np.all(vals >= -1e-12)
    with pytest.raises(ValueError):
        fejer(0, 1.0)


def test_wave_spec_validation():
    lam = spectral_parameter(1.0)
    with pytest.raises(ValueError):
        WaveMultiplierSpec(lam, r=0.0, N=4)
    with pytest.raises(ValueError):
        WaveMultiplierSpec(lam, r=1.0, N=0)


def test_wave_direct_small_case_by_hand():
    # N = 2, r so that cos(r s_lam j) = 1 and mu = lam = 0.25 (s = 0):
    # sum_j ((2-j)/2)(1+1)(1) / cosh(0) = (1/2)(2) = 1 from j = 1, 0 from j = 2
    spec = WaveMultiplierSpec(spectral_parameter(0.25), r=1.0, N=2)
    assert w_multiplier_direct(spec, spectral_parameter(0.25)) == pytest.approx(1.0)
    # N = 4 at s = 0: sum (4-j)/4 * 2 = 2 * (3+2+1)/4 = 3
    spec4 = WaveMultiplierSpec(spectral_parameter(0.25), r=1.0, N=4)
    assert w_multiplier_direct(spec4, spectral_parameter(0.25)) == pytest.approx(3.0)


def test_wave_constant_mode_is_annihilated():
    spec = WaveMultiplierSpec(spectral_parameter(2.0), r=0.7, N=8)
    zero = spectral_parameter(0.0)
    assert w_multiplier_direct(spec, zero) == 0.0


def test_wave_fejer_form_agrees_with_direct():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(200):
        lam = spectral_parameter(0.25 + float(rng.uniform(0.0, 8.0)) ** 2)
        mu = spectral_parameter(0.25 + float(rng.uniform(0.0, 8.0)) ** 2)
        spec = WaveMultiplierSpec(lam, r=float(rng.uniform(0.1, 4.0)), N=int(rng.integers(1, 65)))
        d = w_multiplier_direct(spec, mu)
        f = w_multiplier_fejer(spec, mu)
        worst = max(worst, abs(d - f))
    assert worst < 1e-9


def test_wave_fejer_form_rejects_untempered():
    spec = WaveMultiplierSpec(spectral_parameter(1.0), r=1.0, N=4)
    with pytest.raises(UntemperedInput):
        w_multiplier_fejer(spec, spectral_parameter(0.1))
    bad = WaveMultiplierSpec(spectral_parameter(0.1), r=1.0, N=4)
    with pytest.raises(UntemperedInput):
        w_multiplier_fejer(bad, spectral_parameter(1.0))


def test_wave_floors():
    rng = np.random.default_rng(5)
    for _ in range(300):
        lam = spectral_parameter(0.25 + float(rng.uniform(0.0, 6.0)) ** 2)
        spec = WaveMultiplierSpec(lam, r=float(rng.uniform(0.1, 3.0)), N=int(rng.integers(1, 40)))
        mu = spectral_parameter(0.25 + float(rng.uniform(0.0, 6.0)) ** 2)
        assert w_multiplier_direct(spec, mu) >= w_lower_bound(mu) - 1e-10
        assert w_multiplier_direct(spec, lam) >= w_self_lower_bound(spec) - 1e-10
        # untempered mu: nonnegative terms, zero floor
        mu_u = spectral_parameter(float(rng.uniform(0.0, 0.25)))
        assert w_multiplier_direct(spec, mu_u) >= 0.0


def test_wave_self_bound_formula():
    spec = WaveMultiplierSpec(spectral_parameter(0.25), r=0.5, N=12)
    assert w_self_lower_bound(spec) == pytest.approx(8.0 / 4.0)
    assert w_lower_bound(spectral_parameter(1.0)) == -1.0
    assert w_lower_bound(spectral_parameter(0.1)) == 0.0


def test_a_factor():
    assert a_factor(0.005) == pytest.approx(
        2.0 * default_c0(0.005) * (1.0 + math.exp(0.495)), rel=1e-15)
    with pytest.raises(ValueError):
        a_factor(0.0)


def test_w_norm_bound_formula_and_guards():
    params = GeometryParams.from_bounds(R=64.0, Cx=2.0)
    spec = WaveMultiplierSpec(spectral_parameter(1.0), r=2.0, N=8)
    got = w_norm_bound(spec, params, 0.005)
    assert got == pytest.approx(2.0 * a_factor(0.005) * math.exp(-0.495 * 2.0), rel=1e-14)
    with pytest.raises(DeltaTooLarge):
        w_norm_bound(spec, params, 0.01)
    with pytest.raises(ValueError):
        w_norm_bound(spec, params, -1.0)
    tight = WaveMultiplierSpec(spectral_parameter(1.0), r=2.1, N=8)
    with pytest.raises(HypothesisViolated):
        w_norm_bound(tight, params, 0.005)  # N r = 16.8 > 16


def test_ball_spec_validation():
    with pytest.raises(ValueError):
        BallMultiplierSpec(t=0.0, sigma=0.04)
    with pytest.raises(ValueError):
        BallMultiplierSpec(t=1.0, sigma=0.25)
    with pytest.raises(ValueError):
        BallMultiplierSpec(t=1.0, sigma=0.0)


def test_ball_normalization_is_overflow_safe():
    spec = BallMultiplierSpec(t=800.0, sigma=0.04)
    # log cosh(800) ~ 800 - log 2; direct cosh overflows
    assert math.log(spec.normalization()) == pytest.approx(
        0.5 * 1.2 * (800.0 - math.log(2.0)), rel=1e-12)


def test_b_multiplier_reference_value():
    # 4 sqrt(2) cosh(14)^(-0.1) int_0^14 cosh(0.3u) sqrt(1 - cosh u/cosh 14) du
    # mpmath dps=40
    spec = BallMultiplierSpec(t=14.0, sigma=0.04)
    mu = spectral_parameter(0.25 - 0.09)  # a = 0.3
    assert b_multiplier(spec, mu) == pytest.approx(141.85496281330538147, rel=1e-11)


def test_b_multiplier_tempered_floor():
    rng = np.random.default_rng(9)
    for sigma in (0.01, 0.04, 0.09):
        tstar = ball_tempered_threshold(sigma)
        for t in (4.0, 14.0, tstar):
            spec = BallMultiplierSpec(t=t, sigma=sigma)
            floor = ball_tempered_floor(spec)
            for s in np.linspace(0.0, 6.0, 13):
                mu = spectral_parameter(0.25 + float(s) ** 2)
                assert b_multiplier(spec, mu) >= floor - 1e-10
        # beyond the threshold the floor is at least -1
        assert ball_tempered_floor(BallMultiplierSpec(t=tstar, sigma=sigma)) >= -1.0 - 1e-12


def test_ball_untempered_floor_branches():
    spec = BallMultiplierSpec(t=14.0, sigma=0.04)
    mu_fast = spectral_parameter(0.25 - 0.09)  # a = 0.3 > sqrt(sigma) = 0.2
    fl = ball_untempered_floor(spec, mu_fast)
    assert fl == pytest.approx((4.0 * math.sqrt(2.0) / 3.0) * math.sinh(0.2 * 14.0)
                               * math.cosh(14.0) ** -0.1, rel=1e-10)
    assert b_multiplier(spec, mu_fast) >= fl
    mu_slow = spectral_parameter(0.25 - 0.01)  # a = 0.1 <= sqrt(sigma)
    assert ball_untempered_floor(spec, mu_slow) == 0.0
    assert b_multiplier(spec, mu_slow) >= 0.0
    small_t = BallMultiplierSpec(t=1.5, sigma=0.04)
    assert ball_untempered_floor(small_t, mu_fast) == 0.0
    with pytest.raises(UntemperedInput):
        ball_untempered_floor(spec, spectral_parameter(1.0))


def test_ball_tempered_threshold_frozen_values():
    # roots of 4 sqrt(2) t = cosh(t)^(sqrt(sigma)/2), mpmath findroot dps=30
    assert ball_tempered_threshold(0.01) == pytest.approx(133.18534005688259889, rel=1e-12)
    assert ball_tempered_threshold(0.04) == pytest.approx(58.755710111432381048, rel=1e-12)
    assert ball_tempered_threshold(0.09) == pytest.approx(36.16648614215009737, rel=1e-12)
    with pytest.raises(ValueError):
        ball_tempered_threshold(0.3)


def test_ball_tempered_threshold_is_a_crossing():
    for sigma in (0.01, 0.04, 0.09):
        tstar = ball_tempered_threshold(sigma)
        e = 0.5 * math.sqrt(sigma)

        def gap(t):
            return e * (t + math.log1p(math.exp(-2.0 * t)) - math.log(2.0)) \
                - math.log(4.0 * math.sqrt(2.0) * t)

        assert gap(tstar) >= 0.0
        assert gap(tstar - 1e-6) < 0.0


def test_b_norm_bound_formula_and_guards():
    params = GeometryParams.from_bounds(R=64.0, Cx=3.0)
    spec = BallMultiplierSpec(t=10.0, sigma=0.04)
    got = b_norm_bound(spec, params, 0.25)
    assert got == pytest.approx(3.0 * default_c0(0.25)
                                * math.exp(0.5 * (0.5 - 1.0 - 0.2) * 10.0), rel=1e-14)
    with pytest.raises(HypothesisViolated):
        b_norm_bound(BallMultiplierSpec(t=65.0, sigma=0.04), params, 0.25)
    with pytest.raises(ValueError):
        b_norm_bound(spec, params, 0.0)
