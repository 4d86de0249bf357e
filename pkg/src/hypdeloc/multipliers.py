"""Spectral multipliers: the Fejer-weighted wave combination and the
normalized ball average, with their eigenvalue formulas and norm bounds.

The eigenvalue lambda of the Laplacian is parametrized as lambda = s^2 + 1/4
with s real (tempered) or lambda = 1/4 - a^2 with 0 < a <= 1/2 (untempered);
in every formula an untempered parameter replaces cos(s x) by cosh(a x) and
cosh(pi s / 2) by cos(pi a / 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quad import integrate
from .errors import (
    DeltaTooLarge,
    HypothesisViolated,
    NegativeEigenvalue,
    UntemperedInput,
)
from .fuchsian import GeometryParams, default_c0

DELTA_CEILING = 0.01  # validated range of the wave norm bound
FEJER_SING_TOL = 1e-6


@dataclass(frozen=True)
class SpectralParameter:
    """Eigenvalue lambda with its resolved branch."""

    lam: float
    s: float | None  # real spectral parameter, tempered branch
    a: float | None  # decay rate, untempered branch

    @property
    def tempered(self) -> bool:
        return self.s is not None

    def cos_factor(self, x) -> float:
        """cos(s x) on the tempered branch, cosh(a x) off it."""
        if self.tempered:
            return np.cos(self.s * x)
        return np.cosh(self.a * x)

    def half_pi_factor(self) -> float:
        """cosh(pi s / 2), continued to cos(pi a / 2) off the tempered branch."""
        if self.tempered:
            return math.cosh(math.pi * self.s / 2.0)
        return math.cos(math.pi * self.a / 2.0)


def spectral_parameter(lam: float) -> SpectralParameter:
    if not math.isfinite(lam) or lam < 0.0:
        raise NegativeEigenvalue(f"eigenvalue {lam} is not in [0, inf)")
    if lam >= 0.25:
        return SpectralParameter(lam=lam, s=math.sqrt(lam - 0.25), a=None)
    return SpectralParameter(lam=lam, s=None, a=math.sqrt(0.25 - lam))


def fejer(N: int, s):
    """Fejer kernel F_N(s) = sin^2(Ns/2) / (N sin^2(s/2)), evaluated through
    its cosine sum near the removable singularities."""
    if N < 1 or N != int(N):
        raise ValueError("N must be a positive integer")
    s_arr = np.asarray(s, dtype=float)
    half = 0.5 * s_arr
    sh = np.sin(half)
    out = np.empty_like(s_arr)
    reg = np.abs(sh) >= FEJER_SING_TOL
    out[reg] = np.sin(N * half[reg]) ** 2 / (N * sh[reg] ** 2)
    if not np.all(reg):
        j = np.arange(1, N + 1, dtype=float)
        # ordered so that s = 0 gives exactly N: 1 + 2 (sum (N-j) cos js) / N
        dots = np.cos(np.outer(s_arr[~reg], j)) @ (N - j)
        out[~reg] = 1.0 + 2.0 * dots / N
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class WaveMultiplierSpec:
    """Fejer-weighted combination of even wave propagators at times jr,
    j = 1..N, targeted at eigenvalue lam; constants projected out."""

    lam: SpectralParameter
    r: float
    N: int

    def __post_init__(self) -> None:
        if not (self.r > 0.0):
            raise ValueError("time step r must be positive")
        if self.N < 1 or self.N != int(self.N):
            raise ValueError("N must be a positive integer")


def w_multiplier_direct(spec: WaveMultiplierSpec, mu: SpectralParameter) -> float:
    """Eigenvalue of the wave multiplier on the mu eigenspace, by direct
    summation: sum_j ((N-j)/N) (cos(r s_lam j) + 1) cos(r s_mu j) / cosh(pi s_mu / 2)."""
    if mu.lam == 0.0:
        return 0.0  # constants are projected out
    j = np.arange(1, spec.N + 1, dtype=float)
    rj = spec.r * j
    terms = ((spec.N - j) / spec.N) * (spec.lam.cos_factor(rj) + 1.0) * mu.cos_factor(rj)
    return float(np.sum(terms)) / mu.half_pi_factor()


def w_multiplier_fejer(spec: WaveMultiplierSpec, mu: SpectralParameter) -> float:
    """Same eigenvalue through the Fejer kernel identity; tempered mu and
    tempered target only."""
    if not mu.tempered or not spec.lam.tempered:
        raise UntemperedInput("the Fejer form requires tempered spectral parameters")
    if mu.lam == 0.0:
        return 0.0
    r, N = spec.r, spec.N
    sl, sm = spec.lam.s, mu.s
    ch = mu.half_pi_factor()
    cross = fejer(N, r * (sl + sm)) + fejer(N, r * (sl - sm)) - 2.0
    return cross / (4.0 * ch) + (fejer(N, r * sm) - 1.0) / (2.0 * ch)


def w_self_lower_bound(spec: WaveMultiplierSpec) -> float:
    """Guaranteed eigenvalue at mu = lam: (N - 4) / (4 cosh(pi s_lam / 2))."""
    return (spec.N - 4.0) / (4.0 * spec.lam.half_pi_factor())


def w_lower_bound(mu: SpectralParameter) -> float:
    """Branch floor of the wave multiplier: -1 tempered, 0 untempered."""
    return -1.0 if mu.tempered else 0.0


def a_factor(delta: float, c0=default_c0) -> float:
    """Norm-bound prefactor 2 c0(delta) (1 + e^(1/2 - delta))."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    return 2.0 * c0(delta) * (1.0 + math.exp(0.5 - delta))


def w_norm_bound(spec: WaveMultiplierSpec, params: GeometryParams, delta: float) -> float:
    """Operator norm bound Cx A(delta) e^(-(1/2 - delta) r) for the spatial
    part of the wave multiplier; needs delta below 0.01 and N r <= R / 4."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if delta >= DELTA_CEILING:
        raise DeltaTooLarge(f"delta = {delta} is not below {DELTA_CEILING}")
    if spec.N * spec.r > params.R / 4.0 + 1e-12:
        raise HypothesisViolated(
            f"N r = {spec.N * spec.r} exceeds R/4 = {params.R / 4.0}")
    return params.Cx * a_factor(delta, params.c0) * math.exp(-(0.5 - delta) * spec.r)


# -- ball multiplier ------------------------------------------------------

def _log_cosh(t: float) -> float:
    return t + math.log1p(math.exp(-2.0 * t)) - math.log(2.0)


def _cosh_ratio(u, t: float):
    """cosh(u)/cosh(t) for 0 <= u <= t without overflow."""
    return np.exp(u - t) * (1.0 + np.exp(-2.0 * u)) / (1.0 + np.exp(-2.0 * t))


@dataclass(frozen=True)
class BallMultiplierSpec:
    """Ball average of radius t normalized by cosh(t)^((1 + sqrt(sigma))/2),
    targeted at eigenvalues below 1/4 - sigma."""

    t: float
    sigma: float

    def __post_init__(self) -> None:
        if not (self.t > 0.0):
            raise ValueError("ball radius t must be positive")
        if not (0.0 < self.sigma < 0.25):
            raise ValueError("sigma must lie in (0, 1/4)")

    def normalization(self) -> float:
        return math.exp(0.5 * (1.0 + math.sqrt(self.sigma)) * _log_cosh(self.t))


def b_multiplier(spec: BallMultiplierSpec, mu: SpectralParameter, tol: float = 1e-11) -> float:
    """Eigenvalue of the normalized ball average on the mu eigenspace:
    (4 sqrt(2) / cosh(t)^(sqrt(sigma)/2)) int_0^t cos(s_mu u) sqrt(1 - cosh u / cosh t) du."""
    t = spec.t
    wtop = math.sqrt(t)

    def f(w):
        u = t - w * w
        return float(mu.cos_factor(u)) * math.sqrt(max(0.0, 1.0 - _cosh_ratio(u, t))) * 2.0 * w

    val = integrate(f, 0.0, wtop, tol=tol, limit=400)
    pref = 4.0 * math.sqrt(2.0) * math.exp(-0.5 * math.sqrt(spec.sigma) * _log_cosh(t))
    return pref * val


def ball_tempered_floor(spec: BallMultiplierSpec) -> float:
    """Crude floor of the ball multiplier over the tempered spectrum:
    -4 sqrt(2) t / cosh(t)^(sqrt(sigma)/2)."""
    return -4.0 * math.sqrt(2.0) * spec.t * math.exp(-0.5 * math.sqrt(spec.sigma) * _log_cosh(spec.t))


def ball_untempered_floor(spec: BallMultiplierSpec, mu: SpectralParameter) -> float:
    """Guaranteed eigenvalue for untempered mu: nonnegative always, and at
    least (4 sqrt(2) / 3) sinh(sqrt(sigma) t) / cosh(t)^(sqrt(sigma)/2) once
    the decay rate a_mu exceeds sqrt(sigma) (t >= 2)."""
    if mu.tempered:
        raise UntemperedInput("floor defined for untempered mu only")
    rt = math.sqrt(spec.sigma)
    if mu.a <= rt or spec.t < 2.0:
        return 0.0
    return (4.0 * math.sqrt(2.0) / 3.0) * math.sinh(rt * spec.t) \
        * math.exp(-0.5 * rt * _log_cosh(spec.t))


def ball_tempered_threshold(sigma: float) -> float:
    """Smallest t >= 2 with 4 sqrt(2) t <= cosh(t)^(sqrt(sigma)/2), found by
    bisection; beyond it the tempered floor of the ball multiplier is >= -1."""
    if not (0.0 < sigma < 0.25):
        raise ValueError("sigma must lie in (0, 1/4)")
    e = 0.5 * math.sqrt(sigma)

    def gap(t: float) -> float:
        return e * _log_cosh(t) - math.log(4.0 * math.sqrt(2.0) * t)

    lo, hi = 2.0, 4.0
    if gap(lo) >= 0.0:
        return lo
    while gap(hi) < 0.0:
        hi *= 2.0
        if hi > 1e9:
            raise ValueError("no threshold found below 1e9")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def b_norm_bound(spec: BallMultiplierSpec, params: GeometryParams, delta: float) -> float:
    """Operator norm bound Cx c0(delta) e^((2 delta - 1 - sqrt(sigma)) t / 2)
    for the spatial part of the ball average; needs t <= R."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if spec.t > params.R + 1e-12:
        raise HypothesisViolated(f"t = {spec.t} exceeds the counting radius R = {params.R}")
    return params.Cx * params.c0(delta) \
        * math.exp(0.5 * (2.0 * delta - 1.0 - math.sqrt(spec.sigma)) * spec.t)
