"""Numerical certification of the technical inequalities behind the volume
bounds: grid sweeps with signed slacks, quadrature cross-validated at two
Gauss-Legendre orders, and cross-module consistency checks.

A check never raises on a mathematical violation; failures are data. When
refinement changes the verdict the check reports inconclusive rather than
misattribute roundoff to mathematics.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._quad import gauss_legendre
from .errors import QuadratureNonConvergence
from .fuchsian import load_group, params_from_tanglefree, verify_counting_bound
from .geometry import Point
from .multipliers import (
    BallMultiplierSpec,
    WaveMultiplierSpec,
    b_multiplier,
    ball_tempered_floor,
    ball_tempered_threshold,
    ball_untempered_floor,
    fejer,
    spectral_parameter,
    w_multiplier_direct,
    w_multiplier_fejer,
    w_self_lower_bound,
)
from .selberg import ball_kernel, inverse_selberg, selberg_transform, wave_spectral

SLACK_TOL = 1e-10
QUAD_AGREEMENT_TOL = 1e-8
GRID_POINTS_DEFAULT = 200
_GL_ORDERS = (96, 192)


@dataclass(frozen=True)
class Axis:
    """One grid dimension; open endpoints are excluded by half-step insets."""

    name: str
    lo: float
    hi: float
    n: int = GRID_POINTS_DEFAULT
    open_lo: bool = False
    open_hi: bool = False

    def __post_init__(self) -> None:
        if not (self.hi > self.lo):
            raise ValueError(f"axis {self.name}: empty range [{self.lo}, {self.hi}]")
        if self.n < 2:
            raise ValueError(f"axis {self.name}: need at least 2 points")

    def points(self) -> np.ndarray:
        step = (self.hi - self.lo) / self.n
        lo = self.lo + 0.5 * step if self.open_lo else self.lo
        hi = self.hi - 0.5 * step if self.open_hi else self.hi
        return np.linspace(lo, hi, self.n)


@dataclass(frozen=True)
class GridSpec:
    axes: tuple[Axis, ...]

    def axis(self, name: str) -> Axis:
        for ax in self.axes:
            if ax.name == name:
                return ax
        raise ValueError(f"grid has no axis named {name!r}")

    def size(self) -> int:
        return int(np.prod([ax.n for ax in self.axes]))


@dataclass(frozen=True)
class CheckReport:
    name: str
    grid_points: int
    min_slack: float
    worst_point: dict
    status: str  # pass | fail | inconclusive
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _verdict(min_slack: float, slack_tol: float) -> str:
    return "pass" if min_slack >= -slack_tol else "fail"


# -- inequality checks -----------------------------------------------------

def _cosh_ratio_grid(u: np.ndarray, R: float) -> np.ndarray:
    # cosh(u)/cosh(R) without overflow for 0 <= u <= R
    return np.exp(u - R) * (1.0 + np.exp(-2.0 * u)) / (1.0 + math.exp(-2.0 * R))


def _ball_profile_integral(a: np.ndarray, R: float, order: int) -> np.ndarray:
    """int_0^R cosh(a u) sqrt(1 - cosh u / cosh R) du for a vector of rates,
    through the substitution u = R - w^2."""
    nodes, wts = gauss_legendre(order, 0.0, math.sqrt(R))
    u = R - nodes ** 2
    base = np.sqrt(np.clip(1.0 - _cosh_ratio_grid(u, R), 0.0, None)) * 2.0 * nodes * wts
    return np.cosh(np.outer(a, u)) @ base


def check_technical_lemma(sigma: float, grid: GridSpec | None = None, *,
                          grid_points: int = GRID_POINTS_DEFAULT,
                          slack_tol: float = SLACK_TOL,
                          quad_tol: float = QUAD_AGREEMENT_TOL) -> CheckReport:
    """Certify int_0^R cosh(a u) sqrt(1 - cosh u / cosh R) du >= sinh(sqrt(sigma) R)/3
    over a in (sqrt(sigma), 1/2), R in [2, 20]."""
    if not (0.0 < sigma < 0.25):
        raise ValueError(f"sigma = {sigma} must lie in (0, 1/4)")
    rt = math.sqrt(sigma)
    if grid is None:
        grid = GridSpec((Axis("a", rt, 0.5, grid_points, open_lo=True, open_hi=True),
                         Axis("R", 2.0, 20.0, grid_points)))
    a = grid.axis("a").points()
    R = grid.axis("R").points()

    slabs = []
    for order in _GL_ORDERS:
        lhs = np.empty((R.size, a.size))
        for i, Ri in enumerate(R):
            lhs[i] = _ball_profile_integral(a, float(Ri), order)
        slabs.append(lhs - (np.sinh(rt * R) / 3.0)[:, None])
    coarse, fine = slabs
    agreement = float(np.max(np.abs(fine - coarse)))

    i, j = np.unravel_index(np.argmin(fine), fine.shape)
    min_slack = float(fine[i, j])
    worst = {"a": float(a[j]), "R": float(R[i])}
    details = {"sigma": sigma, "quad_agreement": agreement, "gl_orders": list(_GL_ORDERS)}

    if agreement > quad_tol:
        status = "inconclusive"
        details["reason"] = "tolerance"
    elif (coarse.min() >= -slack_tol) != (fine.min() >= -slack_tol):
        status = "inconclusive"
        details["reason"] = "slack sign flips under quadrature refinement"
    else:
        status = _verdict(min_slack, slack_tol)
    return CheckReport(f"technical_lemma[sigma={sigma:g}]", grid.size(),
                       min_slack, worst, status, details)


def check_tanh_claim(grid: GridSpec | None = None, *,
                     grid_points: int = GRID_POINTS_DEFAULT,
                     slack_tol: float = SLACK_TOL) -> CheckReport:
    """Certify ((2 + 2x)/(4x)) tanh(R x) coth(R) >= 1 over x in (0, 1/2],
    R in [2, 50], plus the two boundary forms used in the proof."""
    if grid is None:
        grid = GridSpec((Axis("x", 0.0, 0.5, grid_points, open_lo=True),
                         Axis("R", 2.0, 50.0, grid_points)))
    x = grid.axis("x").points()
    R = grid.axis("R").points()
    coth = 1.0 / np.tanh(R)

    f = ((2.0 + 2.0 * x)[None, :] / (4.0 * x)[None, :]) \
        * np.tanh(np.outer(R, x)) * coth[:, None]
    slack = f - 1.0
    i, j = np.unravel_index(np.argmin(slack), slack.shape)

    # proof's endpoint forms: x = 1/2 exactly and the x -> 0+ limit
    half_form = 1.5 * np.tanh(R / 2.0) * coth
    f_half = ((2.0 + 1.0) / 2.0) * np.tanh(R * 0.5) * coth
    dev_half = float(np.max(np.abs(f_half - half_form)))
    x0 = 1e-8
    f_zero = ((2.0 + 2.0 * x0) / (4.0 * x0)) * np.tanh(R * x0) * coth
    zero_form = 0.5 * R * coth
    dev_zero = float(np.max(np.abs(f_zero - zero_form) / zero_form))

    details = {"boundary_half_max_dev": dev_half, "boundary_zero_max_rel_dev": dev_zero}
    status = _verdict(float(slack[i, j]), slack_tol)
    if dev_half > 1e-12 or dev_zero > 1e-5:
        status = "fail"
        details["reason"] = "boundary form mismatch"
    return CheckReport("tanh_claim", grid.size(), float(slack[i, j]),
                       {"x": float(x[j]), "R": float(R[i])}, status, details)


def check_c0_inequality(grid: GridSpec | None = None, *,
                        grid_points: int = GRID_POINTS_DEFAULT,
                        slack_tol: float = SLACK_TOL) -> CheckReport:
    """Certify 2 + r <= 3 e^(1/delta) e^(delta r) over delta in (0, 2],
    r in (0, 100], along with the chain through 3(1 + 1/delta)(1 + delta r) >= 3r."""
    if grid is None:
        grid = GridSpec((Axis("delta", 0.0, 2.0, grid_points, open_lo=True),
                         Axis("r", 0.0, 100.0, grid_points, open_lo=True)))
    d = grid.axis("delta").points()
    r = grid.axis("r").points()
    big = 3.0 * np.exp((1.0 / d)[:, None] + np.outer(d, r))
    mid = 3.0 * (1.0 + 1.0 / d)[:, None] * (1.0 + np.outer(d, r))
    fams = np.stack([big - (2.0 + r)[None, :], big - mid, mid - 3.0 * r[None, :]])
    names = ("2+r <= 3 e^(1/delta) e^(delta r)",
             "3 e^(1/delta) e^(delta r) >= 3(1+1/delta)(1+delta r)",
             "3(1+1/delta)(1+delta r) >= 3r")
    k, i, j = np.unravel_index(np.argmin(fams), fams.shape)
    min_slack = float(fams[k, i, j])
    details = {"family_min_slacks": {n: float(fams[m].min()) for m, n in enumerate(names)}}
    return CheckReport("c0_inequality", grid.size(), min_slack,
                       {"delta": float(d[i]), "r": float(r[j]), "family": names[k]},
                       _verdict(min_slack, slack_tol), details)


def check_geometric_series(grid: GridSpec | None = None, *,
                           grid_points: int = GRID_POINTS_DEFAULT,
                           slack_tol: float = SLACK_TOL,
                           partial_tol: float = 1e-12) -> CheckReport:
    """Certify 2 sinh(1/2 - delta) >= 1 and
    e^(-(1/2 - delta) r) (1 + e^(1/2 - delta)) <= e^(1/2 - delta) over
    delta in (0, 0.01), r in [1, 100]; also match the closed geometric sum
    against a 10^4-term partial sum on a subgrid."""
    if grid is None:
        grid = GridSpec((Axis("delta", 0.0, 0.01, grid_points, open_lo=True, open_hi=True),
                         Axis("r", 1.0, 100.0, grid_points)))
    d = grid.axis("delta").points()
    r = grid.axis("r").points()
    beta = 0.5 - d
    s1 = 2.0 * np.sinh(beta) - 1.0
    eb = np.exp(beta)
    s2 = eb[:, None] - np.exp(-np.outer(beta, r)) * (1.0 + eb)[:, None]

    sub_d = np.unique(np.linspace(0, d.size - 1, 20).astype(int))
    sub_r = np.unique(np.linspace(0, r.size - 1, 20).astype(int))
    br = np.outer(beta[sub_d], r[sub_r]).ravel()
    q = np.exp(-br)
    closed = q ** 2 / (1.0 - q)
    with np.errstate(under="ignore"):
        partial = np.exp(-np.outer(br, np.arange(2.0, 10002.0))).sum(axis=1)
    dev = float(np.max(np.abs(closed - partial)))

    if s1.min() <= s2.min():
        i = int(np.argmin(s1))
        min_slack, worst = float(s1[i]), {"delta": float(d[i]), "r": None,
                                          "family": "2 sinh(1/2 - delta) >= 1"}
    else:
        i, j = np.unravel_index(np.argmin(s2), s2.shape)
        min_slack = float(s2[i, j])
        worst = {"delta": float(d[i]), "r": float(r[j]),
                 "family": "e^(-beta r)(1+e^beta) <= e^beta"}
    details = {"partial_sum_max_dev": dev, "partial_sum_terms": 10000}
    status = _verdict(min_slack, slack_tol)
    if dev > partial_tol:
        status = "fail"
        details["reason"] = "closed sum disagrees with partial sum"
    return CheckReport("geometric_series", grid.size(), min_slack, worst, status, details)


# -- cross-module checks ---------------------------------------------------

def check_fejer_identity(*, slack_tol: float = SLACK_TOL) -> CheckReport:
    """Sine-quotient and cosine-sum forms of the Fejer kernel agree away from
    the removable singularities; the singular value itself is exactly N."""
    s = np.linspace(-4.0 * math.pi, 4.0 * math.pi, 2001)
    worst = {"N": None, "s": None}
    max_dev = 0.0
    exact = True
    for N in (1, 2, 3, 4, 5, 8, 13, 16, 32, 64):
        mask = np.abs(np.sin(0.5 * s)) > 1e-3
        sine = np.sin(0.5 * N * s[mask]) ** 2 / (N * np.sin(0.5 * s[mask]) ** 2)
        j = np.arange(1, N + 1, dtype=float)
        cosine = 1.0 + 2.0 * (np.cos(np.outer(s[mask], j)) @ (N - j)) / N
        dev = np.abs(sine - cosine)
        k = int(np.argmax(dev))
        if dev[k] > max_dev:
            max_dev = float(dev[k])
            worst = {"N": N, "s": float(s[mask][k])}
        exact = exact and fejer(N, 0.0) == float(N)
    details = {"max_form_dev": max_dev, "value_at_zero_exact": exact}
    status = _verdict(-max_dev, slack_tol)
    if not exact:
        status = "fail"
        details["reason"] = "F_N(0) != N exactly"
    return CheckReport("fejer_identity", 2001 * 10, -max_dev, worst, status, details)


def _random_wave_tuples(rng: np.random.Generator, n: int):
    for _ in range(n):
        lam = 0.25 + rng.uniform(0.0, 8.0) ** 2
        mu = 0.25 + rng.uniform(0.0, 8.0) ** 2
        r = rng.uniform(0.1, 4.0)
        N = int(rng.integers(1, 65))
        yield lam, mu, r, N


def check_wave_multiplier_agreement(*, seed: int = 0, n: int = 500,
                                    form_tol: float = 1e-9,
                                    slack_tol: float = SLACK_TOL) -> CheckReport:
    """Direct summation and the Fejer-kernel rewrite of the wave multiplier
    agree on random tempered tuples."""
    rng = np.random.default_rng(seed)
    min_slack = math.inf
    worst: dict = {}
    for lam, mu, r, N in _random_wave_tuples(rng, n):
        spec = WaveMultiplierSpec(lam=spectral_parameter(lam), r=r, N=N)
        m = spectral_parameter(mu)
        slack = form_tol - abs(w_multiplier_direct(spec, m) - w_multiplier_fejer(spec, m))
        if slack < min_slack:
            min_slack = slack
            worst = {"lam": lam, "mu": mu, "r": r, "N": N}
    return CheckReport("wave_multiplier_agreement", n, float(min_slack), worst,
                       _verdict(float(min_slack), slack_tol), {"form_tol": form_tol})


def check_wave_multiplier_bounds(*, seed: int = 0, n: int = 500,
                                 n_untempered: int = 200,
                                 slack_tol: float = SLACK_TOL) -> CheckReport:
    """Floors of the wave multiplier: >= -1 on the tempered spectrum, >= 0 on
    the untempered one, exactly 0 on constants, and >= (N-4)/(4 cosh(pi s/2))
    on the target eigenspace."""
    rng = np.random.default_rng(seed + 1)
    min_slack = math.inf
    worst: dict = {}
    zero_exact = True

    def consider(slack: float, point: dict) -> None:
        nonlocal min_slack, worst
        if slack < min_slack:
            min_slack = slack
            worst = point

    mu0 = spectral_parameter(0.0)
    for lam, mu, r, N in _random_wave_tuples(rng, n):
        spec = WaveMultiplierSpec(lam=spectral_parameter(lam), r=r, N=N)
        consider(w_multiplier_direct(spec, spectral_parameter(mu)) + 1.0,
                 {"bound": "tempered >= -1", "lam": lam, "mu": mu, "r": r, "N": N})
        consider(w_multiplier_direct(spec, spec.lam) - w_self_lower_bound(spec),
                 {"bound": "self >= (N-4)/(4 cosh)", "lam": lam, "r": r, "N": N})
        zero_exact = zero_exact and w_multiplier_direct(spec, mu0) == 0.0
    for _ in range(n_untempered):
        lam = 0.25 + rng.uniform(0.0, 8.0) ** 2
        spec = WaveMultiplierSpec(lam=spectral_parameter(lam),
                                  r=rng.uniform(0.1, 4.0), N=int(rng.integers(1, 65)))
        mu_u = spectral_parameter(rng.uniform(0.0, 0.25))
        consider(w_multiplier_direct(spec, mu_u),
                 {"bound": "untempered >= 0", "lam": lam, "mu": mu_u.lam,
                  "r": spec.r, "N": spec.N})
    details = {"zero_eigenvalue_exact": zero_exact}
    status = _verdict(float(min_slack), slack_tol)
    if not zero_exact:
        status = "fail"
        details["reason"] = "nonzero value on the constant eigenspace"
    return CheckReport("wave_multiplier_bounds", n + n_untempered,
                       float(min_slack), worst, status, details)


def check_ball_multiplier_floors(*, sigmas: tuple[float, ...] = (0.01, 0.04, 0.09),
                                 slack_tol: float = SLACK_TOL) -> CheckReport:
    """Floors of the ball multiplier: the crude tempered floor, its value -1
    at the bisection threshold, nonnegativity on the untempered spectrum, and
    the sinh floor above the decay-rate cutoff."""
    min_slack = math.inf
    worst: dict = {}

    def consider(slack: float, point: dict) -> None:
        nonlocal min_slack, worst
        if slack < min_slack:
            min_slack = slack
            worst = point

    n_pts = 0
    for sigma in sigmas:
        tstar = ball_tempered_threshold(sigma)
        consider(ball_tempered_floor(BallMultiplierSpec(t=tstar, sigma=sigma)) + 1.0,
                 {"bound": "floor(t*) >= -1", "sigma": sigma, "t": tstar})
        n_pts += 1
        for t in (4.0, 14.0, tstar):
            spec = BallMultiplierSpec(t=t, sigma=sigma)
            floor_t = ball_tempered_floor(spec)
            for s in np.linspace(0.0, 6.0, 13):
                mu = spectral_parameter(0.25 + float(s) ** 2)
                consider(b_multiplier(spec, mu) - floor_t,
                         {"bound": "tempered >= crude floor", "sigma": sigma,
                          "t": t, "s_mu": float(s)})
                n_pts += 1
            rt = math.sqrt(sigma)
            for a in np.linspace(0.02, 0.5, 9):
                mu = spectral_parameter(0.25 - float(a) ** 2)
                val = b_multiplier(spec, mu)
                floor_u = ball_untempered_floor(spec, mu)
                label = "untempered >= sinh floor" if (a > rt and t >= 2.0) \
                    else "untempered >= 0"
                consider(val - floor_u,
                         {"bound": label, "sigma": sigma, "t": t, "a_mu": float(a)})
                n_pts += 1
    return CheckReport("ball_multiplier_floors", n_pts, float(min_slack), worst,
                       _verdict(float(min_slack), slack_tol), {"sigmas": list(sigmas)})


def check_ball_spectral_consistency(*, t: float = 3.0, sigma: float = 0.04,
                                    closed_form_tol: float = 1e-8,
                                    slack_tol: float = SLACK_TOL) -> CheckReport:
    """The closed-form ball multiplier matches the generic forward transform
    of the normalized indicator kernel at mixed spectral points."""
    spec = BallMultiplierSpec(t=t, sigma=sigma)
    kern = ball_kernel(t, normalization=1.0 / spec.normalization())
    h = selberg_transform(kern)
    max_dev = 0.0
    worst: dict = {}
    pts: list[complex] = [0.0, 0.5, 1.0, 2.0, 3.7, 5.0]
    pts += [1j * a for a in (0.1, 0.25, 0.4, 0.5)]
    for s in pts:
        mu = spectral_parameter(0.25 + s ** 2 if not isinstance(s, complex)
                                else 0.25 - s.imag ** 2)
        dev = abs(h(s) - b_multiplier(spec, mu))
        if dev > max_dev:
            max_dev = dev
            worst = {"s": repr(s)}
    slack = closed_form_tol - max_dev
    return CheckReport("ball_spectral_consistency", len(pts), float(slack), worst,
                       _verdict(float(slack), slack_tol),
                       {"t": t, "sigma": sigma, "max_dev": max_dev})


def check_selberg_round_trip_wave(*, t: float = 2.0, round_trip_tol: float = 1e-4,
                                  slack_tol: float = SLACK_TOL) -> CheckReport:
    """Spectral function -> kernel -> spectral function reproduces the smooth
    wave pair on a sample grid."""
    h = wave_spectral(t)
    k = inverse_selberg(h, s_max=30.0)
    h2 = selberg_transform(k)
    grid = np.linspace(0.0, 8.0, 25)
    dev = max(abs(h2(float(s)) - h(float(s))) for s in grid)
    worst_s = max(grid, key=lambda s: abs(h2(float(s)) - h(float(s))))
    slack = round_trip_tol - dev
    return CheckReport("selberg_round_trip_wave", grid.size, float(slack),
                       {"t": t, "s": float(worst_s)},
                       _verdict(float(slack), slack_tol),
                       {"sup_dev": dev, "tol": round_trip_tol})


def check_selberg_round_trip_ball(*, t: float = 2.0, round_trip_tol: float = 1e-4,
                                  slack_tol: float = SLACK_TOL) -> CheckReport:
    """Kernel -> spectral function -> kernel reproduces the indicator height
    inside the ball."""
    h = selberg_transform(ball_kernel(t))
    k2 = inverse_selberg(h)
    grid = np.linspace(0.0, t - 0.05, 30)
    dev = max(abs(k2(float(rho)) - 1.0) for rho in grid)
    worst_rho = max(grid, key=lambda rho: abs(k2(float(rho)) - 1.0))
    slack = round_trip_tol - dev
    return CheckReport("selberg_round_trip_ball", grid.size, float(slack),
                       {"t": t, "rho": float(worst_rho)},
                       _verdict(float(slack), slack_tol),
                       {"sup_dev": dev, "tol": round_trip_tol})


def check_counting_bound(group_name: str, *,
                         deltas: tuple[float, ...] = (0.1, 0.25, 0.5, 1.0),
                         n_radii: int = 20,
                         slack_tol: float = SLACK_TOL) -> CheckReport:
    """Orbit counts on a shipped group stay below Cx c0(delta) e^(delta r)
    for radii up to R."""
    group = load_group(group_name)
    params = params_from_tanglefree(L=group.tanglefree_L_hint,
                                    injrad=group.injrad_hint)
    pairs = ((Point(0.0, 1.0), Point(0.0, 1.0)),
             (Point(0.25, 1.1), Point(-0.2, 0.9)))
    radii = np.linspace(params.R / n_radii, params.R, n_radii)
    min_slack = math.inf
    worst: dict = {}
    n = 0
    for delta in deltas:
        rep = verify_counting_bound(group, params, pairs, radii, delta=delta,
                                    mode="brute", max_word_len=5)
        n += len(rep.entries)
        for e in rep.entries:
            slack = 1.0 - e.ratio
            if slack < min_slack:
                min_slack = slack
                worst = {"delta": delta, "radius": e.radius, "count": e.count}
    return CheckReport(f"counting_bound[{group_name}]", n, float(min_slack), worst,
                       _verdict(float(min_slack), slack_tol),
                       {"R": params.R, "Cx": params.Cx, "deltas": list(deltas)})


# -- orchestration ---------------------------------------------------------

@dataclass(frozen=True)
class VerifyConfig:
    sigmas: tuple[float, ...] = (0.01, 0.04, 0.09)
    grid_points: int = GRID_POINTS_DEFAULT
    slack_tol: float = SLACK_TOL
    quad_tol: float = QUAD_AGREEMENT_TOL
    seed: int = 0
    threads: int = 1
    include_cross_checks: bool = True

    def __post_init__(self) -> None:
        for s in self.sigmas:
            if not (0.0 < s < 0.25):
                raise ValueError(f"sigma = {s} must lie in (0, 1/4)")
        if self.grid_points < 2:
            raise ValueError("grid_points must be at least 2")
        if not (self.slack_tol > 0.0 and self.quad_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


def _check_list(cfg: VerifyConfig) -> list[tuple[str, Callable[[], CheckReport]]]:
    n, st, qt = cfg.grid_points, cfg.slack_tol, cfg.quad_tol
    out: list[tuple[str, Callable[[], CheckReport]]] = []
    for sigma in cfg.sigmas:
        out.append((f"technical_lemma[sigma={sigma:g}]",
                    lambda sigma=sigma: check_technical_lemma(
                        sigma, grid_points=n, slack_tol=st, quad_tol=qt)))
    out.append(("tanh_claim", lambda: check_tanh_claim(grid_points=n, slack_tol=st)))
    out.append(("c0_inequality",
                lambda: check_c0_inequality(grid_points=n, slack_tol=st)))
    out.append(("geometric_series",
                lambda: check_geometric_series(grid_points=n, slack_tol=st)))
    if cfg.include_cross_checks:
        out.append(("fejer_identity", lambda: check_fejer_identity(slack_tol=st)))
        out.append(("wave_multiplier_agreement",
                    lambda: check_wave_multiplier_agreement(seed=cfg.seed, slack_tol=st)))
        out.append(("wave_multiplier_bounds",
                    lambda: check_wave_multiplier_bounds(seed=cfg.seed, slack_tol=st)))
        out.append(("ball_multiplier_floors",
                    lambda: check_ball_multiplier_floors(sigmas=cfg.sigmas, slack_tol=st)))
        out.append(("ball_spectral_consistency",
                    lambda: check_ball_spectral_consistency(slack_tol=st)))
        out.append(("selberg_round_trip_wave",
                    lambda: check_selberg_round_trip_wave(slack_tol=st)))
        out.append(("selberg_round_trip_ball",
                    lambda: check_selberg_round_trip_ball(slack_tol=st)))
        for name in ("cyclic", "pingpong", "bolza"):
            out.append((f"counting_bound[{name}]",
                        lambda name=name: check_counting_bound(name, slack_tol=st)))
    return out


def _run_one(name: str, fn: Callable[[], CheckReport]) -> CheckReport:
    try:
        return fn()
    except QuadratureNonConvergence as exc:
        return CheckReport(name, 0, math.nan, {}, "inconclusive",
                           {"reason": "quadrature", "error": str(exc)})


def run_all(config: VerifyConfig | None = None) -> list[CheckReport]:
    """Run every inequality check plus the cross-module consistency checks,
    in a fixed order regardless of thread count."""
    cfg = config or VerifyConfig()
    items = _check_list(cfg)
    if cfg.threads == 1:
        return [_run_one(name, fn) for name, fn in items]
    with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
        return list(ex.map(lambda it: _run_one(*it), items))


def exit_status(reports: list[CheckReport]) -> int:
    """0 if all pass, 1 if any inequality fails, 3 if inconclusive only."""
    if any(r.status == "fail" for r in reports):
        return 1
    if any(r.status == "inconclusive" for r in reports):
        return 3
    return 0
