"""Volume lower bounds for sets carrying a fixed share of eigenfunction
mass: the tempered and untempered deterministic calculators and their
genus-parametrized random-surface corollaries.

Hypothesis failures are data, not exceptions: every calculator emits a full
report with per-hypothesis (required, actual, satisfied) rows, and certifies
a lower bound only when all rows hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DeltaTooLarge, UntemperedInput
from .fuchsian import GeometryParams, default_c0
from .multipliers import a_factor, ball_tempered_threshold, spectral_parameter

DELTA_DEFAULT_TEMPERED = 0.005
DELTA_UNTEMPERED = 0.25
DELTA_CEILING = 0.01
CHAIN_RTOL = 1e-12  # roundoff allowance on mathematically forced chain rows

RATE_CAVEAT = ("rate terms are unnormalized: the probabilistic inputs carry "
               "unspecified absolute constants")


@dataclass(frozen=True)
class DelocInput:
    """Problem data for the deterministic volume bounds.

    eps is the L2 mass share of the set under test, lam the Laplacian
    eigenvalue, sigma the spectral-gap parameter (untempered mode only).
    """

    eps: float
    lam: float
    params: GeometryParams
    sigma: float | None = None
    delta: float | None = None

    def __post_init__(self) -> None:
        if not (0.0 < self.eps <= 1.0):
            raise ValueError(f"eps = {self.eps} must lie in (0, 1]")


@dataclass(frozen=True)
class Hypothesis:
    name: str
    required: float
    actual: float
    satisfied: bool


@dataclass(frozen=True)
class BoundReport:
    mode: str
    N: int | None
    r: int | None
    d_lam: float
    exact_bound: float
    simplified_bound: float
    lower_bound: float | None
    hypotheses: tuple[Hypothesis, ...]
    valid: bool
    delta: float
    eps: float
    lam: float
    sigma: float | None = None


def _chain_ge(actual: float, required: float) -> bool:
    return actual >= required - CHAIN_RTOL * max(1.0, abs(required))


def tempered_volume_bound(inp: DelocInput) -> BoundReport:
    """Volume bound for tempered eigenvalues via the Fejer-weighted wave
    multiplier: N = floor(8 cosh(pi s/2)/eps), r = ceil(R/(8N)), certified
    bound (C eps / Cx) e^((1/2 - delta) r) with C = 1/A(delta), and the
    simplified form (C eps / Cx) e^(d eps R) with d = 1/(256 cosh(pi s/2))."""
    sp = spectral_parameter(inp.lam)
    if not sp.tempered:
        raise UntemperedInput(
            f"lam = {inp.lam} < 1/4; use untempered_volume_bound")
    delta = DELTA_DEFAULT_TEMPERED if inp.delta is None else inp.delta
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if delta >= DELTA_CEILING:
        raise DeltaTooLarge(f"delta = {delta} is not below {DELTA_CEILING}")

    R, Cx = inp.params.R, inp.params.Cx
    ch = sp.half_pi_factor()
    N = math.floor(8.0 * ch / inp.eps)
    r = math.ceil(R / (8.0 * N))
    d_lam = 1.0 / (256.0 * ch)
    C = 1.0 / a_factor(delta, inp.params.c0)

    pref = C * inp.eps / Cx
    exact = pref * math.exp((0.5 - delta) * r)
    simplified = pref * math.exp(d_lam * inp.eps * R)

    req_R = 64.0 * ch / inp.eps
    hyps = (
        Hypothesis("R >= 64 cosh(pi s/2) / eps", req_R, R, R >= req_R),
        Hypothesis("N r <= R / 4", R / 4.0, float(N * r), N * r <= R / 4.0),
        Hypothesis("(1/2 - delta) r >= R / (32 N)",
                   R / (32.0 * N), (0.5 - delta) * r,
                   _chain_ge((0.5 - delta) * r, R / (32.0 * N))),
        Hypothesis("R / (32 N) >= eps R / (256 cosh(pi s/2))",
                   inp.eps * R / (256.0 * ch), R / (32.0 * N),
                   _chain_ge(R / (32.0 * N), inp.eps * R / (256.0 * ch))),
    )
    valid = all(h.satisfied for h in hyps)
    return BoundReport(
        mode="tempered", N=N, r=r, d_lam=d_lam,
        exact_bound=exact, simplified_bound=simplified,
        lower_bound=exact if valid else None,
        hypotheses=hyps, valid=valid, delta=delta,
        eps=inp.eps, lam=inp.lam, sigma=None)


def untempered_volume_bound(inp: DelocInput) -> BoundReport:
    """Volume bound below the tempered threshold via the normalized ball
    average: (eps / (Cx c0(1/4))) e^((1/4 + sqrt(sigma)/2) R), certified once
    R clears 2, (2/sqrt(sigma)) log(2 + 2/eps), and the radius at which the
    tempered part of the ball multiplier drops below 1."""
    if inp.sigma is None:
        raise ValueError("sigma is required for the untempered bound")
    if not (0.0 < inp.sigma < 0.25):
        raise ValueError(f"sigma = {inp.sigma} must lie in (0, 1/4)")
    if not (0.0 < inp.lam < 0.25 - inp.sigma):
        raise ValueError(
            f"lam = {inp.lam} must lie in (0, 1/4 - sigma) = (0, {0.25 - inp.sigma})")
    if inp.delta is not None and inp.delta != DELTA_UNTEMPERED:
        raise ValueError("the untempered bound fixes delta = 1/4")

    R, Cx = inp.params.R, inp.params.Cx
    rs = math.sqrt(inp.sigma)
    thr_mass = (2.0 / rs) * math.log(2.0 + 2.0 / inp.eps)
    thr_ball = ball_tempered_threshold(inp.sigma)
    hyps = (
        Hypothesis("R >= 2", 2.0, R, R >= 2.0),
        Hypothesis("R >= (2/sqrt(sigma)) log(2 + 2/eps)", thr_mass, R, R >= thr_mass),
        Hypothesis("R >= tempered-part threshold", thr_ball, R, R >= thr_ball),
    )
    valid = all(h.satisfied for h in hyps)

    C = 1.0 / inp.params.c0(DELTA_UNTEMPERED)
    rate = 0.25 + 0.5 * rs
    val = (inp.eps * C / Cx) * math.exp(rate * R)
    return BoundReport(
        mode="untempered", N=None, r=None, d_lam=rate,
        exact_bound=val, simplified_bound=val,
        lower_bound=val if valid else None,
        hypotheses=hyps, valid=valid, delta=DELTA_UNTEMPERED,
        eps=inp.eps, lam=inp.lam, sigma=inp.sigma)


@dataclass(frozen=True)
class RandomModelInput:
    """Genus-parametrized inputs: radius R = c log(genus) with c in (0, 1/4)
    and injectivity radius at least genus^(-a), both holding with the
    probability given by the rate terms."""

    genus: int
    c: float
    a: float
    eps: float
    lam: float
    sigma: float | None = None
    delta: float | None = None

    def __post_init__(self) -> None:
        if self.genus < 2 or self.genus != int(self.genus):
            raise ValueError("genus must be an integer >= 2")
        if not (0.0 < self.c < 0.25):
            raise ValueError(f"c = {self.c} must lie in (0, 1/4)")
        if not (self.a > 0.0):
            raise ValueError("a must be positive")
        if not (0.0 < self.eps <= 1.0):
            raise ValueError(f"eps = {self.eps} must lie in (0, 1]")


@dataclass(frozen=True)
class RandomModelReport:
    mode: str
    genus: int
    c: float
    a: float
    eps: float
    lam: float
    sigma: float | None
    R: float
    d_lam: float
    exponent: float
    exponent_positive: bool
    prefactor: float
    bound: float
    rate_term_counting: float
    rate_term_injrad: float
    caveat: str


def random_model_bound(inp: RandomModelInput) -> RandomModelReport:
    """Volume bound on a high-genus random surface: C eps genus^exponent with
    exponent c eps d(lam) - a (tempered) or c (1/4 + sqrt(sigma)/2) - a
    (untempered), plus the two unnormalized failure-rate terms
    log(g)^2 / g^(1-4c) and g^(-2a)."""
    sp = spectral_parameter(inp.lam)
    if sp.tempered:
        delta = DELTA_DEFAULT_TEMPERED if inp.delta is None else inp.delta
        if delta <= 0.0:
            raise ValueError("delta must be positive")
        if delta >= DELTA_CEILING:
            raise DeltaTooLarge(f"delta = {delta} is not below {DELTA_CEILING}")
        d_lam = 1.0 / (256.0 * sp.half_pi_factor())
        exponent = inp.c * inp.eps * d_lam - inp.a
        C = 1.0 / a_factor(delta)
        mode = "tempered"
    else:
        if inp.sigma is None:
            raise ValueError("sigma is required below the tempered threshold")
        if not (0.0 < inp.sigma < 0.25):
            raise ValueError(f"sigma = {inp.sigma} must lie in (0, 1/4)")
        if not (0.0 < inp.lam < 0.25 - inp.sigma):
            raise ValueError(
                f"lam = {inp.lam} must lie in (0, 1/4 - sigma) = (0, {0.25 - inp.sigma})")
        if inp.delta is not None and inp.delta != DELTA_UNTEMPERED:
            raise ValueError("the untempered bound fixes delta = 1/4")
        d_lam = 0.25 + 0.5 * math.sqrt(inp.sigma)
        exponent = inp.c * d_lam - inp.a
        C = 1.0 / default_c0(DELTA_UNTEMPERED)
        mode = "untempered"

    g = float(inp.genus)
    prefactor = C * inp.eps
    return RandomModelReport(
        mode=mode, genus=inp.genus, c=inp.c, a=inp.a, eps=inp.eps,
        lam=inp.lam, sigma=inp.sigma, R=inp.c * math.log(g), d_lam=d_lam,
        exponent=exponent, exponent_positive=exponent > 0.0,
        prefactor=prefactor, bound=prefactor * g ** exponent,
        rate_term_counting=math.log(g) ** 2 / g ** (1.0 - 4.0 * inp.c),
        rate_term_injrad=g ** (-2.0 * inp.a),
        caveat=RATE_CAVEAT)


def geometry_for_genus(inp: RandomModelInput) -> GeometryParams:
    """GeometryParams a genus-g surface satisfies with high probability:
    R = c log(g), InjRad >= g^(-a)."""
    g = float(inp.genus)
    injrad = g ** (-inp.a)
    return GeometryParams.from_bounds(
        R=inp.c * math.log(g), Cx=1.0 / min(1.0, injrad), injrad=injrad)
