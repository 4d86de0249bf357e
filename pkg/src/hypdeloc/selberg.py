"""Radial/spectral transform pair on the hyperbolic plane.

A radial kernel k(rho) determines a spectral function h(s) in two stages:
an Abel-type integral in the distance variable producing an even function
g(u), then a Fourier cosine transform.  Both stages and their inverses are
computed by adaptive quadrature after substitutions that remove the
square-root endpoint singularities:

    forward  (k -> g):  cosh rho = cosh u + v^2
    inverse  (g -> k):  cosh u   = cosh rho + v^2

g' for the inverse stage comes from differentiating under the Fourier
integral, or from forms carried by the kernel: a smooth derivative is
integrated numerically, while each jump of size drop at t contributes
-sqrt(2) * drop * sinh(u) / sqrt(cosh t - cosh u) to g', whose Abel
inversion is a beta integral evaluating to exactly drop inside the ball.

Transform objects hold sampled cubic-spline representations on grids of
step 1e-2; for a kernel supported in [0, t] the g stage is sampled in the
variable w = sqrt(t - u), in which it is smooth across the endpoint.
Spectral arguments may be real (tempered) or purely imaginary ia with
|a| <= 1/2 (untempered); oscillatory evaluation beyond |s| = 50 is outside
the validated regime recorded in the object metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import InterpolatedUnivariateSpline

from ._quad import gauss_legendre, integrate
from .errors import UntemperedInput

DEFAULT_GRID_STEP = 1e-2
S_ABS_VALIDATED = 50.0
_TAIL_EXTENT = 28.0  # e-folding budget for truncating exponential tails


def _acosh1p(x):
    """arccosh(1 + x) for x >= 0, stable near 0."""
    x = np.maximum(x, 0.0)
    return np.log1p(x + np.sqrt(x * (x + 2.0)))


def _split_spectral(s) -> tuple[float, float]:
    """Return (real part, untempered rate a) from a spectral argument."""
    if isinstance(s, complex):
        if abs(s.real) > 1e-12 and abs(s.imag) > 1e-12:
            raise ValueError(f"spectral argument {s} must be real or purely imaginary")
        if abs(s.imag) > 0.5 + 1e-12:
            raise ValueError(f"imaginary spectral rate {s.imag} outside [-1/2, 1/2]")
        if abs(s.imag) > 1e-12:
            return 0.0, abs(s.imag)
        return s.real, 0.0
    return float(s), 0.0


def _cos_eval(s, u):
    """cos(su) for real s, cosh(au) for s = ia."""
    sr, a = _split_spectral(s)
    if a:
        return np.cosh(a * u)
    return np.cos(sr * u)


@dataclass
class RadialKernel:
    """Even radial kernel rho -> k(rho).

    decay_hint delta asserts |k(rho)| <~ e^(-(1+delta) rho) beyond the
    support bound; jumps lists (location, downward drop) of discontinuities
    so that g' keeps its analytic form.
    """

    eval: Callable
    support_bound: float = math.inf
    decay_hint: float = 1.0
    eval_prime: Callable | None = None
    jumps: tuple = ()
    meta: dict = field(default_factory=dict)

    def __call__(self, rho):
        return self.eval(rho)


@dataclass
class IntermediateG:
    """Even function u -> g(u) linking the two transform stages.

    eval_prime is the absolutely continuous part of g'; the singular
    boundary terms -sqrt(2) drop sinh(u)/sqrt(cosh t - cosh u) coming from
    kernel jumps are carried symbolically in jumps and integrated in closed
    form by the Abel inversion.
    """

    eval: Callable
    eval_prime: Callable | None = None
    support_bound: float = math.inf
    u_max_hint: float = 40.0
    jumps: tuple = ()

    def __call__(self, u):
        return self.eval(u)

    def cutoff(self) -> float:
        return self.support_bound if math.isfinite(self.support_bound) else self.u_max_hint


@dataclass
class SpectralFunction:
    """Spectral function s -> h(s); carries the g it came from when known."""

    eval: Callable
    g: IntermediateG | None = None
    s_max_hint: float = 30.0
    u_max_hint: float = 40.0
    meta: dict = field(default_factory=dict)

    def __call__(self, s):
        return self.eval(s)


# -- stage primitives ----------------------------------------------------

def abel_forward(k: RadialKernel, u: float, tol: float = 1e-11) -> float:
    """g(u) = sqrt(2) int_|u|^inf k(rho) sinh(rho) / sqrt(cosh rho - cosh u) drho."""
    u = abs(float(u))
    if u >= k.support_bound:
        return 0.0
    if math.isfinite(k.support_bound):
        rho_cut = k.support_bound
    else:
        rho_cut = u + min(60.0, _TAIL_EXTENT / (0.5 + k.decay_hint) + 5.0)
    cu = math.cosh(u)
    mid = min(u + 2.0, rho_cut)
    v1 = math.sqrt(math.cosh(mid) - cu)
    near = integrate(lambda v: k.eval(float(_acosh1p((cu - 1.0) + v * v))), 0.0, v1, tol=tol)
    total = 2.0 * near
    if rho_cut > mid:
        far = integrate(
            lambda rho: k.eval(rho) * math.sinh(rho) / math.sqrt(math.cosh(rho) - cu),
            mid, rho_cut, tol=tol)
        total += far
    return math.sqrt(2.0) * total


def fourier(g: IntermediateG, s, u_max: float | None = None, tol: float = 1e-11) -> float:
    """h(s) = 2 int_0^u_max cos(su) g(u) du (cosh for imaginary s)."""
    if u_max is None:
        u_max = g.cutoff()
    pts = None
    if math.isfinite(g.support_bound) and g.support_bound < u_max:
        pts = [g.support_bound]
    val = integrate(lambda u: float(_cos_eval(s, u)) * g.eval(u), 0.0, u_max,
                    tol=tol, points=pts, limit=400)
    return 2.0 * val


def inverse_fourier(h: SpectralFunction, u: float, s_max: float | None = None,
                    tol: float = 1e-11) -> float:
    """g(u) = (1/pi) int_0^s_max cos(su) h(s) ds."""
    if s_max is None:
        s_max = h.s_max_hint
    val = integrate(lambda s: math.cos(s * u) * h.eval(s), 0.0, s_max, tol=tol, limit=400)
    return val / math.pi


def inverse_fourier_deriv(h: SpectralFunction, u: float, s_max: float | None = None,
                          tol: float = 1e-11) -> float:
    """g'(u) = -(1/pi) int_0^s_max s sin(su) h(s) ds (differentiated under
    the integral)."""
    if s_max is None:
        s_max = h.s_max_hint
    val = integrate(lambda s: s * math.sin(s * u) * h.eval(s), 0.0, s_max, tol=tol, limit=400)
    return -val / math.pi


def abel_inverse(g: IntermediateG | None, g_prime: Callable | None, rho: float,
                 u_max: float | None = None, tol: float = 1e-10) -> float:
    """k(rho) = -(1/(sqrt(2) pi)) int_rho^u_max g'(u) / sqrt(cosh u - cosh rho) du.

    Jump terms recorded on g integrate in closed form: each drop at t
    contributes exactly drop for rho < t (the inner integral is a beta
    integral of value pi).  Quadrature sees only the smooth part.
    """
    jumps = g.jumps if g is not None else ()
    if g_prime is None and g is not None:
        g_prime = g.eval_prime
    if g_prime is None and not jumps:
        raise ValueError("abel_inverse needs g_prime, or a g carrying eval_prime or jumps")
    if u_max is None:
        if g is None:
            raise ValueError("abel_inverse needs u_max or a g with a cutoff")
        u_max = g.cutoff()
    rho = abs(float(rho))
    if rho >= u_max:
        return 0.0
    total = sum(drop for t, drop in jumps if rho < t)
    if g_prime is None:
        return total
    cr = math.cosh(rho)
    mid = min(rho + 2.0, u_max)
    v1 = math.sqrt(math.cosh(mid) - cr)
    near = integrate(lambda v: g_prime(float(_acosh1p((cr - 1.0) + v * v)))
                     / math.sinh(float(_acosh1p((cr - 1.0) + v * v))),
                     0.0, v1, tol=tol, limit=300)
    total += -math.sqrt(2.0) / math.pi * near
    if u_max > mid:
        far = integrate(lambda u: g_prime(u) / math.sqrt(math.cosh(u) - cr),
                        mid, u_max, tol=tol, limit=300)
        total += -1.0 / (math.sqrt(2.0) * math.pi) * far
    return total


# -- transform objects ---------------------------------------------------

def _smooth_g_prime(smooth_prime: Callable, support: float):
    """Absolutely continuous part of g' for a kernel supported in
    [0, support], from the kernel's smooth derivative in the
    desingularized variable."""
    def gp(u: float) -> float:
        u = abs(float(u))
        if u >= support:
            return 0.0
        cu = math.cosh(u)
        su = math.sinh(u)
        v1 = math.sqrt(math.cosh(support) - cu)
        if v1 <= 0.0 or su <= 0.0:
            return 0.0
        return 2.0 * math.sqrt(2.0) * integrate(
            lambda v: smooth_prime(float(_acosh1p((cu - 1.0) + v * v)))
            * su / math.sinh(float(_acosh1p((cu - 1.0) + v * v))),
            0.0, v1, tol=1e-11)
    return gp


def selberg_transform(k: RadialKernel, grid_step: float = DEFAULT_GRID_STEP,
                      tol: float = 1e-11) -> SpectralFunction:
    """Forward transform k -> h with the intermediate g attached."""
    finite = math.isfinite(k.support_bound)
    if finite:
        t = k.support_bound
        wtop = math.sqrt(t)
        n = max(64, int(math.ceil(wtop / (0.5 * grid_step))) + 1)
        wgrid = np.linspace(0.0, wtop, n)
        vals = np.array([abel_forward(k, t - w * w, tol=tol) for w in wgrid])
        spl = InterpolatedUnivariateSpline(wgrid, vals, k=3, ext=3)

        def g_eval(u):
            u = abs(float(u))
            if u >= t:
                return 0.0
            return float(spl(math.sqrt(t - u)))

        gp = _smooth_g_prime(k.eval_prime, t) if k.eval_prime is not None else None
        g = IntermediateG(eval=g_eval, eval_prime=gp, support_bound=t,
                          u_max_hint=t, jumps=k.jumps)

        def h_eval(s):
            f = lambda w: float(_cos_eval(s, t - w * w)) * float(spl(w)) * 2.0 * w
            return 2.0 * integrate(f, 0.0, wtop, tol=tol, limit=400)
    else:
        u_top = min(120.0, _TAIL_EXTENT / (0.5 + k.decay_hint) + 10.0)
        n = int(math.ceil(u_top / grid_step)) + 1
        ugrid = np.linspace(0.0, u_top, n)
        vals = np.array([abel_forward(k, u, tol=tol) for u in ugrid])
        spl = InterpolatedUnivariateSpline(ugrid, vals, k=3, ext=1)

        def g_eval(u):
            return float(spl(abs(float(u))))

        g = IntermediateG(eval=g_eval, eval_prime=None, support_bound=math.inf,
                          u_max_hint=u_top)

        def h_eval(s):
            return 2.0 * integrate(lambda u: float(_cos_eval(s, u)) * float(spl(u)),
                                   0.0, u_top, tol=tol, limit=400)

    meta = {"s_abs_validated": S_ABS_VALIDATED, "grid_step": grid_step,
            "grid_points": n, "u_cutoff": g.cutoff()}
    return SpectralFunction(eval=h_eval, g=g, s_max_hint=30.0,
                            u_max_hint=g.cutoff(), meta=meta)


def inverse_selberg(h: SpectralFunction, s_max: float | None = None,
                    grid_step: float = DEFAULT_GRID_STEP,
                    tol: float = 1e-10) -> RadialKernel:
    """Inverse transform h -> k.

    When h carries its intermediate g with an analytic derivative, only the
    Abel stage is inverted; otherwise g and g' are rebuilt by (differentiated)
    inverse Fourier transforms truncated at s_max, which requires h to decay.
    """
    reused = h.g is not None and (h.g.eval_prime is not None or bool(h.g.jumps))
    if reused:
        g = h.g
        u_top = g.cutoff()
        gp = g.eval_prime
    else:
        if s_max is None:
            s_max = h.s_max_hint
        u_top = h.u_max_hint
        n_u = int(math.ceil(u_top / grid_step)) + 1
        ugrid = np.linspace(0.0, u_top, n_u)
        # enough nodes to resolve cos(s u) at the corner of both cutoffs
        n_s = max(800, int(0.75 * s_max * u_top))
        sn, swt = gauss_legendre(n_s, 0.0, s_max)
        hv = np.array([h.eval(float(s)) for s in sn]) * swt
        phase = sn[None, :] * ugrid[:, None]
        gvals = (np.cos(phase) @ hv) / math.pi
        gpvals = -(np.sin(phase) @ (hv * sn)) / math.pi
        gspl = InterpolatedUnivariateSpline(ugrid, gvals, k=3, ext=1)
        gpspl = InterpolatedUnivariateSpline(ugrid, gpvals, k=3, ext=1)
        gp = lambda u: float(gpspl(u))
        g = IntermediateG(eval=lambda u: float(gspl(abs(float(u)))),
                          eval_prime=gp, support_bound=math.inf, u_max_hint=u_top)

    finite = math.isfinite(g.support_bound)
    rho_top = g.support_bound if finite else u_top
    inset = 1e-6 if finite else 0.0
    n_r = int(math.ceil((rho_top - inset) / grid_step)) + 1
    rgrid = np.linspace(0.0, rho_top - inset, n_r)
    kvals = np.array([abel_inverse(g, gp, float(r), u_max=u_top, tol=tol) for r in rgrid])
    kspl = InterpolatedUnivariateSpline(rgrid, kvals, k=3, ext=3)
    top_sample = rgrid[-1]

    def k_eval(rho):
        rho = abs(float(rho))
        if rho >= rho_top:
            return 0.0
        return float(kspl(min(rho, top_sample)))

    jumps = ((rho_top, float(kspl(top_sample))),) if finite else ()
    meta = {"reused_intermediate": reused, "rho_cutoff": rho_top,
            "grid_step": grid_step, "s_abs_validated": S_ABS_VALIDATED}
    if not reused:
        meta["s_max"] = s_max
    return RadialKernel(eval=k_eval, support_bound=rho_top,
                        decay_hint=1.0, eval_prime=None, jumps=jumps, meta=meta)


# -- stock kernels and spectral functions --------------------------------

def ball_kernel(t: float, normalization: float = 1.0) -> RadialKernel:
    """Indicator of a ball of radius t, optionally scaled."""
    if t <= 0.0:
        raise ValueError("ball radius must be positive")

    def ev(rho):
        return np.where(np.abs(rho) <= t, normalization, 0.0)[()]

    # the jump at t carries the whole derivative; no smooth part
    return RadialKernel(eval=ev, support_bound=t, decay_hint=1.0,
                        eval_prime=None, jumps=((t, normalization),))


def wave_spectral(t: float) -> SpectralFunction:
    """h_t(s) = cos(st) / cosh(pi s / 2), the damped wave trace function."""

    def ev(s):
        sr, a = _split_spectral(s)
        if a:
            return math.cosh(a * t) / math.cos(math.pi * a / 2.0)
        return math.cos(sr * t) / math.cosh(math.pi * sr / 2.0)

    return SpectralFunction(eval=ev, g=None, s_max_hint=30.0, u_max_hint=t + 26.0,
                            meta={"family": "wave", "t": t,
                                  "s_abs_validated": S_ABS_VALIDATED})


def wave_g(t: float) -> IntermediateG:
    """Closed form of the intermediate g for the wave spectral function:
    (1/2pi) (sech(u - t) + sech(u + t))."""

    def ev(u):
        return (1.0 / math.cosh(u - t) + 1.0 / math.cosh(u + t)) / (2.0 * math.pi)

    def evp(u):
        return -(math.tanh(u - t) / math.cosh(u - t)
                 + math.tanh(u + t) / math.cosh(u + t)) / (2.0 * math.pi)

    return IntermediateG(eval=ev, eval_prime=evp, support_bound=math.inf,
                         u_max_hint=t + 26.0)
