"""Thin adaptive-quadrature wrapper used by the transform and bound modules.

QUADPACK does the panel work; this layer fixes tolerances, surfaces
non-convergence as a typed error, and keeps evaluation deterministic.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureNonConvergence

ABS_TOL = 1e-10   # per-call request
COMPOSITE_TOL = 1e-8  # reported-estimate ceiling before we refuse the value


def integrate(f, a: float, b: float, *, tol: float = ABS_TOL,
              rtol: float = ABS_TOL, limit: int = 200, points=None) -> float:
    """Integral of f over [a, b]; raises QuadratureNonConvergence if the
    error estimate exceeds the composite tolerance."""
    if b <= a:
        return 0.0
    kw = {"epsabs": tol, "epsrel": rtol, "limit": limit, "full_output": 1}
    if points is not None:
        kw["points"] = points
    out = quad(f, a, b, **kw)
    val, err = out[0], out[1]
    if len(out) > 3 or not math.isfinite(val):
        raise QuadratureNonConvergence(
            f"quadrature on [{a}, {b}] did not converge: {out[-1] if len(out) > 3 else val}")
    if err > max(COMPOSITE_TOL, abs(val) * COMPOSITE_TOL):
        raise QuadratureNonConvergence(
            f"quadrature on [{a}, {b}] error estimate {err:.3e} above tolerance")
    return val


def gauss_legendre(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w
