"""Numerical toolkit for delocalisation bounds of Laplacian eigenfunctions
on compact hyperbolic surfaces: orbit counting, the radial/spectral
transform pair, wave and ball multipliers, volume lower bounds, and
certification of the supporting inequalities."""

from . import bounds, cli, errors, fuchsian, geometry, multipliers, selberg, verify

__version__ = "0.1.0"

__all__ = [
    "bounds",
    "cli",
    "errors",
    "fuchsian",
    "geometry",
    "multipliers",
    "selberg",
    "verify",
    "__version__",
]
