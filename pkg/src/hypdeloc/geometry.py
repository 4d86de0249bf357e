"""Upper half-plane model: points, orientation-preserving isometries, distance.

Isometries are unit-determinant 2x2 real matrices acting by Mobius
transformations; a matrix and its negative act identically, so all
comparisons here are up to sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidGeometry

# Two matrices closer than this (after sign alignment) count as the same
# isometry.  Discrete groups at desk scale separate elements by far more.
MATRIX_EQ_TOL = 1e-9
DET_TOL = 1e-12


@dataclass(frozen=True)
class Point:
    """A point x + iy of the upper half-plane, y > 0."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (self.y > 0.0) or not math.isfinite(self.x) or not math.isfinite(self.y):
            raise InvalidGeometry(f"point ({self.x}, {self.y}) is not in the upper half-plane")

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class Isometry:
    """Matrix [[a, b], [c, d]], renormalized to det 1 on construction."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if not math.isfinite(det) or det <= 0.0:
            raise InvalidGeometry(f"determinant {det} is not positive")
        if abs(det - 1.0) > DET_TOL:
            s = 1.0 / math.sqrt(det)
            for name in ("a", "b", "c", "d"):
                object.__setattr__(self, name, getattr(self, name) * s)

    def apply(self, z: Point) -> Point:
        zz = z.as_complex()
        w = (self.a * zz + self.b) / (self.c * zz + self.d)
        return Point(w.real, w.imag)

    def compose(self, other: "Isometry") -> "Isometry":
        return Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Isometry":
        return Isometry(self.d, -self.b, -self.c, self.a)

    def trace(self) -> float:
        return self.a + self.d

    def translation_length(self) -> float | None:
        """2 arccosh(|tr|/2) for hyperbolic elements, None otherwise."""
        t = abs(self.trace())
        if t <= 2.0:
            return None
        return 2.0 * math.acosh(0.5 * t)

    def is_identity(self, tol: float = MATRIX_EQ_TOL) -> bool:
        return self.close_to(identity(), tol)

    def close_to(self, other: "Isometry", tol: float = MATRIX_EQ_TOL) -> bool:
        """Projective comparison: equal if entries match for either sign."""
        dp = max(abs(self.a - other.a), abs(self.b - other.b),
                 abs(self.c - other.c), abs(self.d - other.d))
        dm = max(abs(self.a + other.a), abs(self.b + other.b),
                 abs(self.c + other.c), abs(self.d + other.d))
        return min(dp, dm) <= tol

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


def identity() -> Isometry:
    return Isometry(1.0, 0.0, 0.0, 1.0)


def distance(z: Point, w: Point) -> float:
    """Hyperbolic distance arccosh(1 + |z-w|^2 / (2 Im z Im w))."""
    dx = z.x - w.x
    dy = z.y - w.y
    arg = 1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y)
    # roundoff can push the argument a hair below 1 for nearly equal points
    if arg < 1.0:
        arg = 1.0
    return math.acosh(arg)


def apply(gamma: Isometry, z: Point) -> Point:
    return gamma.apply(z)


def compose(g: Isometry, h: Isometry) -> Isometry:
    return g.compose(h)


def translation(length: float) -> Isometry:
    """Hyperbolic translation by `length` along the imaginary axis."""
    if length <= 0.0:
        raise InvalidGeometry("translation length must be positive")
    h = 0.5 * length
    return Isometry(math.exp(h), 0.0, 0.0, math.exp(-h))


def rotation(theta: float) -> Isometry:
    """Elliptic rotation about i by angle theta."""
    h = 0.5 * theta
    return Isometry(math.cos(h), math.sin(h), -math.sin(h), math.cos(h))
