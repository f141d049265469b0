"""Planar triangle primitives in the apex frame.

The apex frame puts one vertex on the positive y-axis at (0, a) and the
opposite side on the x-axis running from (-b, 0) to (c, 0), with a, b, c
all positive. In that frame each side line has a fixed linear equation, so
point-to-side distances, containment and projection are all closed-form.
``canonicalize`` carries an arbitrary triangle into the frame with a
rotation plus translation (never a reflection).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import DegenerateTriangle

# doubled area below this fraction of the squared longest side is collinear
DEGENERACY_REL_TOL = 1e-12


@dataclass(frozen=True)
class CanonicalTriangle:
    """Triangle with vertices (0, a), (-b, 0), (c, 0)."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be finite and positive, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def p(self) -> float:
        """Length of the side from (0, a) to (-b, 0)."""
        return math.sqrt(self.a * self.a + self.b * self.b)

    @property
    def q(self) -> float:
        """Length of the side from (0, a) to (c, 0)."""
        return math.sqrt(self.a * self.a + self.c * self.c)

    def vertices(self) -> np.ndarray:
        return np.array([[0.0, self.a], [-self.b, 0.0], [self.c, 0.0]])

    def diameter(self) -> float:
        return max(self.b + self.c, self.p, self.q)


@dataclass(frozen=True)
class GeneralTriangle:
    """Three vertices in arbitrary position, kept in input order."""

    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray

    def __post_init__(self):
        for name in ("v1", "v2", "v3"):
            v = np.asarray(getattr(self, name), dtype=float).reshape(2)
            object.__setattr__(self, name, v)

    def vertex_array(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.v3])


@dataclass(frozen=True)
class Isometry:
    """Rigid motion (rotation by ``angle`` then translation), det = +1.

    ``to_canonical`` maps original coordinates into the apex frame,
    ``to_original`` is the exact inverse. ``apex_index`` records which input
    vertex became (0, a).
    """

    angle: float
    translation: np.ndarray
    apex_index: int

    def __post_init__(self):
        object.__setattr__(
            self, "translation", np.asarray(self.translation, dtype=float).reshape(2)
        )

    def to_canonical(self, point) -> np.ndarray:
        x, y = float(point[0]), float(point[1])
        ca, sa = math.cos(self.angle), math.sin(self.angle)
        return np.array(
            [
                ca * x - sa * y + self.translation[0],
                sa * x + ca * y + self.translation[1],
            ]
        )

    def to_original(self, point) -> np.ndarray:
        x = float(point[0]) - self.translation[0]
        y = float(point[1]) - self.translation[1]
        ca, sa = math.cos(self.angle), math.sin(self.angle)
        return np.array([ca * x + sa * y, -sa * x + ca * y])


class SideDistances(NamedTuple):
    d1: float  # to the line through (0, a) and (-b, 0)
    d2: float  # to the line through (0, a) and (c, 0)
    d3: float  # to the base line y = 0


class Altitudes(NamedTuple):
    h_a: float
    h_b: float
    h_c: float


def _cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def canonicalize(triangle: GeneralTriangle) -> tuple[CanonicalTriangle, Isometry]:
    """Move a triangle into the apex frame with an orientation-preserving motion.

    The apex is the vertex of a right or obtuse angle when one exists (that
    angle is the maximum, and only that choice keeps both base offsets
    positive); for acute triangles every vertex is admissible and the first
    input vertex is kept, so an already-canonical triangle maps to itself
    under the identity.
    """
    verts = triangle.vertex_array()
    edges = [verts[1] - verts[0], verts[2] - verts[1], verts[0] - verts[2]]
    longest_sq = max(float(e @ e) for e in edges)
    doubled_area = _cross(verts[1] - verts[0], verts[2] - verts[0])
    if longest_sq == 0.0 or abs(doubled_area) <= DEGENERACY_REL_TOL * longest_sq:
        raise DegenerateTriangle("vertices are collinear within tolerance")

    apex = 0
    for i in range(3):
        u = verts[(i + 1) % 3] - verts[i]
        w = verts[(i + 2) % 3] - verts[i]
        if float(u @ w) <= 0.0:
            apex = i
            break

    i2, i3 = (apex + 1) % 3, (apex + 2) % 3
    # (apex, left, right) must wind counterclockwise for the frame to come
    # out with a > 0 without reflecting
    if _cross(verts[i2] - verts[apex], verts[i3] - verts[apex]) > 0.0:
        left, right = verts[i2], verts[i3]
    else:
        left, right = verts[i3], verts[i2]

    base = right - left
    ex = base / math.hypot(base[0], base[1])
    ey = np.array([-ex[1], ex[0]])
    foot = left + float((verts[apex] - left) @ ex) * ex
    a = float((verts[apex] - foot) @ ey)
    b = float((foot - left) @ ex)
    c = float((right - foot) @ ex)
    if a <= 0.0 or b <= 0.0 or c <= 0.0:
        # can only happen when a base angle is right/obtuse at float
        # precision, i.e. the triangle is degenerate for this frame
        raise DegenerateTriangle("altitude foot falls outside the base segment")

    angle = math.atan2(-ex[1], ex[0])
    translation = np.array([-float(foot @ ex), -float(foot @ ey)])
    return CanonicalTriangle(a, b, c), Isometry(angle, translation, apex)


def side_distances(tri: CanonicalTriangle, point) -> SideDistances:
    """Unsigned distances from a point to the three side lines."""
    x, y = float(point[0]), float(point[1])
    a, b, c = tri.a, tri.b, tri.c
    d1 = abs(a * x - b * y + a * b) / tri.p
    d2 = abs(-a * x - c * y + a * c) / tri.q
    return SideDistances(d1, d2, abs(y))


def contains(tri: CanonicalTriangle, point) -> bool:
    """Closed-triangle membership with a roundoff-level cushion.

    The cushion (~1e-12 of the local scale) admits points whose half-plane
    expressions sit an ulp below zero, which is exactly what projected
    boundary points look like.
    """
    x, y = float(point[0]), float(point[1])
    a, b, c = tri.a, tri.b, tri.c
    eps = 1e-12 * (a + b + c + abs(x) + abs(y))
    s1 = (a * x - b * y + a * b) / tri.p
    s2 = (-a * x - c * y + a * c) / tri.q
    return s1 >= -eps and s2 >= -eps and y >= -eps


def project_to_triangle(tri: CanonicalTriangle, point) -> np.ndarray:
    """Nearest point of the closed triangle (idempotent)."""
    px, py = _kernels.project_point(
        tri.a, tri.b, tri.c, float(point[0]), float(point[1])
    )
    return np.array([px, py])


def incenter(tri: CanonicalTriangle) -> np.ndarray:
    a, b, c = tri.a, tri.b, tri.c
    perim = tri.p + tri.q + b + c
    return np.array([-(b * tri.q - c * tri.p) / perim, a * (b + c) / perim])


def altitudes(tri: CanonicalTriangle) -> Altitudes:
    """Altitudes dropped from (0, a), (-b, 0) and (c, 0) respectively."""
    a, b, c = tri.a, tri.b, tri.c
    return Altitudes(a, a * (b + c) / tri.q, a * (b + c) / tri.p)
