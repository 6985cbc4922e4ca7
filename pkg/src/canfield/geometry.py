"""Exact-as-possible 3D primitives: planes, spheres, circles and their intersections.

Everything here is a pure function on immutable values. Vectors are plain
numpy arrays of shape (3,); the small wrapper types below only exist to make
invariants (unit normals, nonnegative radii) explicit at construction time.

Tolerances are absolute, in model length units, and default to
``DEFAULT_TOL`` throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

DEFAULT_TOL = 1e-9

Vec3 = np.ndarray


class GeometryError(ValueError):
    """Base class for geometric degeneracies."""


class CoincidentPointsError(GeometryError):
    """Two points expected to be distinct coincide within tolerance."""


class CircleInPlaneError(GeometryError):
    """A circle lies entirely inside the query plane (infinite intersection)."""


class CoincidentCirclesError(GeometryError):
    """Two circles are the same circle (infinite intersection)."""


def vec3(x: float, y: float, z: float) -> Vec3:
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise GeometryError(f"non-finite vector components: {v}")
    return v


def as_vec3(v) -> Vec3:
    """Coerce an array-like to a finite float (3,) array."""
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise GeometryError(f"expected shape (3,), got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise GeometryError(f"non-finite vector components: {a}")
    return a


def norm(v: Vec3) -> float:
    return float(np.linalg.norm(v))


def unit(v: Vec3, tol: float = DEFAULT_TOL) -> Vec3:
    n = norm(v)
    if n <= tol:
        raise GeometryError(f"cannot normalize near-zero vector (|v|={n:g})")
    return v / n


def wrap_angle(x: float) -> float:
    """Wrap an angle to [0, 2*pi)."""
    return float(np.mod(x, 2.0 * math.pi))


def rotate_about_axis(v: Vec3, axis: Vec3, angle: float) -> Vec3:
    """Rotate ``v`` about a unit ``axis`` by ``angle`` (right-handed, Rodrigues)."""
    c, s = math.cos(angle), math.sin(angle)
    return v * c + np.cross(axis, v) * s + axis * float(np.dot(axis, v)) * (1.0 - c)


@dataclass(frozen=True)
class Plane:
    """Plane through ``point`` with unit ``normal``."""

    point: Vec3
    normal: Vec3

    def __post_init__(self):
        object.__setattr__(self, "point", as_vec3(self.point))
        object.__setattr__(self, "normal", unit(as_vec3(self.normal)))

    def signed_distance(self, q: Vec3) -> float:
        return float(np.dot(as_vec3(q) - self.point, self.normal))


@dataclass(frozen=True)
class Sphere:
    center: Vec3
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vec3(self.center))
        if not math.isfinite(self.radius) or self.radius < 0.0:
            raise GeometryError(f"sphere radius must be >= 0, got {self.radius}")

    def contains(self, q: Vec3, tol: float = DEFAULT_TOL) -> bool:
        return abs(norm(as_vec3(q) - self.center) - self.radius) <= tol


@dataclass(frozen=True)
class Circle3:
    """Circle in 3D: ``center``, positive ``radius``, unit plane normal ``axis``."""

    center: Vec3
    radius: float
    axis: Vec3

    def __post_init__(self):
        object.__setattr__(self, "center", as_vec3(self.center))
        object.__setattr__(self, "axis", unit(as_vec3(self.axis)))
        if not math.isfinite(self.radius) or self.radius <= 0.0:
            raise GeometryError(f"circle radius must be > 0, got {self.radius}")

    def basis(self) -> Tuple[Vec3, Vec3]:
        """Deterministic in-plane orthonormal basis (e1, e2) with e1 x e2 = axis."""
        k = np.zeros(3)
        k[int(np.argmin(np.abs(self.axis)))] = 1.0
        e1 = unit(np.cross(self.axis, k))
        e2 = np.cross(self.axis, e1)
        return e1, e2

    def point_at(self, t: float) -> Vec3:
        e1, e2 = self.basis()
        return self.center + self.radius * (math.cos(t) * e1 + math.sin(t) * e2)

    def plane(self) -> Plane:
        return Plane(self.center, self.axis)


class IntersectionKind(Enum):
    EMPTY = "empty"
    POINT = "point"
    CIRCLE = "circle"
    COINCIDENT_SPHERES = "coincident_spheres"


@dataclass(frozen=True)
class IntersectionResult:
    """Taxonomy of a sphere-sphere intersection."""

    kind: IntersectionKind
    point: Optional[Vec3] = None
    circle: Optional[Circle3] = None
    sphere: Optional[Sphere] = None

    @classmethod
    def empty(cls) -> "IntersectionResult":
        return cls(IntersectionKind.EMPTY)

    @classmethod
    def at_point(cls, q: Vec3) -> "IntersectionResult":
        return cls(IntersectionKind.POINT, point=as_vec3(q))

    @classmethod
    def on_circle(cls, c: Circle3) -> "IntersectionResult":
        return cls(IntersectionKind.CIRCLE, circle=c)

    @classmethod
    def coincident(cls, s: Sphere) -> "IntersectionResult":
        return cls(IntersectionKind.COINCIDENT_SPHERES, sphere=s)

    @property
    def is_empty(self) -> bool:
        return self.kind is IntersectionKind.EMPTY


def sphere_sphere_intersect(a: Sphere, b: Sphere, tol: float = DEFAULT_TOL) -> IntersectionResult:
    """Intersect two spheres.

    Classification, with ``D`` the center distance:

    * coincident spheres when ``D <= tol`` and the radii agree within ``tol``;
    * empty when ``D > r_a + r_b + tol`` or ``D < |r_a - r_b| - tol``
      (concentric spheres of different radii also land here);
    * a single point at external (``D ~ r_a + r_b``) or internal
      (``D ~ |r_a - r_b|``) tangency;
    * otherwise a circle whose center lies on the segment between the sphere
      centers and whose axis points from ``a.center`` to ``b.center``.

    A near-tangent intersection whose circle radius would be below ``tol`` is
    collapsed to the tangency point: downstream angle parametrizations are
    ill-conditioned on tiny circles.
    """
    if tol <= 0.0:
        raise GeometryError(f"tol must be > 0, got {tol}")
    delta = b.center - a.center
    d = norm(delta)
    r_sum = a.radius + b.radius
    r_diff = abs(a.radius - b.radius)

    if d <= tol and r_diff <= tol:
        return IntersectionResult.coincident(a)
    if d <= tol:
        # Concentric with distinct radii: no common point, and the axis
        # direction is undefined anyway.
        return IntersectionResult.empty()
    if d > r_sum + tol or d < r_diff - tol:
        return IntersectionResult.empty()

    u = delta / d
    if abs(d - r_sum) <= tol:
        return IntersectionResult.at_point(a.center + a.radius * u)
    if abs(d - r_diff) <= tol:
        sign = 1.0 if a.radius >= b.radius else -1.0
        return IntersectionResult.at_point(a.center + sign * a.radius * u)

    along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d)
    h_sq = a.radius * a.radius - along * along
    center = a.center + along * u
    if h_sq <= tol * tol:
        return IntersectionResult.at_point(center)
    return IntersectionResult.on_circle(Circle3(center, math.sqrt(h_sq), u))


def circle_plane_intersect(c: Circle3, pl: Plane, tol: float = DEFAULT_TOL) -> List[Vec3]:
    """Points of circle ``c`` lying on plane ``pl`` (0, 1 or 2 of them).

    Raises :class:`CircleInPlaneError` when the circle lies inside the plane,
    so the infinite case can never be mistaken for a finite one.
    """
    e1, e2 = c.basis()
    # Signed distance along the circle: s(t) = c0 + A cos t + B sin t.
    c0 = pl.signed_distance(c.center)
    amp_1 = c.radius * float(np.dot(e1, pl.normal))
    amp_2 = c.radius * float(np.dot(e2, pl.normal))
    amp = math.hypot(amp_1, amp_2)

    if amp <= tol:
        # Circle plane parallel to pl.
        if abs(c0) <= tol:
            raise CircleInPlaneError("circle lies in the query plane")
        return []

    t0 = math.atan2(amp_2, amp_1)
    ratio = -c0 / amp
    if abs(c0) > amp:
        if abs(c0) - amp <= tol:
            t = t0 if ratio > 0 else t0 + math.pi
            return [c.point_at(t)]
        return []
    if amp - abs(c0) <= tol:
        t = t0 if ratio > 0 else t0 + math.pi
        return [c.point_at(t)]
    dt = math.acos(max(-1.0, min(1.0, ratio)))
    return [c.point_at(t0 + dt), c.point_at(t0 - dt)]


def perp_bisector_plane(a: Vec3, b: Vec3, tol: float = DEFAULT_TOL) -> Plane:
    """Perpendicular-bisector plane of segment ``ab``, normal pointing a -> b."""
    a = as_vec3(a)
    b = as_vec3(b)
    if norm(b - a) <= tol:
        raise CoincidentPointsError("perpendicular bisector of coincident points is undefined")
    return Plane((a + b) / 2.0, b - a)


def reflect_point(pl: Plane, q: Vec3) -> Vec3:
    q = as_vec3(q)
    return q - 2.0 * pl.signed_distance(q) * pl.normal


def reflect_direction(pl: Plane, v: Vec3) -> Vec3:
    """Mirror a direction vector (ignores the plane's offset)."""
    v = as_vec3(v)
    return v - 2.0 * float(np.dot(v, pl.normal)) * pl.normal


def _coplanar_circle_circle(c1: Circle3, c2: Circle3, tol: float) -> List[Vec3]:
    d_vec = c2.center - c1.center
    d = norm(d_vec)
    if d <= tol and abs(c1.radius - c2.radius) <= tol:
        raise CoincidentCirclesError("circles coincide (infinite intersection)")
    if d <= tol:
        return []
    if d > c1.radius + c2.radius + tol or d < abs(c1.radius - c2.radius) - tol:
        return []
    u = d_vec / d
    along = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d)
    h_sq = c1.radius * c1.radius - along * along
    mid = c1.center + along * u
    if h_sq <= tol * tol:
        return [mid]
    h = math.sqrt(h_sq)
    v = np.cross(c1.axis, u)  # in-plane direction perpendicular to the center line
    return [mid + h * v, mid - h * v]


def circle_circle_intersect_3d(c1: Circle3, c2: Circle3, tol: float = DEFAULT_TOL) -> List[Vec3]:
    """Intersection points of two circles in 3D (0, 1 or 2 points).

    Non-coplanar circles are cut with each other's plane and the candidates are
    then checked for membership on the second circle; coplanar circles fall
    back to the planar two-circle construction. Identical circles raise
    :class:`CoincidentCirclesError`.
    """
    cross_axes = np.cross(c1.axis, c2.axis)
    if norm(cross_axes) <= tol:
        # Parallel planes: either disjoint or genuinely coplanar.
        if abs(c2.plane().signed_distance(c1.center)) > tol:
            return []
        return _coplanar_circle_circle(c1, c2, tol)

    candidates = circle_plane_intersect(c1, c2.plane(), tol)
    out: List[Vec3] = []
    for q in candidates:
        on_radius = abs(norm(q - c2.center) - c2.radius) <= 10.0 * tol
        in_plane = abs(c2.plane().signed_distance(q)) <= 10.0 * tol
        if on_radius and in_plane:
            out.append(q)
    return out
