"""Single-arm four-bar solver: forward map, reach circle, inverse preimages.

One arm of the joint, together with the two center segments, forms a spatial
four-bar linkage: base hinge -> ball joint (length ``ell``), ball joint ->
distal hinge (``ell``), distal hinge -> center (``d``), center -> base hinge
(``d``). For a fixed base angle ``theta`` and plunge ``p`` the distal hinge is
confined to the intersection of two spheres:

* the reach sphere of radius ``ell`` about the ball joint, and
* the center sphere of radius ``d(p)`` about ``(0, 0, p)``.

Both spheres always contain the base hinge, so the raw intersection is never
empty; the control scheme nevertheless rejects base angles beyond
``theta_max(p)`` (the fully-extended pose), and :func:`intersection_circle`
reports those as empty. The angle ``phi`` selects a point on the intersection
circle, with ``phi = 0`` at the point furthest from the base hinge and
``phi = +-pi`` at the (illegal) overlap with the base hinge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    Circle3,
    IntersectionKind,
    IntersectionResult,
    Sphere,
    Vec3,
    as_vec3,
    norm,
    rotate_about_axis,
    sphere_sphere_intersect,
    unit,
    vec3,
    wrap_angle,
)
from .joint import (
    JointError,
    JointParams,
    OutOfRangeError,
    WrongRegimeError,
    Regime,
    d_of,
    p_bounds,
    regime,
    theta_max,
)


class NoIntersectionError(JointError):
    """The base angle lies beyond the reach bound; no distal-hinge circle exists."""


class AmbiguousSphereError(JointError):
    """The two spheres coincide; a single angle cannot select a point."""


class PhiOutOfRangeError(JointError):
    """phi outside (-pi, pi), or nonzero at a point-intersection pose."""


class NotOnCircleError(JointError):
    """Queried point does not lie on the intersection circle."""


class UnreachableError(JointError):
    """Target point has an empty preimage."""


@dataclass(frozen=True)
class ControlTriple:
    """Alternate control coordinates (theta, p, phi) for the instrumented arm."""

    theta: float
    p: float
    phi: float

    def validate(self, params: JointParams, tol: float = DEFAULT_TOL) -> None:
        """Check structural bounds. Reach (theta vs theta_max) is checked by
        the forward solver, which reports it as a missing intersection."""
        if not (0.0 <= self.theta < 2.0 * math.pi):
            raise OutOfRangeError(f"theta={self.theta!r} outside [0, 2*pi)")
        lo, hi = p_bounds(params)
        if not (lo - tol <= self.p <= hi + tol):
            raise OutOfRangeError(f"p={self.p!r} outside [{lo:g}, {hi:g}]")
        if not (-math.pi < self.phi < math.pi):
            raise PhiOutOfRangeError(f"phi={self.phi!r} outside (-pi, pi)")

    def is_reachable(self, params: JointParams, tol: float = DEFAULT_TOL) -> bool:
        return self.theta <= theta_max(self.p, params, tol)


@dataclass(frozen=True)
class ArmSolution:
    """A solved arm pose: control values plus ball-joint and distal-hinge points."""

    theta: float
    p: float
    phi: float
    ball_joint: Vec3
    distal_hinge: Vec3


class PreimageKind(Enum):
    FINITE = "finite"
    CIRCLE_FAMILY = "circle_family"
    INTERVAL_TIMES_CIRCLE = "interval_times_circle"
    FAMILY_OVER_P = "family_over_p"


@dataclass(frozen=True)
class PreimageClass:
    """Preimage of a workspace point under the arm's forward map.

    ``FINITE`` carries the solutions explicitly. ``INTERVAL_TIMES_CIRCLE`` is
    the base hinge itself (every plunge, every base angle reaches it).
    ``FAMILY_OVER_P`` covers the remaining points of the base-plane circle of
    radius b/sqrt(3), reachable at every plunge with finitely many base angles
    each. ``CIRCLE_FAMILY`` is used by the planar analogue.
    """

    kind: PreimageKind
    solutions: Tuple[ArmSolution, ...] = ()
    p_interval: Optional[Tuple[float, float]] = None

    @property
    def count(self) -> int:
        return len(self.solutions)


def _base_hinge(params: JointParams) -> Vec3:
    return vec3(params.circumradius, 0.0, 0.0)


def ball_joint_position(params: JointParams, theta: float) -> Vec3:
    """Ball joint of arm 1 at base angle ``theta``.

    The arm rotates in the x-z plane about its hinge; ``theta`` is measured
    from the inward direction (-x) toward +z, so theta = pi points flat
    outward and theta = pi/2 straight up.
    """
    if not (0.0 <= theta < 2.0 * math.pi):
        raise OutOfRangeError(f"theta={theta!r} outside [0, 2*pi)")
    rho = params.circumradius
    # inward = (-1, 0, 0), up = (0, 0, 1)
    return vec3(rho - params.ell * math.cos(theta), 0.0, params.ell * math.sin(theta))


def _spheres(params: JointParams, theta: float, p: float, tol: float) -> Tuple[Sphere, Sphere]:
    ball = ball_joint_position(params, theta)
    return Sphere(ball, params.ell), Sphere(vec3(0.0, 0.0, p), d_of(p, params, tol))


def intersection_circle(
    params: JointParams, theta: float, p: float, tol: float = DEFAULT_TOL
) -> IntersectionResult:
    """Locus of the distal hinge at fixed (theta, p).

    Returns a circle for legal angles, the single point (the base hinge) at
    the reach bound ``theta_max(p)``, the coincident-spheres case when
    d = ell and theta = arcsin(p/d), and empty beyond the reach bound.
    """
    if not (0.0 <= theta < 2.0 * math.pi):
        raise OutOfRangeError(f"theta={theta!r} outside [0, 2*pi)")
    t_max = theta_max(p, params, tol)
    raw = sphere_sphere_intersect(*_spheres(params, theta, p, tol), tol=tol)
    if theta <= t_max:
        return raw
    # Beyond the bound the spheres still meet (both always contain the base
    # hinge) but the control scheme forbids the pose; only the tangency band
    # right at the bound survives as a point.
    if raw.kind is IntersectionKind.POINT:
        return raw
    return IntersectionResult.empty()


def _phi_zero_point(circle: Circle3, base_hinge: Vec3) -> Vec3:
    """Circle point furthest from the base hinge (the phi = 0 anchor)."""
    w = circle.center - base_hinge
    w_inplane = w - float(np.dot(w, circle.axis)) * circle.axis
    return circle.center + circle.radius * unit(w_inplane)


def forward_arm(params: JointParams, ctrl: ControlTriple, tol: float = DEFAULT_TOL) -> ArmSolution:
    """Place the distal hinge for a control triple.

    On a circle intersection the hinge is the phi = 0 anchor rotated by
    ``ctrl.phi`` about the circle axis (right-handed about the direction from
    the ball joint toward the center sphere's center). A point intersection
    admits only phi = 0 and parks the hinge on the base hinge; coincident
    spheres raise :class:`AmbiguousSphereError` and require
    :func:`coincident_selector` instead.
    """
    ctrl.validate(params, tol)
    res = intersection_circle(params, ctrl.theta, ctrl.p, tol)
    ball = ball_joint_position(params, ctrl.theta)
    if res.kind is IntersectionKind.EMPTY:
        raise NoIntersectionError(
            f"theta={ctrl.theta:g} beyond reach bound "
            f"theta_max={theta_max(ctrl.p, params, tol):g} at p={ctrl.p:g}"
        )
    if res.kind is IntersectionKind.COINCIDENT_SPHERES:
        raise AmbiguousSphereError(
            "spheres coincide (d = ell at the lined-up angle); "
            "phi alone cannot select a point on a sphere"
        )
    if res.kind is IntersectionKind.POINT:
        if abs(ctrl.phi) > tol:
            raise PhiOutOfRangeError("point intersection forces phi = 0")
        return ArmSolution(ctrl.theta, ctrl.p, 0.0, ball, res.point)
    circle = res.circle
    anchor = _phi_zero_point(circle, _base_hinge(params))
    hinge = circle.center + rotate_about_axis(anchor - circle.center, circle.axis, ctrl.phi)
    return ArmSolution(ctrl.theta, ctrl.p, ctrl.phi, ball, hinge)


def coincident_selector(
    params: JointParams, p: float, psi1: float, psi2: float, tol: float = DEFAULT_TOL
) -> Vec3:
    """Pick a distal hinge on the coincident sphere by spherical coordinates.

    Colatitude ``psi1`` is measured from the sphere-center-to-origin axis
    (straight down), longitude ``psi2`` from +x; only valid when d(p) = ell.
    """
    if regime(p, params, tol) is not Regime.D_EQUAL_L:
        raise WrongRegimeError(f"coincident sphere needs d = ell (p={p:g})")
    d = d_of(p, params, tol)
    s1, c1 = math.sin(psi1), math.cos(psi1)
    return vec3(d * s1 * math.cos(psi2), d * s1 * math.sin(psi2), p - d * c1)


def phi_of_point(
    params: JointParams, theta: float, p: float, point: Vec3, tol: float = DEFAULT_TOL
) -> float:
    """Recover phi for a point on the intersection circle (inverse of the
    forward parametrization); signed angle from the phi = 0 anchor about the
    circle axis, in (-pi, pi]."""
    point = as_vec3(point)
    raw = sphere_sphere_intersect(*_spheres(params, theta, p, tol), tol=tol)
    if raw.kind is IntersectionKind.POINT:
        if norm(point - raw.point) <= 10.0 * tol:
            return 0.0
        raise NotOnCircleError("intersection is a single point and the query is elsewhere")
    if raw.kind is not IntersectionKind.CIRCLE:
        raise NotOnCircleError(f"no intersection circle at theta={theta:g}, p={p:g}")
    circle = raw.circle
    v = point - circle.center
    if abs(float(np.dot(v, circle.axis))) > 10.0 * tol or abs(norm(v) - circle.radius) > 10.0 * tol:
        raise NotOnCircleError("point does not lie on the intersection circle")
    anchor = _phi_zero_point(circle, _base_hinge(params)) - circle.center
    cos_part = float(np.dot(anchor, v))
    sin_part = float(np.dot(circle.axis, np.cross(anchor, v)))
    return math.atan2(sin_part, cos_part)


def _planar_two_circles(
    c1: np.ndarray, r1: float, c2: np.ndarray, r2: float, tol: float
) -> list:
    """Intersection of two circles in the plane; 0, 1 or 2 points (as 2-arrays).

    The tangency collapse threshold self-scales with rounding: the offset
    ``h**2 = r1**2 - along**2`` cancels quadratically at tangency, so a pair
    of roots closer than a few mantissa digits of the radii is one root.
    """
    delta = c2 - c1
    dist = float(np.hypot(*delta))
    if dist <= tol:
        return []
    if dist > r1 + r2 + tol or dist < abs(r1 - r2) - tol:
        return []
    along = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist)
    h_sq = r1 * r1 - along * along
    u = delta / dist
    mid = c1 + along * u
    tangent_sq = max(tol * tol, 64.0 * np.finfo(float).eps * (r1 * r1 + along * along))
    if h_sq <= tangent_sq:
        return [mid]
    h = math.sqrt(h_sq)
    perp = np.array([-u[1], u[0]])
    return [mid + h * perp, mid - h * perp]


def inverse_arm(params: JointParams, point: Vec3, tol: float = DEFAULT_TOL) -> PreimageClass:
    """All arm configurations placing the distal hinge at ``point``.

    Off the base plane the plunge is pinned by the center-sphere identity
    ``|H|**2 - 2 p H_z = b**2 / 3``, and the ball joint solves a planar
    two-circle problem in the arm's rotation plane, giving one or two base
    angles (counted over the full angle circle, as the configuration space
    does). On the base plane the point must lie on the common circle of
    radius b/sqrt(3): the base hinge itself is reachable for every plunge and
    every base angle (an interval times a circle of configurations), any other
    common-circle point for every plunge with finitely many angles each.
    """
    point = as_vec3(point)
    rho = params.circumradius
    ell = params.ell
    base = _base_hinge(params)

    if abs(point[2]) < tol:
        # Base-plane branch: dividing by 2*H_z would be catastrophic here.
        radial = math.hypot(point[0], point[1])
        if abs(radial - rho) > tol:
            raise UnreachableError(
                f"base-plane point at radius {radial:g} is off the common circle (radius {rho:g})"
            )
        if norm(point - base) <= tol:
            return PreimageClass(PreimageKind.INTERVAL_TIMES_CIRCLE, p_interval=p_bounds(params))
        return PreimageClass(PreimageKind.FAMILY_OVER_P, p_interval=p_bounds(params))

    p = (float(np.dot(point, point)) - rho * rho) / (2.0 * point[2])
    lo, hi = p_bounds(params)
    if p < lo - tol or p > hi + tol:
        raise UnreachableError(f"recovered plunge p={p:g} outside [{lo:g}, {hi:g}]")
    p = min(max(p, lo), hi)

    r_target_sq = ell * ell - point[1] * point[1]
    if r_target_sq < -tol:
        raise UnreachableError("point lies further from the rotation plane than the arm reaches")
    r_target = math.sqrt(max(r_target_sq, 0.0))
    hits = _planar_two_circles(
        np.array([rho, 0.0]),
        ell,
        np.array([point[0], point[2]]),
        r_target,
        tol,
    )
    if not hits:
        raise UnreachableError("ball-joint circle does not reach the target")

    solutions = []
    for w, z in ((float(h[0]), float(h[1])) for h in hits):
        ball = vec3(w, 0.0, z)
        theta = wrap_angle(math.atan2(z, -(w - rho)))
        phi = phi_of_point(params, theta, p, point, tol)
        solutions.append(ArmSolution(theta, p, phi, ball, point))
    return PreimageClass(PreimageKind.FINITE, solutions=tuple(solutions))
