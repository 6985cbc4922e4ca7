"""Physical parameters, derived quantities and regime classification of the joint.

The joint is a pair of congruent equilateral plates linked by three two-piece
arms. Only two measurements define it: the half-arm length ``ell`` and the
hinge spacing ``b``. Everything else (circumradius, plunge bounds, the
center-to-hinge distance ``d``) derives from those two.

Conventions, used everywhere in the package:

* angles are radians internally; degrees appear only at CLI/HTTP boundaries;
* the base plate is canonically posed: center at the origin, plate in the
  z = 0 plane, hinge 1 on the +x axis;
* a base angle ``theta`` is measured inside the arm's rotation plane as
  ``atan2(up component, inward component)`` wrapped to [0, 2*pi), so
  ``theta = pi`` is the arm lying flat pointing outward and ``theta = pi/2``
  is straight up.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from .geometry import DEFAULT_TOL, Plane, Vec3, vec3

SQRT3 = math.sqrt(3.0)


class JointError(ValueError):
    """Base class for joint-parameter and control-bound violations."""


class OutOfRangeError(JointError):
    """A control value lies outside its legal interval."""


class WrongRegimeError(JointError):
    """An operation only defined in another d-vs-ell regime was requested."""


@dataclass(frozen=True)
class JointParams:
    """Fixed physical measurements: half-arm length ``ell``, hinge spacing ``b``."""

    ell: float
    b: float

    def __post_init__(self):
        for name in ("ell", "b"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise JointError(f"{name} must be a positive finite number, got {v!r}")
        object.__setattr__(self, "ell", float(self.ell))
        object.__setattr__(self, "b", float(self.b))

    @property
    def circumradius(self) -> float:
        """Distance from a plate center to each of its hinges, b / sqrt(3)."""
        return self.b / SQRT3

    def to_json(self) -> str:
        return json.dumps({"ell": self.ell, "b": self.b})

    @classmethod
    def from_json(cls, text: str) -> "JointParams":
        """Strict parse of ``{"ell": number, "b": number}``; unknown keys rejected."""
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise JointError(f"expected a JSON object, got {type(doc).__name__}")
        extra = set(doc) - {"ell", "b"}
        if extra:
            raise JointError(f"unknown keys in joint parameters: {sorted(extra)}")
        missing = {"ell", "b"} - set(doc)
        if missing:
            raise JointError(f"missing keys in joint parameters: {sorted(missing)}")
        for k in ("ell", "b"):
            if isinstance(doc[k], bool) or not isinstance(doc[k], (int, float)):
                raise JointError(f"{k} must be a number, got {doc[k]!r}")
        return cls(ell=float(doc["ell"]), b=float(doc["b"]))


@dataclass(frozen=True)
class BaseLayout:
    """Canonical base-plate pose: hinges, hinge axes and rotation planes."""

    hinges: Tuple[Vec3, Vec3, Vec3]
    hinge_axes: Tuple[Vec3, Vec3, Vec3]
    rotation_planes: Tuple[Plane, Plane, Plane]
    center: Vec3
    normal: Vec3

    def inward(self, i: int) -> Vec3:
        """Unit direction from hinge ``i`` toward the plate center."""
        return (self.center - self.hinges[i]) / float(np.linalg.norm(self.center - self.hinges[i]))


class Regime(Enum):
    """Trichotomy of the center-to-hinge distance d against ell."""

    D_LESS_L = "d<ell"
    D_EQUAL_L = "d=ell"
    D_GREATER_L = "d>ell"


class ParamClass(Enum):
    """Trichotomy of the circumradius b/sqrt(3) against ell."""

    RHO_LESS_L = "rho<ell"
    RHO_EQUAL_L = "rho=ell"
    RHO_GREATER_L = "rho>ell"


def base_layout(params: JointParams) -> BaseLayout:
    """Build the canonical base plate for ``params``.

    Hinge 1 sits at (b/sqrt(3), 0, 0) and hinges 2, 3 at 120 and 240 degree
    rotations about +z. Each hinge axis is tangent to the circumscribed
    circle, and each rotation plane contains its hinge, the origin and +z.
    """
    rho = params.circumradius
    hinges = []
    axes = []
    planes = []
    for i in range(3):
        ang = 2.0 * math.pi * i / 3.0
        hinge = vec3(rho * math.cos(ang), rho * math.sin(ang), 0.0)
        axis = vec3(-math.sin(ang), math.cos(ang), 0.0)  # z x (hinge/rho)
        hinges.append(hinge)
        axes.append(axis)
        planes.append(Plane(hinge, axis))
    return BaseLayout(
        hinges=tuple(hinges),
        hinge_axes=tuple(axes),
        rotation_planes=tuple(planes),
        center=vec3(0.0, 0.0, 0.0),
        normal=vec3(0.0, 0.0, 1.0),
    )


def p_bounds(params: JointParams) -> Tuple[float, float]:
    """Legal plunge interval [0, ell]."""
    return (0.0, params.ell)


def _check_p(p: float, params: JointParams, tol: float) -> float:
    lo, hi = p_bounds(params)
    if not math.isfinite(p) or p < lo - tol or p > hi + tol:
        raise OutOfRangeError(f"plunge p={p!r} outside [{lo:g}, {hi:g}]")
    return min(max(p, lo), hi)


def d_of(p: float, params: JointParams, tol: float = DEFAULT_TOL) -> float:
    """Center-to-hinge distance d = sqrt(p**2 + b**2 / 3)."""
    p = _check_p(p, params, tol)
    return math.sqrt(p * p + params.b * params.b / 3.0)


def d_bounds(params: JointParams) -> Tuple[float, float]:
    """Range of d over the legal plunge interval: [b/sqrt(3), sqrt(ell**2 + b**2/3)]."""
    return (params.circumradius, math.sqrt(params.ell ** 2 + params.b ** 2 / 3.0))


def theta_max(p: float, params: JointParams, tol: float = DEFAULT_TOL) -> float:
    """Largest legal base angle at plunge ``p``: pi + arcsin(p / d).

    Beyond this angle the arm has swung past the fully-extended pose in which
    the two half-arms and the two center segments are collinear; the single
    legal configuration at equality parks the distal hinge on the base hinge.
    Always in [pi, 3*pi/2).
    """
    p = _check_p(p, params, tol)
    d = d_of(p, params, tol)
    return math.pi + math.asin(min(1.0, p / d))


def regime(p: float, params: JointParams, tol: float = DEFAULT_TOL) -> Regime:
    """Classify d(p) against ell."""
    d = d_of(p, params, tol)
    if abs(d - params.ell) <= tol:
        return Regime.D_EQUAL_L
    return Regime.D_LESS_L if d < params.ell else Regime.D_GREATER_L


def boundary_theta(p: float, params: JointParams, tol: float = DEFAULT_TOL) -> float:
    """Base angle at which the arm's reach circle lies on its workspace boundary.

    Only defined for d >= ell: returns arccos(b / (d*sqrt(3))) + arccos(ell/d),
    the unique angle at which every point of the intersection circle is at the
    straight-arm distance 2*ell from the base hinge, so each non-degenerate
    point there has exactly one configuration.
    """
    d = d_of(p, params, tol)
    if d < params.ell - tol:
        raise WrongRegimeError(f"boundary angle needs d >= ell (d={d:g}, ell={params.ell:g})")
    ratio = min(1.0, params.ell / d)
    return math.acos(min(1.0, params.b / (d * SQRT3))) + math.acos(ratio)


def coincident_theta(p: float, params: JointParams, tol: float = DEFAULT_TOL) -> float:
    """Base angle at which the two workspace spheres coincide: arcsin(p / d).

    The spheres can only be identical when d = ell, so any other regime raises
    :class:`WrongRegimeError`.
    """
    d = d_of(p, params, tol)
    if abs(d - params.ell) > tol:
        raise WrongRegimeError(f"coincident spheres need d = ell (d={d:g}, ell={params.ell:g})")
    return math.asin(min(1.0, p / d))


def param_class(params: JointParams, tol: float = DEFAULT_TOL) -> ParamClass:
    """Classify b/sqrt(3) against ell; fixes which regimes are reachable at all."""
    rho = params.circumradius
    if abs(rho - params.ell) <= tol:
        return ParamClass.RHO_EQUAL_L
    return ParamClass.RHO_LESS_L if rho < params.ell else ParamClass.RHO_GREATER_L
