"""Full-joint reconstruction from the (theta, p, phi) control scheme.

Solving arm 1 pins its distal hinge; the distal plate is then the mirror image
of the base plate across the perpendicular bisector plane of (base hinge 1,
distal hinge 1). That plane is exactly the plane of the three ball joints: the
joint center is equidistant from both hinges (distance d), every ball joint is
equidistant from its two hinges (distance ell), and reflecting the base plate
across it reproduces a congruent distal plate at equal plunge. The remaining
ball joints are the intersections of each arm's rotation circle with the
mirror plane, giving up to two choices per arm and at most four configurations
per control triple.

``reconstruct`` reports per-arm intersection diagnostics instead of raising
for domain-invalid controls: impossible configurations are data (the validity
boundary is the object of study), degeneracies are errors.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .arm import ArmSolution, ControlTriple, forward_arm
from .geometry import (
    DEFAULT_TOL,
    Plane,
    Vec3,
    as_vec3,
    norm,
    perp_bisector_plane,
    reflect_direction,
    reflect_point,
    unit,
    vec3,
    wrap_angle,
)
from .joint import (
    BaseLayout,
    JointError,
    JointParams,
    base_layout,
    d_of,
    p_bounds,
)

log = logging.getLogger(__name__)

Z_AXIS = np.array([0.0, 0.0, 1.0])


class DegenerateFoldError(JointError):
    """Distal hinge 1 coincides with base hinge 1; the mirror plane is undefined."""


class PathBrokenError(JointError):
    """A swept path hit an invalid configuration; carries the valid prefix."""

    def __init__(self, message: str, prefix: List["Configuration"], step: int):
        super().__init__(message)
        self.prefix = prefix
        self.step = step


class Branch(Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True, order=True)
class BranchId:
    """Which circle-intersection candidate arms 2 and 3 take."""

    s2: Branch
    s3: Branch

    @property
    def label(self) -> str:
        return ("+" if self.s2 is Branch.PLUS else "-") + ("+" if self.s3 is Branch.PLUS else "-")

    @classmethod
    def from_label(cls, label: str) -> "BranchId":
        if len(label) != 2 or any(c not in "+-" for c in label):
            raise JointError(f"branch label must be two of '+'/'-', got {label!r}")
        return cls(
            Branch.PLUS if label[0] == "+" else Branch.MINUS,
            Branch.PLUS if label[1] == "+" else Branch.MINUS,
        )


ALL_BRANCH_IDS: Tuple[BranchId, ...] = (
    BranchId(Branch.PLUS, Branch.PLUS),
    BranchId(Branch.PLUS, Branch.MINUS),
    BranchId(Branch.MINUS, Branch.PLUS),
    BranchId(Branch.MINUS, Branch.MINUS),
)


class ArmCircleStatus(Enum):
    """How an arm's rotation circle meets the mirror plane."""

    TWO_POINTS = "two_points"
    TANGENT = "tangent"
    NO_INTERSECTION = "no_intersection"


@dataclass(frozen=True)
class Configuration:
    """A complete joint pose in the canonical base frame."""

    params: JointParams
    control: ControlTriple
    branch: BranchId
    base: BaseLayout
    ball_joints: Tuple[Vec3, Vec3, Vec3]
    distal_hinges: Tuple[Vec3, Vec3, Vec3]
    distal_center: Vec3
    distal_normal: Vec3
    joint_center: Vec3
    p: float
    thetas: Tuple[float, float, float]

    def to_dict(self) -> dict:
        return {
            "params": {"ell": self.params.ell, "b": self.params.b},
            "control": {"theta": self.control.theta, "p": self.control.p, "phi": self.control.phi},
            "branch": self.branch.label,
            "base_hinges": [h.tolist() for h in self.base.hinges],
            "ball_joints": [q.tolist() for q in self.ball_joints],
            "distal_hinges": [h.tolist() for h in self.distal_hinges],
            "distal_center": self.distal_center.tolist(),
            "distal_normal": self.distal_normal.tolist(),
            "joint_center": self.joint_center.tolist(),
            "p": self.p,
            "thetas": list(self.thetas),
        }


_CONFIG_KEYS = {
    "params",
    "control",
    "branch",
    "base_hinges",
    "ball_joints",
    "distal_hinges",
    "distal_center",
    "distal_normal",
    "joint_center",
    "p",
    "thetas",
}


def configuration_from_dict(doc: dict) -> Configuration:
    """Rebuild a configuration from its canonical JSON dict (strict keys)."""
    extra = set(doc) - _CONFIG_KEYS
    if extra:
        raise JointError(f"unknown configuration keys: {sorted(extra)}")
    missing = _CONFIG_KEYS - set(doc)
    if missing:
        raise JointError(f"missing configuration keys: {sorted(missing)}")
    params = JointParams(**doc["params"])
    ctrl = ControlTriple(**doc["control"])
    return Configuration(
        params=params,
        control=ctrl,
        branch=BranchId.from_label(doc["branch"]),
        base=base_layout(params),
        ball_joints=tuple(as_vec3(q) for q in doc["ball_joints"]),
        distal_hinges=tuple(as_vec3(h) for h in doc["distal_hinges"]),
        distal_center=as_vec3(doc["distal_center"]),
        distal_normal=as_vec3(doc["distal_normal"]),
        joint_center=as_vec3(doc["joint_center"]),
        p=float(doc["p"]),
        thetas=tuple(float(t) for t in doc["thetas"]),
    )


@dataclass(frozen=True)
class ReconstructionReport:
    """Outcome of a reconstruction attempt: 0 to 4 configurations plus diagnostics."""

    configurations: Tuple[Configuration, ...]
    arm_status: Tuple[ArmCircleStatus, ArmCircleStatus]  # arms 2 and 3
    diagnostics: Tuple[str, ...]
    arm1: ArmSolution
    mirror: Plane

    @property
    def valid(self) -> bool:
        return len(self.configurations) > 0


def mirror_plane(b1: Vec3, h1: Vec3, tol: float = DEFAULT_TOL) -> Plane:
    """Perpendicular bisector of (base hinge 1, distal hinge 1).

    The joint center lies on it automatically (it is at distance d from both
    hinges); reconstruction verifies that rather than assuming it.
    """
    b1 = as_vec3(b1)
    h1 = as_vec3(h1)
    if norm(h1 - b1) <= tol:
        raise DegenerateFoldError(
            "distal hinge coincides with the base hinge; the fold plane is undefined"
        )
    return perp_bisector_plane(b1, h1, tol)


def _theta_of_ball(layout: BaseLayout, i: int, ball: Vec3) -> float:
    v = ball - layout.hinges[i]
    return wrap_angle(math.atan2(float(np.dot(v, Z_AXIS)), float(np.dot(v, layout.inward(i)))))


def _arm_candidates(
    params: JointParams, layout: BaseLayout, i: int, mirror: Plane, tol: float
) -> Tuple[ArmCircleStatus, Dict[Branch, Tuple[float, Vec3]]]:
    """Ball-joint candidates for arm ``i`` (0-based): rotation circle vs mirror plane.

    The circle point at angle t is B + ell*(cos t * inward + sin t * z), so the
    parameter t *is* the base angle; signed distance to the mirror plane is
    c0 + amp*cos(t - t0) and the roots fall out of one arccos.
    """
    ell = params.ell
    hinge = layout.hinges[i]
    inward = layout.inward(i)
    n = mirror.normal
    c0 = mirror.signed_distance(hinge)
    a_in = ell * float(np.dot(inward, n))
    a_up = ell * float(n[2])
    amp = math.hypot(a_in, a_up)

    if amp <= tol:
        # Rotation circle parallel to the mirror plane: either disjoint or a
        # continuum (circle inside the plane); neither yields discrete poses.
        return ArmCircleStatus.NO_INTERSECTION, {}
    if abs(c0) > amp + tol:
        return ArmCircleStatus.NO_INTERSECTION, {}

    t0 = math.atan2(a_up, a_in)
    ratio = max(-1.0, min(1.0, -c0 / amp))

    def candidate(t: float) -> Tuple[float, Vec3]:
        ball = hinge + ell * (math.cos(t) * inward + math.sin(t) * Z_AXIS)
        return wrap_angle(t), ball

    if amp - abs(c0) <= tol:
        t = t0 if ratio > 0 else t0 + math.pi
        return ArmCircleStatus.TANGENT, {Branch.PLUS: candidate(t)}

    dt = math.acos(ratio)
    cand_a = candidate(t0 + dt)
    cand_b = candidate(t0 - dt)
    key_a = (cand_a[1][2], cand_a[1][1], cand_a[1][0])
    key_b = (cand_b[1][2], cand_b[1][1], cand_b[1][0])
    if key_a >= key_b:
        plus, minus = cand_a, cand_b
    else:
        plus, minus = cand_b, cand_a
    return ArmCircleStatus.TWO_POINTS, {Branch.PLUS: plus, Branch.MINUS: minus}


def reconstruct(
    params: JointParams, ctrl: ControlTriple, tol: float = DEFAULT_TOL
) -> ReconstructionReport:
    """Enumerate every joint configuration compatible with a control triple.

    Arm 1 is solved by the forward map; the distal plate is the mirror image
    of the base plate; arms 2 and 3 pick their ball joints on the mirror
    plane. Zero candidates on either arm make the control invalid (reported,
    not raised); a distal hinge folded onto its base hinge raises
    :class:`DegenerateFoldError`.
    """
    layout = base_layout(params)
    arm1 = forward_arm(params, ctrl, tol)
    b1 = layout.hinges[0]
    if norm(arm1.distal_hinge - b1) <= tol:
        raise DegenerateFoldError("control lands the distal hinge on the base hinge")
    mirror = mirror_plane(b1, arm1.distal_hinge, tol)

    center = vec3(0.0, 0.0, ctrl.p)
    center_residual = abs(mirror.signed_distance(center))
    diagnostics = []
    if center_residual > 1e-6:
        diagnostics.append(f"joint center off the fold plane by {center_residual:g}")

    distal_hinges_mirrored = [reflect_point(mirror, layout.hinges[i]) for i in range(3)]
    distal_center = reflect_point(mirror, layout.center)
    distal_normal = reflect_direction(mirror, -layout.normal)

    statuses = []
    candidates: List[Dict[Branch, Tuple[float, Vec3]]] = []
    for i in (1, 2):
        status, cands = _arm_candidates(params, layout, i, mirror, tol)
        statuses.append(status)
        candidates.append(cands)
        if status is ArmCircleStatus.NO_INTERSECTION:
            diagnostics.append(
                f"arm {i + 1}: ball-joint circle does not meet the fold plane "
                "(no way to close the arm)"
            )
        for t, ball in cands.values():
            gap = abs(norm(ball - distal_hinges_mirrored[i]) - params.ell)
            if gap > 1e-6:
                raise JointError(
                    f"arm {i + 1} candidate broke the mirror identity by {gap:g}"
                )

    configs = []
    for branch in ALL_BRANCH_IDS:
        if branch.s2 not in candidates[0] or branch.s3 not in candidates[1]:
            continue
        t2, ball2 = candidates[0][branch.s2]
        t3, ball3 = candidates[1][branch.s3]
        configs.append(
            Configuration(
                params=params,
                control=ctrl,
                branch=branch,
                base=layout,
                ball_joints=(arm1.ball_joint, ball2, ball3),
                distal_hinges=(
                    arm1.distal_hinge,
                    distal_hinges_mirrored[1],
                    distal_hinges_mirrored[2],
                ),
                distal_center=distal_center,
                distal_normal=distal_normal,
                joint_center=center,
                p=ctrl.p,
                thetas=(ctrl.theta, t2, t3),
            )
        )
    return ReconstructionReport(
        configurations=tuple(configs),
        arm_status=(statuses[0], statuses[1]),
        diagnostics=tuple(diagnostics),
        arm1=arm1,
        mirror=mirror,
    )


def thetas_of(config: Configuration) -> Tuple[float, float, float]:
    """Base angles recomputed from the ball joints (not the stored values)."""
    return tuple(_theta_of_ball(config.base, i, config.ball_joints[i]) for i in range(3))


def pointing(config: Configuration) -> Vec3:
    """Unit pointing direction of the distal plate, oriented away from the center."""
    return unit(config.distal_normal)


@dataclass(frozen=True)
class Violation:
    name: str
    residual: float


def validate(config: Configuration, tol: float = DEFAULT_TOL) -> List[Violation]:
    """Check every construction identity; empty list means the pose is sound."""
    out: List[Violation] = []

    def check(name: str, residual: float):
        if abs(residual) > tol:
            out.append(Violation(name, abs(residual)))

    params = config.params
    layout = config.base
    d = d_of(config.p, params, max(tol, DEFAULT_TOL))
    center = config.joint_center
    mirror = mirror_plane(layout.hinges[0], config.distal_hinges[0], min(tol, 1e-6))

    for i in range(3):
        ball = config.ball_joints[i]
        check(f"arm{i + 1}.base_bar_length", norm(ball - layout.hinges[i]) - params.ell)
        check(f"arm{i + 1}.distal_bar_length", norm(ball - config.distal_hinges[i]) - params.ell)
        check(f"arm{i + 1}.hinge_center_distance", norm(config.distal_hinges[i] - center) - d)
        check(f"arm{i + 1}.ball_on_fold_plane", mirror.signed_distance(ball))
        check(
            f"arm{i + 1}.ball_in_rotation_plane",
            float(np.dot(ball - layout.hinges[i], layout.hinge_axes[i])),
        )
        check(
            f"arm{i + 1}.distal_hinge_to_distal_center",
            norm(config.distal_hinges[i] - config.distal_center) - params.circumradius,
        )
        check(
            f"arm{i + 1}.pointing_orthogonal",
            float(np.dot(config.distal_normal, config.distal_hinges[i] - config.distal_center)),
        )
    for i, j in ((0, 1), (0, 2), (1, 2)):
        check(
            f"distal_hinge_spacing_{i + 1}{j + 1}",
            norm(config.distal_hinges[i] - config.distal_hinges[j]) - params.b,
        )
    check("base_plunge", norm(layout.center - center) - config.p)
    check("distal_plunge", norm(config.distal_center - center) - config.p)
    check("pointing_unit", norm(config.distal_normal) - 1.0)
    for i, (stored, recomputed) in enumerate(zip(config.thetas, thetas_of(config))):
        diff = (recomputed - stored + math.pi) % (2.0 * math.pi) - math.pi
        check(f"theta{i + 1}_consistent", diff)
    return out


# ---------------------------------------------------------------------------
# Vectorized grid evaluation (sweeps and the forward-kinematics bridge)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridEval:
    """Joint poses over a (p, phi) grid at fixed theta, one entry per cell.

    Base-cell validity is branch-independent (both arms either close or not);
    branch angles come from the per-arm plus/minus selections.
    """

    p_values: np.ndarray  # (n,)
    phi_values: np.ndarray  # (m,)
    cell_valid: np.ndarray  # (n, m) bool, all validity conditions combined
    theta2: Dict[Branch, np.ndarray]  # (n, m)
    theta3: Dict[Branch, np.ndarray]  # (n, m)
    center: np.ndarray  # (n, m, 3) distal-plate centers
    normal: np.ndarray  # (n, m, 3) pointing directions


def grid_eval(
    params: JointParams,
    theta: float,
    p_values: np.ndarray,
    phi_values: np.ndarray,
    tol: float = DEFAULT_TOL,
) -> GridEval:
    """Vectorized reconstruction over a (p, phi) grid at fixed base angle.

    Mirrors the scalar path algebraically; cells that would raise there
    (beyond reach, degenerate circle, folded hinge, open arm) are masked out.
    """
    ell = params.ell
    rho = params.circumradius
    p = np.asarray(p_values, dtype=float)
    phi = np.asarray(phi_values, dtype=float)
    n, m = p.size, phi.size

    b1 = np.array([rho, 0.0, 0.0])
    ball = np.array([rho - ell * math.cos(theta), 0.0, ell * math.sin(theta)])

    d_vals = np.sqrt(p * p + params.b * params.b / 3.0)
    reach = theta <= np.pi + np.arcsin(np.minimum(1.0, p / d_vals))

    centers = np.zeros((n, 3))
    centers[:, 2] = p
    dv = centers - ball
    dist = np.linalg.norm(dv, axis=1)
    safe_dist = np.where(dist > tol, dist, 1.0)
    u = dv / safe_dist[:, None]
    along = (dist * dist + ell * ell - d_vals * d_vals) / (2.0 * safe_dist)
    h_sq = ell * ell - along * along
    circle_ok = (dist > tol) & (h_sq > tol * tol) & reach

    q = ball[None, :] + along[:, None] * u
    w = q - b1[None, :]
    w_in = w - np.sum(w * u, axis=1)[:, None] * u  # phi = 0 anchor offset
    swing = np.cross(u, w_in)

    cos_phi, sin_phi = np.cos(phi), np.sin(phi)
    hinge = (
        q[:, None, :]
        + w_in[:, None, :] * cos_phi[None, :, None]
        + swing[:, None, :] * sin_phi[None, :, None]
    )  # (n, m, 3)

    hb = hinge - b1[None, None, :]
    hb_len = np.linalg.norm(hb, axis=2)
    fold_ok = hb_len > tol
    safe_len = np.where(fold_ok, hb_len, 1.0)
    normal = hb / safe_len[..., None]
    mid = (hinge + b1[None, None, :]) / 2.0

    theta2: Dict[Branch, np.ndarray] = {}
    theta3: Dict[Branch, np.ndarray] = {}
    arm_ok = []
    layout = base_layout(params)
    for which, i in ((theta2, 1), (theta3, 2)):
        hinge_i = layout.hinges[i]
        inward_i = layout.inward(i)
        c0 = np.sum((hinge_i[None, None, :] - mid) * normal, axis=2)
        a_in = ell * np.sum(normal * inward_i[None, None, :], axis=2)
        a_up = ell * normal[..., 2]
        amp = np.hypot(a_in, a_up)
        ok = (amp > tol) & (np.abs(c0) <= amp)
        arm_ok.append(ok)
        safe_amp = np.where(amp > tol, amp, 1.0)
        t0 = np.arctan2(a_up, a_in)
        dt = np.arccos(np.clip(-c0 / safe_amp, -1.0, 1.0))
        t_a, t_b = t0 + dt, t0 - dt
        a_is_plus = np.sin(t_a) >= np.sin(t_b)  # greater ball-joint z
        which[Branch.PLUS] = np.mod(np.where(a_is_plus, t_a, t_b), 2.0 * np.pi)
        which[Branch.MINUS] = np.mod(np.where(a_is_plus, t_b, t_a), 2.0 * np.pi)

    cell_valid = circle_ok[:, None] & fold_ok & arm_ok[0] & arm_ok[1]
    distal_center = 2.0 * np.sum(mid * normal, axis=2)[..., None] * normal
    distal_normal = 2.0 * normal[..., 2:3] * normal
    distal_normal[..., 2] -= 1.0
    return GridEval(
        p_values=p,
        phi_values=phi,
        cell_valid=cell_valid,
        theta2=theta2,
        theta3=theta3,
        center=distal_center,
        normal=distal_normal,
    )


# ---------------------------------------------------------------------------
# Forward-kinematics bridge: (theta1, theta2, theta3) -> (p, phi, branch)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FkSolution:
    control: ControlTriple
    branch: BranchId
    configuration: Configuration
    residual: float


def _wrap_pi(x):
    return np.mod(np.asarray(x) + np.pi, 2.0 * np.pi) - np.pi


def _thetas_at(
    params: JointParams, theta: float, p: float, phi: float, branch: BranchId, tol: float
) -> Optional[Tuple[float, float]]:
    """(theta2, theta3) for one control point on one branch, or None if invalid."""
    lo, hi = p_bounds(params)
    if not (lo <= p <= hi and -math.pi < phi < math.pi):
        return None
    try:
        report = reconstruct(params, ControlTriple(theta, p, phi), tol)
    except JointError:
        return None
    for cfg in report.configurations:
        if cfg.branch == branch:
            return cfg.thetas[1], cfg.thetas[2]
    return None


def solve_fk(
    params: JointParams,
    theta_targets: Sequence[float],
    seeds: Optional[Sequence[Tuple[float, float, BranchId]]] = None,
    grid: Tuple[int, int] = (200, 200),
    residual_tol: float = 1e-8,
    step_tol: float = 1e-12,
    max_iter: int = 100,
    merge_tol: float = 1e-6,
    tol: float = DEFAULT_TOL,
) -> List[FkSolution]:
    """All (p, phi, branch) reproducing the base-angle targets with theta1 fixed.

    A coarse residual scan over the (p, phi) rectangle seeds damped Newton
    refinement of the two-angle residual per branch (finite-difference
    Jacobian); converged roots are deduplicated within ``merge_tol``. Controls
    that only reach the targets through the folded pose (distal hinge on the
    base hinge, where whole angle families collapse) raise
    :class:`DegenerateFoldError` instead of returning a spurious point.
    """
    t1 = wrap_angle(theta_targets[0])
    t2 = wrap_angle(theta_targets[1])
    t3 = wrap_angle(theta_targets[2])
    lo, hi = p_bounds(params)

    seed_list: List[Tuple[float, float, BranchId]] = list(seeds) if seeds else []
    if not seed_list:
        p_grid = np.linspace(lo, hi, grid[0])
        phi_grid = -math.pi + (np.arange(grid[1]) + 0.5) * (2.0 * math.pi / grid[1])
        ge = grid_eval(params, t1, p_grid, phi_grid, tol)
        for branch in ALL_BRANCH_IDS:
            r2 = _wrap_pi(ge.theta2[branch.s2] - t2)
            r3 = _wrap_pi(ge.theta3[branch.s3] - t3)
            res = np.where(ge.cell_valid, r2 * r2 + r3 * r3, np.inf)
            padded = np.pad(res, 1, constant_values=np.inf)
            neigh = np.min(
                [
                    padded[1 + di : padded.shape[0] - 1 + di, 1 + dj : padded.shape[1] - 1 + dj]
                    for di in (-1, 0, 1)
                    for dj in (-1, 0, 1)
                    if (di, dj) != (0, 0)
                ],
                axis=0,
            )
            local_min = (res <= neigh) & (res < 0.35 ** 2)
            for i, j in zip(*np.nonzero(local_min)):
                seed_list.append((float(p_grid[i]), float(phi_grid[j]), branch))

    fold_seen = False
    found: List[FkSolution] = []
    for p0, phi0, branch in seed_list:
        x = np.array([p0, phi0])
        fx = _thetas_at(params, t1, x[0], x[1], branch, tol)
        if fx is None:
            continue
        f = np.array([_wrap_pi(fx[0] - t2), _wrap_pi(fx[1] - t3)], dtype=float)
        converged = False
        for _ in range(max_iter):
            if np.max(np.abs(f)) <= residual_tol:
                converged = True
                break
            jac = np.empty((2, 2))
            bad = False
            for k, h in enumerate((1e-7 * max(1.0, abs(x[0])), 1e-7)):
                xp = x.copy()
                xp[k] = min(max(xp[k] + h, lo if k == 0 else -math.pi + 1e-12), hi if k == 0 else math.pi - 1e-12)
                fp = _thetas_at(params, t1, xp[0], xp[1], branch, tol)
                if fp is None or xp[k] == x[k]:
                    bad = True
                    break
                jac[:, k] = (
                    np.array([_wrap_pi(fp[0] - t2), _wrap_pi(fp[1] - t3)]) - f
                ) / (xp[k] - x[k])
            if bad:
                break
            try:
                step = np.linalg.solve(jac, -f)
            except np.linalg.LinAlgError:
                break
            if np.max(np.abs(step)) < step_tol:
                converged = np.max(np.abs(f)) <= residual_tol
                break
            alpha = 1.0
            improved = False
            for _ in range(25):
                xn = x + alpha * step
                xn[0] = min(max(xn[0], lo), hi)
                xn[1] = min(max(xn[1], -math.pi + 1e-12), math.pi - 1e-12)
                fn = _thetas_at(params, t1, xn[0], xn[1], branch, tol)
                if fn is not None:
                    fn_arr = np.array([_wrap_pi(fn[0] - t2), _wrap_pi(fn[1] - t3)])
                    if np.linalg.norm(fn_arr) < np.linalg.norm(f):
                        x, f = xn, fn_arr
                        improved = True
                        break
                alpha /= 2.0
            if not improved:
                break
        if not converged:
            # A refinement that stalls with a small residual right next to the
            # folded pose (distal hinge 1 near base hinge 1) is the signature
            # of the collapsed p -> 0 family, not of a missing isolated root.
            if np.linalg.norm(f) < 0.05:
                try:
                    arm1 = forward_arm(params, ControlTriple(t1, float(x[0]), float(x[1])), tol)
                    hinge_gap = norm(arm1.distal_hinge - np.array([params.circumradius, 0.0, 0.0]))
                    if hinge_gap < 0.1 * params.ell:
                        fold_seen = True
                except JointError:
                    fold_seen = True
            log.debug("fk seed (%.4f, %.4f, %s) did not converge", p0, phi0, branch.label)
            continue

        report = reconstruct(params, ControlTriple(t1, float(x[0]), float(x[1])), tol)
        cfg = next((c for c in report.configurations if c.branch == branch), None)
        if cfg is None:
            continue
        if x[0] < 1e-6 or norm(report.arm1.distal_hinge - cfg.base.hinges[0]) < 1e-6:
            fold_seen = True
            continue
        found.append(
            FkSolution(cfg.control, branch, cfg, float(np.max(np.abs(f))))
        )

    found.sort(key=lambda s: (s.branch.label, s.control.p, s.control.phi))
    unique: List[FkSolution] = []
    for sol in found:
        dup = any(
            sol.branch == u.branch
            and abs(sol.control.p - u.control.p) <= merge_tol
            and abs(sol.control.phi - u.control.phi) <= merge_tol
            for u in unique
        )
        if not dup:
            unique.append(sol)
    if not unique and fold_seen:
        raise DegenerateFoldError(
            "targets are reached only through the folded pose (whole families collapse there)"
        )
    return unique


def fixed_plunge_path(
    params: JointParams,
    theta: float,
    p: float,
    phi_from: float,
    phi_to: float,
    steps: int,
    branch: BranchId = ALL_BRANCH_IDS[0],
    tol: float = DEFAULT_TOL,
) -> List[Configuration]:
    """Sweep phi at fixed (theta, p) on one branch; every step must reconstruct.

    Raises :class:`PathBrokenError` carrying the valid prefix when a step
    fails, so a caller can still use the reachable part of the path.
    """
    if steps < 1:
        raise JointError(f"steps must be >= 1, got {steps}")
    phis = [phi_from] if steps == 1 else list(np.linspace(phi_from, phi_to, steps))
    out: List[Configuration] = []
    for k, phi in enumerate(phis):
        try:
            report = reconstruct(params, ControlTriple(theta, p, float(phi)), tol)
        except JointError as exc:
            raise PathBrokenError(f"step {k} (phi={phi:g}): {exc}", out, k) from exc
        cfg = next((c for c in report.configurations if c.branch == branch), None)
        if cfg is None:
            raise PathBrokenError(
                f"step {k} (phi={phi:g}): branch {branch.label} unavailable "
                f"(statuses {report.arm_status[0].value}/{report.arm_status[1].value})",
                out,
                k,
            )
        out.append(cfg)
    return out
