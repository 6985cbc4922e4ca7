"""Brute-force preimage oracles, independent of the analytic solvers.

The single-arm oracle counts preimages of a distal-hinge target by dense grid
search over the (theta, p) rectangle. It exploits nothing about the analytic
inverse: it marks every cell whose pose residuals (distance to the ball-joint
reach sphere and to the center sphere) fall below a slope-scaled threshold,
labels connected components, and classifies the result by how the components
spread over the rectangle:

* isolated blobs  -> finitely many configurations (one per blob);
* full-height stripes (every plunge works, finitely many angles) -> the
  common-circle family;
* the whole rectangle -> the base hinge (interval times circle).

Thresholds scale with the grid step times a slope bound, so a refined grid
marks a thinner neighbourhood of the same solution set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import ndimage

from .arm import PreimageKind
from .joint import JointParams, p_bounds


@dataclass(frozen=True)
class OracleReport:
    kind: PreimageKind
    count: int
    marked_fraction: float
    component_sizes: Tuple[int, ...]


def arm_preimage_oracle(
    params: JointParams,
    target: Sequence[float],
    theta_samples: int = 2000,
    p_samples: int = 2000,
) -> OracleReport:
    """Count arm configurations reaching ``target`` by brute-force grid search."""
    t = np.asarray(target, dtype=float)
    ell = params.ell
    lo, hi = p_bounds(params)

    thetas = np.linspace(0.0, 2.0 * math.pi, theta_samples, endpoint=False)
    ps = np.linspace(lo, hi, p_samples)
    d_theta = 2.0 * math.pi / theta_samples
    d_p = (hi - lo) / (p_samples - 1)

    # Ball-joint reach residual, a function of theta alone.
    rho = params.circumradius
    ball_x = rho - ell * np.cos(thetas)
    ball_z = ell * np.sin(thetas)
    reach = np.abs(
        np.sqrt((t[0] - ball_x) ** 2 + t[1] ** 2 + (t[2] - ball_z) ** 2) - ell
    )
    # Center-sphere residual, a function of p alone.
    d_vals = np.sqrt(ps * ps + params.b * params.b / 3.0)
    center = np.abs(
        np.sqrt(t[0] ** 2 + t[1] ** 2 + (t[2] - ps) ** 2) - d_vals
    )

    # Residual slopes are bounded by ell (reach) and 2 (center), so one grid
    # step can move each residual by at most this much.
    marked = (reach < ell * d_theta)[:, None] & (center < 2.0 * d_p)[None, :]
    fraction = float(marked.mean())
    if fraction > 0.25:
        return OracleReport(PreimageKind.INTERVAL_TIMES_CIRCLE, 0, fraction, ())

    labels, n = ndimage.label(marked)
    if n == 0:
        return OracleReport(PreimageKind.FINITE, 0, fraction, ())
    # theta wraps: merge components touching through the seam.
    seam = set()
    first, last = labels[0, :], labels[-1, :]
    both = (first > 0) & (last > 0)
    for a, b in zip(first[both], last[both]):
        if a != b:
            seam.add((min(a, b), max(a, b)))
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in seam:
        parent[find(b)] = find(a)
    roots = sorted({find(k) for k in range(1, n + 1)})
    sizes = []
    spans_all_p = []
    for r in roots:
        mask = np.isin(labels, [k for k in range(1, n + 1) if find(k) == r])
        sizes.append(int(mask.sum()))
        spans_all_p.append(bool(mask.any(axis=0).all()))
    if any(spans_all_p):
        return OracleReport(PreimageKind.FAMILY_OVER_P, len(roots), fraction, tuple(sizes))
    return OracleReport(PreimageKind.FINITE, len(roots), fraction, tuple(sizes))


@dataclass(frozen=True)
class OracleCase:
    name: str
    expected: str
    got: str

    @property
    def passed(self) -> bool:
        return self.expected == self.got


def _fmt_preimage(kind: PreimageKind, count: int) -> str:
    if kind is PreimageKind.FINITE:
        return f"finite({count})"
    return kind.value


def run_oracle_suite(
    seed: int = 0,
    cases: int = 10,
    theta_samples: int = 2000,
    p_samples: int = 2000,
) -> List[OracleCase]:
    """Cross-check the analytic solvers against the brute-force oracles.

    Returns one row per check; used by the ``oracle`` CLI subcommand and the
    acceptance suite.
    """
    from .arm import ControlTriple, forward_arm, inverse_arm
    from .joint import boundary_theta, theta_max
    from .planar import (
        cluster_angle_pairs,
        detect_circle_family,
        planar_bruteforce_matches,
        planar_fourbar_solve,
    )

    rows: List[OracleCase] = []

    # Planar analogue: the three canonical targets.
    for target, expected in (((1.0, 0.0), "finite(1)"), ((0.5, 0.0), "finite(2)"), ((0.0, 0.0), "circle_family")):
        analytic = planar_fourbar_solve(target)
        matches = planar_bruteforce_matches(target)
        if analytic.kind is PreimageKind.CIRCLE_FAMILY:
            beads, loop = detect_circle_family(matches)
            got = "circle_family" if (beads >= 32 and loop) else f"beads({beads},loop={loop})"
        else:
            clusters = cluster_angle_pairs(matches, radius=0.1)
            got = f"finite({len(clusters)})" if len(clusters) == analytic.count else (
                f"analytic({analytic.count})!=brute({len(clusters)})"
            )
        rows.append(OracleCase(f"planar {target}", expected, got))

    rng = np.random.default_rng(seed)
    params = JointParams(ell=6.0, b=4.0)

    # Interior targets: analytic inverse must agree with the grid count (2).
    made = 0
    while made < cases:
        p = rng.uniform(0.3, params.ell * 0.9)
        theta = rng.uniform(0.2, theta_max(p, params) - 0.2)
        phi = rng.uniform(-2.6, 2.6)
        sol = forward_arm(params, ControlTriple(theta, p, phi))
        if abs(sol.distal_hinge[2]) < 0.2:
            continue
        made += 1
        pre = inverse_arm(params, sol.distal_hinge)
        rep = arm_preimage_oracle(params, sol.distal_hinge, theta_samples, p_samples)
        rows.append(
            OracleCase(
                f"interior #{made}",
                _fmt_preimage(pre.kind, pre.count),
                _fmt_preimage(rep.kind, rep.count),
            )
        )

    # Boundary targets (d > ell): unique configuration on the boundary circle.
    wide = JointParams(ell=2.0, b=6.0)
    made = 0
    while made < max(2, cases // 3):
        p = rng.uniform(0.2, wide.ell * 0.9)
        bt = boundary_theta(p, wide)
        phi = rng.uniform(-2.0, 2.0)
        sol = forward_arm(wide, ControlTriple(bt, p, phi))
        if abs(sol.distal_hinge[2]) < 0.2:
            continue
        made += 1
        pre = inverse_arm(wide, sol.distal_hinge)
        rep = arm_preimage_oracle(wide, sol.distal_hinge, theta_samples, p_samples)
        rows.append(
            OracleCase(
                f"boundary #{made}",
                _fmt_preimage(pre.kind, pre.count),
                _fmt_preimage(rep.kind, rep.count),
            )
        )

    # The base hinge: interval times circle.
    hinge = np.array([params.circumradius, 0.0, 0.0])
    pre = inverse_arm(params, hinge)
    rep = arm_preimage_oracle(params, hinge, theta_samples, p_samples)
    rows.append(OracleCase("base hinge", pre.kind.value, rep.kind.value))
    return rows


def format_oracle_table(rows: Sequence[OracleCase]) -> str:
    width = max(len(r.name) for r in rows)
    lines = []
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  expected={r.expected:<16} got={r.got:<16} {status}")
    n_fail = sum(not r.passed for r in rows)
    lines.append(f"{len(rows) - n_fail}/{len(rows)} oracle checks passed")
    return "\n".join(lines)
