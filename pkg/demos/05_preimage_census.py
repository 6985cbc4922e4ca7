"""
How many ways can the arm reach a point?
========================================

The configuration-space fiber over a workspace point changes size across the
workspace, and the pattern depends on the regime of d = sqrt(p^2 + b^2/3)
against ell:

* generic off-plane points: two base angles work (elbow-ish pair);
* points on the workspace envelope (needs d > ell): exactly one;
* the base-plane circle of radius b/sqrt(3): reachable at *every* plunge;
* the base hinge itself: every plunge and every base angle (an interval of
  plunges times a circle of angles).

A dense (theta, p) grid search confirms each count without using the analytic
inverse. The planar two-piece arm shows the same census in the plane.
"""

import math

import numpy as np

from canfield import (
    ControlTriple,
    JointParams,
    arm_preimage_oracle,
    boundary_theta,
    forward_arm,
    inverse_arm,
    planar_fourbar_solve,
)
from canfield.planar import (
    cluster_angle_pairs,
    detect_circle_family,
    planar_bruteforce_matches,
)

DEG = math.pi / 180
fig = JointParams(ell=6, b=4)

def census(params, point, label):
    pre = inverse_arm(params, point)
    rep = arm_preimage_oracle(params, point, 1200, 1200)
    if pre.solutions:
        angles = ", ".join(f"{s.theta / DEG:.2f}" for s in pre.solutions)
        detail = f"theta in {{{angles}}} deg at p = {pre.solutions[0].p:.4f}"
    else:
        detail = f"p interval {pre.p_interval}"
    print(f"{label:>26}: analytic {pre.kind.value}({pre.count}) | "
          f"grid oracle {rep.kind.value}({rep.count})  [{detail}]")

# generic interior point (d < ell here)
h = forward_arm(fig, ControlTriple(100 * DEG, 3.0, 0.7)).distal_hinge
census(fig, h, "generic interior point")

# envelope point: d > ell guaranteed by making the plate huge
wide = JointParams(ell=2, b=6)
h = forward_arm(wide, ControlTriple(boundary_theta(1.0, wide), 1.0, 0.9)).distal_hinge
census(wide, h, "workspace envelope point")

# the common circle and the hinge itself
ang = 1.2
census(fig, fig.circumradius * np.array([math.cos(ang), math.sin(ang), 0.0]),
       "base-plane circle point")
census(fig, np.array([fig.circumradius, 0.0, 0.0]), "the base hinge")

# --- planar analogue ----------------------------------------------------------
print("\nplanar two-piece arm (unit reach):")
for target in ((1.0, 0.0), (0.5, 0.0), (0.0, 0.0)):
    pre = planar_fourbar_solve(target)
    matches = planar_bruteforce_matches(target)
    beads, loop = detect_circle_family(matches)
    if loop:
        brute = f"{beads} beads forming a closed loop"
    else:
        brute = f"{len(cluster_angle_pairs(matches, 0.1))} solution cluster(s)"
    print(f"  target {target}: analytic {pre.kind.value}({pre.count}), brute force {brute}")
