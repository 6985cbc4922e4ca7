"""
Single-arm reach geometry
=========================

One arm of the joint plus the two center segments forms a spatial four-bar.
Fix the base angle theta and the plunge p, and the distal hinge is pinned to
the intersection of two spheres: radius ell about the ball joint, radius
d(p) = sqrt(p^2 + b^2/3) about the point (0, 0, p). This script walks the
taxonomy of that intersection and the phi parametrization of the circle.
"""

import math

import numpy as np

from canfield import (
    ControlTriple,
    JointParams,
    coincident_theta,
    d_of,
    forward_arm,
    intersection_circle,
    phi_of_point,
    theta_max,
)

DEG = math.pi / 180

params = JointParams(ell=6, b=4)
print(f"ell = {params.ell}, b = {params.b}, circumradius = {params.circumradius:.6f}")

# --- the generic case: a circle of candidate hinge positions -----------------
theta, p = 150 * DEG, 5.8
print(f"\nAt theta = 150 deg, p = {p}: d = {d_of(p, params):.6f}")
res = intersection_circle(params, theta, p)
print(f"intersection: {res.kind.value}")
print(f"  center = {np.round(res.circle.center, 6)}")
print(f"  radius = {res.circle.radius:.6f}")

# phi = 0 is the circle point furthest from the base hinge; +-pi would fold
# the hinge back onto the base hinge.
for phi_deg in (0, 20, 90, 179):
    sol = forward_arm(params, ControlTriple(theta, p, phi_deg * DEG))
    back = phi_of_point(params, theta, p, sol.distal_hinge)
    print(f"  phi = {phi_deg:4d} deg -> hinge {np.round(sol.distal_hinge, 4)}"
          f"  (recovered phi = {back / DEG:.10f} deg)")

# --- the reach bound ----------------------------------------------------------
# theta may not exceed pi + arcsin(p/d): beyond it the arm would have swung
# past the fully-extended pose. Exactly at the bound the two spheres are
# tangent at the base hinge itself.
tm = theta_max(p, params)
print(f"\ntheta_max({p}) = {tm / DEG:.4f} deg")
for t, label in ((tm - 0.01, "just inside"), (tm, "at the bound"), (tm + 0.01, "beyond")):
    kind = intersection_circle(params, t, p).kind
    print(f"  {label:>13}: {kind.value}")

# --- the coincident-sphere curiosity -----------------------------------------
# When d = ell the two spheres can be the *same* sphere (centers line up at
# theta = arcsin(p/d)), and a single angle can no longer select the hinge.
square = JointParams(ell=math.sqrt(2), b=math.sqrt(3))
t_c = coincident_theta(1.0, square)
print(f"\nell = sqrt(2), b = sqrt(3), p = 1: spheres coincide at theta = {t_c / DEG:.1f} deg")
print(f"  kind: {intersection_circle(square, t_c, 1.0).kind.value}")
