"""
Bridging the two control schemes
================================

The joint is classically driven by its three base angles. The alternate
(theta, p, phi) scheme is handier for broken-arm reasoning and for moves like
"hold the plunge, slide along the reach circle", but flight software speaks
base angles. solve_fk crosses the bridge numerically: coarse residual scan
over the (p, phi) rectangle, then damped Newton per branch.
"""

import math

import numpy as np

from canfield import (
    ControlTriple,
    DegenerateFoldError,
    JointParams,
    fixed_plunge_path,
    reconstruct,
    solve_fk,
)

DEG = math.pi / 180
params = JointParams(ell=7, b=4)

# forward: pick a control triple, read off the base angles
ctrl = ControlTriple(150 * DEG, 5.8, 20 * DEG)
report = reconstruct(params, ctrl)
cfg = report.configurations[0]
print("control (theta, p, phi) =",
      f"({ctrl.theta / DEG:.1f} deg, {ctrl.p}, {ctrl.phi / DEG:.1f} deg), branch {cfg.branch.label}")
print("base angles (deg):", [round(t / DEG, 6) for t in cfg.thetas])

# inverse: hand those base angles back and recover the control point
solutions = solve_fk(params, cfg.thetas)
print(f"\nsolve_fk found {len(solutions)} control point(s):")
for s in solutions:
    print(f"  branch {s.branch.label}: p = {s.control.p:.9f}, phi = {s.control.phi / DEG:.6f} deg"
          f"  (residual {s.residual:.1e})")

# the folded pose is a family, not a point; the solver says so instead of
# returning an arbitrary member
try:
    solve_fk(JointParams(ell=6, b=4), (math.pi, math.pi, math.pi))
except DegenerateFoldError as exc:
    print(f"\ntargets (180, 180, 180) deg: {exc}")

# the move the alternate scheme makes trivial: constant plunge, slide phi
path = fixed_plunge_path(params, 150 * DEG, 5.8, -20 * DEG, 20 * DEG, steps=9)
print("\nfixed-plunge sweep phi in [-20, 20] deg (distal center glides smoothly):")
for cfg in path:
    print(f"  phi = {cfg.control.phi / DEG:6.1f} deg -> center {np.round(cfg.distal_center, 4)}")
