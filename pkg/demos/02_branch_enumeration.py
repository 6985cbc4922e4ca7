"""
Reconstructing the full joint: four branches and a validity cliff
=================================================================

Given (theta, p, phi) for one instrumented arm, the distal plate is the mirror
image of the base plate across the perpendicular bisector of (base hinge 1,
distal hinge 1), and each remaining arm picks its ball joint from up to two
intersections of its rotation circle with that plane: at most four complete
configurations.

Whether those intersections exist at all depends delicately on the plate
scale: the same control triple (150 deg, 5.8, 20 deg) is impossible to build
with ell = 6 and fine with ell = 7.
"""

import math

import numpy as np

from canfield import ControlTriple, JointParams, reconstruct, thetas_of, validate

DEG = math.pi / 180
ctrl = ControlTriple(150 * DEG, 5.8, 20 * DEG)

for ell in (6, 7):
    params = JointParams(ell=ell, b=4)
    report = reconstruct(params, ctrl)
    print(f"\nell = {ell}: valid = {report.valid}")
    print(f"  arm 2 circle vs fold plane: {report.arm_status[0].value}")
    print(f"  arm 3 circle vs fold plane: {report.arm_status[1].value}")
    for note in report.diagnostics:
        print(f"  note: {note}")
    for cfg in report.configurations:
        worst = max((v.residual for v in validate(cfg, 0.0)), default=0.0)
        t1, t2, t3 = (t / DEG for t in thetas_of(cfg))
        print(f"  branch {cfg.branch.label}: thetas = ({t1:7.3f}, {t2:7.3f}, {t3:7.3f}) deg"
              f"  worst residual = {worst:.2e}")

# The four branches share the same distal plate (the mirror construction only
# involves arm 1); they differ in where arms 2 and 3 put their elbows.
params = JointParams(ell=7, b=4)
report = reconstruct(params, ctrl)
centers = {c.branch.label: c.distal_center for c in report.configurations}
print("\ndistal centers per branch (identical by construction):")
for label, center in centers.items():
    print(f"  {label}: {np.round(center, 9)}")

balls = {c.branch.label: c.ball_joints[1] for c in report.configurations}
print("arm-2 ball joints per branch (the actual choice):")
for label, ball in balls.items():
    print(f"  {label}: {np.round(ball, 6)}")
