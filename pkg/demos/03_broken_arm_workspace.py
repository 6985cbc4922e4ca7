"""
Broken-arm workspaces
=====================

A broken arm is a base actuator stuck at one angle. Sweeping the remaining two
controls (p, phi) and keeping every pose that actually closes traces out the
reachable pointing directions. The bands shrink and migrate as the stuck angle
grows: the joint stuck at 100 deg keeps roughly a quarter of a sphere's worth
of pointing, stuck at 160 deg barely a sixth.

Writes the 100-degree cloud to out/ as CSV and PLY, and a latitude/longitude
scatter of all five bands to out/broken_arm_bands.png.
"""

import math
import os

import numpy as np

from canfield import JointParams, SweepSpec, solid_angle_fraction, sweep_broken_arm, export_cloud

DEG = math.pi / 180
OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

params = JointParams(ell=6, b=4)

# Operating window: upper half of the plunge range, forward-facing phi. The
# everted poses outside it (plates folded through each other) are legal
# four-bar geometry but not how anyone flies the joint.
window = dict(p_range=(3.0, 6.0), phi_range=(-math.pi / 2, math.pi / 2))

clouds = {}
for theta_deg in (80, 100, 120, 140, 160):
    spec = SweepSpec(theta_fixed=theta_deg * DEG, p_samples=100, phi_samples=100, **window)
    cloud = sweep_broken_arm(params, spec)
    clouds[theta_deg] = cloud
    frac = solid_angle_fraction(cloud, 1024)
    print(f"theta locked at {theta_deg:3d} deg: {len(cloud.samples):5d} poses, "
          f"{cloud.rejected:5d} rejected, coverage = {frac:.4f} of the sphere"
          f"  (~1/{1 / frac:.1f})")

export_cloud(clouds[100], "csv", os.path.join(OUT, "theta100_cloud.csv"))
export_cloud(clouds[100], "ply", os.path.join(OUT, "theta100_cloud.ply"))
print(f"\nwrote {OUT}/theta100_cloud.csv and .ply")

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

fig, ax = plt.subplots(figsize=(8, 4.5))
for theta_deg, cloud in clouds.items():
    pts = np.array([s.pointing for s in cloud.samples])
    lon = np.degrees(np.arctan2(pts[:, 1], pts[:, 0]))
    lat = np.degrees(np.arcsin(np.clip(pts[:, 2], -1, 1)))
    ax.scatter(lon, lat, s=1, alpha=0.25, label=f"stuck at {theta_deg} deg")
ax.set_xlabel("pointing longitude (deg)")
ax.set_ylabel("pointing latitude (deg)")
ax.set_title("Pointing bands of the joint with one arm stuck")
ax.legend(markerscale=8, loc="lower right")
fig.tight_layout()
fig.savefig(os.path.join(OUT, "broken_arm_bands.png"), dpi=130)
print(f"wrote {OUT}/broken_arm_bands.png")
