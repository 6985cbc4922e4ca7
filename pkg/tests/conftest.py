import math

import numpy as np
import pytest

from canfield.arm import ControlTriple, forward_arm
from canfield.full_joint import reconstruct
from canfield.joint import JointParams, theta_max


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_params(rng, lo=2.0, hi=8.0) -> JointParams:
    return JointParams(ell=float(rng.uniform(lo, hi)), b=float(rng.uniform(lo, hi)))


def sample_valid_control(params, rng, z_floor=0.01, margin=0.05):
    """Rejection-sample a control triple whose arm solution is well-conditioned.

    Avoids the reach bound, the coincident-sphere angle and the base-plane
    sliver (|hinge z| < z_floor), where coordinate round trips lose digits to
    genuine ill-conditioning rather than to bugs.
    """
    while True:
        p = float(rng.uniform(margin * params.ell, (1.0 - margin) * params.ell))
        t_max = theta_max(p, params)
        theta = float(rng.uniform(0.1, t_max - margin))
        phi = float(rng.uniform(-math.pi * 0.95, math.pi * 0.95))
        ctrl = ControlTriple(theta, p, phi)
        try:
            sol = forward_arm(params, ctrl)
        except Exception:
            continue
        if abs(sol.distal_hinge[2]) < z_floor:
            continue
        return ctrl, sol


def sample_reconstructible(rng, z_floor=0.01):
    """A (params, ctrl, report) triple whose full joint reconstructs."""
    while True:
        params = random_params(rng)
        ctrl, _sol = sample_valid_control(params, rng, z_floor=z_floor)
        report = reconstruct(params, ctrl)
        if report.valid:
            return params, ctrl, report
