import math

import numpy as np
import pytest

from canfield.arm import (
    AmbiguousSphereError,
    ControlTriple,
    NoIntersectionError,
    NotOnCircleError,
    PhiOutOfRangeError,
    PreimageKind,
    UnreachableError,
    ball_joint_position,
    coincident_selector,
    forward_arm,
    intersection_circle,
    inverse_arm,
    phi_of_point,
)
from canfield.geometry import IntersectionKind
from canfield.joint import (
    JointParams,
    OutOfRangeError,
    WrongRegimeError,
    boundary_theta,
    d_of,
    theta_max,
)

from conftest import random_params, sample_valid_control

DEG = math.pi / 180.0
FIG = JointParams(ell=6, b=4)  # the validity-dichotomy scale used throughout


def _independent_forward(params, theta, p, phi):
    """Oracle for the forward map, avoiding the production shortcuts.

    Circle of distal-hinge candidates from the two sphere equations (radical
    reduction redone here inline), phi = 0 anchor located by dense argmax of
    the distance to the base hinge, rotation done by explicit Rodrigues.
    """
    rho = params.circumradius
    ell = params.ell
    b1 = np.array([rho, 0.0, 0.0])
    ball = np.array([rho - ell * math.cos(theta), 0.0, ell * math.sin(theta)])
    c = np.array([0.0, 0.0, p])
    d = d_of(p, params)
    u = c - ball
    dist = np.linalg.norm(u)
    u = u / dist
    along = (dist ** 2 + ell ** 2 - d ** 2) / (2 * dist)
    radius = math.sqrt(ell ** 2 - along ** 2)
    center = ball + along * u
    # arbitrary in-plane basis
    seed = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(u, seed)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(u, e1)
    ts = np.linspace(0, 2 * math.pi, 2_000_001)
    pts = center + radius * (np.cos(ts)[:, None] * e1 + np.sin(ts)[:, None] * e2)
    far = pts[np.argmax(np.linalg.norm(pts - b1, axis=1))]
    v = far - center
    rotated = (
        v * math.cos(phi)
        + np.cross(u, v) * math.sin(phi)
        + u * np.dot(u, v) * (1 - math.cos(phi))
    )
    return center + rotated


class TestBallJoint:
    def test_flat_outward(self):
        np.testing.assert_allclose(
            ball_joint_position(FIG, math.pi), [FIG.circumradius + 6, 0, 0], atol=1e-12
        )

    def test_straight_up(self):
        np.testing.assert_allclose(
            ball_joint_position(FIG, math.pi / 2), [FIG.circumradius, 0, 6], atol=1e-12
        )

    def test_150_degrees(self):
        # inward is -x, so cos(150deg) * inward contributes +ell*sqrt(3)/2 on x.
        np.testing.assert_allclose(
            ball_joint_position(FIG, 150 * DEG),
            [FIG.circumradius + 6 * math.sqrt(3) / 2, 0, 3],
            atol=1e-12,
        )

    def test_range_check(self):
        with pytest.raises(OutOfRangeError):
            ball_joint_position(FIG, -0.1)
        with pytest.raises(OutOfRangeError):
            ball_joint_position(FIG, 2 * math.pi)


class TestIntersectionCircle:
    def test_point_at_p0_theta_pi(self):
        res = intersection_circle(FIG, math.pi, 0.0)
        assert res.kind is IntersectionKind.POINT
        np.testing.assert_allclose(res.point, [FIG.circumradius, 0, 0], atol=1e-9)

    def test_coincident_case(self):
        params = JointParams(ell=math.sqrt(2), b=math.sqrt(3))
        res = intersection_circle(params, math.pi / 4, 1.0)
        assert res.kind is IntersectionKind.COINCIDENT_SPHERES
        np.testing.assert_allclose(res.sphere.center, [0, 0, 1], atol=1e-12)

    def test_figure_circle_against_reduction_oracle(self):
        # Independent radical-line reduction of the two sphere equations.
        theta, p = 150 * DEG, 5.8
        res = intersection_circle(FIG, theta, p)
        assert res.kind is IntersectionKind.CIRCLE
        ball = ball_joint_position(FIG, theta)
        c = np.array([0, 0, p])
        d = d_of(p, FIG)
        dist = np.linalg.norm(c - ball)
        along = (dist ** 2 + 36 - d ** 2) / (2 * dist)
        np.testing.assert_allclose(
            res.circle.center, ball + along * (c - ball) / dist, atol=1e-9
        )
        assert res.circle.radius == pytest.approx(math.sqrt(36 - along ** 2), abs=1e-9)
        # every sampled circle point lies on both spheres
        e1, e2 = res.circle.basis()
        for t in np.linspace(0, 2 * math.pi, 64, endpoint=False):
            q = res.circle.center + res.circle.radius * (math.cos(t) * e1 + math.sin(t) * e2)
            assert abs(np.linalg.norm(q - ball) - 6) < 1e-8
            assert abs(np.linalg.norm(q - c) - d) < 1e-8

    def test_eq2_sharpness_sampled(self, rng):
        for _ in range(100):
            params = random_params(rng)
            p = float(rng.uniform(0.05, 0.98) * params.ell)
            tm = theta_max(p, params)
            assert not intersection_circle(params, tm - 1e-6, p).is_empty
            assert intersection_circle(params, tm + 1e-3, p).is_empty
            at_bound = intersection_circle(params, tm, p)
            assert at_bound.kind is IntersectionKind.POINT
            b1 = np.array([params.circumradius, 0, 0])
            assert np.linalg.norm(at_bound.point - b1) < 1e-9


class TestForwardArm:
    def test_phi_zero_in_rotation_plane(self, rng):
        for _ in range(20):
            params = random_params(rng)
            p = float(rng.uniform(0.1, 0.9) * params.ell)
            theta = float(rng.uniform(0.2, theta_max(p, params) - 0.1))
            sol = forward_arm(params, ControlTriple(theta, p, 0.0))
            assert abs(sol.distal_hinge[1]) < 1e-12
            # far side from the base hinge: at least as far as the circle center
            b1 = np.array([params.circumradius, 0, 0])
            res = intersection_circle(params, theta, p)
            assert np.linalg.norm(sol.distal_hinge - b1) >= np.linalg.norm(
                res.circle.center - b1
            )

    def test_point_case_forces_phi_zero(self):
        sol = forward_arm(FIG, ControlTriple(math.pi, 0.0, 0.0))
        np.testing.assert_allclose(sol.distal_hinge, [FIG.circumradius, 0, 0], atol=1e-9)
        with pytest.raises(PhiOutOfRangeError):
            forward_arm(FIG, ControlTriple(math.pi, 0.0, 0.3))

    def test_beyond_reach_raises(self):
        tm = theta_max(2.0, FIG)
        with pytest.raises(NoIntersectionError):
            forward_arm(FIG, ControlTriple(tm + 0.01, 2.0, 0.0))

    def test_coincident_raises_ambiguous(self):
        params = JointParams(ell=math.sqrt(2), b=math.sqrt(3))
        with pytest.raises(AmbiguousSphereError):
            forward_arm(params, ControlTriple(math.pi / 4, 1.0, 0.2))

    def test_phi_out_of_range(self):
        with pytest.raises(PhiOutOfRangeError):
            forward_arm(FIG, ControlTriple(2.0, 3.0, math.pi))

    def test_figure_point_against_independent_oracle(self):
        got = forward_arm(FIG, ControlTriple(150 * DEG, 5.8, 20 * DEG)).distal_hinge
        want = _independent_forward(FIG, 150 * DEG, 5.8, 20 * DEG)
        np.testing.assert_allclose(got, want, atol=1e-5)  # anchor from 2e6-point argmax

    def test_random_against_independent_oracle(self, rng):
        for _ in range(5):
            params = random_params(rng)
            ctrl, sol = sample_valid_control(params, rng)
            want = _independent_forward(params, ctrl.theta, ctrl.p, ctrl.phi)
            np.testing.assert_allclose(sol.distal_hinge, want, atol=1e-5)

    def test_bar_lengths(self, rng):
        for _ in range(200):
            params = random_params(rng)
            ctrl, sol = sample_valid_control(params, rng)
            b1 = np.array([params.circumradius, 0, 0])
            assert abs(np.linalg.norm(sol.ball_joint - b1) - params.ell) < 1e-9
            assert abs(np.linalg.norm(sol.distal_hinge - sol.ball_joint) - params.ell) < 1e-9
            c = np.array([0, 0, ctrl.p])
            assert abs(np.linalg.norm(sol.distal_hinge - c) - d_of(ctrl.p, params)) < 1e-9


class TestPhiOfPoint:
    def test_round_trip(self, rng):
        for _ in range(300):
            params = random_params(rng)
            ctrl, sol = sample_valid_control(params, rng)
            got = phi_of_point(params, ctrl.theta, ctrl.p, sol.distal_hinge)
            assert abs(got - ctrl.phi) < 1e-9

    def test_anchor_is_zero(self):
        sol = forward_arm(FIG, ControlTriple(2.0, 3.0, 0.0))
        assert phi_of_point(FIG, 2.0, 3.0, sol.distal_hinge) == pytest.approx(0.0, abs=1e-12)

    def test_near_base_hinge_is_near_pi(self):
        sol = forward_arm(FIG, ControlTriple(2.0, 3.0, math.pi - 1e-6))
        assert abs(phi_of_point(FIG, 2.0, 3.0, sol.distal_hinge)) > math.pi - 1e-5

    def test_not_on_circle(self):
        with pytest.raises(NotOnCircleError):
            phi_of_point(FIG, 2.0, 3.0, np.array([50.0, 50.0, 50.0]))


class TestCoincidentSelector:
    PARAMS = JointParams(ell=math.sqrt(2), b=math.sqrt(3))

    def test_pole_on_axis(self):
        q = coincident_selector(self.PARAMS, 1.0, 0.0, 0.0)
        np.testing.assert_allclose(q, [0, 0, 1 - math.sqrt(2)], atol=1e-12)

    def test_equator_in_xz(self):
        q = coincident_selector(self.PARAMS, 1.0, math.pi / 2, 0.0)
        np.testing.assert_allclose(q, [math.sqrt(2), 0, 1], atol=1e-12)

    def test_residuals_random(self, rng):
        theta = math.pi / 4  # lined-up angle for p = 1
        ball = ball_joint_position(self.PARAMS, theta)
        for _ in range(50):
            q = coincident_selector(
                self.PARAMS, 1.0, float(rng.uniform(0, math.pi)), float(rng.uniform(-math.pi, math.pi))
            )
            assert abs(np.linalg.norm(q - ball) - math.sqrt(2)) < 1e-9
            assert abs(np.linalg.norm(q - np.array([0, 0, 1])) - math.sqrt(2)) < 1e-9

    def test_wrong_regime(self):
        with pytest.raises(WrongRegimeError):
            coincident_selector(FIG, 3.0, 0.1, 0.1)


class TestInverseArm:
    def test_round_trip_contains_original(self, rng):
        for _ in range(300):
            params = random_params(rng)
            ctrl, sol = sample_valid_control(params, rng)
            pre = inverse_arm(params, sol.distal_hinge)
            assert pre.kind is PreimageKind.FINITE
            best = min(
                abs(s.theta - ctrl.theta) + abs(s.p - ctrl.p) + abs(s.phi - ctrl.phi)
                for s in pre.solutions
            )
            assert best < 1e-9

    def test_interior_count_two(self, rng):
        # d < ell regime: two base angles reach every off-plane point.
        n = 0
        while n < 80:
            ctrl, sol = sample_valid_control(FIG, rng, z_floor=0.05)
            if d_of(ctrl.p, FIG) >= FIG.ell:
                continue
            pre = inverse_arm(FIG, sol.distal_hinge)
            assert pre.count == 2
            n += 1

    def test_boundary_count_one(self, rng):
        # d > ell: points on the boundary circle have a unique configuration.
        wide = JointParams(ell=2, b=6)
        n = 0
        while n < 40:
            p = float(rng.uniform(0.2, 0.9 * wide.ell))
            bt = boundary_theta(p, wide)
            phi = float(rng.uniform(-2.8, 2.8))
            sol = forward_arm(wide, ControlTriple(bt, p, phi))
            if abs(sol.distal_hinge[2]) < 0.05:
                continue
            pre = inverse_arm(wide, sol.distal_hinge)
            assert pre.count == 1
            n += 1

    def test_boundary_circle_on_workspace_envelope(self):
        # At the boundary angle every circle point is at distance ell from the
        # ball-joint ring, and the far point (phi = 0) touches the 2*ell sphere.
        wide = JointParams(ell=2, b=6)
        p = 1.0
        bt = boundary_theta(p, wide)
        b1 = np.array([wide.circumradius, 0, 0])
        dists = []
        for phi in np.linspace(-3.0, 3.0, 41):
            h = forward_arm(wide, ControlTriple(bt, p, float(phi))).distal_hinge
            in_plane = math.hypot(h[0] - wide.circumradius, h[2])
            ring_dist = math.hypot(h[1], in_plane - wide.ell)
            assert abs(ring_dist - wide.ell) < 1e-9
            dists.append(np.linalg.norm(h - b1))
        assert max(dists) == pytest.approx(2 * wide.ell, abs=1e-9)
        phi0 = forward_arm(wide, ControlTriple(bt, p, 0.0)).distal_hinge
        assert np.linalg.norm(phi0 - b1) == pytest.approx(2 * wide.ell, abs=1e-9)

    def test_base_hinge_family(self):
        pre = inverse_arm(FIG, np.array([FIG.circumradius, 0, 0]))
        assert pre.kind is PreimageKind.INTERVAL_TIMES_CIRCLE
        assert pre.p_interval == (0.0, 6.0)

    def test_common_circle_family_over_p(self):
        ang = 2.0  # any other point of the base-plane circle of radius rho
        q = FIG.circumradius * np.array([math.cos(ang), math.sin(ang), 0.0])
        pre = inverse_arm(FIG, q)
        assert pre.kind is PreimageKind.FAMILY_OVER_P

    def test_base_plane_off_circle_unreachable(self):
        with pytest.raises(UnreachableError):
            inverse_arm(FIG, np.array([1.0, 0.0, 0.0]))

    def test_far_point_unreachable(self):
        with pytest.raises(UnreachableError):
            inverse_arm(FIG, np.array([50.0, 0.0, 3.0]))

    def test_recovered_plunge_formula(self, rng):
        # p = (|H|^2 - b^2/3) / (2 H_z), straight from the center-sphere identity.
        for _ in range(50):
            params = random_params(rng)
            ctrl, sol = sample_valid_control(params, rng, z_floor=0.05)
            h = sol.distal_hinge
            p_rec = (float(h @ h) - params.circumradius ** 2) / (2 * h[2])
            assert p_rec == pytest.approx(ctrl.p, abs=1e-9)


class TestControlTriple:
    def test_validate_ranges(self):
        with pytest.raises(OutOfRangeError):
            ControlTriple(-0.1, 3.0, 0.0).validate(FIG)
        with pytest.raises(OutOfRangeError):
            ControlTriple(1.0, 7.0, 0.0).validate(FIG)
        with pytest.raises(PhiOutOfRangeError):
            ControlTriple(1.0, 3.0, -math.pi).validate(FIG)
        ControlTriple(1.0, 3.0, 0.5).validate(FIG)

    def test_reachability(self):
        assert ControlTriple(math.pi, 3.0, 0.0).is_reachable(FIG)
        assert not ControlTriple(theta_max(3.0, FIG) + 0.01, 3.0, 0.0).is_reachable(FIG)
