import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canfield.joint import (
    JointError,
    JointParams,
    OutOfRangeError,
    ParamClass,
    Regime,
    WrongRegimeError,
    base_layout,
    boundary_theta,
    coincident_theta,
    d_bounds,
    d_of,
    p_bounds,
    param_class,
    regime,
    theta_max,
)

lengths = st.floats(0.5, 20, allow_nan=False, allow_infinity=False)


class TestBaseLayout:
    def test_rho_one(self):
        lay = base_layout(JointParams(ell=1, b=math.sqrt(3)))
        np.testing.assert_allclose(lay.hinges[0], [1, 0, 0], atol=1e-12)
        np.testing.assert_allclose(lay.hinges[1], [-0.5, math.sqrt(3) / 2, 0], atol=1e-12)
        np.testing.assert_allclose(lay.hinges[2], [-0.5, -math.sqrt(3) / 2, 0], atol=1e-12)

    def test_figure_scale_circumradius(self):
        assert JointParams(ell=6, b=4).circumradius == pytest.approx(4 / math.sqrt(3), abs=1e-12)
        assert JointParams(ell=6, b=4).circumradius == pytest.approx(2.3094010767585, abs=1e-10)

    @given(b=lengths, ell=lengths)
    @settings(max_examples=60, deadline=None)
    def test_equilateral_identities(self, b, ell):
        params = JointParams(ell=ell, b=b)
        lay = base_layout(params)
        rho = params.circumradius
        for i in range(3):
            assert abs(np.linalg.norm(lay.hinges[i] - lay.center) - rho) < 1e-12 * max(1, rho)
            # hinge axis tangent: orthogonal to the radius and to the normal
            assert abs(np.dot(lay.hinge_axes[i], lay.hinges[i] - lay.center)) < 1e-12 * max(1, rho)
            assert abs(np.dot(lay.hinge_axes[i], lay.normal)) < 1e-12
            # rotation plane contains hinge, origin and the +z direction
            assert abs(lay.rotation_planes[i].signed_distance(lay.center)) < 1e-12 * max(1, rho)
            assert abs(np.dot(lay.rotation_planes[i].normal, lay.normal)) < 1e-12
        for i, j in ((0, 1), (0, 2), (1, 2)):
            assert abs(np.linalg.norm(lay.hinges[i] - lay.hinges[j]) - b) < 1e-12 * max(1, b)


class TestDerivedQuantities:
    def test_d_endpoints(self):
        params = JointParams(ell=6, b=4)
        assert d_of(0.0, params) == pytest.approx(params.circumradius, abs=1e-15)
        assert d_of(6.0, params) == pytest.approx(math.sqrt(36 + 16 / 3), abs=1e-15)

    def test_d_figure_value(self):
        assert d_of(5.8, JointParams(ell=6, b=4)) == pytest.approx(
            math.sqrt(5.8 ** 2 + 16 / 3), abs=1e-15
        )
        assert d_of(5.8, JointParams(ell=6, b=4)) == pytest.approx(6.242862, abs=1e-6)

    def test_d_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            d_of(-0.5, JointParams(ell=6, b=4))
        with pytest.raises(OutOfRangeError):
            d_of(6.5, JointParams(ell=6, b=4))

    def test_p_bounds(self):
        assert p_bounds(JointParams(ell=6, b=4)) == (0.0, 6.0)
        assert p_bounds(JointParams(ell=7, b=4)) == (0.0, 7.0)
        assert p_bounds(JointParams(ell=1, b=1)) == (0.0, 1.0)

    def test_d_bounds_values(self):
        lo, hi = d_bounds(JointParams(ell=1, b=math.sqrt(3)))
        assert lo == pytest.approx(1.0, abs=1e-12)
        assert hi == pytest.approx(math.sqrt(2), abs=1e-12)
        lo, hi = d_bounds(JointParams(ell=6, b=4))
        assert (lo, hi) == pytest.approx((2.309401076758503, 6.429100507328637), abs=1e-9)
        lo, hi = d_bounds(JointParams(ell=7, b=4))
        assert (lo, hi) == pytest.approx((2.309401076758503, 7.371114795831994), abs=1e-9)

    @given(b=lengths, ell=lengths, frac=st.floats(0, 1))
    @settings(max_examples=100, deadline=None)
    def test_d_within_bounds_and_monotone(self, b, ell, frac):
        params = JointParams(ell=ell, b=b)
        lo, hi = d_bounds(params)
        p = frac * ell
        assert lo - 1e-12 <= d_of(p, params) <= hi + 1e-12
        if p + 1e-3 <= ell:
            assert d_of(p + 1e-3, params) > d_of(p, params)


class TestThetaMax:
    def test_p_zero_gives_pi(self):
        assert theta_max(0.0, JointParams(ell=6, b=4)) == pytest.approx(math.pi, abs=1e-15)

    def test_figure_value(self):
        params = JointParams(ell=6, b=4)
        d = math.sqrt(5.8 ** 2 + 16 / 3)
        assert theta_max(5.8, params) == pytest.approx(math.pi + math.asin(5.8 / d), abs=1e-15)
        assert math.degrees(theta_max(5.8, params)) == pytest.approx(248.2889079888746, abs=1e-9)

    def test_limit_toward_three_half_pi(self):
        # p -> ell with b -> 0 pushes arcsin(p/d) toward pi/2.
        assert theta_max(1.0, JointParams(ell=1, b=1e-6)) == pytest.approx(
            1.5 * math.pi, abs=1e-6
        )

    @given(b=lengths, ell=lengths, frac=st.floats(0, 1))
    @settings(max_examples=60, deadline=None)
    def test_range(self, b, ell, frac):
        t = theta_max(frac * ell, JointParams(ell=ell, b=b))
        assert math.pi <= t < 1.5 * math.pi


class TestRegimes:
    def test_examples(self):
        assert regime(0.0, JointParams(ell=2, b=math.sqrt(3))) is Regime.D_LESS_L
        assert regime(0.0, JointParams(ell=1, b=math.sqrt(3))) is Regime.D_EQUAL_L
        assert regime(5.8, JointParams(ell=6, b=4)) is Regime.D_GREATER_L

    def test_param_class(self):
        assert param_class(JointParams(ell=6, b=4)) is ParamClass.RHO_LESS_L
        assert param_class(JointParams(ell=1, b=math.sqrt(3))) is ParamClass.RHO_EQUAL_L
        assert param_class(JointParams(ell=1, b=10)) is ParamClass.RHO_GREATER_L

    @given(b=lengths, ell=lengths, frac=st.floats(0, 1))
    @settings(max_examples=100, deadline=None)
    def test_rho_greater_forces_d_greater(self, b, ell, frac):
        params = JointParams(ell=ell, b=b)
        if param_class(params) is ParamClass.RHO_GREATER_L:
            assert regime(frac * ell, params) is Regime.D_GREATER_L


class TestBoundaryTheta:
    def test_d_equal_l_continuity(self):
        # At d = ell the ell/d arccos vanishes and only arccos(b/(d sqrt 3)) is left.
        params = JointParams(ell=math.sqrt(2), b=math.sqrt(3))
        bt = boundary_theta(1.0, params)  # d(1) = sqrt(2) = ell
        assert bt == pytest.approx(math.acos(math.sqrt(3) / (math.sqrt(2) * math.sqrt(3))), abs=1e-9)

    def test_figure_value(self):
        params = JointParams(ell=6, b=4)
        d = math.sqrt(5.8 ** 2 + 16 / 3)
        expect = math.acos(4 / (d * math.sqrt(3))) + math.acos(6 / d)
        assert boundary_theta(5.8, params) == pytest.approx(expect, abs=1e-15)

    def test_wrong_regime(self):
        with pytest.raises(WrongRegimeError):
            boundary_theta(0.1, JointParams(ell=6, b=4))  # d(0.1) ~ 2.31 < 6


class TestCoincidentTheta:
    def test_p_zero(self):
        assert coincident_theta(0.0, JointParams(ell=1, b=math.sqrt(3))) == pytest.approx(0.0)

    def test_sqrt2_case(self):
        # b = sqrt(3), ell = sqrt(2), p = 1: d = sqrt(1 + 1) = sqrt(2) = ell.
        assert coincident_theta(1.0, JointParams(ell=math.sqrt(2), b=math.sqrt(3))) == pytest.approx(
            math.pi / 4, abs=1e-12
        )

    def test_wrong_regime(self):
        with pytest.raises(WrongRegimeError):
            coincident_theta(1.0, JointParams(ell=6, b=4))

    def test_agrees_with_boundary_at_d_equal_l(self):
        # When d = ell: sin(theta) = p/d and cos(theta) = b/(d sqrt 3) are the
        # same angle because (p^2 + b^2/3)/d^2 = 1.
        params = JointParams(ell=math.sqrt(2), b=math.sqrt(3))
        assert coincident_theta(1.0, params) == pytest.approx(boundary_theta(1.0, params), abs=1e-12)


class TestParamsJson:
    def test_round_trip(self):
        params = JointParams(ell=6.5, b=4.25)
        assert JointParams.from_json(params.to_json()) == params

    def test_unknown_keys_rejected(self):
        with pytest.raises(JointError):
            JointParams.from_json(json.dumps({"ell": 1, "b": 1, "extra": 2}))

    def test_missing_keys_rejected(self):
        with pytest.raises(JointError):
            JointParams.from_json(json.dumps({"ell": 1}))

    def test_non_numeric_rejected(self):
        with pytest.raises(JointError):
            JointParams.from_json(json.dumps({"ell": "six", "b": 4}))
        with pytest.raises(JointError):
            JointParams.from_json(json.dumps({"ell": True, "b": 4}))

    def test_nonpositive_rejected(self):
        with pytest.raises(JointError):
            JointParams(ell=-1, b=4)
        with pytest.raises(JointError):
            JointParams(ell=6, b=0)
