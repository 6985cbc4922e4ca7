import math

import numpy as np
import pytest

from canfield.arm import PreimageKind, UnreachableError
from canfield.planar import (
    cluster_angle_pairs,
    detect_circle_family,
    planar_bruteforce_matches,
    planar_fourbar_solve,
)


class TestAnalyticCounts:
    def test_boundary_point_single_straight_line(self):
        pre = planar_fourbar_solve((1.0, 0.0))
        assert pre.kind is PreimageKind.FINITE
        assert pre.count == 1
        cfg = pre.configurations[0]
        assert cfg.a1 == pytest.approx(0.0, abs=1e-12)
        assert cfg.a2 == pytest.approx(0.0, abs=1e-12)
        np.testing.assert_allclose(cfg.tip(), [1, 0], atol=1e-12)

    def test_interior_point_two(self):
        pre = planar_fourbar_solve((0.5, 0.0))
        assert pre.count == 2
        for cfg in pre.configurations:
            np.testing.assert_allclose(cfg.tip(), [0.5, 0], atol=1e-12)
        a1s = sorted(c.a1 for c in pre.configurations)
        assert a1s[0] != pytest.approx(a1s[1])  # genuinely distinct elbows

    def test_origin_circle_family(self):
        pre = planar_fourbar_solve((0.0, 0.0))
        assert pre.kind is PreimageKind.CIRCLE_FAMILY
        assert pre.count >= 32
        for cfg in pre.configurations:
            np.testing.assert_allclose(cfg.tip(), [0, 0], atol=1e-12)
            # folded pair: second piece opposes the first
            assert math.cos(cfg.a2 - cfg.a1) == pytest.approx(-1.0, abs=1e-12)

    def test_unreachable(self):
        with pytest.raises(UnreachableError):
            planar_fourbar_solve((1.2, 0.4))

    def test_random_interior_tips(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            r = rng.uniform(0.05, 0.95)
            ang = rng.uniform(0, 2 * math.pi)
            t = (r * math.cos(ang), r * math.sin(ang))
            pre = planar_fourbar_solve(t)
            assert pre.count == 2
            for cfg in pre.configurations:
                np.testing.assert_allclose(cfg.tip(), t, atol=1e-12)


class TestBruteForceAgreement:
    def test_boundary_single_cluster(self):
        # The root smears into an arc through the torus seam; single-linkage
        # must still see one solution.
        matches = planar_bruteforce_matches((1.0, 0.0))
        clusters = cluster_angle_pairs(matches, radius=0.1)
        assert len(clusters) == 1

    def test_interior_two_clusters(self):
        matches = planar_bruteforce_matches((0.5, 0.0))
        clusters = cluster_angle_pairs(matches, radius=0.1)
        assert len(clusters) == 2

    def test_origin_loop(self):
        matches = planar_bruteforce_matches((0.0, 0.0))
        beads, loop = detect_circle_family(matches)
        assert beads >= 32
        assert loop

    def test_finite_sets_do_not_loop(self):
        matches = planar_bruteforce_matches((0.5, 0.0))
        beads, loop = detect_circle_family(matches)
        assert beads <= 4 and not loop

    def test_brute_force_matches_are_solutions(self):
        t = np.array([0.4, 0.3])
        for a1, a2 in planar_bruteforce_matches(t, match_tol=1e-3):
            tip = 0.5 * np.array(
                [math.cos(a1) + math.cos(a2), math.sin(a1) + math.sin(a2)]
            )
            assert np.linalg.norm(tip - t) < 1e-3
