"""Planar two-piece-arm analogue, used as a counting oracle for the 3D machinery.

The linkage: a unit arm made of two half-length pieces, pinned at the origin,
with a fixed unit reference edge along +x to the anchor joint at (1, 0). The
workspace of the arm tip is the closed unit disk, and the preimage structure
mirrors the spatial arm's:

* boundary points (|target| = 1): one configuration, both pieces straight
  toward the target;
* interior points away from the origin: exactly two (elbow left / elbow
  right);
* the origin: a whole circle of configurations (the second piece folded back
  onto the first, at any angle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .arm import PreimageKind, UnreachableError
from .geometry import DEFAULT_TOL, wrap_angle

SEGMENT = 0.5  # each arm piece; the assembled arm has unit length
ANCHOR = np.array([1.0, 0.0])


@dataclass(frozen=True)
class PlanarConfiguration:
    """Absolute piece angles (a1, a2) plus the anchor bearing a3 of the target."""

    a1: float
    a2: float
    a3: float

    def tip(self) -> np.ndarray:
        return SEGMENT * np.array(
            [math.cos(self.a1) + math.cos(self.a2), math.sin(self.a1) + math.sin(self.a2)]
        )


@dataclass(frozen=True)
class PlanarPreimage:
    kind: PreimageKind
    configurations: Tuple[PlanarConfiguration, ...] = ()

    @property
    def count(self) -> int:
        return len(self.configurations)


def _anchor_bearing(target: np.ndarray, tol: float) -> float:
    v = target - ANCHOR
    if math.hypot(*v) <= tol:
        return math.pi  # continuity limit approaching the anchor along the axis
    return math.atan2(v[1], v[0])


def planar_fourbar_solve(target: Sequence[float], tol: float = DEFAULT_TOL) -> PlanarPreimage:
    """All configurations placing the arm tip at ``target``.

    Raises :class:`UnreachableError` outside the unit disk. The returned
    family for the origin carries 64 representative configurations (the folded
    pair at evenly spaced angles).
    """
    t = np.asarray(target, dtype=float)
    if t.shape != (2,):
        raise ValueError(f"target must be a 2-vector, got shape {t.shape}")
    r = float(np.hypot(*t))
    if r > 1.0 + tol:
        raise UnreachableError(f"target radius {r:g} exceeds the unit reach")
    a3 = _anchor_bearing(t, tol)

    if r <= tol:
        samples = tuple(
            PlanarConfiguration(a, wrap_angle(a + math.pi), a3)
            for a in np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
        )
        return PlanarPreimage(PreimageKind.CIRCLE_FAMILY, samples)

    heading = math.atan2(t[1], t[0])
    if r >= 1.0 - tol:
        cfg = PlanarConfiguration(wrap_angle(heading), wrap_angle(heading), a3)
        return PlanarPreimage(PreimageKind.FINITE, (cfg,))

    # Elbow solutions: the middle joint sits on both half-reach circles.
    spread = math.acos(max(-1.0, min(1.0, r)))  # half-angle at the origin, |V1| = 1/2
    out: List[PlanarConfiguration] = []
    for sign in (+1.0, -1.0):
        a1 = wrap_angle(heading + sign * spread)
        mid = SEGMENT * np.array([math.cos(a1), math.sin(a1)])
        a2 = wrap_angle(math.atan2(t[1] - mid[1], t[0] - mid[0]))
        out.append(PlanarConfiguration(a1, a2, a3))
    return PlanarPreimage(PreimageKind.FINITE, tuple(out))


def planar_bruteforce_matches(
    target: Sequence[float], samples: int = 400, match_tol: float = 5e-3
) -> np.ndarray:
    """Dense (a1, a2) grid points whose tip lands within ``match_tol`` of target.

    Returns an (N, 2) array of angle pairs; independent of the analytic
    solver, for cross-checking counts.
    """
    t = np.asarray(target, dtype=float)
    ang = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    c, s = np.cos(ang), np.sin(ang)
    x = SEGMENT * (c[:, None] + c[None, :]) - t[0]
    y = SEGMENT * (s[:, None] + s[None, :]) - t[1]
    hit = np.hypot(x, y) < match_tol
    i, j = np.nonzero(hit)
    return np.column_stack([ang[i], ang[j]])


def _torus_distance(a: np.ndarray, b: np.ndarray) -> float:
    d = np.abs(a - b)
    d = np.minimum(d, 2.0 * math.pi - d)
    return float(np.hypot(*d))


def cluster_angle_pairs(points: np.ndarray, radius: float) -> List[np.ndarray]:
    """Single-linkage clusters of angle pairs under the torus metric.

    Chains of near-solutions (the smeared root at a workspace-boundary target,
    for instance) stay one cluster even when they span more than ``radius``;
    distinct roots separated by more than ``radius`` stay distinct.
    """
    n = len(points)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if _torus_distance(points[i], points[j]) <= radius:
                parent[find(j)] = find(i)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(points[i])
    return [np.array(g) for g in groups.values()]


def bead_angle_pairs(points: np.ndarray, bead_radius: float) -> List[np.ndarray]:
    """Diameter-capped greedy beads: every point joins the first bead center
    within ``bead_radius``. A one-parameter solution family strings into many
    beads; an isolated root stays a single bead."""
    centers: List[np.ndarray] = []
    members: List[List[np.ndarray]] = []
    for pt in points:
        for k, c in enumerate(centers):
            if _torus_distance(pt, c) <= bead_radius:
                members[k].append(pt)
                break
        else:
            centers.append(pt)
            members.append([pt])
    return [np.array(m) for m in members]


def clusters_form_loop(clusters: List[np.ndarray], radius: float) -> bool:
    """True when the cluster centers chain into one closed loop: every cluster
    has at least two neighbours within 3*radius and the neighbour graph is
    connected. This is how the folded-pair family at the origin shows up.

    Fewer than 8 beads is a smeared isolated root, not a one-parameter family;
    the family loop beads into dozens.
    """
    n = len(clusters)
    if n < 8:
        return False
    # first member = the greedy seed; averaging would wrap badly at the seam
    centers = [c[0] for c in clusters]
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if _torus_distance(centers[i], centers[j]) <= 3.0 * radius:
                adj[i].append(j)
                adj[j].append(i)
    if any(len(a) < 2 for a in adj):
        return False
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def detect_circle_family(points: np.ndarray, bead_radius: float = 0.12) -> Tuple[int, bool]:
    """Bead the matched points and report (bead count, beads form a closed loop)."""
    beads = bead_angle_pairs(points, bead_radius)
    return len(beads), clusters_form_loop(beads, bead_radius)
