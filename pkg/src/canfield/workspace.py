"""Broken-arm workspace sweeps: fix the base angle, scan (p, phi), export clouds.

A broken arm is an actuator stuck at one base angle. Sweeping the remaining
two controls over a grid and keeping every configuration that reconstructs
traces out the reachable pointing directions, the bands whose spherical
coverage shrinks as the stuck angle grows. Clouds are deterministic: fixed
grid order (p-major, then phi, then branch), fixed float formatting, so
identical invocations export identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .arm import ControlTriple
from .full_joint import ALL_BRANCH_IDS, BranchId, grid_eval
from .geometry import DEFAULT_TOL, Vec3, as_vec3
from .joint import JointError, JointParams, p_bounds

FLOAT_FMT = "{:.17g}"


class WorkspaceError(JointError):
    """Sweep or export precondition failures."""


class EmptyCloudError(WorkspaceError):
    """An estimator was asked for on a cloud with no samples."""


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for a broken-arm sweep.

    ``p_range``/``phi_range`` default to the full legal intervals; an explicit
    range is sampled inclusively, the default phi range at cell centers so the
    illegal endpoints +-pi are never touched. ``branch`` restricts the sweep
    to one branch; ``None`` keeps all four.
    """

    theta_fixed: float
    p_samples: int
    phi_samples: int
    p_range: Optional[Tuple[float, float]] = None
    phi_range: Optional[Tuple[float, float]] = None
    branch: Optional[BranchId] = None

    def validate(self, params: JointParams) -> None:
        if self.p_samples < 2 or self.phi_samples < 2:
            raise WorkspaceError("sample counts must be >= 2")
        if not (0.0 <= self.theta_fixed < 2.0 * math.pi):
            raise WorkspaceError(f"theta_fixed={self.theta_fixed!r} outside [0, 2*pi)")
        lo, hi = p_bounds(params)
        if self.p_range is not None:
            a, b = self.p_range
            if not (lo <= a < b <= hi):
                raise WorkspaceError(f"p_range {self.p_range} outside [{lo:g}, {hi:g}]")
        if self.phi_range is not None:
            a, b = self.phi_range
            if not (-math.pi < a < b < math.pi):
                raise WorkspaceError(f"phi_range {self.phi_range} outside (-pi, pi)")

    def grids(self, params: JointParams) -> Tuple[np.ndarray, np.ndarray]:
        lo, hi = p_bounds(params)
        if self.p_range is not None:
            lo, hi = self.p_range
        p_vals = np.linspace(lo, hi, self.p_samples)
        if self.phi_range is not None:
            phi_vals = np.linspace(self.phi_range[0], self.phi_range[1], self.phi_samples)
        else:
            step = 2.0 * math.pi / self.phi_samples
            phi_vals = -math.pi + (np.arange(self.phi_samples) + 0.5) * step
        return p_vals, phi_vals


@dataclass(frozen=True)
class CloudSample:
    control: ControlTriple
    branch: BranchId
    distal_center: Vec3
    pointing: Vec3


@dataclass(frozen=True)
class WorkspaceCloud:
    params: JointParams
    spec: SweepSpec
    samples: Tuple[CloudSample, ...]
    rejected: int

    @property
    def attempted(self) -> int:
        return len(self.samples) + self.rejected


def sweep_broken_arm(
    params: JointParams, spec: SweepSpec, tol: float = DEFAULT_TOL
) -> WorkspaceCloud:
    """Evaluate the reconstruction over the grid and collect valid poses.

    Every attempted (cell, branch) pair lands either in ``samples`` or in the
    ``rejected`` count, so ``len(samples) + rejected`` is exactly the number of
    attempts. An all-rejected sweep returns an empty cloud (callers decide how
    loud to be about it).
    """
    spec.validate(params)
    p_vals, phi_vals = spec.grids(params)
    ge = grid_eval(params, spec.theta_fixed, p_vals, phi_vals, tol)
    branches = (spec.branch,) if spec.branch is not None else ALL_BRANCH_IDS

    samples: List[CloudSample] = []
    rejected = 0
    for i, p in enumerate(p_vals):
        for j, phi in enumerate(phi_vals):
            if not ge.cell_valid[i, j]:
                rejected += len(branches)
                continue
            for branch in branches:
                samples.append(
                    CloudSample(
                        control=ControlTriple(spec.theta_fixed, float(p), float(phi)),
                        branch=branch,
                        distal_center=ge.center[i, j].copy(),
                        pointing=ge.normal[i, j].copy(),
                    )
                )
    return WorkspaceCloud(params=params, spec=spec, samples=tuple(samples), rejected=rejected)


@dataclass(frozen=True)
class CoverageReport:
    """Solid-angle coverage estimate plus the estimator's parameters."""

    fraction: float
    bins_requested: int
    bands: int
    cells_per_band: int

    @property
    def cells(self) -> int:
        return self.bands * self.cells_per_band

    def to_dict(self) -> dict:
        return {
            "estimator": "equal-area latitude bands with uniform longitude splits",
            "fraction": self.fraction,
            "bins_requested": self.bins_requested,
            "bands": self.bands,
            "cells_per_band": self.cells_per_band,
            "cells": self.cells,
        }


def coverage(cloud: WorkspaceCloud, bins: int = 1024) -> CoverageReport:
    """Fraction of the unit sphere hit by the cloud's pointing directions.

    Deterministic equal-area binning: latitude bands of equal z-extent, each
    split into the same number of longitude cells (every cell then subtends
    the same solid angle). The fraction is occupied cells over total cells.
    """
    if bins < 100:
        raise WorkspaceError(f"bins must be >= 100, got {bins}")
    if not cloud.samples:
        raise EmptyCloudError("cannot estimate coverage of an empty cloud")
    bands = max(1, int(round(math.sqrt(bins / 2.0))))
    per_band = int(math.ceil(bins / bands))
    pts = np.array([s.pointing for s in cloud.samples])
    z = np.clip(pts[:, 2], -1.0, 1.0)
    band_idx = np.minimum(((z + 1.0) / 2.0 * bands).astype(int), bands - 1)
    lon = np.arctan2(pts[:, 1], pts[:, 0])
    lon_idx = np.minimum(((lon + math.pi) / (2.0 * math.pi) * per_band).astype(int), per_band - 1)
    occupied = len(set(zip(band_idx.tolist(), lon_idx.tolist())))
    return CoverageReport(
        fraction=occupied / float(bands * per_band),
        bins_requested=bins,
        bands=bands,
        cells_per_band=per_band,
    )


def solid_angle_fraction(cloud: WorkspaceCloud, bins: int = 1024) -> float:
    return coverage(cloud, bins).fraction


# ---------------------------------------------------------------------------
# Export / import
# ---------------------------------------------------------------------------

_FORMATS = ("csv", "ply", "json")


def _fmt(x: float) -> str:
    return FLOAT_FMT.format(float(x))


def _spec_to_dict(spec: SweepSpec) -> dict:
    return {
        "theta_fixed": spec.theta_fixed,
        "p_samples": spec.p_samples,
        "phi_samples": spec.phi_samples,
        "p_range": list(spec.p_range) if spec.p_range else None,
        "phi_range": list(spec.phi_range) if spec.phi_range else None,
        "branch": spec.branch.label if spec.branch else None,
    }


def _spec_from_dict(doc: dict) -> SweepSpec:
    return SweepSpec(
        theta_fixed=float(doc["theta_fixed"]),
        p_samples=int(doc["p_samples"]),
        phi_samples=int(doc["phi_samples"]),
        p_range=tuple(doc["p_range"]) if doc.get("p_range") else None,
        phi_range=tuple(doc["phi_range"]) if doc.get("phi_range") else None,
        branch=BranchId.from_label(doc["branch"]) if doc.get("branch") else None,
    )


def cloud_to_dict(cloud: WorkspaceCloud) -> dict:
    return {
        "params": {"ell": cloud.params.ell, "b": cloud.params.b},
        "spec": _spec_to_dict(cloud.spec),
        "rejected": cloud.rejected,
        "samples": [
            {
                "theta": s.control.theta,
                "p": s.control.p,
                "phi": s.control.phi,
                "branch": s.branch.label,
                "center": s.distal_center.tolist(),
                "pointing": s.pointing.tolist(),
            }
            for s in cloud.samples
        ],
    }


def cloud_from_dict(doc: dict) -> WorkspaceCloud:
    params = JointParams(**doc["params"])
    samples = tuple(
        CloudSample(
            control=ControlTriple(float(s["theta"]), float(s["p"]), float(s["phi"])),
            branch=BranchId.from_label(s["branch"]),
            distal_center=as_vec3(s["center"]),
            pointing=as_vec3(s["pointing"]),
        )
        for s in doc["samples"]
    )
    return WorkspaceCloud(
        params=params,
        spec=_spec_from_dict(doc["spec"]),
        samples=samples,
        rejected=int(doc["rejected"]),
    )


def _csv_lines(cloud: WorkspaceCloud) -> List[str]:
    lines = ["theta,p,phi,branch,cx,cy,cz,nx,ny,nz"]
    for s in cloud.samples:
        fields = [
            _fmt(s.control.theta),
            _fmt(s.control.p),
            _fmt(s.control.phi),
            s.branch.label,
            *(_fmt(v) for v in s.distal_center),
            *(_fmt(v) for v in s.pointing),
        ]
        lines.append(",".join(fields))
    return lines


def _ply_lines(cloud: WorkspaceCloud) -> List[str]:
    lines = [
        "ply",
        "format ascii 1.0",
        "comment broken-arm workspace cloud (distal-plate centers with pointing normals)",
        f"element vertex {len(cloud.samples)}",
        "property double x",
        "property double y",
        "property double z",
        "property double nx",
        "property double ny",
        "property double nz",
        "end_header",
    ]
    for s in cloud.samples:
        lines.append(
            " ".join([*(_fmt(v) for v in s.distal_center), *(_fmt(v) for v in s.pointing)])
        )
    return lines


def export_cloud(cloud: WorkspaceCloud, fmt: str, path: str) -> None:
    """Write the cloud to ``path`` as CSV, PLY (ascii) or JSON.

    Output is byte-stable for identical inputs: fixed ordering and 17
    significant digits everywhere.
    """
    fmt = fmt.lower()
    if fmt not in _FORMATS:
        raise WorkspaceError(f"format must be one of {_FORMATS}, got {fmt!r}")
    if fmt == "csv":
        text = "\n".join(_csv_lines(cloud)) + "\n"
    elif fmt == "ply":
        text = "\n".join(_ply_lines(cloud)) + "\n"
    else:
        text = json.dumps(cloud_to_dict(cloud), indent=2, sort_keys=True) + "\n"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)


def import_cloud_json(path: str) -> WorkspaceCloud:
    with open(path, "r", encoding="ascii") as fh:
        return cloud_from_dict(json.load(fh))


def read_cloud_csv(path: str) -> List[Dict[str, object]]:
    """Parse an exported CSV back into per-sample dicts (for round-trip checks)."""
    import csv as _csv

    out: List[Dict[str, object]] = []
    with open(path, "r", encoding="ascii", newline="") as fh:
        for row in _csv.DictReader(fh):
            out.append(
                {
                    "theta": float(row["theta"]),
                    "p": float(row["p"]),
                    "phi": float(row["phi"]),
                    "branch": BranchId.from_label(row["branch"]),
                    "center": np.array([float(row["cx"]), float(row["cy"]), float(row["cz"])]),
                    "pointing": np.array([float(row["nx"]), float(row["ny"]), float(row["nz"])]),
                }
            )
    return out
