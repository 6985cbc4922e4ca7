"""Stateless HTTP facade over the solver and sweep operations.

Degrees on the wire, radians inside. Domain invalidity is data: a control
triple the joint cannot realize returns 200 with ``valid: false`` and the
per-arm diagnostics, never an HTTP error — probing the validity boundary is
the main thing clients do. HTTP errors are reserved for malformed requests
(400) and oversized sweep grids (413).
"""

from __future__ import annotations

import argparse
import math
from typing import List, Optional, Tuple

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .arm import AmbiguousSphereError, ControlTriple, NoIntersectionError
from .full_joint import (
    ALL_BRANCH_IDS,
    BranchId,
    DegenerateFoldError,
    reconstruct,
    solve_fk,
)
from .geometry import GeometryError
from .joint import JointError, JointParams, d_of, p_bounds, theta_max
from .workspace import SweepSpec, cloud_to_dict, coverage, sweep_broken_arm

DEG = math.pi / 180.0
DEFAULT_GRID_CAP = (250, 250)

_BRANCH_LABELS = tuple(b.label for b in ALL_BRANCH_IDS)


class SolveRequest(BaseModel):
    ell: float = Field(gt=0)
    b: float = Field(gt=0)
    theta_deg: float
    p: float
    phi_deg: float
    branch: Optional[str] = None


class SweepRequest(BaseModel):
    ell: float = Field(gt=0)
    b: float = Field(gt=0)
    theta_deg: float
    p_samples: int = Field(ge=2)
    phi_samples: int = Field(ge=2)
    p_range: Optional[Tuple[float, float]] = None
    phi_range_deg: Optional[Tuple[float, float]] = None
    branch: Optional[str] = None
    bins: int = Field(default=1024, ge=100)


class FkRequest(BaseModel):
    ell: float = Field(gt=0)
    b: float = Field(gt=0)
    theta1_deg: float
    theta2_deg: float
    theta3_deg: float


def _wrap_deg(angle_deg: float) -> float:
    return (angle_deg % 360.0) * DEG


def _parse_branch(label: Optional[str]) -> Optional[BranchId]:
    if label is None:
        return None
    if label not in _BRANCH_LABELS:
        raise HTTPException(status_code=400, detail=f"branch must be one of {_BRANCH_LABELS}")
    return BranchId.from_label(label)


def create_app(
    grid_cap: Tuple[int, int] = DEFAULT_GRID_CAP, cors_origin: Optional[str] = None
) -> FastAPI:
    app = FastAPI(title="canfield-kinematics service", version="0.1.0")

    if cors_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_400(request: Request, exc: RequestValidationError):
        # Malformed input is a client error, reported field by field.
        detail = [
            {"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.post("/api/solve")
    def api_solve(req: SolveRequest):
        params = JointParams(ell=req.ell, b=req.b)
        ctrl = ControlTriple(_wrap_deg(req.theta_deg), req.p, req.phi_deg * DEG)
        try:
            ctrl.validate(params)
        except JointError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        branch = _parse_branch(req.branch)
        bounds = {
            "p_bounds": list(p_bounds(params)),
            "theta_max_deg": theta_max(ctrl.p, params) / DEG,
        }
        try:
            report = reconstruct(params, ctrl)
        except (NoIntersectionError, AmbiguousSphereError, DegenerateFoldError, GeometryError) as exc:
            return {
                "valid": False,
                "configurations": [],
                "failures": [str(exc)],
                "bounds": bounds,
            }
        configs = report.configurations
        if branch is not None:
            configs = tuple(c for c in configs if c.branch == branch)
        return {
            "valid": bool(configs),
            "configurations": [
                {
                    "branch": c.branch.label,
                    "thetas_deg": [t / DEG for t in c.thetas],
                    "config": c.to_dict(),
                }
                for c in configs
            ],
            "failures": list(report.diagnostics),
            "arm_status": [s.value for s in report.arm_status],
            "bounds": bounds,
        }

    @app.post("/api/sweep")
    def api_sweep(req: SweepRequest):
        if req.p_samples > grid_cap[0] or req.phi_samples > grid_cap[1]:
            raise HTTPException(
                status_code=413,
                detail=f"grid {req.p_samples}x{req.phi_samples} exceeds cap "
                f"{grid_cap[0]}x{grid_cap[1]}",
            )
        params = JointParams(ell=req.ell, b=req.b)
        spec = SweepSpec(
            theta_fixed=_wrap_deg(req.theta_deg),
            p_samples=req.p_samples,
            phi_samples=req.phi_samples,
            p_range=req.p_range,
            phi_range=tuple(v * DEG for v in req.phi_range_deg) if req.phi_range_deg else None,
            branch=_parse_branch(req.branch),
        )
        try:
            spec.validate(params)
        except JointError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        cloud = sweep_broken_arm(params, spec)
        doc = cloud_to_dict(cloud)
        doc["coverage"] = coverage(cloud, req.bins).to_dict() if cloud.samples else None
        doc["empty"] = not cloud.samples
        return doc

    @app.post("/api/fk")
    def api_fk(req: FkRequest):
        params = JointParams(ell=req.ell, b=req.b)
        targets = (
            _wrap_deg(req.theta1_deg),
            _wrap_deg(req.theta2_deg),
            _wrap_deg(req.theta3_deg),
        )
        fold = False
        try:
            solutions = solve_fk(params, targets)
        except DegenerateFoldError:
            solutions = []
            fold = True
        return {
            "solutions": [
                {"p": s.control.p, "phi_deg": s.control.phi / DEG, "branch": s.branch.label}
                for s in solutions
            ],
            "degenerate_fold": fold,
        }

    @app.get("/api/bounds")
    def api_bounds(
        ell: float = Query(gt=0), b: float = Query(gt=0), p: Optional[float] = Query(default=None)
    ):
        params = JointParams(ell=ell, b=b)
        lo, hi = p_bounds(params)
        doc = {"p_bounds": [lo, hi]}
        if p is not None:
            try:
                doc["d"] = d_of(p, params)
                doc["theta_max_deg"] = theta_max(p, params) / DEG
            except JointError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
        return doc

    return app


def main(argv: Optional[List[str]] = None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(prog="canfield-serve", description=__doc__)
    parser.add_argument("--listen", default="127.0.0.1:8787", help="host:port to bind")
    parser.add_argument("--cors-origin", default=None, help="allowed CORS origin for the UI")
    parser.add_argument("--grid-cap", type=int, default=250, help="max samples per sweep axis")
    args = parser.parse_args(argv)
    host, _, port = args.listen.rpartition(":")
    app = create_app(grid_cap=(args.grid_cap, args.grid_cap), cors_origin=args.cors_origin)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


if __name__ == "__main__":
    import sys

    sys.exit(main())
