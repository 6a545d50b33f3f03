"""HTTP service exposing mesh generation, dual metrics, and verification.

Stateless compute endpoints: every request carries the mesh document and every
response is a plain JSON payload, so results are reproducible and clients can
be thin. The CLI mounts this app in-process by default and talks to the same
API a remote deployment would serve.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .algebraic import directed_area_field
from .fileio import MeshFormatError, dual_to_dict, mesh_from_dict, mesh_to_dict
from .generators import CANONICAL_NAMES, canonical_mesh, kuhn_grid
from .mesh import MeshValidationError, Triangulation
from .verification import verify_mesh

app = FastAPI(title="median-dual mesh metrics", version=__version__)


class MeshModel(BaseModel):
    dimension: int
    points: list[list[float]]
    cells: list[list[int]]


class GenerateRequest(BaseModel):
    dimension: int | None = None
    cells_per_axis: int | None = None
    perturb_amplitude: float = 0.0
    seed: int = 0
    canonical: str | None = Field(
        default=None, description=f"one of {', '.join(CANONICAL_NAMES)}"
    )


class ValidateResponse(BaseModel):
    valid: bool
    diagnostics: list[str]


class InfoResponse(BaseModel):
    dimension: int
    points: int
    cells: int
    edges: int
    interior_facets: int
    boundary_facets: int


class DualRequest(BaseModel):
    mesh: MeshModel
    boundary_correction: bool = True


class DirectedAreaEntry(BaseModel):
    edge: list[int]
    n: list[float]


class DualMeta(BaseModel):
    factor: float
    mode: str
    boundary_correction: bool


class DualResponse(BaseModel):
    dimension: int
    volumes: list[float]
    directed_areas: list[DirectedAreaEntry]
    meta: DualMeta


class VerifyRequest(BaseModel):
    mesh: MeshModel
    boundary_coefficient: float | None = None
    paper_coefficient: bool = False


class ReportModel(BaseModel):
    dimension: int
    mode: str
    closure_max: float
    closure_max_paper: float
    field_max_rel_err: float
    volume_max_rel_err: float
    conservation_deficit: float
    total_volume: float
    identity_first_line_max_rel_err: float
    identity_edge_field_interior_max_rel_err: float
    identity_edge_field_boundary_max_rel_err: float
    closure_gates_verdict: bool
    coefficients: dict[str, float]
    tolerances: dict[str, float]
    checks: dict[str, bool]
    verdict: str


def _build(mesh: MeshModel) -> Triangulation:
    try:
        return mesh_from_dict(mesh.model_dump())
    except (MeshFormatError, MeshValidationError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/api/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/api/generate", response_model=MeshModel)
def generate(request: GenerateRequest):
    try:
        if request.canonical is not None:
            tri = canonical_mesh(request.canonical)
        elif request.dimension is not None and request.cells_per_axis is not None:
            tri = kuhn_grid(
                request.dimension,
                request.cells_per_axis,
                request.perturb_amplitude,
                request.seed,
            )
        else:
            raise ValueError(
                "specify either canonical or both dimension and cells_per_axis"
            )
    except (ValueError, MeshValidationError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return mesh_to_dict(tri)


@app.post("/api/validate", response_model=ValidateResponse)
def validate(mesh: MeshModel):
    try:
        _ = mesh_from_dict(mesh.model_dump())
    except (MeshFormatError, MeshValidationError) as exc:
        return {"valid": False, "diagnostics": [str(exc)]}
    return {"valid": True, "diagnostics": []}


@app.post("/api/info", response_model=InfoResponse)
def info(mesh: MeshModel):
    tri = _build(mesh)
    return {
        "dimension": tri.dimension,
        "points": tri.num_points,
        "cells": tri.num_cells,
        "edges": tri.num_edges,
        "interior_facets": len(tri.interior_facets),
        "boundary_facets": len(tri.boundary_facets),
    }


@app.post("/api/dual", response_model=DualResponse)
def dual(request: DualRequest):
    tri = _build(request.mesh)
    field = directed_area_field(tri, boundary_correction=request.boundary_correction)
    return dual_to_dict(tri, field)


@app.post("/api/verify", response_model=ReportModel)
def verify(request: VerifyRequest):
    tri = _build(request.mesh)
    report = verify_mesh(
        tri,
        boundary_coefficient=request.boundary_coefficient,
        paper_coefficient=request.paper_coefficient,
    )
    return report.as_dict()
