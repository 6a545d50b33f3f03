"""JSON serialization for meshes, dual metric fields, and verification reports.

One format for everything: plain JSON with 0-based indices, edges stored once
as [j, k] with j < k. Floats go through Python's shortest round-trip
representation, so write(read(f)) is value-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebraic import DirectedAreaField, dual_volumes
from .mesh import Triangulation, build_triangulation


class MeshFormatError(ValueError):
    """Raised for structurally invalid mesh documents."""


def mesh_to_dict(tri: Triangulation) -> dict:
    return {
        "dimension": tri.dimension,
        "points": tri.points.tolist(),
        "cells": tri.cells.tolist(),
    }


def mesh_from_dict(doc: dict, *, validate: bool = True) -> Triangulation:
    if not isinstance(doc, dict):
        raise MeshFormatError(f"mesh document must be an object, got {type(doc).__name__}")
    for key in ("dimension", "points", "cells"):
        if key not in doc:
            raise MeshFormatError(f"mesh document is missing the {key!r} field")
    try:
        dimension = int(doc["dimension"])
        points = np.asarray(doc["points"], dtype=float)
        raw_cells = np.asarray(doc["cells"])
        cells = raw_cells.astype(np.int64)
    except (TypeError, ValueError) as exc:
        raise MeshFormatError(f"malformed mesh arrays: {exc}") from exc
    if raw_cells.dtype.kind not in "iu" and not np.array_equal(
        cells.astype(raw_cells.dtype, copy=False), raw_cells
    ):
        raise MeshFormatError("cell indices must be integers")
    return build_triangulation(dimension, points, cells, validate=validate)


def dual_to_dict(tri: Triangulation, field: DirectedAreaField) -> dict:
    return {
        "dimension": tri.dimension,
        "volumes": dual_volumes(tri).tolist(),
        "directed_areas": [
            {"edge": [int(j), int(k)], "n": field.vectors[eid].tolist()}
            for eid, (j, k) in enumerate(tri.edges)
        ],
        "meta": {
            "factor": field.factor,
            "mode": field.mode,
            "boundary_correction": field.boundary_corrected,
        },
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_json(path: str | Path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def read_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def read_mesh(path: str | Path, *, validate: bool = True) -> Triangulation:
    return mesh_from_dict(read_json(path), validate=validate)


def write_mesh(path: str | Path, tri: Triangulation) -> None:
    write_json(path, mesh_to_dict(tri))
