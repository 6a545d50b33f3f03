"""Median-dual metrics for d-simplicial meshes.

Per-node dual hypervolumes and per-edge directed-hyperarea vectors via a
closed-form accumulation over cells, an independent explicit-construction
oracle, and a verification harness that proves the two agree and that the
field is conservative.
"""

__version__ = "0.1.0"

from .algebraic import (
    DirectedAreaField,
    area_factor,
    directed_area_field,
    dual_volume_via_identity,
    dual_volumes,
)
from .explicit import (
    centroid,
    cfk_triangulate,
    cuboid_facet,
    dual_cell_cuboid,
    explicit_directed_area,
    explicit_dual_volume,
    lumped_normal,
)
from .generators import canonical_mesh, kuhn_grid
from .geometry import (
    altitude,
    generalized_cross,
    opposite_facet_normal,
    simplex_hypervolume,
)
from .mesh import (
    MeshValidationError,
    Triangulation,
    boundary_facet_outward_normal,
    build_triangulation,
    cells_sharing_edge,
    cells_sharing_vertex,
)
from .verification import (
    VerificationReport,
    closure_check,
    compare_fields,
    conservation_check,
    verify_mesh,
)

__all__ = [
    "DirectedAreaField",
    "MeshValidationError",
    "Triangulation",
    "VerificationReport",
    "altitude",
    "area_factor",
    "boundary_facet_outward_normal",
    "build_triangulation",
    "canonical_mesh",
    "cells_sharing_edge",
    "cells_sharing_vertex",
    "centroid",
    "cfk_triangulate",
    "closure_check",
    "compare_fields",
    "conservation_check",
    "cuboid_facet",
    "directed_area_field",
    "dual_cell_cuboid",
    "dual_volume_via_identity",
    "dual_volumes",
    "explicit_directed_area",
    "explicit_dual_volume",
    "generalized_cross",
    "kuhn_grid",
    "lumped_normal",
    "opposite_facet_normal",
    "simplex_hypervolume",
    "verify_mesh",
]
