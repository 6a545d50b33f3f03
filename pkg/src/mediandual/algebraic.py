"""Closed-form median-dual metrics from per-cell facet normals.

Per node, the dual hypervolume is 1/(d+1) of every incident cell's volume.
Per edge (j, k), the directed-hyperarea vector accumulates the incident cells'
opposite-facet normals with the dimension factor 2/(d(d+1)), plus half of each
incident boundary facet's outward normal when the boundary correction is on.
The factor is proven for d <= 4 and conjectural beyond; fields computed with
d >= 5 are tagged mode="conjecture" and left to the verification module to
quantify. Accumulation order is fixed (ascending cell id, then local vertex
order) so results are bitwise deterministic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import is_degenerate, opposite_facet_normal
from .mesh import MeshValidationError, Triangulation, boundary_facet_outward_normal

logger = logging.getLogger(__name__)

PROVEN_MAX_DIMENSION = 4


def area_factor(dimension: int) -> float:
    """Edge accumulation factor 2/(d(d+1)): 1/3, 1/6, 1/10 for d = 2, 3, 4."""
    return 2.0 / (dimension * (dimension + 1))


@dataclass(frozen=True)
class DirectedAreaField:
    """Per-edge directed-hyperarea vectors, stored once per edge with j < k.

    The reverse vector of an edge is the negation of the stored one.
    """

    dimension: int
    num_points: int
    edges: np.ndarray       # (E, 2) int, j < k, lexicographic
    vectors: np.ndarray     # (E, d) float
    factor: float
    boundary_corrected: bool
    mode: str               # "proven" (d <= 4) or "conjecture" (d >= 5)

    def vector_from(self, j: int, k: int, edge_id: int) -> np.ndarray:
        """Vector for the directed edge j -> k (row `edge_id` stores min -> max)."""
        return self.vectors[edge_id] if j < k else -self.vectors[edge_id]


def dual_volumes(tri: Triangulation) -> np.ndarray:
    """Per-node dual hypervolumes: 1/(d+1) of each incident cell's volume."""
    volumes = np.zeros(tri.num_points)
    share = tri.cell_volumes / (tri.dimension + 1)
    for cid, cell in enumerate(tri.cells):
        volumes[cell] += share[cid]
    return volumes


def _cell_normals(tri: Triangulation, cid: int) -> list[np.ndarray]:
    verts = tri.cell_points(cid)
    if is_degenerate(verts):
        raise MeshValidationError(
            f"cell {cid} is degenerate; directed areas are undefined on this mesh"
        )
    return [opposite_facet_normal(verts, local) for local in range(tri.dimension + 1)]


def directed_area_field(
    tri: Triangulation, *, boundary_correction: bool = True
) -> DirectedAreaField:
    """Directed-hyperarea vectors for every edge of the triangulation.

    One pass over cells adds factor * (normal opposite the edge's smaller
    endpoint) to each of the cell's edges; with the correction enabled, one
    pass over boundary facets adds factor/2 * (outward facet normal) to each
    facet edge. Without the correction, boundary edges carry only the
    interior-sum value.
    """
    d = tri.dimension
    factor = area_factor(d)
    mode = "proven" if d <= PROVEN_MAX_DIMENSION else "conjecture"
    if mode == "conjecture":
        logger.warning(
            "dimension %d: the %g edge factor is unproven; field tagged mode=conjecture",
            d,
            factor,
        )
    vectors = np.zeros((tri.num_edges, d))
    for cid in range(tri.num_cells):
        normals = _cell_normals(tri, cid)
        cell = tri.cells[cid].tolist()
        for a, b in combinations(range(d + 1), 2):
            ga, gb = cell[a], cell[b]
            if ga < gb:
                vectors[tri.edge_ids[(ga, gb)]] += factor * normals[a]
            else:
                vectors[tri.edge_ids[(gb, ga)]] += factor * normals[b]
    if boundary_correction:
        for bf in tri.boundary_facets:
            n_b = boundary_facet_outward_normal(tri, bf)
            for j, k in combinations(bf.vertices, 2):
                vectors[tri.edge_ids[(j, k)]] += 0.5 * factor * n_b
    return DirectedAreaField(
        dimension=d,
        num_points=tri.num_points,
        edges=tri.edges,
        vectors=vectors,
        factor=factor,
        boundary_corrected=boundary_correction,
        mode=mode,
    )


def check_field_matches(tri: Triangulation, field: DirectedAreaField) -> None:
    """Raise if a field was not computed on (a mesh identical to) `tri`."""
    if (
        field.dimension != tri.dimension
        or field.num_points != tri.num_points
        or field.edges.shape != tri.edges.shape
        or not np.array_equal(field.edges, tri.edges)
    ):
        raise ValueError("directed-area field does not match the triangulation")


def dual_volume_via_identity(
    tri: Triangulation,
    field: DirectedAreaField | None = None,
    form: str = "edge-field",
) -> np.ndarray:
    """Dual hypervolumes recovered from directed areas instead of cell volumes.

    form="first-line" evaluates 1/(d^2 (d+1)) * sum over a node's edges and
    their incident cells of (p_k - p_j) . n_j^T; it holds at every node and
    needs no field. form="edge-field" evaluates 1/(2d) * sum over edges of
    (p_k - p_j) . n_jk from `field`; with an uncorrected field it is exact at
    interior nodes only (boundary nodes are the caller's to flag).
    """
    d = tri.dimension
    acc = np.zeros(tri.num_points)
    if form == "first-line":
        if field is not None:
            check_field_matches(tri, field)
        for cid in range(tri.num_cells):
            normals = _cell_normals(tri, cid)
            cell = tri.cells[cid]
            pts = tri.points[cell]
            for a in range(d + 1):
                for b in range(d + 1):
                    if a != b:
                        acc[cell[a]] += (pts[b] - pts[a]) @ normals[a]
        return acc / (d * d * (d + 1))
    if form == "edge-field":
        if field is None:
            raise ValueError("the edge-field form requires a directed-area field")
        check_field_matches(tri, field)
        # (p_k - p_j) . n_jk is the same scalar seen from either endpoint.
        for eid, (j, k) in enumerate(tri.edges):
            dot = (tri.points[k] - tri.points[j]) @ field.vectors[eid]
            acc[j] += dot
            acc[k] += dot
        return acc / (2 * d)
    raise ValueError(f"unknown form {form!r}; expected 'first-line' or 'edge-field'")
