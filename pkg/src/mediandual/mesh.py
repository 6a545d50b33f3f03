"""Triangulation container: validation and the incidence queries the dual metrics need.

A triangulation is a pure simplicial d-complex given by an (L, d) point array and
a (C, d+1) cell connectivity array. Building it derives every index used
downstream: the edge list (stored once with j < k), cells by vertex, cells by
edge, facet incidence, and the boundary facet list with outward normals.
The container is immutable after construction and all queries are read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .geometry import is_degenerate, opposite_facet_normal, simplex_hypervolume


class MeshValidationError(ValueError):
    """Raised when connectivity or geometry violates the triangulation contract."""


@dataclass(frozen=True)
class BoundaryFacet:
    """A (d-1)-facet with exactly one incident cell."""

    vertices: tuple[int, ...]  # sorted global point ids
    cell: int                  # the unique incident cell
    opposite: int              # global id of the cell vertex not on the facet


@dataclass(frozen=True)
class Triangulation:
    dimension: int
    points: np.ndarray                      # (L, d) float64
    cells: np.ndarray                       # (C, d+1) int64
    cell_volumes: np.ndarray = field(repr=False)
    edges: np.ndarray = field(repr=False)   # (E, 2), j < k, lexicographic
    edge_ids: dict = field(repr=False)      # (j, k) -> row in edges
    vertex_cells: tuple = field(repr=False)
    edge_cells: dict = field(repr=False)
    vertex_neighbors: tuple = field(repr=False)
    interior_facets: dict = field(repr=False)   # sorted tuple -> (cell, cell)
    boundary_facets: tuple = field(repr=False)  # tuple[BoundaryFacet]
    boundary_nodes: frozenset = field(repr=False)

    @property
    def num_points(self) -> int:
        return self.points.shape[0]

    @property
    def num_cells(self) -> int:
        return self.cells.shape[0]

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]

    @property
    def total_volume(self) -> float:
        return float(self.cell_volumes.sum())

    @property
    def interior_nodes(self) -> np.ndarray:
        mask = np.ones(self.num_points, dtype=bool)
        mask[list(self.boundary_nodes)] = False
        return np.nonzero(mask)[0]

    def cell_points(self, cell_id: int) -> np.ndarray:
        return self.points[self.cells[cell_id]]


def build_triangulation(
    dimension: int,
    points: np.ndarray,
    cells: np.ndarray,
    *,
    validate: bool = True,
) -> Triangulation:
    """Validate connectivity/geometry and derive all incidence indices.

    Raises MeshValidationError naming the offending entity for: out-of-range or
    repeated cell indices, degenerate cells, and facets with three or more
    incident cells. `validate=False` skips the geometric (volume) checks only;
    the structural indices are always built.
    """
    d = int(dimension)
    if d < 2:
        raise MeshValidationError(f"dimension must be >= 2, got {d}")
    pts = np.ascontiguousarray(np.asarray(points, dtype=float))
    if pts.ndim != 2 or pts.shape[1] != d:
        raise MeshValidationError(f"points must have shape (L, {d}), got {pts.shape}")
    conn = np.ascontiguousarray(np.asarray(cells, dtype=np.int64))
    if conn.ndim != 2 or conn.shape[1] != d + 1:
        raise MeshValidationError(f"cells must have shape (C, {d + 1}), got {conn.shape}")
    if pts.shape[0] == 0 or conn.shape[0] == 0:
        raise MeshValidationError("points and cells must be nonempty")
    num_points = pts.shape[0]

    for cid, cell in enumerate(conn):
        if (cell < 0).any() or (cell >= num_points).any():
            raise MeshValidationError(
                f"cell {cid} references point index out of range [0, {num_points}): {cell.tolist()}"
            )
        if len(set(cell.tolist())) != d + 1:
            raise MeshValidationError(f"cell {cid} repeats a vertex: {cell.tolist()}")

    volumes = np.array([simplex_hypervolume(pts[cell]) for cell in conn])
    if validate:
        for cid, cell in enumerate(conn):
            if is_degenerate(pts[cell]):
                raise MeshValidationError(
                    f"cell {cid} is degenerate (hypervolume {volumes[cid]:.3e}): {cell.tolist()}"
                )

    # Facets keyed by sorted vertex tuples; orientation is recomputed
    # geometrically where needed, so canonical keys are safe.
    facet_cells: dict[tuple[int, ...], list[int]] = {}
    for cid, cell in enumerate(conn):
        verts = sorted(cell.tolist())
        for skip in range(d + 1):
            key = tuple(verts[:skip] + verts[skip + 1 :])
            facet_cells.setdefault(key, []).append(cid)

    interior: dict[tuple[int, ...], tuple[int, int]] = {}
    boundary: list[BoundaryFacet] = []
    for key in sorted(facet_cells):
        owners = facet_cells[key]
        if len(owners) > 2:
            raise MeshValidationError(
                f"facet {key} is shared by {len(owners)} cells {owners}; "
                "a valid triangulation allows at most two"
            )
        if len(owners) == 2:
            interior[key] = (owners[0], owners[1])
        else:
            cid = owners[0]
            (opposite,) = set(conn[cid].tolist()) - set(key)
            boundary.append(BoundaryFacet(vertices=key, cell=cid, opposite=opposite))

    edge_set: set[tuple[int, int]] = set()
    for cell in conn:
        for a, b in combinations(sorted(cell.tolist()), 2):
            edge_set.add((a, b))
    edges = np.array(sorted(edge_set), dtype=np.int64)
    edge_ids = {(int(j), int(k)): i for i, (j, k) in enumerate(edges)}

    vertex_cells: list[list[int]] = [[] for _ in range(num_points)]
    edge_cells: dict[tuple[int, int], list[int]] = {key: [] for key in edge_ids}
    for cid, cell in enumerate(conn):
        verts = sorted(cell.tolist())
        for v in verts:
            vertex_cells[v].append(cid)
        for pair in combinations(verts, 2):
            edge_cells[pair].append(cid)

    neighbors: list[list[int]] = [[] for _ in range(num_points)]
    for j, k in edges:
        neighbors[j].append(int(k))
        neighbors[k].append(int(j))
    vertex_neighbors = tuple(tuple(sorted(ns)) for ns in neighbors)

    boundary_nodes = frozenset(v for f in boundary for v in f.vertices)

    return Triangulation(
        dimension=d,
        points=pts,
        cells=conn,
        cell_volumes=volumes,
        edges=edges,
        edge_ids=edge_ids,
        vertex_cells=tuple(tuple(c) for c in vertex_cells),
        edge_cells={key: tuple(c) for key, c in edge_cells.items()},
        vertex_neighbors=vertex_neighbors,
        interior_facets=interior,
        boundary_facets=tuple(boundary),
        boundary_nodes=boundary_nodes,
    )


def cells_sharing_vertex(tri: Triangulation, j: int) -> tuple[int, ...]:
    """Ids of the d-cells containing point j."""
    if not 0 <= j < tri.num_points:
        raise ValueError(f"point index {j} out of range [0, {tri.num_points})")
    return tri.vertex_cells[j]


def cells_sharing_edge(tri: Triangulation, j: int, k: int) -> tuple[int, ...]:
    """Ids of the d-cells containing both endpoints of edge (j, k)."""
    key = (min(j, k), max(j, k))
    try:
        return tri.edge_cells[key]
    except KeyError:
        raise ValueError(f"({j}, {k}) is not an edge of the triangulation") from None


def boundary_facet_outward_normal(tri: Triangulation, facet) -> np.ndarray:
    """Outward normal of a boundary facet, with magnitude equal to its hyperarea.

    `facet` is either a BoundaryFacet or a sequence of the facet's d global
    point ids. Oriented away from the incident cell's opposite vertex, i.e.
    out of the domain. Interior facets are rejected.
    """
    if isinstance(facet, BoundaryFacet):
        bf = facet
    else:
        key = tuple(sorted(int(v) for v in facet))
        if key in tri.interior_facets:
            raise ValueError(f"facet {key} is interior; it has no outward normal")
        matches = [f for f in tri.boundary_facets if f.vertices == key]
        if not matches:
            raise ValueError(f"facet {key} is not a facet of the triangulation")
        bf = matches[0]
    cell = tri.cells[bf.cell]
    local_opp = int(np.nonzero(cell == bf.opposite)[0][0])
    return opposite_facet_normal(tri.points[cell], local_opp)
