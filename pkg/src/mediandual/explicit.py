"""Explicit median-dual construction: the brute-force oracle for the closed forms.

The dual region around a node is assembled cell by cell from combinatorial
hypercubes of centroids. For an edge (j, k) inside a cell, the dual facet piece
is the (d-1)-cuboid whose vertices are the centroids of {p_j, p_k} plus every
subset of the remaining cell vertices; for a node j, the dual volume piece is
the d-cuboid of centroids of {p_j} plus every subset of the other cell
vertices (the empty subset giving p_j itself). Cuboids are triangulated by the
Coxeter-Freudenthal-Kuhn decomposition and evaluated through their subset
indexing, never through a convex hull.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial

import numpy as np

from .geometry import generalized_cross
from .mesh import Triangulation, cells_sharing_edge, cells_sharing_vertex


class DegenerateFacetError(ValueError):
    """Raised when a dual facet's lumped normal collapses to zero."""


def centroid(points) -> np.ndarray:
    """Arithmetic mean of a nonempty sequence of equal-dimension points."""
    p = np.asarray(points, dtype=float)
    if p.ndim != 2 or p.shape[0] == 0:
        raise ValueError(f"centroid needs a nonempty (n, d) point array, got shape {p.shape}")
    return p.mean(axis=0)


@dataclass(frozen=True)
class CfkSimplex:
    """One piece of the CFK decomposition of the combinatorial m-cube.

    `masks` are m+1 subset bitmasks forming a chain from the empty set to the
    full set, adding one axis per step; `sign` is the parity of the generating
    permutation.
    """

    masks: tuple[int, ...]
    sign: int


@lru_cache(maxsize=None)
def cfk_triangulate(m: int) -> tuple[CfkSimplex, ...]:
    """CFK decomposition of the combinatorial m-cube into m! simplices.

    Each permutation pi of the m axes (taken in lexicographic order) yields the
    chain of subsets {}, {pi1}, {pi1, pi2}, ..., full; the attached sign is the
    permutation parity. The simplices partition the cube.
    """
    if m < 1:
        raise ValueError(f"cube dimension must be >= 1, got {m}")
    pieces = []
    for perm in permutations(range(m)):
        masks = [0]
        for axis in perm:
            masks.append(masks[-1] | (1 << axis))
        inversions = sum(
            1 for a in range(m) for b in range(a + 1, m) if perm[a] > perm[b]
        )
        pieces.append(CfkSimplex(masks=tuple(masks), sign=-1 if inversions % 2 else 1))
    return tuple(pieces)


@lru_cache(maxsize=None)
def _cfk_index_array(m: int) -> np.ndarray:
    """(m!, m+1) array of the chain masks, for batched vertex gathers."""
    return np.array([piece.masks for piece in cfk_triangulate(m)], dtype=np.intp)


@lru_cache(maxsize=None)
def _cfk_signs(m: int) -> np.ndarray:
    return np.array([piece.sign for piece in cfk_triangulate(m)], dtype=float)


@dataclass(frozen=True)
class CuboidFacet:
    """Dual facet piece of one cell for one edge: a (d-1)-cuboid of centroids.

    Vertex for bitmask s is the centroid of {p_j, p_k} plus the cell vertices
    selected by s from `axes` (the cell's other vertices, ascending global id).
    Mask 0 is the edge midpoint; the full mask is the cell centroid.
    """

    edge: tuple[int, int]
    cell: int
    axes: tuple[int, ...]
    vertices: np.ndarray      # (2**(d-1), d), row index = bitmask
    edge_vector: np.ndarray   # p_k - p_j, fixes the positive orientation


def cuboid_facet(tri: Triangulation, cell_id: int, j: int, k: int) -> CuboidFacet:
    cell = tri.cells[cell_id].tolist()
    if j not in cell or k not in cell:
        raise ValueError(f"cell {cell_id} does not contain edge ({j}, {k})")
    axes = tuple(sorted(v for v in cell if v not in (j, k)))
    base = [tri.points[j], tri.points[k]]
    verts = np.empty((1 << len(axes), tri.dimension))
    for mask in range(1 << len(axes)):
        members = base + [tri.points[a] for i, a in enumerate(axes) if mask & (1 << i)]
        verts[mask] = centroid(members)
    return CuboidFacet(
        edge=(j, k),
        cell=cell_id,
        axes=axes,
        vertices=verts,
        edge_vector=tri.points[k] - tri.points[j],
    )


def dual_cell_cuboid(tri: Triangulation, cell_id: int, j: int) -> np.ndarray:
    """(2**d, d) vertex array of the dual volume piece of cell `cell_id` at node j.

    Vertex for bitmask s is the centroid of {p_j} plus the selected other cell
    vertices; mask 0 is p_j itself (the centroid of the 0-simplex {p_j}) and
    the full mask is the cell centroid.
    """
    cell = tri.cells[cell_id].tolist()
    if j not in cell:
        raise ValueError(f"cell {cell_id} does not contain node {j}")
    axes = tuple(sorted(v for v in cell if v != j))
    verts = np.empty((1 << len(axes), tri.dimension))
    for mask in range(1 << len(axes)):
        members = [tri.points[j]] + [tri.points[a] for i, a in enumerate(axes) if mask & (1 << i)]
        verts[mask] = centroid(members)
    return verts


def cuboid_signed_volumes(vertices: np.ndarray, base: int = 0) -> np.ndarray:
    """Signed volumes of the CFK pieces of a geometric m-cuboid in R^m.

    `vertices` is (2**m, m) with rows indexed by bitmask. `base` selects the
    cube corner the chains start from; signs are normalized so the total is
    independent of that choice (an XOR relabeling reverses popcount(base) axes).
    """
    verts = np.asarray(vertices, dtype=float)
    m = verts.shape[1]
    if verts.shape[0] != 1 << m:
        raise ValueError(f"expected 2**{m} cuboid vertices, got {verts.shape[0]}")
    idx = _cfk_index_array(m) ^ base
    chains = verts[idx]                      # (m!, m+1, m)
    spans = chains[:, 1:, :] - chains[:, :1, :]
    vols = _cfk_signs(m) * np.linalg.det(spans) / factorial(m)
    if bin(base).count("1") % 2:
        vols = -vols
    return vols


def lumped_normal(facet: CuboidFacet, base: int = 0) -> np.ndarray:
    """Lumped normal of a possibly nonplanar (d-1)-cuboid facet.

    Sum over the CFK pieces of parity-signed simplex normals, with one global
    sign fix so the result has positive dot product with the owning edge. The
    pieces are never sign-fixed individually; on a folded facet they cancel,
    which is the intended lumped behavior.
    """
    verts = facet.vertices
    d = verts.shape[1]
    m = d - 1
    idx = _cfk_index_array(m) ^ base
    chains = verts[idx]                      # (m!, m+1, d)
    spans = chains[:, 1:, :] - chains[:, :1, :]
    normals = generalized_cross(spans)       # (m!, d)
    total = (_cfk_signs(m)[:, None] * normals).sum(axis=0) / factorial(m)
    piece_scale = np.abs(normals).sum() / factorial(m)
    if piece_scale == 0.0 or np.linalg.norm(total) <= 1e-14 * piece_scale:
        raise DegenerateFacetError(
            f"dual facet of cell {facet.cell} for edge {facet.edge} has zero lumped normal"
        )
    return -total if facet.edge_vector @ total < 0.0 else total


def explicit_directed_area(tri: Triangulation, j: int, k: int) -> np.ndarray:
    """Directed-hyperarea vector of edge (j, k) by explicit facet construction.

    Sum of the lumped normals of the per-cell cuboid facets of every cell
    sharing the edge, each oriented positively along p_k - p_j.
    """
    total = np.zeros(tri.dimension)
    for cid in cells_sharing_edge(tri, j, k):
        total += lumped_normal(cuboid_facet(tri, cid, j, k))
    return total


def explicit_dual_volume(tri: Triangulation, j: int) -> float:
    """Dual hypervolume around node j by explicit cuboid construction.

    Sum over incident cells of the CFK-piece volumes of the dual-cell cuboid;
    pieces are taken unsigned, and a mixed-sign cuboid (an inverted piece on a
    pathological mesh) emits a warning rather than averaging away.
    """
    total = 0.0
    for cid in cells_sharing_vertex(tri, j):
        vols = cuboid_signed_volumes(dual_cell_cuboid(tri, cid, j))
        nonzero = vols[vols != 0.0]
        if nonzero.size and (np.sign(nonzero) != np.sign(nonzero[0])).any():
            warnings.warn(
                f"dual cuboid of cell {cid} at node {j} has inverted pieces",
                stacklevel=2,
            )
        total += float(np.abs(vols).sum())
    return total
