"""Synthetic meshes: Kuhn hypercube grids and the canonical small meshes.

Kuhn grids exist in every dimension, are deterministic, and stop being
Delaunay under perturbation, which is exactly the regime the dual metrics must
survive. Interior vertices are displaced by a seeded uniform offset scaled by
the local minimum edge length; if validation fails the amplitude is halved and
the displacement redrawn, up to five times.
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np

from .mesh import MeshValidationError, Triangulation, build_triangulation

CANONICAL_NAMES = (
    "standard-simplex-2",
    "standard-simplex-3",
    "standard-simplex-4",
    "standard-simplex-5",
    "mirrored-pair-4",
    "proof-cluster-4",
)

MAX_PERTURB_RETRIES = 5


def _kuhn_connectivity(d: int, n: int) -> np.ndarray:
    """Cells of the [0, n]^d lattice, d! simplices per cube, lexicographic order."""
    shape = (n + 1,) * d
    cells = []
    for corner in product(range(n), repeat=d):
        for perm in permutations(range(d)):
            vertex = list(corner)
            path = [np.ravel_multi_index(tuple(vertex), shape)]
            for axis in perm:
                vertex[axis] += 1
                path.append(np.ravel_multi_index(tuple(vertex), shape))
            cells.append(path)
    return np.array(cells, dtype=np.int64)


def _min_incident_edge(points: np.ndarray, cells: np.ndarray) -> np.ndarray:
    """Per-vertex minimum incident edge length."""
    num_points = points.shape[0]
    best = np.full(num_points, np.inf)
    for cell in cells:
        pts = points[cell]
        for a in range(len(cell)):
            for b in range(a + 1, len(cell)):
                length = float(np.linalg.norm(pts[a] - pts[b]))
                for v in (cell[a], cell[b]):
                    if length < best[v]:
                        best[v] = length
    return best


def kuhn_grid(
    d: int,
    n_per_axis: int,
    perturb_amplitude: float = 0.0,
    seed: int = 0,
) -> Triangulation:
    """Kuhn-triangulated unit-cube grid on [0, n]^d, optionally perturbed.

    With amplitude zero every cell has hypervolume 1/d! and the grid volume is
    n^d. A positive amplitude displaces each interior vertex uniformly within
    amplitude * (local min edge length) per coordinate; the seed fully
    determines the result.
    """
    if d not in (2, 3, 4, 5):
        raise ValueError(f"supported dimensions are 2..5, got {d}")
    if n_per_axis < 1:
        raise ValueError(f"cells per axis must be >= 1, got {n_per_axis}")
    if not 0.0 <= perturb_amplitude <= 0.3:
        raise ValueError(f"perturbation amplitude must be in [0, 0.3], got {perturb_amplitude}")

    shape = (n_per_axis + 1,) * d
    lattice = np.array(list(product(range(n_per_axis + 1), repeat=d)), dtype=float)
    points = lattice.reshape(-1, d)
    cells = _kuhn_connectivity(d, n_per_axis)
    if perturb_amplitude == 0.0:
        return build_triangulation(d, points, cells)

    interior = np.all((points > 0.0) & (points < n_per_axis), axis=1)
    local_scale = _min_incident_edge(points, cells)
    amplitude = perturb_amplitude
    for attempt in range(MAX_PERTURB_RETRIES + 1):
        rng = np.random.default_rng([seed, attempt])
        offsets = rng.uniform(-1.0, 1.0, size=points.shape)
        perturbed = points.copy()
        perturbed[interior] += (
            amplitude * local_scale[interior, None] * offsets[interior]
        )
        try:
            return build_triangulation(d, perturbed, cells)
        except MeshValidationError:
            amplitude *= 0.5
    raise MeshValidationError(
        f"perturbed grid failed validation after {MAX_PERTURB_RETRIES} retries "
        f"(d={d}, n={n_per_axis}, amplitude={perturb_amplitude}, seed={seed})"
    )


def _reflect_across_facet(point: np.ndarray, facet_points: np.ndarray) -> np.ndarray:
    """Mirror image of a point across the hyperplane of a (d-1)-facet."""
    base = facet_points[0]
    spans = facet_points[1:] - base
    # orthogonal complement of the span via least squares projection
    rel = point - base
    coeffs, *_ = np.linalg.lstsq(spans.T, rel, rcond=None)
    foot = base + spans.T @ coeffs
    return 2.0 * foot - point


def canonical_mesh(name: str) -> Triangulation:
    """The named reference meshes used throughout the test and acceptance suites.

    standard-simplex-D: the unit corner simplex {0, e_1, ..., e_D}.
    mirrored-pair-4: two pentatopes glued along the slanted facet.
    proof-cluster-4: a pentatope plus its three facet neighbors across the
    facets containing the edge (0, 1); the neighbors' apexes are mirror images
    of the opposite vertices, so all four cells share that edge.
    """
    if name.startswith("standard-simplex-"):
        d = int(name.rsplit("-", 1)[1])
        if name in CANONICAL_NAMES:
            points = np.vstack([np.zeros(d), np.eye(d)])
            return build_triangulation(d, points, [list(range(d + 1))])
    if name == "mirrored-pair-4":
        base = np.vstack([np.zeros(4), np.eye(4)])
        mirrored = _reflect_across_facet(base[0], base[1:])
        points = np.vstack([base, mirrored])
        return build_triangulation(4, points, [[0, 1, 2, 3, 4], [1, 2, 3, 4, 5]])
    if name == "proof-cluster-4":
        base = np.vstack([np.zeros(4), np.eye(4)])  # p1..p5 -> rows 0..4
        p6 = _reflect_across_facet(base[4], base[[0, 1, 2, 3]])
        p7 = _reflect_across_facet(base[3], base[[0, 1, 2, 4]])
        p8 = _reflect_across_facet(base[2], base[[0, 1, 3, 4]])
        points = np.vstack([base, p6, p7, p8])
        cells = [
            [0, 1, 2, 3, 4],  # the central cell
            [0, 1, 2, 3, 5],  # neighbor across the facet opposite row 4
            [0, 1, 2, 4, 6],  # neighbor across the facet opposite row 3
            [0, 1, 3, 4, 7],  # neighbor across the facet opposite row 2
        ]
        return build_triangulation(4, points, cells)
    raise ValueError(f"unknown canonical mesh {name!r}; expected one of {CANONICAL_NAMES}")
