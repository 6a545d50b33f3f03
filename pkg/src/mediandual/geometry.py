"""Dimension-generic simplex primitives: cross products, hypervolumes, facet normals.

All functions take plain numpy arrays (float64) and are pure: they can be called
concurrently on immutable inputs. Vectors live in R^d with d >= 2; a d-simplex is
a (d+1, d) array of vertex coordinates.
"""

from __future__ import annotations

from math import factorial

import numpy as np

# A simplex is degenerate when its hypervolume falls below this fraction of
# (max edge length)^d. Scale-invariant; general position is assumed upstream.
DEGENERACY_RTOL = 1e-14


class DegenerateSimplexError(ValueError):
    """Raised when an operation requires a nondegenerate simplex."""


def generalized_cross(vectors: np.ndarray) -> np.ndarray:
    """Generalized cross product of d-1 vectors in R^d.

    The result is orthogonal to every input and its magnitude equals the
    (d-1)-dimensional parallelotope volume spanned by the inputs. d = 2 gives
    the clockwise perpendicular of the single input, d = 3 the classical cross
    product, and d >= 4 the cofactor expansion along a leading row of unit
    vectors with alternating signs.

    Accepts a stack of shape (..., d-1, d) and returns (..., d).
    """
    v = np.asarray(vectors, dtype=float)
    if v.ndim < 2:
        raise ValueError(f"expected a (d-1, d) array of vectors, got shape {v.shape}")
    d = v.shape[-1]
    if d < 2 or v.shape[-2] != d - 1:
        raise ValueError(
            f"expected d-1 vectors of dimension d (d >= 2), got shape {v.shape[-2:]}"
        )
    if d == 2:
        u = v[..., 0, :]
        return np.stack([u[..., 1], -u[..., 0]], axis=-1)
    if d == 3:
        return np.cross(v[..., 0, :], v[..., 1, :])
    if d == 4:
        return _cross4(v[..., 0, :], v[..., 1, :], v[..., 2, :])
    # Cofactor expansion, one (d-1)x(d-1) determinant per component.
    comps = []
    for i in range(d):
        minor = np.delete(v, i, axis=-1)
        comps.append((-1.0) ** i * np.linalg.det(minor))
    return np.stack(comps, axis=-1)


def _cross4(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Cross product of three 4-vectors via precomputed 2x2 minors of (v, w)."""
    u0, u1, u2, u3 = (u[..., i] for i in range(4))
    v0, v1, v2, v3 = (v[..., i] for i in range(4))
    w0, w1, w2, w3 = (w[..., i] for i in range(4))
    m01 = v0 * w1 - v1 * w0
    m02 = v0 * w2 - v2 * w0
    m03 = v0 * w3 - v3 * w0
    m12 = v1 * w2 - v2 * w1
    m13 = v1 * w3 - v3 * w1
    m23 = v2 * w3 - v3 * w2
    return np.stack(
        [
            u1 * m23 - u2 * m13 + u3 * m12,
            -(u0 * m23 - u2 * m03 + u3 * m02),
            u0 * m13 - u1 * m03 + u3 * m01,
            -(u0 * m12 - u1 * m02 + u2 * m01),
        ],
        axis=-1,
    )


def simplex_hypervolume(vertices: np.ndarray) -> float:
    """Unsigned d-hypervolume of a d-simplex given as a (d+1, d) vertex array.

    Returns 0.0 for degenerate simplices; callers decide how to react.
    """
    p = np.asarray(vertices, dtype=float)
    d = p.shape[-1]
    if p.shape[-2] != d + 1:
        raise ValueError(f"expected d+1 vertices of dimension d, got shape {p.shape[-2:]}")
    spans = p[..., 1:, :] - p[..., :1, :]
    return np.abs(np.linalg.det(spans)) / factorial(d)


def max_edge_length(vertices: np.ndarray) -> float:
    """Longest pairwise vertex distance of a simplex."""
    p = np.asarray(vertices, dtype=float)
    diffs = p[:, None, :] - p[None, :, :]
    return float(np.sqrt((diffs**2).sum(axis=-1)).max())


def is_degenerate(vertices: np.ndarray) -> bool:
    """Whether a d-simplex has hypervolume below the scale-invariant threshold."""
    scale = max_edge_length(vertices)
    if scale == 0.0:
        return True
    d = np.asarray(vertices).shape[-1]
    return simplex_hypervolume(vertices) < DEGENERACY_RTOL * scale**d


def opposite_facet_normal(vertices: np.ndarray, j: int) -> np.ndarray:
    """Normal of the facet of a d-simplex opposite local vertex j.

    The magnitude equals the (d-1)-hypervolume of the opposite facet and the
    vector points away from vertex j, i.e. (p_k - p_j) . n > 0 for every other
    vertex k. Returns the zero vector for a degenerate simplex (query
    `is_degenerate` to distinguish that case).
    """
    p = np.asarray(vertices, dtype=float)
    d = p.shape[-1]
    if not 0 <= j <= d:
        raise ValueError(f"local vertex index {j} out of range for a {d}-simplex")
    if is_degenerate(p):
        return np.zeros(d)
    facet = np.delete(p, j, axis=0)
    n = generalized_cross(facet[1:] - facet[0]) / factorial(d - 1)
    if (facet[0] - p[j]) @ n < 0.0:
        n = -n
    return n


def altitude(vertices: np.ndarray, j: int, k: int) -> float:
    """Distance from vertex j of a d-simplex to the hyperplane of its opposite facet.

    Computed as (p_k - p_j) projected on the unit opposite-facet normal; the
    result does not depend on the choice of k != j and satisfies
    hypervolume = altitude * |facet| / d.
    """
    p = np.asarray(vertices, dtype=float)
    if j == k:
        raise ValueError("altitude requires two distinct local vertex indices")
    if is_degenerate(p):
        raise DegenerateSimplexError("altitude of a degenerate simplex is undefined")
    n = opposite_facet_normal(p, j)
    return float((p[k] - p[j]) @ (n / np.linalg.norm(n)))
