"""Conservation checks for the dual metric field, plus field-vs-oracle comparisons.

The central check is closure: summing every node's outgoing directed-hyperarea
vectors and a weighted share of its boundary-facet normals must give zero,
which certifies that the edge metrics form a conservative (closed) field. The
default boundary weight is 1/d: each boundary (d-1)-simplex has d vertices and
the median split assigns 1/d of its hyperarea per vertex. The weight is a
parameter so the alternative 1/(d+1) bookkeeping can be run and its residual
recorded for comparison.

All tolerances are relative to mesh scale, never absolute.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.linalg as la

from .algebraic import (
    DirectedAreaField,
    area_factor,
    check_field_matches,
    directed_area_field,
    dual_volume_via_identity,
    dual_volumes,
)
from .explicit import explicit_directed_area, explicit_dual_volume
from .mesh import Triangulation, boundary_facet_outward_normal

CLOSURE_RTOL = 1e-12
FIELD_RTOL = 1e-12
VOLUME_RTOL = 1e-12
CONSERVATION_RTOL = 1e-12
IDENTITY_RTOL = 1e-12


@dataclass(frozen=True)
class FieldComparison:
    max_rel_err: float
    worst_edge: tuple[int, int]
    scale: float


@dataclass(frozen=True)
class VerificationReport:
    dimension: int
    mode: str                               # "proven" or "conjecture"
    boundary_coefficient: float             # coefficient behind closure_max
    paper_coefficient: float                # the 1/(d+1) alternative
    closure_max: float
    closure_max_paper: float
    closure_tolerance: float
    closure_residuals: np.ndarray = field(repr=False)  # (L, d)
    field_max_rel_err: float
    volume_max_rel_err: float
    conservation_deficit: float
    total_volume: float
    identity_first_line_max_rel_err: float
    identity_edge_field_interior_max_rel_err: float
    identity_edge_field_boundary_max_rel_err: float  # recorded, never asserted
    closure_gates_verdict: bool
    checks: dict
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        """JSON-ready summary (per-node residual vectors reduced to the max)."""
        return {
            "dimension": self.dimension,
            "mode": self.mode,
            "closure_max": self.closure_max,
            "closure_max_paper": self.closure_max_paper,
            "field_max_rel_err": self.field_max_rel_err,
            "volume_max_rel_err": self.volume_max_rel_err,
            "conservation_deficit": self.conservation_deficit,
            "total_volume": self.total_volume,
            "identity_first_line_max_rel_err": self.identity_first_line_max_rel_err,
            "identity_edge_field_interior_max_rel_err": (
                self.identity_edge_field_interior_max_rel_err
            ),
            "identity_edge_field_boundary_max_rel_err": (
                self.identity_edge_field_boundary_max_rel_err
            ),
            "closure_gates_verdict": self.closure_gates_verdict,
            "coefficients": {
                "boundary_closure": self.boundary_coefficient,
                "boundary_closure_paper": self.paper_coefficient,
                "edge_area_factor": area_factor(self.dimension),
            },
            "tolerances": {
                "closure": self.closure_tolerance,
                "field_rel": FIELD_RTOL,
                "volume_rel": VOLUME_RTOL,
                "conservation_rel": CONSERVATION_RTOL,
                "identity_rel": IDENTITY_RTOL,
            },
            "checks": dict(self.checks),
            "verdict": self.verdict,
        }


def closure_check(
    tri: Triangulation,
    field: DirectedAreaField,
    boundary_coefficient: float | None = None,
) -> np.ndarray:
    """Per-node closure residuals a_j of a boundary-corrected field.

    a_j collects +n_jk over edges leaving j, -n_jk over edges arriving at j,
    and coefficient * n_B over the boundary facets containing j. Every a_j is
    zero (to rounding) exactly when the field is conservative.
    """
    check_field_matches(tri, field)
    coef = 1.0 / tri.dimension if boundary_coefficient is None else boundary_coefficient
    residuals = np.zeros((tri.num_points, tri.dimension))
    for eid, (j, k) in enumerate(tri.edges):
        residuals[j] += field.vectors[eid]
        residuals[k] -= field.vectors[eid]
    for bf in tri.boundary_facets:
        n_b = boundary_facet_outward_normal(tri, bf)
        for v in bf.vertices:
            residuals[v] += coef * n_b
    return residuals


def compare_fields(tri: Triangulation, algebraic: DirectedAreaField) -> FieldComparison:
    """Max relative gap between an algebraic field and the explicit reconstruction.

    Per-edge errors are normalized by the explicit vector's norm, floored at
    the mesh's mean dual-facet hyperarea so near-zero facets cannot inflate
    the relative error.
    """
    check_field_matches(tri, algebraic)
    explicit_vectors = np.array(
        [explicit_directed_area(tri, j, k) for j, k in tri.edges]
    )
    norms = la.norm(explicit_vectors, axis=1)
    scale = max(float(norms.mean()), 1e-300)
    rel = la.norm(algebraic.vectors - explicit_vectors, axis=1) / np.maximum(norms, scale)
    worst = int(np.argmax(rel))
    return FieldComparison(
        max_rel_err=float(rel[worst]),
        worst_edge=(int(tri.edges[worst, 0]), int(tri.edges[worst, 1])),
        scale=scale,
    )


def conservation_check(tri: Triangulation, volumes: np.ndarray) -> float:
    """Absolute gap between the summed dual volumes and the mesh hypervolume."""
    volumes = np.asarray(volumes, dtype=float)
    if volumes.shape != (tri.num_points,):
        raise ValueError("volume field does not match the triangulation")
    return abs(float(volumes.sum()) - tri.total_volume)


def _max_rel_err(computed: np.ndarray, reference: np.ndarray) -> float:
    if computed.size == 0:
        return 0.0
    scale = max(float(np.abs(reference).mean()), 1e-300)
    return float(
        (np.abs(computed - reference) / np.maximum(np.abs(reference), scale)).max()
    )


def mean_boundary_hyperarea(tri: Triangulation) -> float:
    areas = [
        la.norm(boundary_facet_outward_normal(tri, bf)) for bf in tri.boundary_facets
    ]
    return float(np.mean(areas)) if areas else 0.0


def verify_mesh(
    tri: Triangulation,
    boundary_coefficient: float | None = None,
    paper_coefficient: bool = False,
) -> VerificationReport:
    """Run every check on a mesh and assemble the machine-readable report.

    `paper_coefficient=True` makes the 1/(d+1) closure bookkeeping the reported
    one and drops closure from the verdict (its residual is documented, not
    gated); the 1/d residual is always recorded alongside.
    """
    d = tri.dimension
    default_coef = 1.0 / d
    paper_coef = 1.0 / (d + 1)

    direct_volumes = dual_volumes(tri)
    corrected = directed_area_field(tri, boundary_correction=True)

    residuals_default = closure_check(
        tri, corrected, boundary_coefficient if boundary_coefficient is not None else default_coef
    )
    residuals_paper = closure_check(tri, corrected, paper_coef)
    max_default = float(la.norm(residuals_default, axis=1).max())
    max_paper = float(la.norm(residuals_paper, axis=1).max())
    closure_tol = CLOSURE_RTOL * mean_boundary_hyperarea(tri)

    comparison = compare_fields(tri, corrected)

    explicit_volumes = np.array(
        [explicit_dual_volume(tri, j) for j in range(tri.num_points)]
    )
    volume_rel = _max_rel_err(explicit_volumes, direct_volumes)

    deficit = conservation_check(tri, direct_volumes)

    first_line = dual_volume_via_identity(tri, form="first-line")
    first_line_rel = _max_rel_err(first_line, direct_volumes)
    edge_field = dual_volume_via_identity(tri, corrected, form="edge-field")
    interior = tri.interior_nodes
    boundary = sorted(tri.boundary_nodes)
    interior_rel = _max_rel_err(edge_field[interior], direct_volumes[interior])
    boundary_rel = _max_rel_err(edge_field[boundary], direct_volumes[boundary])

    if paper_coefficient:
        reported_coef, reported_max = paper_coef, max_paper
        closure_gates = False
    else:
        reported_coef = (
            boundary_coefficient if boundary_coefficient is not None else default_coef
        )
        reported_max = max_default
        closure_gates = True

    checks = {
        "closure": max_default <= closure_tol,
        "field_comparison": comparison.max_rel_err <= FIELD_RTOL,
        "volume_comparison": volume_rel <= VOLUME_RTOL,
        "conservation": deficit <= CONSERVATION_RTOL * max(tri.total_volume, 1e-300),
        "identity_first_line": first_line_rel <= IDENTITY_RTOL,
        "identity_edge_field_interior": interior_rel <= IDENTITY_RTOL,
    }
    gated = dict(checks)
    if corrected.mode == "conjecture":
        gated.pop("field_comparison")  # quantified, not asserted, beyond d = 4
    if not closure_gates:
        gated.pop("closure")
    verdict = "pass" if all(gated.values()) else "fail"

    return VerificationReport(
        dimension=d,
        mode=corrected.mode,
        boundary_coefficient=reported_coef,
        paper_coefficient=paper_coef,
        closure_max=reported_max,
        closure_max_paper=max_paper,
        closure_tolerance=closure_tol,
        closure_residuals=residuals_paper if paper_coefficient else residuals_default,
        field_max_rel_err=comparison.max_rel_err,
        volume_max_rel_err=volume_rel,
        conservation_deficit=deficit,
        total_volume=tri.total_volume,
        identity_first_line_max_rel_err=first_line_rel,
        identity_edge_field_interior_max_rel_err=interior_rel,
        identity_edge_field_boundary_max_rel_err=boundary_rel,
        closure_gates_verdict=closure_gates,
        checks=checks,
        verdict=verdict,
    )
