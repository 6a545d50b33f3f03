import numpy as np
import numpy.linalg as la
import pytest

from mediandual.generators import canonical_mesh, kuhn_grid
from mediandual.mesh import cells_sharing_edge, cells_sharing_vertex


def comparable_lattice_pairs(d):
    # Independent edge-count oracle for an n=1 Kuhn cube: vertices are subsets
    # and two are joined iff comparable, giving 3^d - 2^d unordered pairs.
    return 3**d - 2**d


def test_kuhn_2d_unit():
    tri = kuhn_grid(2, 1)
    assert tri.num_points == 4
    assert tri.num_cells == 2
    assert tri.num_edges == comparable_lattice_pairs(2)


def test_kuhn_4d_unit():
    tri = kuhn_grid(4, 1)
    assert tri.num_points == 16
    assert tri.num_cells == 24
    assert tri.num_edges == comparable_lattice_pairs(4) == 65
    # every chain passes through both extreme corners
    assert cells_sharing_vertex(tri, 0) == tuple(range(24))
    assert cells_sharing_edge(tri, 0, 15) == tuple(range(24))


def test_kuhn_4d_two_cells_per_axis():
    tri = kuhn_grid(4, 2)
    assert tri.num_points == 81
    assert tri.num_cells == 384
    assert tri.total_volume == pytest.approx(16.0, rel=1e-13)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_kuhn_cell_volumes_uniform(d):
    from math import factorial

    tri = kuhn_grid(d, 1)
    assert np.allclose(tri.cell_volumes, 1.0 / factorial(d), atol=1e-15)
    assert tri.total_volume == pytest.approx(1.0, rel=1e-13)


def test_kuhn_perturbation_seeded():
    a = kuhn_grid(3, 2, perturb_amplitude=0.1, seed=7)
    b = kuhn_grid(3, 2, perturb_amplitude=0.1, seed=7)
    c = kuhn_grid(3, 2, perturb_amplitude=0.1, seed=8)
    assert np.array_equal(a.points, b.points)
    assert not np.array_equal(a.points, c.points)
    # boundary vertices stay put, some interior vertex moved
    on_boundary = np.any((a.points == 0.0) | (a.points == 2.0), axis=1)
    lattice = kuhn_grid(3, 2).points
    assert np.array_equal(a.points[on_boundary], lattice[on_boundary])
    assert not np.array_equal(a.points[~on_boundary], lattice[~on_boundary])
    # perturbed grids keep the lattice volume: the moved vertices are interior
    assert a.total_volume == pytest.approx(8.0, rel=1e-12)


def test_kuhn_argument_validation():
    with pytest.raises(ValueError):
        kuhn_grid(6, 1)
    with pytest.raises(ValueError):
        kuhn_grid(3, 0)
    with pytest.raises(ValueError):
        kuhn_grid(3, 1, perturb_amplitude=0.5)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_canonical_standard_simplices(d):
    tri = canonical_mesh(f"standard-simplex-{d}")
    assert tri.num_points == d + 1
    assert tri.num_cells == 1
    assert np.allclose(tri.points, np.vstack([np.zeros(d), np.eye(d)]))


def test_canonical_mirrored_pair():
    tri = canonical_mesh("mirrored-pair-4")
    assert tri.num_points == 6
    assert tri.num_cells == 2
    assert len(tri.interior_facets) == 1
    assert np.allclose(tri.points[5], np.full(4, 0.5))


def test_canonical_proof_cluster():
    tri = canonical_mesh("proof-cluster-4")
    assert tri.num_points == 8
    assert tri.num_cells == 4
    assert cells_sharing_edge(tri, 0, 1) == (0, 1, 2, 3)
    # mirrored apexes of the standard pentatope
    assert np.allclose(tri.points[5], [0, 0, 0, -1])
    assert np.allclose(tri.points[6], [0, 0, -1, 0])
    assert np.allclose(tri.points[7], [0, -1, 0, 0])
    # each neighbor shares one facet with the central cell
    assert len(tri.interior_facets) == 3


def test_canonical_unknown_name():
    with pytest.raises(ValueError, match="unknown canonical mesh"):
        canonical_mesh("standard-simplex-9")


def test_reflection_produces_true_mirror():
    tri = canonical_mesh("proof-cluster-4")
    # reflected point is equidistant from the shared facet, on the other side
    base = tri.points[[0, 1, 2, 3]]
    for original, mirrored in ((4, 5),):
        mid = 0.5 * (tri.points[original] + tri.points[mirrored])
        spans = base[1:] - base[0]
        assert la.norm(spans @ (tri.points[original] - tri.points[mirrored])) <= 1e-12
        coeffs, *_ = np.linalg.lstsq(spans.T, mid - base[0], rcond=None)
        assert la.norm(base[0] + spans.T @ coeffs - mid) <= 1e-12
