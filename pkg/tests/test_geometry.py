import numpy as np
import numpy.linalg as la
import pytest

from mediandual.geometry import (
    DegenerateSimplexError,
    altitude,
    generalized_cross,
    is_degenerate,
    opposite_facet_normal,
    simplex_hypervolume,
)


def unit_right_triangle():
    return np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


def standard_simplex(d):
    return np.vstack([np.zeros(d), np.eye(d)])


def test_cross_coordinate_planes():
    e = np.eye(4)
    assert np.allclose(generalized_cross(e[1:]), [1.0, 0.0, 0.0, 0.0])
    assert np.allclose(generalized_cross(np.eye(3)[:2]), [0.0, 0.0, 1.0])


def test_cross_4d_hand_expansion():
    # Cofactor expansion done by hand; cross-checked below by orthogonality.
    v = np.array([[-1.0, 1.0, 0.0, 0.0], [-1.0, 0.0, 1.0, 0.0], [-1.0, 0.0, 0.0, 1.0]])
    n = generalized_cross(v)
    assert np.allclose(n, [1.0, 1.0, 1.0, 1.0])
    assert np.allclose(v @ n, 0.0)


def test_cross_2d_perpendicular():
    n = generalized_cross(np.array([[-1.0, 1.0]]))
    assert np.allclose(n, [1.0, 1.0])


def test_cross_dimension_mismatch():
    with pytest.raises(ValueError):
        generalized_cross(np.ones((2, 4)))
    with pytest.raises(ValueError):
        generalized_cross(np.ones((3, 3)))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cross_orthogonal_to_inputs(d):
    rng = np.random.default_rng(100 + d)
    for _ in range(20):
        v = rng.uniform(-1.0, 1.0, size=(d - 1, d))
        n = generalized_cross(v)
        assert np.all(np.abs(v @ n) <= 1e-12 * la.norm(n) * la.norm(v, axis=1) + 1e-300)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cross_alternating(d):
    rng = np.random.default_rng(200 + d)
    v = rng.uniform(-1.0, 1.0, size=(d - 1, d))
    if d == 2:
        return  # nothing to swap
    swapped = v.copy()
    swapped[[0, 1]] = swapped[[1, 0]]
    assert np.allclose(generalized_cross(swapped), -generalized_cross(v))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cross_multilinear(d):
    rng = np.random.default_rng(250 + d)
    v = rng.uniform(-1.0, 1.0, size=(d - 1, d))
    u = rng.uniform(-1.0, 1.0, size=d)
    a, b = 0.7, -1.3
    combined = v.copy()
    combined[0] = a * v[0] + b * u
    alt = v.copy()
    alt[0] = u
    expected = a * generalized_cross(v) + b * generalized_cross(alt)
    assert np.allclose(generalized_cross(combined), expected, atol=1e-13)


def test_cross_magnitude_is_parallelotope_volume():
    # Gram-determinant oracle for the spanned (d-1)-parallelotope volume.
    for d in (2, 3, 4, 5):
        rng = np.random.default_rng(300 + d)
        v = rng.uniform(-1.0, 1.0, size=(d - 1, d))
        gram_vol = np.sqrt(la.det(v @ v.T))
        assert la.norm(generalized_cross(v)) == pytest.approx(gram_vol, rel=1e-12)


def test_cross_batched_matches_single():
    for d in (2, 3, 4, 5):
        rng = np.random.default_rng(400 + d)
        stack = rng.uniform(-1.0, 1.0, size=(7, d - 1, d))
        batched = generalized_cross(stack)
        for i in range(7):
            assert np.allclose(batched[i], generalized_cross(stack[i]))


def test_hypervolume_basic():
    assert simplex_hypervolume(unit_right_triangle()) == pytest.approx(0.5)
    assert simplex_hypervolume(standard_simplex(4)) == pytest.approx(1.0 / 24.0)
    squashed = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 1.0]])
    assert simplex_hypervolume(squashed) == 0.0
    assert is_degenerate(squashed)


def test_opposite_facet_normal_pentatope():
    n = opposite_facet_normal(standard_simplex(4), 0)
    assert np.allclose(n, np.full(4, 1.0 / 6.0), atol=1e-15)
    # magnitude equals the volume of the opposite tetrahedron {e1..e4}
    assert la.norm(n) == pytest.approx(1.0 / 3.0, rel=1e-14)


def test_opposite_facet_normal_triangle():
    n = opposite_facet_normal(unit_right_triangle(), 0)
    assert np.allclose(n, [1.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_opposite_facet_normal_points_away(d):
    rng = np.random.default_rng(500 + d)
    p = rng.uniform(-1.0, 1.0, size=(d + 1, d))
    for j in range(d + 1):
        n = opposite_facet_normal(p, j)
        for k in range(d + 1):
            if k != j:
                assert (p[k] - p[j]) @ n > 0.0


def test_opposite_facet_normal_degenerate_returns_zero():
    squashed = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    assert np.allclose(opposite_facet_normal(squashed, 0), 0.0)
    assert is_degenerate(squashed)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_facet_normals_close_up(d):
    # Outward normals of a closed simplex boundary sum to zero.
    rng = np.random.default_rng(600 + d)
    p = rng.uniform(-1.0, 1.0, size=(d + 1, d))
    normals = [opposite_facet_normal(p, j) for j in range(d + 1)]
    total_area = sum(la.norm(n) for n in normals)
    assert la.norm(np.sum(normals, axis=0)) <= 1e-12 * total_area


def test_altitude_pentatope():
    p = standard_simplex(4)
    for k in (1, 2, 3, 4):
        assert altitude(p, 0, k) == pytest.approx(0.5, rel=1e-14)
    # hypervolume = altitude * |facet| / d
    assert 1.0 / 24.0 == pytest.approx(0.5 * (1.0 / 3.0) / 4.0, rel=1e-14)


def test_altitude_triangle():
    assert altitude(unit_right_triangle(), 0, 1) == pytest.approx(1.0 / np.sqrt(2.0))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_altitude_volume_identity(d):
    rng = np.random.default_rng(700 + d)
    p = rng.uniform(-1.0, 1.0, size=(d + 1, d))
    vol = simplex_hypervolume(p)
    for j in range(d + 1):
        n = la.norm(opposite_facet_normal(p, j))
        for k in range(d + 1):
            if k != j:
                assert vol == pytest.approx(altitude(p, j, k) * n / d, rel=1e-12)


def test_altitude_degenerate_raises():
    squashed = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    with pytest.raises(DegenerateSimplexError):
        altitude(squashed, 0, 1)
