import numpy as np
import pytest

from mediandual.mesh import build_triangulation


@pytest.fixture
def pentatope():
    points = np.vstack([np.zeros(4), np.eye(4)])
    return build_triangulation(4, points, [[0, 1, 2, 3, 4]])


@pytest.fixture
def right_triangle():
    return build_triangulation(2, [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], [[0, 1, 2]])


@pytest.fixture
def mirrored_pair():
    points = np.vstack([np.zeros(4), np.eye(4), np.full(4, 0.5)])
    return build_triangulation(4, points, [[0, 1, 2, 3, 4], [1, 2, 3, 4, 5]])


@pytest.fixture
def unit_square():
    # Two triangles; the diagonal (0, 3) is the one interior edge.
    points = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
    return build_triangulation(2, points, [[0, 1, 3], [0, 2, 3]])
