import pytest

from torrigid.toric import affine_cone, validate_fan

SQUARE_RAYS = [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)]
HEXAGON_RAYS = [(1, 0, 1), (1, 1, 1), (0, 1, 1), (-1, 0, 1), (-1, -1, 1), (0, -1, 1)]
THIRD_RAYS = [(1, 0, 1), (0, 1, 1), (-1, -1, 1)]  # index-3 simplicial cone


@pytest.fixture
def p2_fan():
    return validate_fan([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)], name="P2")


@pytest.fixture
def p4_fan():
    rays = [
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (-1, -1, -1, -1),
    ]
    cones = [tuple(j for j in range(5) if j != i) for i in range(5)]
    return validate_fan(rays, cones, name="P4")


@pytest.fixture
def f2_fan():
    return validate_fan(
        [(1, 0), (0, 1), (-1, 2), (0, -1)],
        [(0, 1), (1, 2), (2, 3), (0, 3)],
        name="F2",
    )


@pytest.fixture
def square_cone():
    return affine_cone(SQUARE_RAYS, name="square")


@pytest.fixture
def hexagon_cone():
    return affine_cone(HEXAGON_RAYS, name="hexagon")


@pytest.fixture
def third_cone():
    return affine_cone(THIRD_RAYS, name="third")


@pytest.fixture
def a1_cone():
    return affine_cone([(1, 0), (1, 2)], name="A1")
