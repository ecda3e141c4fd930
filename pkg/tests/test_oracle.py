import math

import numpy as np
import pytest

from polyshadow.linalg import orthobasis_of_complement
from polyshadow.oracle import (Polygon2, VPolytope, convex_hull_2d, hull_area_2d, membership_in_hull, shadow_area_2d,
                               shadow_volume_mc, shoelace, standard_body)


def test_hull_and_shoelace():
    sq = [[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5], [0.5, 0]]
    area, poly = hull_area_2d(sq)
    assert area == 1.0 and len(poly) == 4
    assert shoelace(poly.vertices) > 0
    assert shoelace([[0, 0], [0, 1], [1, 1], [1, 0]]) == -1.0
    assert hull_area_2d([[0, 0], [1, 1], [2, 2]])[0] == 0.0


def test_hull_contains_all_points(rng):
    pts = rng.standard_normal((300, 2))
    hull = convex_hull_2d(pts)
    W = np.roll(hull, -1, axis=0)
    for p in pts:
        cross = (W[:, 0] - hull[:, 0]) * (p[1] - hull[:, 1]) - (W[:, 1] - hull[:, 1]) * (p[0] - hull[:, 0])
        assert cross.min() >= -1e-12


def test_polygon_validation():
    with pytest.raises(ValueError):
        Polygon2(np.array([[0, 0], [0, 1], [1, 1], [1, 0]], dtype=float))
    with pytest.raises(ValueError):
        VPolytope(np.zeros((0, 3)))


def test_standard_bodies():
    assert standard_body("cube", 3).vertices.shape == (8, 3)
    assert standard_body("cross", 4).vertices.shape == (8, 4)
    assert np.abs(standard_body("simplex_centered", 3).vertices.sum(axis=1)).max() < 1e-15
    with pytest.raises(ValueError):
        standard_body("cube", 21)
    with pytest.raises(ValueError):
        standard_body("ball", 3)


def test_shadow_area_coordinate_plane():
    assert shadow_area_2d(standard_body("cube", 4), (np.eye(4)[0], np.eye(4)[1])) == pytest.approx(1.0)
    assert shadow_area_2d(standard_body("cross", 3), (np.eye(3)[0], np.eye(3)[1])) == pytest.approx(2.0)


def test_membership():
    pts = standard_body("cube", 3).vertices
    assert membership_in_hull([0.1, -0.2, 0.49], pts)
    assert not membership_in_hull([0.6, 0, 0], pts)
    assert membership_in_hull([0.5, 0.5, 0.5], pts)
    tri = np.array([[0.0, 0], [1, 0], [0, 1]])
    assert membership_in_hull([0.25, 0.25], tri)
    assert not membership_in_hull([0.6, 0.6], tri)
    with pytest.raises(ValueError):
        membership_in_hull([0, 0, 0], tri)


def test_mc_cube_volume():
    est = shadow_volume_mc(standard_body("cube", 3), np.eye(3), 50_000, seed=1)
    assert abs(est.value - 1.0) <= 4 * est.stderr + 1e-6
    again = shadow_volume_mc(standard_body("cube", 3), np.eye(3), 50_000, seed=1)
    assert again.value == est.value and again.hits == est.hits


def test_mc_simplex_volume():
    # the 3-simplex inside its own hyperplane has volume sqrt(4)/3!
    basis = orthobasis_of_complement(np.ones((1, 4)) / 2)
    est = shadow_volume_mc(standard_body("simplex", 3), basis, 100_000, seed=2)
    assert abs(est.value - 1 / 3) <= 4 * est.stderr


def test_mc_dimension_limits():
    with pytest.raises(ValueError):
        shadow_volume_mc(standard_body("cube", 3), np.eye(3)[:2], 100)
    with pytest.raises(ValueError):
        shadow_volume_mc(standard_body("cube", 3), np.array([[1, 1, 0], [0, 0, 1], [1, 0, 0]]), 100)
