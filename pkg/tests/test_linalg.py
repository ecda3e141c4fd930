import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyshadow.linalg import (Direction, OrthoPair, normalize, orthobasis_of_complement, orthonormal_pair,
                               project_zero_sum, sample_direction, sample_directions)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def test_normalize_examples():
    d = normalize([2, 0, 0])
    assert np.array_equal(d.coords, [1, 0, 0]) and not d.zero_sum
    d = normalize([1, -1, 0])
    assert np.allclose(d.coords, [1 / math.sqrt(2), -1 / math.sqrt(2), 0], atol=1e-15) and d.zero_sum
    assert np.allclose(normalize([3, 4]).coords, [0.6, 0.8], atol=1e-15)


def test_normalize_zero_vector():
    with pytest.raises(ValueError, match="degenerate direction"):
        normalize([0, 0, 0])


def test_project_zero_sum():
    assert np.allclose(project_zero_sum([1, 0, 0]).coords, np.array([2, -1, -1]) / math.sqrt(6))
    d = project_zero_sum([1, -1])
    assert d.zero_sum and np.allclose(d.coords, [1 / math.sqrt(2), -1 / math.sqrt(2)])
    with pytest.raises(ValueError, match="collapses"):
        project_zero_sum([5, 5, 5])


def test_orthonormal_pair():
    p = orthonormal_pair([1, 0], [0, 1])
    assert np.array_equal(p.u, [1, 0]) and np.array_equal(p.v, [0, 1])
    # hand Gram-Schmidt: u = (1,1,0)/sqrt2, y - <y,u>u = (1/2,-1/2,0)
    p = orthonormal_pair([1, 1, 0], [1, 0, 0])
    assert np.allclose(p.u, np.array([1, 1, 0]) / math.sqrt(2), atol=1e-15)
    assert np.allclose(p.v, np.array([1, -1, 0]) / math.sqrt(2), atol=1e-15)
    with pytest.raises(ValueError, match="degenerate plane"):
        orthonormal_pair([1, 0], [2, 0])


def test_invariants_enforced():
    with pytest.raises(ValueError):
        Direction(np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        Direction(np.array([1.0, 0.0]), zero_sum=True)
    with pytest.raises(ValueError):
        OrthoPair([1, 0], [1, 0])


def test_sample_direction_postconditions():
    d = sample_direction(7, False, seed=3)
    assert abs(np.linalg.norm(d.coords) - 1) <= 1e-12
    z = sample_direction(7, True, seed=3)
    assert z.zero_sum and abs(z.coords.sum()) <= 1e-12
    assert sample_direction(7, True, seed=3) == z
    assert sample_direction(7, True, seed=4) != z
    with pytest.raises(ValueError):
        sample_direction(1, False, seed=0)


def test_zero_sum_sampling_is_centred():
    A = sample_directions(100_000, 6, True, seed=11)
    assert np.abs(np.linalg.norm(A, axis=1) - 1).max() <= 1e-12
    assert np.abs(A.sum(axis=1)).max() <= 1e-12
    assert np.linalg.norm(A.mean(axis=0)) <= 5e-2


def test_complement_examples():
    B = orthobasis_of_complement(np.eye(3)[:1])
    assert B.shape == (2, 3)
    assert np.abs(B @ np.eye(3)[0]).max() <= 1e-12
    assert np.allclose(B @ B.T, np.eye(2), atol=1e-12)
    b = orthobasis_of_complement(np.array([[1, 1]]) / math.sqrt(2))[0]
    assert np.allclose(np.abs(b), [1 / math.sqrt(2)] * 2) and abs(b[0] + b[1]) < 1e-12
    with pytest.raises(ValueError):
        orthobasis_of_complement(np.array([[1.0, 1.0]]))


def test_complement_parseval(rng):
    for n, k in [(5, 1), (6, 2), (9, 4), (3, 3)]:
        Q, _ = np.linalg.qr(rng.standard_normal((n, k)))
        V = Q.T
        full = np.vstack([V, orthobasis_of_complement(V, n)])
        X = rng.standard_normal((100, n))
        assert np.abs((X @ full.T) ** 2).sum(axis=1).max() > 0
        assert np.allclose(((X @ full.T) ** 2).sum(axis=1), (X ** 2).sum(axis=1), atol=1e-10 * n)


@settings(max_examples=200, deadline=None)
@given(st.lists(finite, min_size=2, max_size=12))
def test_normalize_property(x):
    x = np.array(x)
    if not np.linalg.norm(x) > 0:
        with pytest.raises(ValueError):
            normalize(x)
        return
    d = normalize(x)
    assert abs(np.linalg.norm(d.coords) - 1) <= 1e-12
    assert d.zero_sum == bool(abs(x.sum()) / np.linalg.norm(x) <= 1e-12)
    if d.zero_sum:
        assert abs(d.coords.sum()) <= 1e-12
