from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spherical_ta import exact_oracle
from spherical_ta.exceptions import SizeLimitError
from spherical_ta.oracle import exact_membership, hull_distance, robustness


def test_triangle_contains_origin():
    assert exact_oracle([[1, 0], [-1, 1], [-1, -1]], [0, 0]).inside


def test_outside_distance_one():
    res = exact_oracle([[1, 0], [1, 1]], [0, 0])
    assert not res.inside
    assert res.sq_distance == 1
    assert res.nearest == (1, 0)


def test_boundary_counts_as_inside():
    res = exact_oracle([[1, 0], [0, 1], [0, 0]], [0.5, 0.5])
    assert res.inside
    assert sum(res.coefficients) == 1


def test_size_cap():
    with pytest.raises(SizeLimitError):
        exact_oracle(np.zeros((17, 2)), [0, 0])
    with pytest.raises(SizeLimitError):
        exact_oracle(np.zeros((3, 9)), np.zeros(9))


def test_exact_membership_coefficients_are_exact():
    pts = [[0.1, 0.0], [0.0, 0.3], [-0.2, -0.2]]
    lam = exact_membership(pts, [0.0, 0.0])
    assert lam is not None
    P = [[Fraction(c) for c in row] for row in pts]
    for d in range(2):
        assert sum(l * P[i][d] for i, l in enumerate(lam)) == 0
    assert sum(lam) == 1


@given(st.integers(0, 10**6))
def test_oracle_self_consistency(seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 5)), int(rng.integers(1, 9))
    pts = rng.integers(-4, 5, size=(n, m)).astype(float)
    p = rng.integers(-2, 3, size=m).astype(float)
    res = exact_oracle(pts, p)
    if res.inside:
        assert res.sq_distance == 0
    else:
        assert res.sq_distance > 0
        # nearest point defines a separating direction: (nearest - p) . (v - nearest) >= 0
        q = [Fraction(c) for c in p]
        d = [a - b for a, b in zip(res.nearest, q)]
        for v in pts:
            assert sum(di * (Fraction(vi) - ni) for di, vi, ni in zip(d, v, res.nearest)) >= 0
        assert sum(c * c for c in d) == res.sq_distance


@given(st.integers(0, 10**6))
def test_hull_distance_agrees_with_exact(seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(6, 3))
    p = rng.normal(size=3) * 1.5
    dist, lam = hull_distance(pts, p)
    assert dist == pytest.approx(exact_oracle(pts, p).distance, abs=1e-7)
    assert lam.min() >= 0 and lam.sum() == pytest.approx(1.0)


def test_robustness_unit_square():
    sq = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    # a corner to the diagonal of the opposite triangle
    assert robustness(sq, range(4)) == pytest.approx(np.sqrt(0.5), abs=1e-9)
