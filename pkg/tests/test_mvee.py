import numpy as np
import pytest

from spherical_ta import AvtaConfig, Ellipsoid, avta_plus_mvee, mvee
from spherical_ta.exceptions import DimensionDeficientError

SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)


def test_square():
    ell = mvee(SQUARE, 1e-3)
    np.testing.assert_allclose(ell.center_b, [0.5, 0.5], atol=1e-9)
    np.testing.assert_allclose(ell.shape_M, np.diag([2.0, 2.0]), rtol=1e-3)
    assert ell.contains(SQUARE, 1 + 1e-3)


def test_regular_simplex_centroid():
    V = np.array([[1, 0], [-0.5, np.sqrt(3) / 2], [-0.5, -np.sqrt(3) / 2]]) + 3.0
    ell = mvee(V, 1e-3)
    np.testing.assert_allclose(ell.center_b, V.mean(axis=0), atol=1e-9)


def test_line_is_deficient():
    with pytest.raises(DimensionDeficientError):
        mvee(np.array([[0, 0], [1, 1], [2, 2], [3, 3]], dtype=float))
    with pytest.raises(DimensionDeficientError):
        mvee(np.array([[0, 0], [1, 1]], dtype=float))


def test_ellipsoid_validation():
    with pytest.raises(ValueError):
        Ellipsoid(np.array([[1.0, 0.5], [0.0, 1.0]]), np.zeros(2))
    with pytest.raises(ValueError):
        Ellipsoid(-np.eye(2), np.zeros(2))
    e = Ellipsoid(np.eye(2) * 4, np.zeros(2))
    assert e.volume_proxy == pytest.approx(0.25)
    np.testing.assert_allclose(e.level([[0.5, 0.0], [0.0, 0.0]]), [1.0, 0.0])


@pytest.mark.parametrize("eps", [0.01, 0.005, 0.001])
def test_containment(eps):
    rng = np.random.default_rng(0)
    X = rng.normal(size=(300, 4))
    ell = mvee(X, eps)
    assert ell.level(X).max() <= 1 + eps + 1e-12


def test_pipeline_square_with_interior():
    rng = np.random.default_rng(1)
    X = np.vstack([SQUARE, 0.05 + 0.9 * rng.random((100, 2))])
    a = avta_plus_mvee(X, AvtaConfig(gamma=0.05), 1e-3)
    b = mvee(SQUARE, 1e-3)
    np.testing.assert_allclose(a.shape_M, b.shape_M, atol=1e-6)
    np.testing.assert_allclose(a.center_b, b.center_b, atol=1e-6)
    assert a.contains(X, (1 + 1e-3) * (1 + 1e-6))


def test_pipeline_without_redundancy():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(12, 3))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    a = avta_plus_mvee(X, AvtaConfig(gamma=1e-3), 0.01)
    b = mvee(X, 0.01)
    np.testing.assert_allclose(a.shape_M, b.shape_M)
    np.testing.assert_allclose(a.center_b, b.center_b)


def test_volume_not_larger_than_full():
    rng = np.random.default_rng(3)
    V = rng.normal(size=(20, 3))
    X = np.vstack([V, rng.dirichlet(np.ones(20), 200) @ V])
    full = mvee(X, 0.01)
    pipe = avta_plus_mvee(X, AvtaConfig(gamma=1e-3), 0.01)
    # both are (1 + eps)-approximate optima of the same problem
    assert pipe.volume_proxy <= full.volume_proxy * (1.01) ** 1.5
