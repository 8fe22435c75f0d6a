import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from spherical_ta import MinVolumeEllipsoid, TriangleMembership, VertexEnumerator
from spherical_ta.exceptions import IterationLimitError
from spherical_ta.generators import GenSpec, gen_irredundancy_instance

SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)


def test_membership_predict():
    est = TriangleMembership(epsilon=0.001).fit(SQUARE)
    got = est.predict([[0.5, 0.5], [2.0, 2.0], [0.0, 0.0], [-0.1, 0.5]])
    np.testing.assert_array_equal(got, [True, False, True, False])
    assert est.query([0.5, 0.5]).is_inside


def test_membership_feature_check():
    est = TriangleMembership().fit(SQUARE)
    with pytest.raises(ValueError):
        est.predict([[1.0, 2.0, 3.0]])


def test_membership_limit_raises():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(30, 8))
    est = TriangleMembership(epsilon=1e-6, max_iterations=2).fit(X)
    with pytest.raises(IterationLimitError) as err:
        est.predict(X.mean(axis=0, keepdims=True))
    assert err.value.index == 0


def test_not_fitted():
    with pytest.raises(NotFittedError):
        TriangleMembership().predict(SQUARE)
    with pytest.raises(NotFittedError):
        VertexEnumerator().transform(SQUARE)


def test_clone_and_params():
    for est in (TriangleMembership(epsilon=0.05, oracle="ta"), VertexEnumerator(gamma=0.2),
                MinVolumeEllipsoid(eps_mvee=0.005, gamma=0.1)):
        c = clone(est)
        assert c.get_params() == est.get_params()


def test_vertex_enumerator():
    inst = gen_irredundancy_instance(GenSpec("sphere", 3, 40, K=10, seed=1, min_robustness=1e-6))
    X = inst.points.points
    est = VertexEnumerator(gamma=0.5 * inst.robustness)
    Xt = est.fit_transform(X)
    np.testing.assert_array_equal(est.vertex_indices_, inst.vertex_indices)
    np.testing.assert_array_equal(Xt, X[inst.vertex_indices])
    assert est.get_support().sum() == 10
    np.testing.assert_array_equal(est.get_support(indices=True), inst.vertex_indices)
    with pytest.raises(ValueError):
        est.transform(X[:5])


def test_min_volume_ellipsoid():
    rng = np.random.default_rng(0)
    X = np.vstack([SQUARE, 0.1 + 0.8 * rng.random((50, 2))])
    est = MinVolumeEllipsoid(eps_mvee=1e-3, gamma=0.05).fit(X)
    np.testing.assert_allclose(est.center_, [0.5, 0.5], atol=1e-6)
    np.testing.assert_array_equal(est.support_, [0, 1, 2, 3])
    assert np.all(est.predict(X) == 1)
    assert est.predict([[3.0, 3.0]])[0] == -1
    assert est.score_samples(SQUARE).max() <= 1 + 1e-3
