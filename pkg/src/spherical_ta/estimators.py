"""scikit-learn style wrappers around the solvers."""

import numpy as np
from sklearn.base import BaseEstimator, OutlierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_points
from .avta import VERTEX, AvtaConfig, enumerate_vertices
from .exceptions import IterationLimitError
from .geometry import PointSet
from .mvee import mvee
from .solver import SolverConfig, Status, solve


class TriangleMembership(BaseEstimator):
    """Approximate membership in the convex hull of the training points.

    Parameters
    ----------
    epsilon : float, default=0.01
        Relative precision; a query is reported inside once a hull point
        within ``epsilon * R`` of it is found, R being its largest distance
        to a training point.
    oracle : {"spherical", "ta"}, default="spherical"
    max_iterations : int, optional
    pivot_rule : {"greedy", "first"}, default="greedy"
    """

    def __init__(self, epsilon=0.01, oracle="spherical", max_iterations=None, pivot_rule="greedy"):
        self.epsilon = epsilon
        self.oracle = oracle
        self.max_iterations = max_iterations
        self.pivot_rule = pivot_rule

    def fit(self, X, y=None):
        X = check_points(X, name="X")
        self.points_ = PointSet(X)
        self.n_features_in_ = X.shape[1]
        self.config_ = SolverConfig(epsilon=self.epsilon, max_iterations=self.max_iterations,
                                    pivot_rule=self.pivot_rule)
        return self

    def query(self, p):
        """Full outcome (verdict, coefficients, certificate) for a single point."""
        check_is_fitted(self, "points_")
        return solve(self.points_, p, self.config_, oracle=self.oracle)

    def predict(self, X):
        """Boolean array: True where the row is (approximately) inside the hull."""
        check_is_fitted(self, "points_")
        X = check_points(X, name="X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        out = np.empty(len(X), dtype=bool)
        for i, p in enumerate(X):
            res = self.query(p)
            if res.status is Status.LIMIT:
                raise IterationLimitError(f"iteration cap reached on row {i}", outcome=res, index=i)
            out[i] = res.status is Status.INSIDE
        return out


class VertexEnumerator(TransformerMixin, BaseEstimator):
    """Finds the vertices of the convex hull of the rows of X.

    ``transform`` keeps only the vertex rows, so it must be applied to the
    array the estimator was fitted on.
    """

    def __init__(self, gamma=0.1, oracle="spherical", seed=0, max_iterations=None):
        self.gamma = gamma
        self.oracle = oracle
        self.seed = seed
        self.max_iterations = max_iterations

    def fit(self, X, y=None):
        X = check_points(X, name="X")
        cfg = AvtaConfig(gamma=self.gamma, oracle=self.oracle, seed=self.seed,
                         max_iterations=self.max_iterations)
        self.report_ = enumerate_vertices(PointSet(X), cfg)
        self.vertex_indices_ = np.sort(np.asarray(self.report_.vertex_indices, dtype=np.intp))
        self.vertices_ = X[self.vertex_indices_]
        self.labels_ = np.array([lab == VERTEX for lab in self.report_.labels])
        self.n_features_in_ = X.shape[1]
        self.n_samples_fit_ = X.shape[0]
        return self

    def get_support(self, indices=False):
        check_is_fitted(self, "vertex_indices_")
        return self.vertex_indices_ if indices else self.labels_

    def transform(self, X):
        check_is_fitted(self, "vertex_indices_")
        X = check_points(X, name="X")
        if X.shape[0] != self.n_samples_fit_:
            raise ValueError("transform expects the rows the estimator was fitted on")
        return X[self.vertex_indices_]


class MinVolumeEllipsoid(OutlierMixin, BaseEstimator):
    """Minimum-volume enclosing ellipsoid of the training rows.

    With ``gamma`` set, redundant rows are first removed by vertex
    enumeration; the ellipsoid is unchanged since it only has to cover
    the hull.
    """

    def __init__(self, eps_mvee=0.01, gamma=None, oracle="spherical", seed=0):
        self.eps_mvee = eps_mvee
        self.gamma = gamma
        self.oracle = oracle
        self.seed = seed

    def fit(self, X, y=None):
        X = check_points(X, name="X")
        used = np.arange(len(X))
        if self.gamma is not None:
            cfg = AvtaConfig(gamma=self.gamma, oracle=self.oracle, seed=self.seed)
            used = np.sort(enumerate_vertices(PointSet(X), cfg).vertex_indices)
        self.ellipsoid_ = mvee(X[used], self.eps_mvee)
        self.shape_ = self.ellipsoid_.shape_M
        self.center_ = self.ellipsoid_.center_b
        self.support_ = used
        self.n_features_in_ = X.shape[1]
        return self

    def score_samples(self, X):
        """The quadratic level ``(x - c)^T M (x - c)``; at most 1 + eps_mvee on the hull."""
        check_is_fitted(self, "ellipsoid_")
        return self.ellipsoid_.level(check_points(X, name="X"))

    def predict(self, X):
        """+1 for rows inside the (1 + eps_mvee)-scaled ellipsoid, -1 otherwise."""
        inside = self.score_samples(X) <= 1.0 + self.eps_mvee
        return np.where(inside, 1, -1)
