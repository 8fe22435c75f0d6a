"""Minimum-volume enclosing ellipsoid, optionally on a vertex-reduced point set."""

from dataclasses import dataclass

import numpy as np

from ._validation import check_epsilon
from .avta import avta_plus
from .exceptions import DimensionDeficientError
from .geometry import PointSet

RANK_RTOL = 1e-10


@dataclass(frozen=True)
class Ellipsoid:
    """The set ``{x : (x - b)^T M (x - b) <= 1}``."""

    shape_M: np.ndarray
    center_b: np.ndarray
    iterations: int = 0

    def __post_init__(self):
        M = np.asarray(self.shape_M, dtype=np.float64)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("shape_M must be square")
        if not np.allclose(M, M.T, atol=1e-10 * max(1.0, np.abs(M).max())):
            raise ValueError("shape_M must be symmetric")
        M = 0.5 * (M + M.T)
        if np.linalg.eigvalsh(M).min() <= 0:
            raise ValueError("shape_M must be positive definite")
        object.__setattr__(self, "shape_M", M)
        object.__setattr__(self, "center_b", np.asarray(self.center_b, dtype=np.float64))

    def level(self, X):
        """``(x - b)^T M (x - b)`` for each row of X."""
        D = np.atleast_2d(np.asarray(X, dtype=np.float64)) - self.center_b
        return np.einsum("ij,jk,ik->i", D, self.shape_M, D)

    def contains(self, X, factor=1.0):
        return bool(np.all(self.level(X) <= factor))

    @property
    def volume_proxy(self):
        """``det(M)^(-1/2)``, proportional to the volume."""
        sign, logdet = np.linalg.slogdet(self.shape_M)
        return float(np.exp(-0.5 * logdet))


def _check_span(X):
    centered = X - X.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    d = X.shape[1]
    if len(sv) < d or sv[-1] <= RANK_RTOL * max(sv[0], 1e-300):
        raise DimensionDeficientError("points do not affinely span the space")


def mvee(s, eps_mvee=0.01, max_iterations=None):
    """Khachiyan's ascent on the dual of the log-det problem.

    Stops once every point satisfies ``(x - b)^T M (x - b) <= 1 + eps_mvee``.
    """
    eps_mvee = check_epsilon(eps_mvee)
    X = s.points if isinstance(s, PointSet) else np.asarray(s, dtype=np.float64)
    n, d = X.shape
    if n < d + 1:
        raise DimensionDeficientError(f"{n} points cannot span dimension {d}")
    _check_span(X)

    Q = np.hstack([X, np.ones((n, 1))])
    u = np.full(n, 1.0 / n)
    # kappa <= (1 + tol)(d + 1) is exactly level <= 1 + eps_mvee
    tol = eps_mvee * d / (d + 1)
    limit = (1.0 + tol) * (d + 1)
    cap = max_iterations or 100000
    it = 0
    while True:
        G = (Q * u[:, None]).T @ Q
        L = np.linalg.cholesky(G)
        Z = np.linalg.solve(L, Q.T)
        kappa = np.einsum("ij,ij->j", Z, Z)
        j = int(np.argmax(kappa))
        if kappa[j] <= limit or it >= cap:
            break
        step = (kappa[j] - d - 1.0) / ((d + 1.0) * (kappa[j] - 1.0))
        u *= 1.0 - step
        u[j] += step
        it += 1

    b = u @ X
    cov = (X * u[:, None]).T @ X - np.outer(b, b)
    M = np.linalg.inv(cov) / d
    return Ellipsoid(0.5 * (M + M.T), b, it)


def avta_plus_mvee(s, cfg, eps_mvee=0.01):
    """Run AVTA+ and fit the ellipsoid to the discovered vertices only."""
    s = s if isinstance(s, PointSet) else PointSet(s)
    report = avta_plus(s, cfg)
    idx = np.sort(np.asarray(report.vertex_indices))
    return mvee(s.subset(idx), eps_mvee)
