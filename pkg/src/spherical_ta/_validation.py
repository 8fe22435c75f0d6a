"""Input validation helpers shared by the solvers and estimators."""

import numbers

import numpy as np
from sklearn.utils import check_array


def check_points(X, *, name="X", min_points=1):
    """Return `X` as a C-contiguous float array of shape (n_points, n_dims).

    One point per row, following the scikit-learn sample convention.
    """
    X = check_array(X, dtype=np.float64, order="C", ensure_min_samples=min_points,
                    input_name=name)
    return X


def check_query(p, n_dims, *, name="p"):
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    if p.shape[0] != n_dims:
        raise ValueError(f"{name} has {p.shape[0]} coordinates, expected {n_dims}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"{name} contains NaN or infinity")
    return p


def check_epsilon(eps, *, name="epsilon"):
    if not isinstance(eps, numbers.Real) or not 0.0 < eps < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {eps!r}")
    return float(eps)


def check_positive(value, *, name):
    if not isinstance(value, numbers.Real) or not value > 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return float(value)
