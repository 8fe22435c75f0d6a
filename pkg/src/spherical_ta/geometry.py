"""Point-set primitives and the pivot / witness predicates of the Triangle Algorithm.

Points are stored one per row (``points[i]`` is the i-th point), matching the
scikit-learn sample convention used throughout the package.
"""

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_points, check_query
from .exceptions import DegenerateGeometryError

# Segments shorter than this are treated as a single point.
SEGMENT_EPS = 1e-14


@dataclass(frozen=True)
class PointSet:
    """Immutable finite point set with cached Euclidean norms.

    Parameters
    ----------
    points : array-like of shape (n, m)
        One point per row.
    """

    points: np.ndarray
    norms: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        pts = np.array(check_points(self.points, name="points"), copy=True)
        pts.setflags(write=False)
        norms = np.linalg.norm(pts, axis=1)
        norms.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "norms", norms)

    @classmethod
    def from_columns(cls, matrix):
        """Build from an m x n matrix whose columns are the points."""
        return cls(np.asarray(matrix, dtype=np.float64).T)

    @classmethod
    def _trusted(cls, points):
        """Wrap an already-validated float64 array without copying or checks."""
        obj = object.__new__(cls)
        pts = np.ascontiguousarray(points, dtype=np.float64)
        norms = np.sqrt(np.einsum("ij,ij->i", pts, pts))
        object.__setattr__(obj, "points", pts)
        object.__setattr__(obj, "norms", norms)
        return obj

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def m(self):
        return self.points.shape[1]

    def __len__(self):
        return self.n

    def subset(self, indices):
        return PointSet(self.points[np.asarray(indices, dtype=np.intp)])


@dataclass
class Iterate:
    """A point of conv(S) together with its convex coefficients over S.

    Weights are kept densely (length n); :attr:`coeffs` gives the sparse view.
    """

    coords: np.ndarray
    weights: np.ndarray

    @classmethod
    def at_vertex(cls, s, index):
        w = np.zeros(s.n)
        w[index] = 1.0
        return cls(np.array(s.points[index], dtype=np.float64), w)

    @classmethod
    def from_weights(cls, s, weights):
        w = np.asarray(weights, dtype=np.float64)
        return cls(w @ s.points, w.copy())

    @property
    def coeffs(self):
        idx = np.flatnonzero(self.weights)
        return [(int(i), float(self.weights[i])) for i in idx]

    @property
    def support(self):
        return np.flatnonzero(self.weights)

    def is_valid(self, s, tol=1e-9):
        """Check the simplex and coordinate-consistency invariants."""
        w = self.weights
        if w.shape != (s.n,) or np.any(w < -tol) or abs(w.sum() - 1.0) > tol:
            return False
        scale = 1.0 + float(s.norms.max())
        return bool(np.linalg.norm(w @ s.points - self.coords) <= tol * scale)


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : normal . x = offset}."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=np.float64)
        if not np.any(normal):
            raise DegenerateGeometryError("hyperplane normal is zero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))

    def evaluate(self, x):
        """Signed value ``normal . x - offset`` for a point or a row stack."""
        return np.asarray(x, dtype=np.float64) @ self.normal - self.offset

    def separates(self, p, points, slack=0.0):
        """True if `p` and every row of `points` lie strictly on opposite sides.

        `slack` is a margin each side must clear; negative values tolerate
        round-off of that size.
        """
        vp = float(self.evaluate(p))
        vs = self.evaluate(points)
        if vp < 0:
            return bool(vp < -slack and np.all(vs > slack))
        return bool(vp > slack and np.all(vs < -slack))


@dataclass(frozen=True)
class WitnessCertificate:
    witness: Iterate
    plane: Hyperplane


def nearest_on_segment(p, a, b):
    """Closest point to `p` on the closed segment [a, b].

    Returns
    -------
    point : ndarray
    step : float
        The clamped coefficient alpha in ``(1 - alpha) a + alpha b``.
    """
    p, a, b = (np.asarray(x, dtype=np.float64) for x in (p, a, b))
    ab = b - a
    denom = float(ab @ ab)
    if denom <= SEGMENT_EPS**2:
        return a.copy(), 0.0
    step = min(1.0, max(0.0, float((p - a) @ ab) / denom))
    return a + step * ab, step


def is_pivot(p, p_prime, v):
    p, p_prime, v = (np.asarray(x, dtype=np.float64) for x in (p, p_prime, v))
    return bool((p - p_prime) @ v >= 0.5 * (p @ p - p_prime @ p_prime))


def is_strict_pivot(p, p_prime, v):
    """True iff the angle p'-p-v is at least a right angle."""
    p, p_prime, v = (np.asarray(x, dtype=np.float64) for x in (p, p_prime, v))
    d = p_prime - p
    if not np.any(d):
        raise DegenerateGeometryError("already at query point: p' equals p")
    return bool(d @ (v - p) <= 0.0)


def pivot_scores(points, p, p_prime):
    """Return ``(p' - p) . (v_i - p)`` for every row `v_i` of `points`.

    A point is a strict pivot iff its score is <= 0 and a pivot iff its score
    is <= ||p' - p||^2 / 2; every point scoring above that bound makes p' a
    witness.
    """
    d = p_prime - p
    return points @ d - d @ p


def find_strict_pivot(p, iterate, s, rule="greedy"):
    """Index of a strict pivot for the iterate, or None if there is none.

    The greedy rule takes the most negative score (lowest index on ties);
    ``"first"`` takes the lowest-indexed qualifying point.
    """
    p = check_query(p, s.m)
    scores = pivot_scores(s.points, p, iterate.coords)
    if rule == "greedy":
        j = int(np.argmin(scores))
        return j if scores[j] <= 0.0 else None
    if rule == "first":
        hits = np.flatnonzero(scores <= 0.0)
        return int(hits[0]) if hits.size else None
    raise ValueError(f"unknown pivot rule {rule!r}")


def bisector_hyperplane(p, p_prime):
    """Orthogonal bisector of the segment p p'.

    The normal is ``p - p'`` and the offset ``(|p|^2 - |p'|^2) / 2``, so p
    evaluates positive and a witness's point set evaluates negative.
    """
    p = np.asarray(p, dtype=np.float64)
    p_prime = np.asarray(p_prime, dtype=np.float64)
    if np.array_equal(p, p_prime):
        raise DegenerateGeometryError("degenerate bisector: p' equals p")
    return Hyperplane(p - p_prime, 0.5 * (p @ p - p_prime @ p_prime))


def verify_witness(p, p_prime, s, slack=0.0):
    """Check ``|p' - v_i| < |p - v_i| - slack`` for every point of `s`."""
    pts = s.points if isinstance(s, PointSet) else np.asarray(s, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    p_prime = np.asarray(p_prime, dtype=np.float64)
    near = np.linalg.norm(pts - p_prime, axis=1)
    far = np.linalg.norm(pts - p, axis=1)
    return bool(np.all(near < far - slack))
