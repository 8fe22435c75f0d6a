"""Random instance generators with recorded ground truth.

Every generator is a pure function of its :class:`GenSpec`; the same spec
always produces byte-identical arrays.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .geometry import PointSet
from .lp import DEFAULT_BOUND, LpFeasInstance, StrictLpInstance
from .oracle import MAX_EXACT_DIM, MAX_EXACT_POINTS, exact_oracle, hull_distance, robustness

KINDS = ("gaussian", "sphere", "uniform")
VERTEX_TOL = 1e-7


@dataclass(frozen=True)
class GenSpec:
    kind: str
    m: int
    n: int
    K: int | None = None
    redundant_fraction: float = 0.0
    feasible: bool = True
    seed: int = 0
    recipe: str = "certified"
    min_robustness: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        if self.K is not None and not 1 <= self.K <= self.n:
            raise ValueError("K must lie in [1, n]")
        if not 0.0 <= self.redundant_fraction < 1.0:
            raise ValueError("redundant_fraction must lie in [0, 1)")
        if self.recipe not in ("direct", "certified"):
            raise ValueError("recipe must be 'direct' or 'certified'")

    @property
    def n_vertices(self):
        if self.K is not None:
            return self.K
        return max(1, int(round(self.n * (1.0 - self.redundant_fraction))))


@dataclass
class ChmInstance:
    points: PointSet
    query: np.ndarray
    inside: bool
    coefficients: np.ndarray | None = None
    margin: float | None = None


@dataclass
class LpCase:
    instance: object
    feasible: bool
    solution: np.ndarray | None = None


@dataclass
class IrredundancyInstance:
    points: PointSet
    vertex_indices: np.ndarray
    robustness: float | None = None


def _draw(kind, rng, rows, cols):
    if kind == "uniform":
        return rng.random((rows, cols))
    X = rng.standard_normal((rows, cols))
    if kind == "sphere":
        X /= np.linalg.norm(X, axis=1, keepdims=True)
    return X


def _simplex_weights(rng, size):
    # uniform(0,1) entries rescaled to sum to one
    w = rng.random(size)
    return w / w.sum(axis=-1, keepdims=True)


def gen_chm_instance(spec):
    """Points one per row and a query inside or outside their hull.

    Outside queries are pushed along the mean direction past the supporting
    hyperplane by a quarter of the spread, so the distance to the hull is at
    least 0.1 R. Small instances record the exact distance instead.
    """
    rng = np.random.default_rng(spec.seed)
    V = _draw(spec.kind, rng, spec.n, spec.m)
    if spec.feasible:
        alpha = _simplex_weights(rng, spec.n)
        return ChmInstance(PointSet(V), alpha @ V, True, alpha, 0.0)

    c = V.mean(axis=0)
    w = c.copy()
    if np.linalg.norm(w) < 1e-12:
        w = rng.standard_normal(spec.m)
    w /= np.linalg.norm(w)
    spread = float(np.linalg.norm(V - c, axis=1).max())
    reach = float(((V - c) @ w).max())
    q = c + (reach + 0.25 * max(spread, 1e-12)) * w
    margin = 0.25 * spread
    if spec.m <= MAX_EXACT_DIM and spec.n <= MAX_EXACT_POINTS:
        res = exact_oracle(V, q)
        if res.inside:
            raise AssertionError("displaced query landed inside the hull")
        margin = res.distance
    return ChmInstance(PointSet(V), q, False, None, margin)


def _lp_feasible(A, b, M):
    m, n = A.shape
    res = linprog(np.zeros(n), A_ub=np.ones((1, n)), b_ub=[M], A_eq=A, b_eq=b,
                  bounds=(0, None), method="highs")
    return res.status == 0


def gen_lp_instance(spec, bound_M=DEFAULT_BOUND):
    """``Ax = b, x >= 0`` with A of shape (m, n) and the truth recorded.

    Feasible: x uniform on (0,1) and ``b = Ax``. Infeasible with the
    ``"direct"`` recipe: b drawn like a column of A, truth decided by an LP
    solve. With ``"certified"``: ``b = -A x'`` for nonnegative A and
    ``x' >= 0`` of mass about M (so no nonnegative solution exists), or a b
    too long to be reached under the bound M otherwise.
    """
    rng = np.random.default_rng(spec.seed)
    kind = "uniform" if spec.kind == "gaussian" else spec.kind
    A = _draw(kind, rng, spec.n, spec.m).T.copy()
    if spec.feasible:
        x = rng.random(spec.n)
        return LpCase(LpFeasInstance(A, A @ x, bound_M), True, x)
    if spec.recipe == "direct":
        b = _draw(kind, rng, 1, spec.m)[0]
        return LpCase(LpFeasInstance(A, b, bound_M), _lp_feasible(A, b, bound_M))
    if kind == "uniform":
        # x' of total mass about M keeps b on the scale of admissible solutions
        b = -A @ (rng.random(spec.n) * (2.0 * bound_M / spec.n))
    else:
        u = rng.standard_normal(spec.m)
        b = u / np.linalg.norm(u) * (1.5 * bound_M * np.linalg.norm(A, axis=0).max())
    return LpCase(LpFeasInstance(A, b, bound_M), False)


def _strict_feasible(A, b):
    n, m = A.shape
    # maximize t subject to Ax + t <= b, t <= 1
    c = np.zeros(m + 1)
    c[-1] = -1.0
    res = linprog(c, A_ub=np.hstack([A, np.ones((n, 1))]), b_ub=b,
                  bounds=[(None, None)] * m + [(None, 1.0)], method="highs")
    return res.status == 0 and -res.fun > 1e-9


def gen_strict_lp_instance(spec):
    """``Ax < b`` with A of shape (n, m) and the truth recorded.

    Feasible: ``b = Ax + xi + 0.1``. Infeasible with ``"direct"``: ``b = Ax +
    xi'`` with half of xi' zeroed, truth decided by an LP solve. With
    ``"certified"``: the last row is set so that ``y^T A = 0`` and
    ``y^T b < 0`` for a random positive y, an exact alternative certificate.
    """
    rng = np.random.default_rng(spec.seed)
    kind = "uniform" if spec.kind == "gaussian" else spec.kind
    A = _draw(kind, rng, spec.m, spec.n).T.copy()
    x = rng.random(spec.m)
    if spec.feasible:
        b = A @ x + rng.random(spec.n) + 0.1
        return LpCase(StrictLpInstance(A, b), True, x)
    xi = rng.random(spec.n)
    xi[rng.permutation(spec.n)[: spec.n // 2]] = 0.0
    b = A @ x + xi
    if spec.recipe == "direct":
        return LpCase(StrictLpInstance(A, b), _strict_feasible(A, b))
    y = rng.random(spec.n) + 0.1
    A[-1] = -(y[:-1] @ A[:-1]) / y[-1]
    s = 0.1 + rng.random()
    b[-1] = -(y[:-1] @ b[:-1] + s) / y[-1]
    return LpCase(StrictLpInstance(A, b), False, y)


def true_vertices(points):
    """Indices of points at positive distance from the hull of the others."""
    P = np.asarray(points, dtype=np.float64)
    scale = max(1.0, float(np.abs(P).max()))
    keep = []
    for i in range(len(P)):
        others = np.delete(P, i, axis=0)
        if len(others) == 0 or hull_distance(others, P[i])[0] > VERTEX_TOL * scale:
            keep.append(i)
    return np.asarray(keep, dtype=np.intp)


def gen_irredundancy_instance(spec, max_tries=50):
    """K hull points plus convex combinations of them, shuffled.

    The recorded vertex set is verified numerically (Gaussian draws need not
    all be extreme). With ``min_robustness > 0`` draws are repeated until the
    vertex set is that robust.
    """
    rng = np.random.default_rng(spec.seed)
    K = spec.n_vertices
    kind = spec.kind if spec.kind != "uniform" else "gaussian"
    for _ in range(max_tries):
        V = _draw(kind, rng, K, spec.m)
        verts = np.arange(K) if kind == "sphere" else true_vertices(V)
        rob = None
        if spec.min_robustness > 0:
            rob = robustness(V, verts)
            if rob < spec.min_robustness:
                continue
        D = _simplex_weights(rng, (spec.n - K, K)) @ V
        P = np.vstack([V, D])
        perm = rng.permutation(spec.n)
        inverse = np.empty_like(perm)
        inverse[perm] = np.arange(spec.n)
        return IrredundancyInstance(PointSet(P[perm]), np.sort(inverse[verts]), rob)
    raise RuntimeError(f"no draw reached robustness {spec.min_robustness} in {max_tries} tries")
