"""Strict LP feasibility and LP feasibility through homogeneous membership.

Strict feasibility of ``Ax < b`` is dual to ``0 in conv{(a_i; b_i), (0; 1)}``:
a witness for that membership problem yields a strictly feasible x, and an
approximate interior point is an approximate Gordan certificate.

Feasibility of ``Ax = b, x >= 0, sum(x) <= M`` is the membership of 0 in
``conv{(A_j; 1), (0; 1), (-b; -M)}``.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (CertificateError, DegenerateRowError, GammaDegenerateError,
                         IterationLimitError)
from .geometry import PointSet
from .oracle import exact_membership
from .solver import SolverConfig, Status, solve

DEFAULT_BOUND = 1000.0
EXACT_UPGRADE_SUPPORT = 20


@dataclass(frozen=True)
class StrictLpInstance:
    """The system ``A x < b`` with A of shape (n, m)."""

    a_matrix: np.ndarray
    b_vector: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.a_matrix, dtype=np.float64))
        b = np.asarray(self.b_vector, dtype=np.float64).reshape(-1)
        if A.shape[0] != b.shape[0]:
            raise ValueError(f"A has {A.shape[0]} rows but b has {b.shape[0]} entries")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("A and b must be finite")
        object.__setattr__(self, "a_matrix", A)
        object.__setattr__(self, "b_vector", b)


@dataclass
class StrictLpResult:
    """Either a strictly feasible x or an approximate Gordan certificate (y, s).

    ``residual`` is the membership residual over the unit-normalized columns;
    ``raw_residual`` is ``|(A^T y; b^T y + s)|`` for the returned (y, s).
    """

    feasible: bool
    x: np.ndarray | None = None
    y: np.ndarray | None = None
    s: float | None = None
    residual: float | None = None
    raw_residual: float | None = None
    exact_certificate: bool = False
    outcome: object = field(default=None, repr=False)


@dataclass(frozen=True)
class LpFeasInstance:
    """The system ``A x = b, x >= 0`` with A of shape (m, n) and a bound M on sum(x)."""

    a_matrix: np.ndarray
    b_vector: np.ndarray
    bound_M: float = DEFAULT_BOUND

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.a_matrix, dtype=np.float64))
        b = np.asarray(self.b_vector, dtype=np.float64).reshape(-1)
        if A.shape[0] != b.shape[0]:
            raise ValueError(f"A has {A.shape[0]} rows but b has {b.shape[0]} entries")
        if not self.bound_M > 0:
            raise ValueError("bound_M must be positive")
        object.__setattr__(self, "a_matrix", A)
        object.__setattr__(self, "b_vector", b)
        object.__setattr__(self, "bound_M", float(self.bound_M))


@dataclass
class LpFeasResult:
    feasible: bool
    x: np.ndarray | None = None
    residual: float | None = None
    residual_bound: float | None = None
    gamma: float | None = None
    plane: object = None
    outcome: object = field(default=None, repr=False)


def _gordan_raw(inst):
    A, b = inst.a_matrix, inst.b_vector
    n, m = A.shape
    cols = np.zeros((n + 1, m + 1))
    cols[:n, :m] = A
    cols[:n, m] = b
    cols[n, m] = 1.0
    return cols


def build_gordan_columns(inst):
    """Unit-normalized points (a_i; b_i)/|(a_i; b_i)| and (0; 1) in R^(m+1)."""
    cols = _gordan_raw(inst)
    norms = np.linalg.norm(cols, axis=1)
    bad = np.flatnonzero(norms == 0)
    if bad.size:
        raise DegenerateRowError(f"row {int(bad[0])} of (A, b) is identically zero")
    return PointSet(cols / norms[:, None])


def solve_strict_lp(inst, cfg=None, oracle="spherical", exact_upgrade=True):
    """Decide ``A x < b`` with Spherical-TA (or TA) on the Gordan columns.

    A witness ``(x_hat; alpha)`` gives the strictly feasible point
    ``-x_hat / alpha``; an approximate solution gives (y, s) with
    ``y, s >= 0``, ``sum(y) + s = 1`` and a small residual. When that
    certificate has small support and `exact_upgrade` is set, an exact
    rational certificate on the same support replaces it if one exists.
    """
    cfg = cfg or SolverConfig()
    cols = build_gordan_columns(inst)
    n, m = inst.a_matrix.shape
    out = solve(cols, np.zeros(m + 1), cfg, oracle=oracle)
    if out.status is Status.LIMIT:
        raise IterationLimitError("membership solver hit its iteration cap", outcome=out)

    if out.status is Status.OUTSIDE:
        wit = out.witness.coords
        alpha = float(wit[m])
        if not alpha > 0:
            raise CertificateError(f"witness has non-positive last coordinate {alpha}")
        x = -wit[:m] / alpha
        if not np.all(inst.a_matrix @ x < inst.b_vector):
            raise CertificateError("recovered x is not strictly feasible")
        return StrictLpResult(True, x=x, outcome=out)

    raw = _gordan_raw(inst)
    norms = np.linalg.norm(raw, axis=1)
    weights = out.iterate.weights / norms
    weights /= weights.sum()
    y, s = weights[:n], float(weights[n])
    result = StrictLpResult(False, y=y, s=s, residual=out.residual,
                            raw_residual=float(np.linalg.norm(weights @ raw)), outcome=out)
    support = np.flatnonzero(weights)
    if exact_upgrade and support.size <= EXACT_UPGRADE_SUPPORT:
        lam = exact_membership(raw[support], np.zeros(m + 1))
        if lam is not None:
            exact = np.zeros(n + 1)
            exact[support] = [float(v) for v in lam]
            result.y, result.s = exact[:n], float(exact[n])
            result.raw_residual = float(np.linalg.norm(exact @ raw))
            result.exact_certificate = True
    return result


def build_lpfeas_columns(inst):
    """Points (A_j; 1) for each column j, then (0; 1), then (-b; -M)."""
    A, b, M = inst.a_matrix, inst.b_vector, inst.bound_M
    m, n = A.shape
    cols = np.zeros((n + 2, m + 1))
    cols[:n, :m] = A.T
    cols[:n, m] = 1.0
    cols[n, m] = 1.0
    cols[n + 1, :m] = -b
    cols[n + 1, m] = -M
    return PointSet(cols)


def gamma_floor(epsilon, bound_M):
    """Smallest homogenizing weight accepted when forming x = alpha / gamma."""
    return max(1e-10, epsilon / (1.0 + bound_M))


def solve_lp_feasibility(inst, cfg=None, oracle="spherical"):
    """Decide ``Ax = b, x >= 0, sum(x) <= M`` with Spherical-TA (or TA).

    On success ``x = alpha / gamma`` and ``|Ax - b| <= eps * R / gamma``
    (``residual_bound``), R being the largest column norm of the reduction.
    An outside verdict carries the separating hyperplane as certificate.
    """
    cfg = cfg or SolverConfig()
    cols = build_lpfeas_columns(inst)
    m, n = inst.a_matrix.shape
    out = solve(cols, np.zeros(m + 1), cfg, oracle=oracle)
    if out.status is Status.LIMIT:
        raise IterationLimitError("membership solver hit its iteration cap", outcome=out)
    if out.status is Status.OUTSIDE:
        return LpFeasResult(False, plane=out.plane, outcome=out)

    w = out.iterate.weights
    gamma = float(w[n + 1])
    floor = gamma_floor(cfg.epsilon, inst.bound_M)
    if gamma <= floor:
        raise GammaDegenerateError(
            f"homogenizing weight {gamma:.3g} <= {floor:.3g}; increase M or decrease epsilon")
    x = w[:n] / gamma
    residual = float(np.linalg.norm(inst.a_matrix @ x - inst.b_vector))
    bound = cfg.epsilon * out.radius / gamma
    return LpFeasResult(True, x=x, residual=residual, residual_bound=bound, gamma=gamma,
                        outcome=out)
