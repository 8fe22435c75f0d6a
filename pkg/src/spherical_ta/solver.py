"""Triangle Algorithm solvers for convex hull membership.

Both solvers run the same loop in a frame where the query sits at the origin:

* :func:`solve_ta` works on the translated raw points and starts at the data
  point closest to the query.
* :func:`solve_spherical_ta` first projects the translated points onto the
  unit sphere and starts at the first point.

Each iteration scores every point by ``x . v`` (x the current iterate), takes
the lowest score as pivot, and moves x to the point of segment [x, v] nearest
the origin. The iterate is a witness once every score exceeds ``|x|^2 / 2``.
"""

import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._validation import check_epsilon, check_query
from .geometry import Iterate, PointSet, bisector_hyperplane, verify_witness
from .spherical import ImmediateMember, recover_solution, recover_witness, to_spherical

try:
    from . import _kernels
except ImportError:  # pragma: no cover - numba missing
    _kernels = None

EPS_REDUCTION = 0.4


class Status(str, Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    LIMIT = "limit"


@dataclass
class SolverConfig:
    """Knobs shared by the TA-family solvers.

    ``max_iterations=None`` means ``10 * ceil(1 / epsilon**2) + 1000``.
    """

    epsilon: float = 0.01
    max_iterations: int | None = None
    pivot_rule: str = "greedy"
    enable_eps_property: bool = False
    record_trace: bool = False
    reproject_every: int = 1000
    composite_cap_factor: int = 50

    def __post_init__(self):
        self.epsilon = check_epsilon(self.epsilon)
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.pivot_rule not in ("greedy", "first"):
            raise ValueError(f"unknown pivot rule {self.pivot_rule!r}")

    @property
    def iteration_cap(self):
        if self.max_iterations is not None:
            return int(self.max_iterations)
        return 10 * math.ceil(1.0 / self.epsilon**2) + 1000


@dataclass
class IterationTrace:
    deltas: list = field(default_factory=list)
    pivot_indices: list = field(default_factory=list)
    eps_property_flags: list = field(default_factory=list)


@dataclass
class ChmOutcome:
    """Result of a membership query.

    ``iterate`` is always a raw-frame point of conv(S) with its weights over
    the input points. For an outside verdict, ``witness`` is the certified
    witness in the frame the solver worked in (``frame``), and ``plane``
    separates the query from conv(S) in raw coordinates.
    """

    status: Status
    iterate: Iterate
    residual: float
    radius: float
    epsilon: float
    iterations: int
    frame: str
    plane: object = None
    witness: Iterate | None = None
    trace: IterationTrace | None = None
    flops: int = 0
    elapsed: float = 0.0

    @property
    def is_inside(self):
        return self.status is Status.INSIDE

    @property
    def is_witness(self):
        return self.status is Status.OUTSIDE

    @property
    def is_limit(self):
        return self.status is Status.LIMIT


@dataclass
class CompositeOutcome:
    status: str  # "reduced" | "witness" | "limit"
    iterate: Iterate
    iterations: int


def worst_case_delta_bound(k):
    """Worst-case Spherical-TA gap after `k` strict-pivot steps from a unit point."""
    k = np.asarray(k, dtype=np.float64)
    if np.any(k < 0):
        raise ValueError("k must be non-negative")
    out = 1.0 / np.sqrt(1.0 + k)
    return float(out) if out.ndim == 0 else out


def check_eps_property(p_prime, s, eps):
    """Farthest pivot at distance >= sqrt(1 + eps) from `p_prime`, or None.

    `s` holds unit-norm points and the query is the origin.
    """
    pts = s.points if isinstance(s, PointSet) else np.asarray(s, dtype=np.float64)
    x = np.asarray(p_prime, dtype=np.float64)
    xx = float(x @ x)
    if not xx > eps * eps:
        raise ValueError("eps-property is only defined for |p'| > eps")
    scores = pts @ x
    dist_sq = np.einsum("ij,ij->i", pts, pts) - 2.0 * scores + xx
    ok = (scores <= 0.5 * xx) & (dist_sq >= 1.0 + eps)
    if not ok.any():
        return None
    cand = np.flatnonzero(ok)
    return int(cand[np.argmax(dist_sq[cand])])


def _select_pivot(scores, xx, rule):
    """Return (index, is_pivot) following the configured rule."""
    if rule == "greedy":
        j = int(np.argmin(scores))
        return j, bool(scores[j] <= 0.5 * xx)
    strict = np.flatnonzero(scores <= 0.0)
    if strict.size:
        return int(strict[0]), True
    loose = np.flatnonzero(scores <= 0.5 * xx)
    if loose.size:
        return int(loose[0]), True
    return int(np.argmin(scores)), False


def _step(x, v, v_sq, score, xx):
    """Move x toward v; returns the new point and the clamped step."""
    denom = v_sq - 2.0 * score + xx
    if denom <= 0.0:
        return x, 0.0
    alpha = min(1.0, max(0.0, (xx - score) / denom))
    return x + alpha * (v - x), alpha


class _Loop:
    """Triangle Algorithm iteration on points already translated so p = 0."""

    def __init__(self, points, cfg, tol, trace_scale, eps_frame=None):
        self.points = points
        self.sq = np.einsum("ij,ij->i", points, points)
        self.cfg = cfg
        self.tol = tol
        self.trace_scale = trace_scale
        # eps-property fast path needs unit points
        self.eps_frame = eps_frame
        self.trace = IterationTrace() if cfg.record_trace else None
        self.iterations = 0

    def _record(self, x, pivot, flag):
        if self.trace is not None:
            self.trace.deltas.append(math.sqrt(float(x @ x)) / self.trace_scale)
            self.trace.pivot_indices.append(pivot)
            self.trace.eps_property_flags.append(flag)

    def run(self, w, x):
        cfg = self.cfg
        if (cfg.pivot_rule == "greedy" and self.trace is None and self.eps_frame is None
                and _kernels is not None):
            return self._run_compiled(w, x)
        return self._run_python(w, x)

    def _run_compiled(self, w, x):
        pts = np.ascontiguousarray(self.points)
        w = np.array(w, dtype=np.float64)
        x = np.array(x, dtype=np.float64)
        code, its = _kernels.greedy_ta(pts, self.sq, w, x, self.tol * self.tol,
                                       min(self.cfg.iteration_cap, 2**62),
                                       self.cfg.reproject_every)
        self.iterations = int(its)
        if code == _kernels.INSIDE:
            return Status.INSIDE, w, x
        if code == _kernels.LIMIT:
            return Status.LIMIT, w, x
        return Status.OUTSIDE, w, x

    def _run_python(self, w, x):
        cfg, pts = self.cfg, self.points
        cap = cfg.iteration_cap
        tol_sq = self.tol * self.tol
        if self.trace is not None:
            self.trace.deltas.append(math.sqrt(float(x @ x)) / self.trace_scale)
        since_reproject = 0
        # a capped composite run is not retried until the eps-property holds again
        composite_ok = True
        greedy = cfg.pivot_rule == "greedy"
        sq = self.sq
        while True:
            xx = float(x @ x)
            if xx <= tol_sq:
                x = w @ pts
                if float(x @ x) <= tol_sq:
                    return Status.INSIDE, w, x
                xx = float(x @ x)
            scores = pts @ x
            if greedy:
                j = int(scores.argmin())
                pivot_ok = scores[j] <= 0.5 * xx
            else:
                j, pivot_ok = _select_pivot(scores, xx, cfg.pivot_rule)
            if not pivot_ok:
                x_dense = w @ pts
                if verify_witness(np.zeros_like(x), x_dense, pts):
                    return Status.OUTSIDE, w, x_dense
                # round-off disagreement: resync and retry
                x = x_dense
                xx = float(x @ x)
                scores = pts @ x
                j, pivot_ok = _select_pivot(scores, xx, cfg.pivot_rule)
                if not pivot_ok:
                    return Status.OUTSIDE, w, x
            if self.iterations >= cap:
                return Status.LIMIT, w, x

            flag = False
            if self.eps_frame is not None and xx <= self.eps_frame:
                eps = self.eps_frame
                flag = scores[j] <= 0.5 * xx and (self.sq[j] - 2.0 * scores[j] + xx) >= 1.0 + eps
                if flag:
                    composite_ok = True
                elif composite_ok:
                    comp = composite_iterate(Iterate(x, w), pts, eps, cfg, _scores=scores,
                                             _budget=cap - self.iterations)
                    self.iterations += comp.iterations
                    if comp.status == "witness":
                        return Status.OUTSIDE, comp.iterate.weights, comp.iterate.coords
                    if comp.status == "reduced":
                        w, x = comp.iterate.weights, comp.iterate.coords
                        self._record(x, -1, False)
                        continue
                    # limit: fall back to plain pivot steps from x
                    composite_ok = False

            score = scores[j]
            denom = sq[j] - 2.0 * score + xx
            alpha = min(1.0, (xx - score) / denom) if denom > 0.0 else 0.0
            if alpha > 0.0:
                x = x + alpha * (pts[j] - x)
                w *= 1.0 - alpha
                w[j] += alpha
            self.iterations += 1
            since_reproject += 1
            if since_reproject >= cfg.reproject_every:
                w /= w.sum()
                x = w @ pts
                since_reproject = 0
            self._record(x, j, bool(flag))


def composite_iterate(p_k, s, eps, cfg, *, _scores=None, _budget=None):
    """Restart step for an iterate lacking the eps-property.

    Solves a growing restricted problem over {p_k, v^k, v^(k+1), ...} until an
    iterate reduces ``|p_k|^2`` by ``(0.4 eps)^2``, a full witness appears, or
    the inner cap (``cfg.composite_cap_factor`` per restricted point) is hit.
    The query is the origin; `s` holds the unit points.
    """
    pts = s.points if isinstance(s, PointSet) else np.asarray(s, dtype=np.float64)
    n = pts.shape[0]
    xk = np.asarray(p_k.coords, dtype=np.float64)
    wk = np.asarray(p_k.weights, dtype=np.float64)
    xk_sq = float(xk @ xk)
    target = xk_sq - (EPS_REDUCTION * eps) ** 2
    tol_sq = eps * eps
    zero = np.zeros_like(xk)
    budget = cfg.iteration_cap if _budget is None else max(int(_budget), 0)

    scores = pts @ xk if _scores is None else _scores
    j0 = int(np.argmin(scores))
    if scores[j0] > 0.5 * xk_sq and verify_witness(zero, xk, pts):
        return CompositeOutcome("witness", Iterate(xk.copy(), wk.copy()), 0)
    x1, a = _step(xk, pts[j0], float(pts[j0] @ pts[j0]), scores[j0], xk_sq)
    w1 = wk * (1.0 - a)
    w1[j0] += a
    used = 1
    if float(x1 @ x1) <= max(target, tol_sq):
        return CompositeOutcome("reduced", Iterate(x1, w1), used)

    members = [xk.copy(), pts[j0].copy()]
    member_w = [wk.copy(), _unit(n, j0)]
    lam = [1.0 - a, a]
    x = x1
    scores1 = pts @ x1
    j1 = int(np.argmin(scores1))
    xx = float(x @ x)
    if scores1[j1] > 0.5 * xx and verify_witness(zero, x, pts):
        return CompositeOutcome("witness", Iterate(x, w1), used)
    if j1 != j0:
        members.append(pts[j1].copy())
        member_w.append(_unit(n, j1))
        lam.append(0.0)

    inner = 0
    while True:
        R = np.asarray(members)
        lam_arr = np.asarray(lam)
        if inner >= cfg.composite_cap_factor * len(members) or used >= budget:
            break
        xx = float(x @ x)
        sc = R @ x
        jj = int(np.argmin(sc))
        if sc[jj] > 0.5 * xx:
            # relative witness: look for a pivot in the full set
            full = pts @ x
            j = int(np.argmin(full))
            if full[j] > 0.5 * xx:
                w_full = lam_arr @ np.asarray(member_w)
                if verify_witness(zero, x, pts):
                    return CompositeOutcome("witness", Iterate(x, w_full), used)
                break
            members.append(pts[j].copy())
            member_w.append(_unit(n, j))
            lam.append(0.0)
            continue
        x, alpha = _step(x, R[jj], float(R[jj] @ R[jj]), sc[jj], xx)
        lam = [(1.0 - alpha) * l for l in lam]
        lam[jj] += alpha
        inner += 1
        used += 1
        if float(x @ x) <= max(target, tol_sq):
            w_full = np.asarray(lam) @ np.asarray(member_w)
            return CompositeOutcome("reduced", Iterate(x, w_full), used)
    w_full = np.asarray(lam) @ np.asarray(member_w)
    return CompositeOutcome("limit", Iterate(x, w_full), used)


def _unit(n, j):
    e = np.zeros(n)
    e[j] = 1.0
    return e


def _as_pointset(s):
    return s if isinstance(s, PointSet) else PointSet(s)


def _check_init(init, n):
    w = np.array(init, dtype=np.float64).reshape(-1)
    if w.shape[0] != n or np.any(w < 0) or not w.sum() > 0:
        raise ValueError("init must be non-negative weights over the points")
    return w / w.sum()


def solve_ta(s, p, cfg=None, init=None):
    """Vanilla Triangle Algorithm.

    Parameters
    ----------
    s : PointSet or array-like of shape (n, m)
    p : array-like of shape (m,)
        Query point.
    cfg : SolverConfig, optional
    init : array-like of shape (n,), optional
        Starting convex weights (warm start). By default TA starts at the
        point of `s` closest to `p`.

    Returns
    -------
    ChmOutcome
        ``INSIDE`` with ``|p - p_eps| <= eps * R``, ``OUTSIDE`` with a
        bisector hyperplane certificate, or ``LIMIT``.
    """
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    s = _as_pointset(s)
    p = check_query(p, s.m)
    shifted = s.points - p
    dist = np.linalg.norm(shifted, axis=1)
    R = float(dist.max())
    closest = int(np.argmin(dist))
    if init is None:
        w = _unit(s.n, closest)
        x = shifted[closest].copy()
    else:
        w = _check_init(init, s.n)
        x = w @ shifted
    if dist[closest] == 0.0 and init is None:
        it = Iterate.at_vertex(s, closest)
        return ChmOutcome(Status.INSIDE, it, 0.0, R, cfg.epsilon, 0, "raw",
                          trace=IterationTrace([0.0], [], []) if cfg.record_trace else None,
                          elapsed=time.perf_counter() - t0)

    loop = _Loop(shifted, cfg, cfg.epsilon * R, R)
    status, w, x = loop.run(w, x)
    iterate = Iterate(x + p, w)
    out = ChmOutcome(status, iterate, float(np.linalg.norm(x)), R, cfg.epsilon,
                     loop.iterations, "raw", trace=loop.trace,
                     flops=2 * loop.iterations * s.n * s.m)
    if status is Status.OUTSIDE:
        out.plane = bisector_hyperplane(p, iterate.coords)
        out.witness = iterate
    out.elapsed = time.perf_counter() - t0
    return out


def solve_spherical_ta(raw, p_raw, cfg=None, init=None):
    """Spherical Triangle Algorithm: project onto the unit sphere, then run TA.

    The answer is converted back to raw coordinates: an ``INSIDE`` iterate
    satisfies ``|p - p_eps| <= eps * R`` and an ``OUTSIDE`` verdict carries a
    raw-frame separating hyperplane. ``witness`` holds the unit-frame witness.
    `init` is an optional warm start given as weights over the points.
    """
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    raw = _as_pointset(raw)
    p_raw = check_query(p_raw, raw.m)
    inst = to_spherical(raw, p_raw)
    if isinstance(inst, ImmediateMember):
        it = inst.iterate()
        R = float(np.linalg.norm(raw.points - p_raw, axis=1).max())
        return ChmOutcome(Status.INSIDE, it, 0.0, R, cfg.epsilon, 0, "spherical",
                          trace=IterationTrace([0.0], [], []) if cfg.record_trace else None,
                          elapsed=time.perf_counter() - t0)

    U = inst.unit_points.points
    if init is None:
        w = _unit(raw.n, 0)
        x = U[0].copy()
    else:
        w = _check_init(init, raw.n)
        x = w @ U
    eps_frame = cfg.epsilon if cfg.enable_eps_property else None
    loop = _Loop(U, cfg, cfg.epsilon, 1.0, eps_frame=eps_frame)
    status, w, x = loop.run(w, x)

    iterate = recover_solution(w, inst)
    residual = float(np.linalg.norm(iterate.coords - p_raw))
    out = ChmOutcome(status, iterate, residual, inst.radius, cfg.epsilon, loop.iterations,
                     "spherical", trace=loop.trace, flops=2 * loop.iterations * raw.n * raw.m)
    if status is Status.OUTSIDE:
        out.witness = Iterate(x, w)
        out.plane = recover_witness(x, inst)
    out.elapsed = time.perf_counter() - t0
    return out


def _query_at_origin(diff, oracle, epsilon, max_iterations=None, init=None):
    """Lean membership test of the origin in conv(rows of `diff`), for internal loops.

    `diff` holds the points already translated by the query. Returns
    ``(status, weights, x, iterations)`` where x is the final iterate in the solver's own
    frame (unit frame for Spherical-TA). For an outside verdict ``-x`` points
    from the hull toward the query in both frames.
    """
    cfg = SolverConfig(epsilon=epsilon, max_iterations=max_iterations)
    sq = np.einsum("ij,ij->i", diff, diff)
    n = len(diff)
    if oracle == "spherical":
        scales = np.sqrt(sq)
        if scales.min() <= 0.0:
            return Status.INSIDE, _unit(n, int(np.argmin(scales))), np.zeros(diff.shape[1]), 0
        pts = diff / scales[:, None]
        tol = epsilon
        start = 0
    else:
        pts = diff
        tol = epsilon * float(np.sqrt(sq.max()))
        start = int(np.argmin(sq))
    if init is None:
        w = _unit(n, start)
        x = pts[start].copy()
    else:
        w = np.asarray(init, dtype=np.float64) / np.sum(init)
        x = w @ pts
    loop = _Loop(pts, cfg, tol, 1.0)
    status, w, x = loop.run(w, x)
    return status, w, x, loop.iterations


def solve(s, p, cfg=None, oracle="spherical", init=None):
    """Dispatch to :func:`solve_spherical_ta` or :func:`solve_ta`."""
    if oracle in ("spherical", "spherical-ta"):
        return solve_spherical_ta(s, p, cfg, init=init)
    if oracle in ("ta", "vanilla"):
        return solve_ta(s, p, cfg, init=init)
    raise ValueError(f"unknown oracle {oracle!r}")
