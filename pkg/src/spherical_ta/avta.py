"""All-vertex enumeration with a Triangle Algorithm membership oracle.

The working set grows one vertex at a time. Each unlabeled point is tested
against the hull of the working set; if it is close it is redundant, else the
witness hyperplane points to a new vertex by a linear maximization.
"""

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import IterationLimitError
from .geometry import PointSet
from .solver import Status, _query_at_origin

VERTEX = "vertex"
REDUNDANT = "redundant"
ARGMAX_RTOL = 1e-9


@dataclass
class AvtaConfig:
    gamma: float
    oracle: str = "spherical"
    seed: int = 0
    max_iterations: int | None = None

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if self.oracle not in ("spherical", "ta"):
            raise ValueError(f"unknown oracle {self.oracle!r}")


@dataclass
class VertexReport:
    """Outcome of a vertex enumeration.

    ``vertex_indices`` lists the working set in discovery order and
    ``labels[i]`` is ``"vertex"`` or ``"redundant"``.
    """

    vertex_indices: list
    labels: list
    queries: int = 0
    diameter_R: float = 0.0
    elapsed: float = 0.0
    discovered_by: dict = field(default_factory=dict, repr=False)

    @property
    def redundant_indices(self):
        return [i for i, lab in enumerate(self.labels) if lab == REDUNDANT]


def farthest(v, s):
    """Index of the point of `s` farthest from `v` (lowest index on ties)."""
    pts = s.points if isinstance(s, PointSet) else np.atleast_2d(np.asarray(s, dtype=np.float64))
    if len(pts) == 0:
        raise ValueError("empty point set")
    d = np.einsum("ij,ij->i", pts - v, pts - v)
    return int(np.argmax(d))


def discover_vertex(c_prime, s, working, rng=None):
    """A vertex of conv(s) maximizing ``c_prime . x`` outside `working`.

    Among the near-maximizers (relative tolerance 1e-9) one is picked at
    random and the farthest near-maximizer from it is returned, so that a
    face's interior point is never chosen when the face is an edge.
    """
    c = np.asarray(c_prime, dtype=np.float64)
    if not np.any(c):
        raise ValueError("direction must be nonzero")
    pts = s.points if isinstance(s, PointSet) else np.asarray(s, dtype=np.float64)
    mask = np.ones(len(pts), dtype=bool)
    mask[np.asarray(list(working), dtype=np.intp)] = False
    cand = np.flatnonzero(mask)
    if cand.size == 0:
        raise ValueError("no candidate points outside the working set")
    vals = pts[cand] @ c
    tol = ARGMAX_RTOL * np.linalg.norm(c) * max(1.0, float(np.abs(pts).max()))
    top = cand[vals >= vals.max() - tol]
    if top.size == 1:
        return int(top[0])
    rng = rng if rng is not None else np.random.default_rng(0)
    start = pts[top[rng.integers(top.size)]]
    return int(top[farthest(start, pts[top])])


def _diameter(pts, chunk=1024):
    sq = np.einsum("ij,ij->i", pts, pts)
    best = 0.0
    for lo in range(0, len(pts), chunk):
        blk = pts[lo:lo + chunk]
        d = sq[lo:lo + chunk, None] + sq[None, :] - 2.0 * blk @ pts.T
        best = max(best, float(d.max()))
    return float(np.sqrt(max(best, 0.0)))


def _run(s, cfg, oracle):
    t0 = time.perf_counter()
    s = s if isinstance(s, PointSet) else PointSet(s)
    pts = s.points
    n = s.n
    rng = np.random.default_rng(cfg.seed)
    order = rng.permutation(n)
    labels = [None] * n

    first = farthest(pts[order[0]], s)
    working = [first]
    labels[first] = VERTEX
    # the farthest distance from any point is a lower bound on the diameter
    diam = float(np.linalg.norm(pts[first] - pts[order[0]]))
    if cfg.gamma >= diam:
        diam = _diameter(pts)
    if cfg.gamma >= diam:
        if n > 1:
            warnings.warn("gamma is not below the diameter; every point collapses to one vertex",
                          RuntimeWarning, stacklevel=3)
        labels = [VERTEX if i == first else REDUNDANT for i in range(n)]
        return VertexReport(working, labels, 0, diam, time.perf_counter() - t0)

    queries = 0
    scale_R = 0.0
    discovered = {}
    excluded = np.zeros(n, dtype=bool)
    excluded[first] = True
    for idx in order:
        if labels[idx] is not None:
            continue
        v = pts[idx]
        warm = None
        while True:
            diff = pts[working] - v
            R = float(np.sqrt(np.max(np.einsum("ij,ij->i", diff, diff))))
            scale_R = max(scale_R, R)
            if R <= 0.5 * cfg.gamma:
                labels[idx] = REDUNDANT
                excluded[idx] = True
                break
            init = None if warm is None else np.append(warm, 0.0)
            status, w, x, _ = _query_at_origin(diff, oracle, 0.5 * cfg.gamma / R,
                                               cfg.max_iterations, init)
            queries += 1
            if status is Status.LIMIT:
                raise IterationLimitError(f"oracle hit its iteration cap on point {idx}",
                                          index=int(idx))
            if status is Status.INSIDE:
                labels[idx] = REDUNDANT
                excluded[idx] = True
                break
            # -x is the witness plane normal oriented toward v
            new = discover_vertex(-x, pts, np.flatnonzero(excluded), rng)
            working.append(new)
            labels[new] = VERTEX
            excluded[new] = True
            discovered[new] = int(idx)
            if new == idx:
                break
            warm = w
    return VertexReport(working, labels, queries, scale_R, time.perf_counter() - t0, discovered)


def avta(s, cfg):
    """Enumerate the vertices of conv(s) using vanilla TA as the oracle.

    On a gamma-robust input the reported working set is exactly the vertex
    set; every other point is within gamma/2 of its hull.
    """
    return _run(s, cfg, "ta")


def avta_plus(s, cfg):
    """Same as :func:`avta` with Spherical-TA as the membership oracle."""
    return _run(s, cfg, "spherical")


def enumerate_vertices(s, cfg):
    """Dispatch on ``cfg.oracle``."""
    return avta_plus(s, cfg) if cfg.oracle == "spherical" else avta(s, cfg)
