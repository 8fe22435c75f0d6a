"""Compiled inner loop for the greedy Triangle Algorithm."""

import numpy as np
from numba import njit

INSIDE = 0
WITNESS = 1
LIMIT = 2


@njit(cache=True, fastmath=False)
def _dense(w, pts, x):
    n, m = pts.shape
    for k in range(m):
        x[k] = 0.0
    for i in range(n):
        wi = w[i]
        if wi != 0.0:
            for k in range(m):
                x[k] += wi * pts[i, k]


@njit(cache=True, fastmath=False)
def _argmin_score(pts, x, scores):
    n, m = pts.shape
    best = np.inf
    j = 0
    for i in range(n):
        s = 0.0
        for k in range(m):
            s += pts[i, k] * x[k]
        scores[i] = s
        if s < best:
            best = s
            j = i
    return j, best


@njit(cache=True, fastmath=False)
def greedy_ta(pts, sq, w, x, tol_sq, cap, reproject_every):
    """Run greedy TA with the query at the origin; `w` and `x` are updated in place.

    Returns (status, iterations).
    """
    n, m = pts.shape
    scores = np.empty(n)
    it = 0
    since = 0
    while True:
        xx = 0.0
        for k in range(m):
            xx += x[k] * x[k]
        if xx <= tol_sq:
            _dense(w, pts, x)
            xx = 0.0
            for k in range(m):
                xx += x[k] * x[k]
            if xx <= tol_sq:
                return INSIDE, it
        j, score = _argmin_score(pts, x, scores)
        if score > 0.5 * xx:
            _dense(w, pts, x)
            xx = 0.0
            for k in range(m):
                xx += x[k] * x[k]
            j, score = _argmin_score(pts, x, scores)
            if score > 0.5 * xx:
                return WITNESS, it
        if it >= cap:
            return LIMIT, it
        denom = sq[j] - 2.0 * score + xx
        alpha = 0.0
        if denom > 0.0:
            alpha = (xx - score) / denom
            if alpha > 1.0:
                alpha = 1.0
        if alpha > 0.0:
            for k in range(m):
                x[k] += alpha * (pts[j, k] - x[k])
            for i in range(n):
                w[i] *= 1.0 - alpha
            w[j] += alpha
        it += 1
        since += 1
        if since >= reproject_every:
            total = 0.0
            for i in range(n):
                total += w[i]
            for i in range(n):
                w[i] /= total
            _dense(w, pts, x)
            since = 0
