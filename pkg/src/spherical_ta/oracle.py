"""Ground-truth membership and distance computations.

The exact routines use rational arithmetic throughout (floats convert to
:class:`fractions.Fraction` without rounding), so their verdicts carry no
round-off. The numeric helpers at the bottom are for instance sizes beyond
the exact cap.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import SizeLimitError
from .geometry import PointSet

MAX_EXACT_DIM = 8
MAX_EXACT_POINTS = 16


@dataclass(frozen=True)
class OracleResult:
    inside: bool
    sq_distance: Fraction
    coefficients: tuple
    nearest: tuple

    @property
    def distance(self):
        return float(self.sq_distance) ** 0.5


def _to_fractions(rows):
    return [[Fraction(float(c)) for c in row] for row in np.asarray(rows, dtype=np.float64)]


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _solve(mat, rhs):
    """Gaussian elimination over the rationals; None if singular."""
    n = len(mat)
    a = [row[:] + [r] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def exact_membership(points, p):
    """Exact convex coefficients expressing `p` over the rows of `points`, or None.

    Phase-one simplex with Bland's rule on ``sum l_i v_i = p, sum l_i = 1,
    l >= 0``, carried out in rational arithmetic.
    """
    V = _to_fractions(points)
    q = [Fraction(float(c)) for c in np.asarray(p, dtype=np.float64).reshape(-1)]
    n, m = len(V), len(q)
    rows = [[V[i][k] for i in range(n)] for k in range(m)] + [[Fraction(1)] * n]
    rhs = q + [Fraction(1)]
    for r in range(len(rows)):
        if rhs[r] < 0:
            rows[r] = [-v for v in rows[r]]
            rhs[r] = -rhs[r]
    n_rows = len(rows)
    n_cols = n + n_rows
    # tableau: structural columns, then one artificial per row
    tab = [rows[r] + [Fraction(int(r == k)) for k in range(n_rows)] + [rhs[r]]
           for r in range(n_rows)]
    basis = [n + r for r in range(n_rows)]
    # reduced costs of the phase-one objective sum(artificials)
    cost = [Fraction(0)] * (n_cols + 1)
    for r in range(n_rows):
        for c in range(n_cols + 1):
            cost[c] -= tab[r][c]
    for k in range(n_rows):
        cost[n + k] += 1

    while True:
        enter = next((c for c in range(n_cols) if cost[c] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for r in range(n_rows):
            if tab[r][enter] > 0:
                ratio = tab[r][-1] / tab[r][enter]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            break  # unbounded is impossible in phase one
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for r in range(n_rows):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [v - f * w for v, w in zip(tab[r], tab[leave])]
        f = cost[enter]
        cost = [v - f * w for v, w in zip(cost, tab[leave])]
        basis[leave] = enter

    if -cost[-1] != 0:
        return None
    lam = [Fraction(0)] * n
    for r, b in enumerate(basis):
        if b < n:
            lam[b] = tab[r][-1]
        elif tab[r][-1] != 0:
            return None
    return lam


def _affine_min_norm(Q):
    """Coefficients (summing to one) of the min-norm point of aff(Q)."""
    k = len(Q)
    G = [[_dot(Q[i], Q[j]) for j in range(k)] for i in range(k)]
    mat = [G[i] + [Fraction(1)] for i in range(k)] + [[Fraction(1)] * k + [Fraction(0)]]
    sol = _solve(mat, [Fraction(0)] * k + [Fraction(1)])
    return None if sol is None else sol[:k]


def exact_min_norm(points):
    """Wolfe's minimum-norm-point algorithm over conv(points), exactly.

    Returns ``(sq_norm, coefficients)`` with rational entries.
    """
    P = _to_fractions(points) if not isinstance(points, list) else points
    n = len(P)
    norms = [_dot(v, v) for v in P]
    first = min(range(n), key=lambda i: norms[i])
    S, lam = [first], [Fraction(1)]
    x = P[first][:]

    def combo(S, lam):
        dim = len(P[0])
        return [sum((l * P[i][d] for i, l in zip(S, lam)), Fraction(0)) for d in range(dim)]

    while True:
        xx = _dot(x, x)
        if xx == 0:
            break
        scores = [_dot(x, v) for v in P]
        j = min(range(n), key=lambda i: (scores[i], i))
        if scores[j] >= xx or j in S:
            break
        S.append(j)
        lam.append(Fraction(0))
        while True:
            mu = _affine_min_norm([P[i] for i in S])
            if mu is None:
                raise ArithmeticError("affinely dependent active set")
            if all(c > 0 for c in mu):
                lam = mu
                x = combo(S, lam)
                break
            theta = min(l / (l - c) for l, c in zip(lam, mu) if c <= 0)
            lam = [(1 - theta) * l + theta * c for l, c in zip(lam, mu)]
            keep = [i for i, l in enumerate(lam) if l > 0]
            S = [S[i] for i in keep]
            lam = [lam[i] for i in keep]
            x = combo(S, lam)
    coeffs = [Fraction(0)] * n
    for i, l in zip(S, lam):
        coeffs[i] = l
    return _dot(x, x), coeffs


def exact_oracle(s, p):
    """Exact verdict for ``p in conv(s)`` with the exact squared distance.

    Limited to m <= 8 and n <= 16.
    """
    pts = s.points if isinstance(s, PointSet) else np.asarray(s, dtype=np.float64)
    n, m = pts.shape
    if m > MAX_EXACT_DIM or n > MAX_EXACT_POINTS:
        raise SizeLimitError(f"exact oracle accepts m <= {MAX_EXACT_DIM}, n <= {MAX_EXACT_POINTS}")
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    lam = exact_membership(pts, p)
    if lam is not None:
        return OracleResult(True, Fraction(0), tuple(lam), tuple(Fraction(float(c)) for c in p))
    P = _to_fractions(pts)
    q = [Fraction(float(c)) for c in p]
    shifted = [[a - b for a, b in zip(v, q)] for v in P]
    sq, coeffs = exact_min_norm(shifted)
    nearest = tuple(sum((c * P[i][d] for i, c in enumerate(coeffs)), Fraction(0))
                    for d in range(m))
    return OracleResult(False, sq, tuple(coeffs), nearest)


def hull_distance(points, x):
    """Numerical distance from `x` to conv(points) and the convex weights.

    Floating-point run of Wolfe's minimum-norm-point method on the shifted
    points, the same active-set scheme as the exact routine above.
    """
    V = np.asarray(points, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    D = V - x
    n = len(D)
    sq = np.einsum("ij,ij->i", D, D)
    tol = 1e-12 * max(1.0, float(sq.max()))
    first = int(np.argmin(sq))
    S, lam = [first], np.ones(1)
    y = D[first].copy()
    for _ in range(50 * n + 50):
        yy = float(y @ y)
        scores = D @ y
        j = int(np.argmin(scores))
        if yy <= tol or yy - scores[j] <= tol or j in S:
            break
        S.append(j)
        lam = np.append(lam, 0.0)
        while True:
            mu = _affine_min_norm_float(D[S])
            if np.all(mu > 0):
                lam = mu
                break
            neg = mu <= 0
            ratios = lam[neg] / (lam[neg] - mu[neg])
            k = int(np.argmin(ratios))
            theta = float(ratios[k])
            lam = (1.0 - theta) * lam + theta * mu
            drop = np.flatnonzero(neg)[k]
            keep = [i for i in range(len(S)) if i != drop and lam[i] > 0]
            S = [S[i] for i in keep]
            lam = lam[keep]
            lam /= lam.sum()
        y = lam @ D[S]
    weights = np.zeros(n)
    weights[S] = lam
    return float(np.linalg.norm(weights @ D)), weights


def _affine_min_norm_float(Q):
    k = len(Q)
    K = np.zeros((k + 1, k + 1))
    K[:k, :k] = Q @ Q.T
    K[:k, k] = 1.0
    K[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    return np.linalg.lstsq(K, rhs, rcond=None)[0][:k]


def robustness(points, vertex_indices):
    """Smallest distance from a vertex to the hull of the remaining vertices."""
    V = np.asarray(points, dtype=np.float64)[np.asarray(vertex_indices)]
    if len(V) < 2:
        return float("inf")
    best = float("inf")
    for i in range(len(V)):
        others = np.delete(V, i, axis=0)
        best = min(best, hull_distance(others, V[i])[0])
    return best
