"""Projected gradient ascent over the probability simplex.

The objective handled here is

    h(t) = a . t + b * sqrt(1 - |t|^2),    t_i >= 0, sum_i t_i = 1,

which is what the G-metric maximization reduces to once the witness state
is diagonalized in the eigenbasis of rho - sigma. All restarts run together
as rows of one array so a solve is a handful of vectorized numpy calls.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

GAIN_TOL = 1e-12
SMALL_GAIN_STREAK = 3
MIN_STEP = 1e-18
MAX_STEP = 1e6
SQRT_FLOOR = 1e-12
FIXED_POINT_ATOL = 1e-15


def project_simplex(v):
    """Euclidean projection of each row of ``v`` onto the probability simplex."""
    v = np.atleast_2d(np.asarray(v, dtype=float))
    n = v.shape[1]
    u = -np.sort(-v, axis=1)
    css = np.cumsum(u, axis=1) - 1.0
    cond = u - css / np.arange(1, n + 1) > 0
    rho = n - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(v.shape[0]), rho] / (rho + 1)
    return np.maximum(v - theta[:, None], 0.0)


def _root_term(t):
    return np.sqrt(np.maximum(1.0 - np.einsum("ij,ij->i", t, t), 0.0))


def objective(t, a, b):
    """h(t) for each row of ``t``; ``a`` may be one vector or one per row, ``b`` likewise."""
    t = np.atleast_2d(t)
    a = np.atleast_2d(a)
    return np.einsum("ij,ij->i", np.broadcast_to(a, t.shape), t) + b * _root_term(t)


def concave_maximizer(a, b):
    """Exact maximizer of h for ``b > 0`` (h is then strictly concave).

    Stationarity gives t proportional to (a - mu)_+, with mu fixed by
    (sum w)^2 - sum w^2 = b^2 for w = (a - mu)_+. The left side is
    continuous and decreasing in mu, so a bracketed root-find settles it.
    """
    a = np.asarray(a, dtype=float)
    if b <= 0 or a.size < 2:
        return None
    srt = np.sort(a)[::-1]

    def excess(mu):
        w = np.clip(a - mu, 0.0, None)
        return w.sum() ** 2 - w @ w - b * b

    hi = srt[1]
    lo = srt[-1] - b
    if excess(hi) >= 0:
        return None
    mu = brentq(excess, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    w = np.clip(a - mu, 0.0, None)
    return w / w.sum()


@dataclass
class SimplexResult:
    t: np.ndarray
    value: float
    residual: float
    iterations: int
    restarts: int
    converged: bool
    row: int = 0


def starting_points(n, restarts, rng, a=None, b=None):
    """Uniform point, every vertex, ``restarts`` Dirichlet draws, and the
    analytic optimum when the objective is concave."""
    pts = [np.full(n, 1.0 / n)]
    pts.extend(np.eye(n))
    if restarts:
        pts.extend(rng.dirichlet(np.ones(n), size=restarts))
    if a is not None and b is not None:
        exact = concave_maximizer(a, b)
        if exact is not None:
            pts.append(exact)
    return np.array(pts)


def maximize(a, b, starts, max_iter=10_000):
    """Maximize ``h`` from every row of ``starts``; return the best row.

    ``a`` is one coefficient vector or one per row and ``b`` one scalar or
    one per row, so several objectives can share a solve. Each row keeps
    its own step size: doubled after an improving step, halved otherwise.
    A row stops when

    * three accepted steps in a row gain less than 1e-12 * min(1, step),
    * a step of size >= 1e-6 leaves it in place (a projected-gradient
      fixed point, hence stationary), or
    * its step size underflows.

    Scaling the gain test by the step matters: right after backtracking out
    of a vertex the step is tiny and so is the gain, although the point is
    far from stationary. Ties between rows go to the lowest row index.
    """
    t = project_simplex(starts)
    rows, n = t.shape
    a = np.array(np.broadcast_to(np.asarray(a, dtype=float), (rows, n)))
    b = np.array(np.broadcast_to(np.asarray(b, dtype=float), (rows,)))
    h = objective(t, a, b)
    step = np.ones(rows)
    last_gain = np.full(rows, np.inf)
    stationary = np.zeros(rows, dtype=bool)
    streak = np.zeros(rows, dtype=int)
    active = np.ones(rows, dtype=bool)

    it = 0
    while it < max_iter:
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        it += 1
        ta, aa, ba, sa = t[idx], a[idx], b[idx], step[idx]
        root = _root_term(ta)
        grad = aa - (ba / np.maximum(root, SQRT_FLOOR))[:, None] * ta
        cand = project_simplex(ta + sa[:, None] * grad)
        hc = np.einsum("ij,ij->i", aa, cand) + ba * _root_term(cand)
        gain = hc - h[idx]

        up = gain > 0
        ui = idx[up]
        t[ui] = cand[up]
        h[ui] = hc[up]
        last_gain[ui] = gain[up]
        small = gain[up] < GAIN_TOL * np.minimum(1.0, sa[up])
        streak[ui] = np.where(small, streak[ui] + 1, 0)
        step[ui] = np.minimum(sa[up] * 2.0, MAX_STEP)
        active[ui[streak[ui] >= SMALL_GAIN_STREAK]] = False

        down = ~up
        di = idx[down]
        fixed = (np.max(np.abs(cand[down] - ta[down]), axis=1) <= FIXED_POINT_ATOL) & (sa[down] >= 1e-6)
        step[di] = sa[down] * 0.5
        done = di[fixed | (step[di] < MIN_STEP)]
        stationary[done] = True
        active[done] = False

    best = int(np.argmax(h))
    if stationary[best] or not np.isfinite(last_gain[best]):
        residual = 0.0
    else:
        residual = float(last_gain[best])
    return SimplexResult(
        t=t[best].copy(),
        value=float(h[best]),
        residual=residual,
        iterations=it,
        restarts=rows,
        converged=not active[best],
        row=best,
    )
