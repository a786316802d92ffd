"""Brute-force reference solutions used by the test suite.

These are deliberately naive: vertex enumeration, grid scans with an
independent LP solver (scipy's HiGHS) and closed-form formulas for the
one-input, one-output case. None of them share code with pathdea's solver.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import linprog


def lp_by_vertices(c, A, b, kinds, tol=1e-9):
    """Minimum of ``c @ x`` over ``A x (kinds) b, x >= 0`` by vertex enumeration.

    Returns ``None`` when the polyhedron is empty. Callers must ensure the
    feasible set is bounded.
    """
    c, A, b = np.asarray(c, float), np.asarray(A, float), np.asarray(b, float)
    nv = c.size
    # every constraint as a row of G z <= h, remembering equalities
    G, h, eq = [], [], []
    for a, bi, k in zip(A, b, kinds):
        if k == "<=":
            G.append(a); h.append(bi); eq.append(False)
        elif k == ">=":
            G.append(-a); h.append(-bi); eq.append(False)
        else:
            G.append(a); h.append(bi); eq.append(True)
    for j in range(nv):
        e = np.zeros(nv); e[j] = -1.0
        G.append(e); h.append(0.0); eq.append(False)
    G, h = np.array(G), np.array(h)
    eq_idx = [i for i, e in enumerate(eq) if e]
    ineq_idx = [i for i, e in enumerate(eq) if not e]
    best = None
    # equality rows may be redundant, so active sets of every size are tried
    actives = itertools.chain.from_iterable(
        itertools.combinations(ineq_idx, k) for k in range(nv + 1)
    )
    for active in actives:
        rows = eq_idx + list(active)
        M = G[rows]
        if M.shape[0] < nv or np.linalg.matrix_rank(M) < nv:
            continue
        z = np.linalg.lstsq(M, h[rows], rcond=None)[0]
        if np.any(G[ineq_idx] @ z > h[ineq_idx] + tol):
            continue
        if eq_idx and np.any(np.abs(G[eq_idx] @ z - h[eq_idx]) > tol):
            continue
        v = float(c @ z)
        if best is None or v < best:
            best = v
    return best


def max_slack_by_vertices(X, Y, px, py, tol=1e-9):
    """Largest total slack at the point ``(px, py)`` by enumerating the
    vertices of ``{lam in simplex : X lam <= px, Y lam >= py}``."""
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    n = X.shape[1]
    # G lam <= h
    G = np.vstack([X, -Y, -np.eye(n)])
    h = np.concatenate([px, -np.asarray(py), np.zeros(n)])
    best = None
    for active in itertools.combinations(range(G.shape[0]), n - 1):
        M = np.vstack([np.ones((1, n)), G[list(active)]])
        if np.linalg.matrix_rank(M) < n:
            continue
        lam = np.linalg.solve(M, np.concatenate([[1.0], h[list(active)]]))
        if np.any(G @ lam > h + tol):
            continue
        total = float(np.sum(px - X @ lam) + np.sum(Y @ lam - py))
        best = total if best is None else max(best, total)
    return best


def highs_member(X, Y, x, y) -> bool:
    """VRS membership with scipy's HiGHS, rows scaled by their data range."""
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    wx = np.maximum(np.abs(X).max(axis=1), 1e-300)
    wy = np.maximum(np.abs(Y).max(axis=1), 1e-300)
    n = X.shape[1]
    A_ub = np.vstack([X / wx[:, None], -Y / wy[:, None]])
    b_ub = np.concatenate([np.asarray(x) / wx, -np.asarray(y) / wy])
    res = linprog(
        np.zeros(n), A_ub=A_ub, b_ub=b_ub, A_eq=np.ones((1, n)), b_eq=[1.0],
        bounds=[(0, None)] * n, method="highs",
        options={"primal_feasibility_tolerance": 1e-10},
    )
    return res.status == 0


def grid_scan_score(X, Y, point, lo, hi=1.0, spacing=1e-6, points=10):
    """Smallest grid value in ``(lo, hi]`` whose path point is feasible.

    ``point(theta)`` returns ``(x, y)``. The scan is a nested sequence of
    grids, each ``points`` wide and ten times finer than the previous one,
    ending at ``spacing``. Feasibility along a path only switches once, which
    is what lets the nested grids locate the first feasible point of the
    full 1e-6 grid without visiting all of it.
    """
    a, b = lo, hi
    step = (b - a) / points
    while True:
        grid = [a + k * step for k in range(1, points + 1)]
        grid[-1] = b
        first = next(k for k, t in enumerate(grid) if highs_member(X, Y, *point(t)))
        b = grid[first]
        a = grid[first - 1] if first > 0 else a
        if step <= spacing:
            return b
        step = max(step / points, spacing)
        points = int(round((b - a) / step))
        if points < 1:
            return b


def frontier_1d(Xr, Yr):
    """Closed-form classification helpers for one input and one output.

    Returns ``f`` (the largest output obtainable with input at most ``x``)
    and ``g`` (the smallest input that still yields output at least ``y``),
    both computed from pairs of DMUs, which suffices in two dimensions.
    """
    xs, ys = list(map(float, Xr)), list(map(float, Yr))
    pts = list(zip(xs, ys))

    def f(x):
        best = -math.inf
        for (x1, y1), (x2, y2) in itertools.product(pts, repeat=2):
            # t*x1 + (1-t)*x2 <= x, t in [0,1], maximise t*y1 + (1-t)*y2
            cands = [0.0, 1.0]
            if x1 != x2:
                cands.append((x - x2) / (x1 - x2))
            for t in cands:
                if 0.0 <= t <= 1.0 and t * x1 + (1 - t) * x2 <= x + 1e-12:
                    best = max(best, t * y1 + (1 - t) * y2)
        return best

    def g(y):
        best = math.inf
        for (x1, y1), (x2, y2) in itertools.product(pts, repeat=2):
            cands = [0.0, 1.0]
            if y1 != y2:
                cands.append((y - y2) / (y1 - y2))
            for t in cands:
                if 0.0 <= t <= 1.0 and t * y1 + (1 - t) * y2 >= y - 1e-12:
                    best = min(best, t * x1 + (1 - t) * x2)
        return best

    return f, g


def classify_1d(Xr, Yr, x, y, tol=1e-9) -> str:
    f, g = frontier_1d(Xr, Yr)
    on_top = abs(f(x) - y) <= tol
    on_left = abs(g(y) - x) <= tol
    if on_top and on_left:
        return "StrongFrontier"
    if on_top or on_left:
        return "WeakFrontier"
    return "Interior"


def highs_max_scaled_slack(X, Y, px, py) -> float:
    """Largest sum of slacks, each divided by ``1 + max|row|``, at ``(px, py)``."""
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    wx = 1.0 + np.abs(X).max(axis=1)
    wy = 1.0 + np.abs(Y).max(axis=1)
    m, s, n = X.shape[0], Y.shape[0], X.shape[1]
    # variables lam, scaled slacks; X lam / wx + sx = px / wx, Y lam / wy - sy = py / wy
    A_eq = np.zeros((m + s + 1, n + m + s))
    A_eq[:m, :n] = X / wx[:, None]
    A_eq[:m, n : n + m] = np.eye(m)
    A_eq[m : m + s, :n] = Y / wy[:, None]
    A_eq[m : m + s, n + m :] = -np.eye(s)
    A_eq[-1, :n] = 1.0
    b_eq = np.concatenate([np.asarray(px) / wx, np.asarray(py) / wy, [1.0]])
    c = np.concatenate([np.zeros(n), -np.ones(m + s)])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * (n + m + s), method="highs")
    if res.status != 0:
        raise ValueError("point is not in the technology")
    return -float(res.fun)
