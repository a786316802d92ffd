"""Dense two-phase primal simplex.

All optimisation subproblems in pathdea (membership tests, bisection
feasibility, second-phase slack maximisation, direct linear solves) are small
and dense, so a plain tableau method is used. Problems are always posed as
minimisation::

    min  c @ x
    s.t. A[i] @ x  (<= | >= | =)  b[i]
         x[j] >= 0            (or free when ``free[j]``)

Pricing is Dantzig's rule; after ``3 * (rows + cols)`` iterations in a phase
the solver switches to Bland's rule, which cannot cycle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from pathdea.errors import DimensionMismatch


class RowKind(str, enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    BREAKDOWN = "breakdown"


@dataclass(frozen=True)
class LpOptions:
    """Tolerances of the simplex method."""

    piv_tol: float = 1e-10
    feas_tol: float = 1e-7
    opt_tol: float = 1e-9
    max_iter: int | None = None

    def __post_init__(self):
        if min(self.piv_tol, self.feas_tol, self.opt_tol) <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True, eq=False)
class LinearProgram:
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    kinds: tuple[RowKind, ...]
    free: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        A = np.asarray(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(0, c.size)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.ndim != 2 or A.shape != (b.size, c.size):
            raise DimensionMismatch(
                f"A has shape {A.shape}, expected ({b.size}, {c.size})"
            )
        kinds = tuple(RowKind(k) for k in self.kinds)
        if len(kinds) != b.size:
            raise DimensionMismatch("one row kind per constraint required")
        if not np.all(np.isfinite(b)):
            raise ValueError("right-hand side must be finite")
        free = (
            np.zeros(c.size, dtype=bool)
            if self.free is None
            else np.asarray(self.free, dtype=bool).reshape(-1)
        )
        if free.size != c.size:
            raise DimensionMismatch("free flags must match the number of variables")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "free", free)

    @property
    def num_vars(self) -> int:
        return self.c.size

    @property
    def num_rows(self) -> int:
        return self.b.size

    def violation(self, x: np.ndarray) -> float:
        """Largest constraint or bound violation of ``x``."""
        act = self.A @ x
        worst = 0.0
        for k, a, bi in zip(self.kinds, act, self.b):
            if k is RowKind.LE:
                worst = max(worst, a - bi)
            elif k is RowKind.GE:
                worst = max(worst, bi - a)
            else:
                worst = max(worst, abs(a - bi))
        bounded = ~self.free
        if bounded.any():
            worst = max(worst, float(np.max(-x[bounded], initial=0.0)))
        return float(worst)


@dataclass(frozen=True, eq=False)
class LpOutcome:
    status: LpStatus
    value: float
    x: np.ndarray | None
    activity: np.ndarray | None
    phase_one_value: float
    iterations: int
    reduced_costs: np.ndarray | None = None
    message: str = ""

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass
class _Tableau:
    # rows 0..r-1 are constraints, row r is the reduced-cost row;
    # the last column holds the right-hand side
    T: np.ndarray
    basis: list[int]
    iterations: int = 0
    excluded: set[int] = field(default_factory=set)


class _Breakdown(Exception):
    pass


def _pivot(tab: _Tableau, row: int, col: int) -> None:
    T = tab.T
    T[row] /= T[row, col]
    f = T[:, col].copy()
    f[row] = 0.0
    T -= np.outer(f, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0
    tab.basis[row] = col
    tab.iterations += 1


def _run_phase(tab: _Tableau, allowed: int, opts: LpOptions, limit: int) -> str:
    """Iterate the simplex on ``tab``; columns >= ``allowed`` never enter.

    Returns "optimal" or "unbounded"; raises _Breakdown on numerical trouble.
    """
    T = tab.T
    nrows = T.shape[0] - 1
    bland_after = 3 * (nrows + allowed)
    start = tab.iterations
    weak = 0
    while True:
        done = tab.iterations - start
        if done > limit:
            raise _Breakdown("iteration limit reached")
        rc = T[nrows, :allowed]
        candidates = (rc < -opts.opt_tol).nonzero()[0]
        if tab.excluded:
            candidates = np.array(
                [j for j in candidates if j not in tab.excluded], dtype=int
            )
        if candidates.size == 0:
            if tab.excluded:
                raise _Breakdown("only tiny pivots available")
            return "optimal"
        if done < bland_after:
            col = int(candidates[np.argmin(rc[candidates])])
        else:
            col = int(candidates[0])
        column = T[:nrows, col]
        ok = column > opts.piv_tol
        if not ok.any():
            if np.any(column > 0.0):
                weak += 1
                if weak > 3:
                    raise _Breakdown("pivot magnitude below tolerance repeatedly")
                tab.excluded.add(col)
                continue
            return "unbounded"
        rows = ok.nonzero()[0]
        ratios = T[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
        # smallest basic index among ties keeps Bland's rule valid
        row = int(min(ties, key=lambda i: tab.basis[i]))
        _pivot(tab, row, col)
        tab.excluded.clear()
        weak = 0


def solve_lp(
    p: LinearProgram,
    options: LpOptions | None = None,
    phase_one_tol: float | None = None,
) -> LpOutcome:
    """Solve ``p`` with the two-phase simplex method.

    ``phase_one_tol`` is the largest phase-one objective (sum of artificial
    variables) still accepted as feasible; it defaults to ``feas_tol``.
    Numerical trouble is reported through ``LpStatus.BREAKDOWN``.
    """
    opts = options or LpOptions()
    p1_tol = opts.feas_tol if phase_one_tol is None else phase_one_tol

    # standard form: split free variables, flip rows with negative rhs
    free_idx = np.flatnonzero(p.free)
    A = p.A
    c = p.c
    if free_idx.size:
        A = np.hstack([A, -A[:, free_idx]])
        c = np.concatenate([c, -c[free_idx]])
    nrow, nstruct = A.shape
    b = p.b.copy()
    A = A.copy()
    kinds = list(p.kinds)
    for i in range(nrow):
        if b[i] < 0:
            b[i] = -b[i]
            A[i] = -A[i]
            if kinds[i] is RowKind.LE:
                kinds[i] = RowKind.GE
            elif kinds[i] is RowKind.GE:
                kinds[i] = RowKind.LE

    n_slack = sum(1 for k in kinds if k is not RowKind.EQ)
    art_rows = [i for i, k in enumerate(kinds) if k is not RowKind.LE]
    n_art = len(art_rows)
    ncols = nstruct + n_slack + n_art
    T = np.zeros((nrow + 1, ncols + 1))
    T[:nrow, :nstruct] = A
    T[:nrow, -1] = b
    basis = [-1] * nrow
    s = nstruct
    a = nstruct + n_slack
    for i, k in enumerate(kinds):
        if k is RowKind.LE:
            T[i, s] = 1.0
            basis[i] = s
            s += 1
        elif k is RowKind.GE:
            T[i, s] = -1.0
            s += 1
            T[i, a] = 1.0
            basis[i] = a
            a += 1
        else:
            T[i, a] = 1.0
            basis[i] = a
            a += 1
    tab = _Tableau(T, basis)
    limit = opts.max_iter or 50 * (nrow + ncols) + 500
    real_cols = nstruct + n_slack

    def breakdown(msg: str, p1: float = np.nan) -> LpOutcome:
        return LpOutcome(LpStatus.BREAKDOWN, np.nan, None, None, p1, tab.iterations, None, msg)

    # phase one
    phase_one = 0.0
    if n_art:
        T[nrow, :] = 0.0
        T[nrow, real_cols:ncols] = 1.0
        for i in art_rows:
            T[nrow] -= T[i]
        try:
            _run_phase(tab, ncols, opts, limit)
        except _Breakdown as exc:
            return breakdown(f"phase one: {exc}")
        phase_one = -T[nrow, -1]
        if phase_one > p1_tol:
            return LpOutcome(
                LpStatus.INFEASIBLE, np.nan, None, None, float(phase_one), tab.iterations
            )
        # drive remaining artificial variables out of the basis
        keep = []
        for i in range(nrow):
            if tab.basis[i] >= real_cols:
                row = T[i, :real_cols]
                j = int(np.argmax(np.abs(row))) if real_cols else -1
                if real_cols and abs(row[j]) > opts.piv_tol:
                    _pivot(tab, i, j)
                    keep.append(i)
                # otherwise the row is redundant and dropped
            else:
                keep.append(i)
        keep_rows = keep + [nrow]
        T = np.ascontiguousarray(T[keep_rows][:, list(range(real_cols)) + [ncols]])
        tab = _Tableau(T, [tab.basis[i] for i in keep], tab.iterations)
        nrow = len(keep)
        ncols = real_cols

    # phase two
    cost = np.zeros(ncols)
    cost[:nstruct] = c
    T[nrow, :ncols] = cost
    T[nrow, -1] = 0.0
    for i, j in enumerate(tab.basis):
        if cost[j] != 0.0:
            T[nrow] -= cost[j] * T[i]
    try:
        state = _run_phase(tab, ncols, opts, limit)
    except _Breakdown as exc:
        return breakdown(f"phase two: {exc}", float(phase_one))

    z = np.zeros(ncols)
    for i, j in enumerate(tab.basis):
        z[j] = T[i, -1]
    x = z[: p.num_vars].copy()
    if free_idx.size:
        x[free_idx] -= z[p.num_vars : nstruct]
    if state == "unbounded":
        return LpOutcome(
            LpStatus.UNBOUNDED, -np.inf, x, p.A @ x, float(phase_one), tab.iterations
        )
    rc = T[nrow, :ncols].copy()
    value = float(p.c @ x)
    activity = p.A @ x
    assert p.violation(x) <= max(opts.feas_tol, 10 * p1_tol) * (
        1.0 + float(np.max(np.abs(p.b), initial=0.0))
    ), "simplex returned an infeasible point"
    assert np.all(rc >= -opts.opt_tol), "simplex stopped with a negative reduced cost"
    return LpOutcome(
        LpStatus.OPTIMAL, value, x, activity, float(phase_one), tab.iterations, rc
    )


def check_feasible(
    p: LinearProgram,
    options: LpOptions | None = None,
    phase_one_tol: float | None = None,
) -> LpOutcome:
    """Feasibility test: solve ``p`` with its objective replaced by zero.

    ``OPTIMAL`` means feasible, and ``x`` is a witness point.
    """
    zero = LinearProgram(np.zeros(p.num_vars), p.A, p.b, p.kinds, p.free)
    return solve_lp(zero, options, phase_one_tol)
