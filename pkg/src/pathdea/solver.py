"""Efficiency scores by bisection along a path, second phase and super-efficiency.

Every routine reduces to LP feasibility of the VRS system::

    X lam <= x,  Y lam >= y,  sum(lam) = 1,  lam >= 0

Rows are divided by a per-row data scale before they reach the simplex, so
tolerances act on relative rather than absolute magnitudes.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from pathdea.core import TechnologySet, Unit
from pathdea.directions import DirectionPair, DirectionSpec, Family, build_direction, parse_direction
from pathdea.errors import (
    AssumptionViolation,
    ConfigError,
    InfeasibleSecondPhase,
    NotLinearModel,
    NumericalBreakdown,
    UnitInsideTechnology,
    UnitOutsideTechnology,
    ZeroDirection,
)
from pathdea.lp import LinearProgram, LpOptions, LpOutcome, LpStatus, RowKind, solve_lp
from pathdea.paths import Path, PsiKind, PsiPair, make_psi, parse_psi_pair


@dataclass(frozen=True)
class SolveOptions:
    """Solver tolerances.

    ``membership_tol`` is the phase-one threshold used by membership tests; it
    is much tighter than the LP feasibility tolerance so that bisection can
    resolve scores to ``theta_tol``.
    """

    theta_tol: float = 1e-9
    lp: LpOptions = field(default_factory=LpOptions)
    super_bracket_cap: float = 1e6
    max_bisect_iters: int = 200
    membership_tol: float = 1e-11
    slack_tol: float = 1e-6

    def __post_init__(self):
        vals = (self.theta_tol, self.super_bracket_cap, self.membership_tol, self.slack_tol)
        if min(vals) <= 0 or self.max_bisect_iters <= 0:
            raise ConfigError("solver options must be positive")
        if self.super_bracket_cap <= 1.0:
            raise ConfigError("super_bracket_cap must exceed 1")


DEFAULT_OPTIONS = SolveOptions()


class Status(str, enum.Enum):
    SOLVED = "Solved"
    SOLVED_AT_BOUND = "SolvedAtBound"
    INFEASIBLE = "Infeasible"
    UNRESOLVED = "Unresolved"


class UnitClass(str, enum.Enum):
    INTERIOR = "Interior"
    WEAK_FRONTIER = "WeakFrontier"
    STRONG_FRONTIER = "StrongFrontier"


@dataclass(frozen=True, eq=False)
class GsProblem:
    technology: TechnologySet
    unit: Unit
    psi: PsiPair
    directions: DirectionPair

    def __post_init__(self):
        self.technology.check_unit(self.unit)
        Path.of(self.unit, self.directions, self.psi)  # validates lengths

    @property
    def path(self) -> Path:
        return Path.of(self.unit, self.directions, self.psi)


@dataclass(frozen=True, eq=False)
class SecondPhase:
    slacks_x: np.ndarray
    slacks_y: np.ndarray
    lambda_star: np.ndarray
    benchmark: Unit
    total: float
    strongly_efficient: bool


@dataclass(frozen=True, eq=False)
class EfficiencyResult:
    theta_star: float
    status: Status
    projection: Unit | None = None
    lambda_star: np.ndarray | None = None
    slacks_x: np.ndarray | None = None
    slacks_y: np.ndarray | None = None
    benchmark: Unit | None = None
    strongly_efficient_projection: bool = False
    theta_lo: float = math.nan
    iterations: int = 0
    certificate: str | None = None
    diagnostics: tuple[str, ...] = ()
    dmu: str | None = None

    @property
    def slack_total(self) -> float:
        if self.slacks_x is None:
            return math.nan
        return float(self.slacks_x.sum() + self.slacks_y.sum())

    @property
    def solved(self) -> bool:
        return self.status in (Status.SOLVED, Status.SOLVED_AT_BOUND)

    def labelled(self, dmu: str) -> "EfficiencyResult":
        return replace(self, dmu=dmu)


# LP builders


def _membership_lp(T: TechnologySet, x: np.ndarray, y: np.ndarray) -> LinearProgram:
    wx, wy = T.input_scale, T.output_scale
    A = np.vstack([T.X / wx[:, None], T.Y / wy[:, None], np.ones((1, T.n))])
    b = np.concatenate([x / wx, y / wy, [1.0]])
    kinds = (RowKind.LE,) * T.m + (RowKind.GE,) * T.s + (RowKind.EQ,)
    return LinearProgram(np.zeros(T.n), A, b, kinds)


def _feasible(T: TechnologySet, x, y, opts: SolveOptions) -> LpOutcome:
    out = solve_lp(_membership_lp(T, x, y), opts.lp, opts.membership_tol)
    if out.status is LpStatus.BREAKDOWN:
        raise NumericalBreakdown(out.message)
    return out


def membership(T: TechnologySet, u: Unit, opts: SolveOptions = DEFAULT_OPTIONS) -> bool:
    """True iff ``u`` belongs to the VRS technology ``T``."""
    T.check_unit(u)
    return _feasible(T, u.x, u.y, opts).optimal


def second_phase_at(
    T: TechnologySet, point: Unit, opts: SolveOptions = DEFAULT_OPTIONS
) -> SecondPhase:
    """Maximise total slack at a fixed point of ``T``."""
    T.check_unit(point)
    n, m, s = T.n, T.m, T.s
    wx, wy = T.input_scale, T.output_scale
    # variables: lam (n), scaled input slacks (m), scaled output slacks (s)
    A = np.zeros((m + s + 1, n + m + s))
    A[:m, :n] = T.X / wx[:, None]
    A[:m, n : n + m] = np.eye(m)
    A[m : m + s, :n] = T.Y / wy[:, None]
    A[m : m + s, n + m :] = -np.eye(s)
    A[-1, :n] = 1.0
    b = np.concatenate([point.x / wx, point.y / wy, [1.0]])
    c = np.concatenate([np.zeros(n), -wx, -wy])
    out = solve_lp(LinearProgram(c, A, b, (RowKind.EQ,) * (m + s + 1)), opts.lp)
    if out.status is LpStatus.INFEASIBLE:
        raise InfeasibleSecondPhase("projection is not a member of the technology")
    if out.status is not LpStatus.OPTIMAL:
        raise NumericalBreakdown(f"second phase: {out.status.value} {out.message}")
    lam = np.clip(out.x[:n], 0.0, None)
    sx = np.clip(out.x[n : n + m] * wx, 0.0, None)
    sy = np.clip(out.x[n + m :] * wy, 0.0, None)
    total = float(sx.sum() + sy.sum())
    bench = Unit(T.X @ lam, T.Y @ lam)
    # strength is judged on slacks relative to each row's data scale
    strong = float(np.sum(sx / (1.0 + wx)) + np.sum(sy / (1.0 + wy))) <= opts.slack_tol
    return SecondPhase(sx, sy, lam, bench, total, strong)


def second_phase(
    p: GsProblem, theta_star: float, opts: SolveOptions = DEFAULT_OPTIONS
) -> SecondPhase:
    return second_phase_at(p.technology, p.path.point(theta_star), opts)


# bisection


def _bisect(feasible, lo: float, hi: float, opts: SolveOptions) -> tuple[float, float, int]:
    """Shrink ``[lo, hi]`` keeping ``lo`` infeasible and ``hi`` feasible."""
    it = 0
    while hi - lo > opts.theta_tol and it < opts.max_bisect_iters:
        mid = lo + 0.5 * (hi - lo)
        if not (lo < mid < hi):
            break  # floating point spacing reached
        if feasible(mid):
            hi = mid
        else:
            lo = mid
        it += 1
    return lo, hi, it


def _lower_thresholds(p: GsProblem) -> list[float]:
    """Parameter values below which the path provably leaves ``T``."""
    agg = p.technology.aggregates
    px, py = p.psi.psi_x, p.psi.psi_y
    gx, gy = p.directions.g_x, p.directions.g_y
    out = []
    for r in np.flatnonzero(gy > 0):
        v = 1.0 + (agg.y_max[r] - p.unit.y[r]) / gy[r]
        if v > py.image_lower:
            out.append(py.inverse(v))
    for i in np.flatnonzero(gx > 0):
        v = 1.0 - (p.unit.x[i] - agg.x_min[i]) / gx[i]
        if v > px.image_lower:
            out.append(px.inverse(v))
    return [t for t in out if p.psi.in_domain(t)]


def _step_down(t: float, k: int, domain_lower: float) -> float:
    if domain_lower == -math.inf:
        return t - max(1.0, 1.0 - t) * 2.0**k
    return t * 0.5 ** (k + 1)


def solve_gs(p: GsProblem, opts: SolveOptions = DEFAULT_OPTIONS) -> EfficiencyResult:
    """Smallest parameter keeping the path of ``p.unit`` inside the technology.

    The unit must belong to the technology; use :func:`super_efficiency`
    otherwise. The reported score is the feasible end of the final bracket,
    and the second phase runs at that point.
    """
    T, path = p.technology, p.path
    if not membership(T, p.unit, opts):
        raise UnitOutsideTechnology(
            "unit is outside the technology set; use super_efficiency instead"
        )

    def feasible(theta: float) -> bool:
        return _feasible(T, path.point_x(theta), path.point_y(theta), opts).optimal

    # without an analytic threshold (e.g. the only one sits on the domain
    # boundary) the search steps down from 1
    thresholds = _lower_thresholds(p)
    t = min(max(thresholds), 1.0) if thresholds else 1.0
    lo = None
    for k in range(64):
        cand = _step_down(t, k, p.psi.domain_lower)
        if not feasible(cand):
            lo = cand
            break
    if lo is None:
        raise AssumptionViolation(
            "the path stays inside the technology on the whole search range; "
            "the score is not attained"
        )
    lo, hi, it = _bisect(feasible, lo, 1.0, opts)
    status = Status.SOLVED_AT_BOUND if hi == 1.0 else Status.SOLVED
    return _finish(p, hi, lo, it, status, opts)


def _finish(p, theta, lo, it, status, opts, certificate=None, diagnostics=()):
    point = p.path.point(theta)
    sp = second_phase_at(p.technology, point, opts)
    return EfficiencyResult(
        theta_star=float(theta),
        status=status,
        projection=point,
        lambda_star=sp.lambda_star,
        slacks_x=sp.slacks_x,
        slacks_y=sp.slacks_y,
        benchmark=sp.benchmark,
        strongly_efficient_projection=sp.strongly_efficient,
        theta_lo=float(lo),
        iterations=it,
        certificate=certificate,
        diagnostics=tuple(diagnostics) + p.directions.notes,
    )


_LINEAR_KINDS = (PsiKind.LINEAR, PsiKind.ABSENT)


def solve_linear_direct(p: GsProblem, opts: SolveOptions = DEFAULT_OPTIONS) -> float:
    """Score of a linear model from one LP with a free parameter variable."""
    if not p.psi.is_linear:
        raise NotLinearModel(f"direct solve needs the linear pair, got {p.psi.text}")
    T, u = p.technology, p.unit
    gx, gy = p.directions.g_x, p.directions.g_y
    wx, wy = T.input_scale, T.output_scale
    n = T.n
    A = np.zeros((T.m + T.s + 1, n + 1))
    A[: T.m, :n] = T.X / wx[:, None]
    A[: T.m, n] = -gx / wx
    A[T.m : T.m + T.s, :n] = T.Y / wy[:, None]
    A[T.m : T.m + T.s, n] = gy / wy
    A[-1, :n] = 1.0
    b = np.concatenate([(u.x - gx) / wx, (u.y + gy) / wy, [1.0]])
    kinds = (RowKind.LE,) * T.m + (RowKind.GE,) * T.s + (RowKind.EQ,)
    free = np.zeros(n + 1, dtype=bool)
    free[n] = True
    c = np.zeros(n + 1)
    c[n] = 1.0
    out = solve_lp(LinearProgram(c, A, b, kinds, free), opts.lp)
    if out.status is LpStatus.INFEASIBLE:
        raise UnitOutsideTechnology("direct program is infeasible")
    if out.status is not LpStatus.OPTIMAL:
        raise NumericalBreakdown(f"direct solve: {out.status.value} {out.message}")
    return float(out.x[n])


# super-efficiency


def _orientation_system_feasible(p: GsProblem, opts: SolveOptions) -> bool:
    """Rows with a zero direction never move; they must hold on their own."""
    T, u = p.technology, p.unit
    gx, gy = p.directions.g_x, p.directions.g_y
    ix, iy = np.flatnonzero(gx == 0), np.flatnonzero(gy == 0)
    A = np.vstack(
        [
            T.X[ix] / T.input_scale[ix, None],
            T.Y[iy] / T.output_scale[iy, None],
            np.ones((1, T.n)),
        ]
    )
    b = np.concatenate([u.x[ix] / T.input_scale[ix], u.y[iy] / T.output_scale[iy], [1.0]])
    kinds = (RowKind.LE,) * ix.size + (RowKind.GE,) * iy.size + (RowKind.EQ,)
    out = solve_lp(LinearProgram(np.zeros(T.n), A, b, kinds), opts.lp, opts.membership_tol)
    return out.optimal


def _output_limit_system(p: GsProblem, opts: SolveOptions, strict: bool) -> float | None:
    """Outputs ``y_o - g_y`` are the limit of the path when psi_y tends to 0.

    With ``strict=False`` this is the plain feasibility of
    ``Y lam >= y_o - g_y``. With ``strict=True`` it returns the largest
    uniform margin ``t`` by which the moving rows can beat that limit while
    the fixed rows still hold; ``None`` means no margin at all is possible.
    """
    T, u = p.technology, p.unit
    gx, gy = p.directions.g_x, p.directions.g_y
    wx, wy = T.input_scale, T.output_scale
    n = T.n
    if not strict:
        A = np.vstack([T.Y / wy[:, None], np.ones((1, n))])
        b = np.concatenate([(u.y - gy) / wy, [1.0]])
        kinds = (RowKind.GE,) * T.s + (RowKind.EQ,)
        out = solve_lp(LinearProgram(np.zeros(n), A, b, kinds), opts.lp, opts.membership_tol)
        return 0.0 if out.optimal else None
    moving = gy > 0
    ix = np.flatnonzero(gx == 0)
    # variables: lam (n), t (free, capped at 1)
    rows, rhs, kinds = [], [], []
    for r in range(T.s):
        row = np.zeros(n + 1)
        row[:n] = T.Y[r] / wy[r]
        if moving[r]:
            row[n] = -1.0
            rhs.append((u.y[r] - gy[r]) / wy[r])
        else:
            rhs.append(u.y[r] / wy[r])
        rows.append(row)
        kinds.append(RowKind.GE)
    for i in ix:
        row = np.zeros(n + 1)
        row[:n] = T.X[i] / wx[i]
        rows.append(row)
        rhs.append(u.x[i] / wx[i])
        kinds.append(RowKind.LE)
    cap = np.zeros(n + 1)
    cap[n] = 1.0
    rows += [np.concatenate([np.ones(n), [0.0]]), cap]
    rhs += [1.0, 1.0]
    kinds += [RowKind.EQ, RowKind.LE]
    free = np.zeros(n + 1, dtype=bool)
    free[n] = True
    c = np.zeros(n + 1)
    c[n] = -1.0
    out = solve_lp(LinearProgram(c, np.array(rows), rhs, tuple(kinds), free), opts.lp)
    if not out.optimal:
        return None
    return float(out.x[n])


def _upper_analytic(p: GsProblem) -> float | None:
    """A parameter at which the path is dominated by every observed DMU."""
    agg = p.technology.aggregates
    px, py = p.psi.psi_x, p.psi.psi_y
    gx, gy = p.directions.g_x, p.directions.g_y
    u = p.unit
    cands = [1.0]
    for i in np.flatnonzero(gx > 0):
        v = 1.0 + (agg.x_max[i] - u.x[i]) / gx[i]
        if v > px.image_lower:
            cands.append(px.inverse(v))
    for r in np.flatnonzero(gy > 0):
        v = 1.0 + (agg.y_min[r] - u.y[r]) / gy[r]
        if v <= py.image_lower:
            return None
        cands.append(py.inverse(v))
    theta = max(cands)
    return theta if theta > 1.0 else None


def super_efficiency(p: GsProblem, opts: SolveOptions = DEFAULT_OPTIONS) -> EfficiencyResult:
    """Score of a unit outside the technology (a value above 1).

    Returns status ``Infeasible`` with a certificate tag when no parameter
    can bring the path into the technology, and ``Unresolved`` when neither
    a feasible bracket nor a certificate is found below the bracket cap.
    """
    T, path = p.technology, p.path
    if membership(T, p.unit, opts):
        raise UnitInsideTechnology("unit belongs to the technology; use solve_gs instead")
    gy = p.directions.g_y
    agg = T.aggregates
    bounded_image = p.psi.image_lower_y == 0.0

    def infeasible(tag: str, note: str) -> EfficiencyResult:
        return EfficiencyResult(
            math.inf, Status.INFEASIBLE, certificate=tag,
            diagnostics=(note,) + p.directions.notes,
        )

    fixed_over = (gy == 0) & (p.unit.y > agg.y_max)
    if bounded_image:
        over = agg.y_max - p.unit.y + gy < 0
        if np.any(over | fixed_over):
            r = int(np.flatnonzero(over | fixed_over)[0])
            return infeasible("ii", f"output {r}: y_max - y_o + g_y < 0")
        if _output_limit_system(p, opts, strict=False) is None:
            return infeasible("i", "Y lam >= y_o - g_y has no convex solution")
    elif np.any(fixed_over):
        r = int(np.flatnonzero(fixed_over)[0])
        return infeasible("ii", f"output {r} has zero direction and exceeds y_max")
    if not _orientation_system_feasible(p, opts):
        return infeasible("orientation", "rows with zero direction cannot be met")
    if bounded_image:
        margin = _output_limit_system(p, opts, strict=True)
        if margin is None or margin <= opts.lp.feas_tol:
            return infeasible(
                "limit", "outputs can only reach y_o - g_y in the limit of an infinite parameter"
            )

    def feasible(theta: float) -> bool:
        return _feasible(T, path.point_x(theta), path.point_y(theta), opts).optimal

    lo, hi = 1.0, None
    theta_bar = _upper_analytic(p)
    if theta_bar is not None and theta_bar <= opts.super_bracket_cap:
        theta_bar = float(np.nextafter(theta_bar, math.inf))
        if feasible(theta_bar):
            hi = theta_bar
    if hi is None:
        k = 0
        while 1.0 + 2.0**k <= opts.super_bracket_cap:
            cand = 1.0 + 2.0**k
            if feasible(cand):
                hi = cand
                break
            lo = cand
            k += 1
    if hi is None:
        return EfficiencyResult(
            math.nan, Status.UNRESOLVED, theta_lo=lo,
            diagnostics=(f"no feasible parameter up to the cap {opts.super_bracket_cap:g}",)
            + p.directions.notes,
        )
    lo, hi, it = _bisect(feasible, lo, hi, opts)
    return _finish(p, hi, lo, it, Status.SOLVED, opts)


# classification


def classify_unit(
    T: TechnologySet, u: Unit, opts: SolveOptions = DEFAULT_OPTIONS
) -> UnitClass:
    """Interior, weakly efficient or strongly efficient member of ``T``.

    Uses the linear pair with a positive data-independent direction, one
    unit of each row's data scale, so the test is insensitive to magnitudes.
    """
    T.check_unit(u)
    if not membership(T, u, opts):
        raise UnitOutsideTechnology("only members of the technology can be classified")
    dirs = DirectionPair(T.input_scale.copy(), T.output_scale.copy())
    p = GsProblem(T, u, make_psi("linear", "affine2"), dirs)
    res = solve_gs(p, opts)
    if res.theta_star < 1.0 - opts.theta_tol:
        return UnitClass.INTERIOR
    sp = second_phase_at(T, u, opts)
    return UnitClass.STRONG_FRONTIER if sp.strongly_efficient else UnitClass.WEAK_FRONTIER


# models


_PRESETS = {
    "ddf": ("linear", "affine2"),
    "hdf": ("linear", "hyperbolic"),
    "bcc-i": ("linear", "absent"),
    "bcc-o": ("absent", "hyperbolic"),
    "log": ("linear", "log"),
    "exp": ("linear", "exp"),
}


def parse_model(text: str) -> PsiPair:
    """Decode a model name (``ddf``, ``hdf``, ``bcc-i``, ``bcc-o``, ``log``,
    ``exp``, ``power:p``, ``gdf:p``) or an explicit ``xkind/ykind`` pair."""
    t = text.strip().lower()
    if t in _PRESETS:
        return make_psi(*_PRESETS[t])
    name, _, arg = t.partition(":")
    if name in ("power", "gdf") and arg:
        try:
            q = float(arg)
        except ValueError:
            raise ConfigError(f"cannot read exponent in model {text!r}") from None
        if name == "power":
            return make_psi("linear", f"power:{q!r}")
        # generalized distance function: theta^(1-p) on inputs, theta^(-p) on outputs
        if q == 1.0:
            return make_psi("linear", "hyperbolic")
        return make_psi(f"power:{q - 1.0!r}", f"power:{q!r}")
    if "/" in t:
        return parse_psi_pair(t)
    raise ConfigError(
        f"unknown model {text!r}; use ddf, hdf, bcc-i, bcc-o, log, exp, "
        "power:p, gdf:p or xkind/ykind"
    )


@dataclass(frozen=True)
class Model:
    """A psi pair together with a direction recipe."""

    psi: PsiPair
    direction: DirectionSpec
    name: str = ""

    @classmethod
    def parse(cls, model: str, direction: str = "g1") -> "Model":
        return cls(parse_model(model), parse_direction(direction), model.strip().lower())

    @property
    def label(self) -> str:
        return self.name or self.psi.text

    def with_direction(self, direction: DirectionSpec) -> "Model":
        return replace(self, direction=direction)

    def directions(self, T: TechnologySet, u: Unit, super_mode: bool = False) -> DirectionPair:
        return build_direction(self.direction, T, u, self.psi, super_mode)

    def problem(self, T: TechnologySet, u: Unit, super_mode: bool = False) -> GsProblem:
        return GsProblem(T, u, self.psi, self.directions(T, u, super_mode))


def _degenerate(T: TechnologySet, u: Unit, opts: SolveOptions, why: str) -> EfficiencyResult:
    sp = second_phase_at(T, u, opts)
    return EfficiencyResult(
        theta_star=1.0,
        status=Status.SOLVED_AT_BOUND,
        projection=u,
        lambda_star=sp.lambda_star,
        slacks_x=sp.slacks_x,
        slacks_y=sp.slacks_y,
        benchmark=sp.benchmark,
        strongly_efficient_projection=sp.strongly_efficient,
        theta_lo=1.0,
        diagnostics=(f"zero direction ({why}); score 1 by convention",),
    )


def evaluate(
    T: TechnologySet,
    model: Model,
    unit: Unit | int,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> EfficiencyResult:
    """Score one member of ``T`` under ``model``.

    ``unit`` is either a :class:`Unit` or the column index of an observed DMU.
    A unit whose direction vanishes (G2 at ``(x_min, y_max)``) scores 1.
    """
    dmu = None
    if isinstance(unit, (int, np.integer)):
        dmu = T.dmu_ids[int(unit)]
        unit = T.unit(int(unit))
    try:
        p = model.problem(T, unit)
    except ZeroDirection as exc:
        res = _degenerate(T, unit, opts, str(exc))
    else:
        res = solve_gs(p, opts)
    return res.labelled(dmu) if dmu is not None else res


def evaluate_super(
    T: TechnologySet,
    model: Model,
    unit: Unit,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> EfficiencyResult:
    """Super-efficiency score of a unit outside ``T``."""
    return super_efficiency(model.problem(T, unit, super_mode=True), opts)


def evaluate_all(
    T: TechnologySet,
    model: Model,
    opts: SolveOptions = DEFAULT_OPTIONS,
    workers: int | None = None,
) -> list[EfficiencyResult]:
    """Score every DMU of ``T``; results follow the column order of ``T``."""
    idx = range(T.n)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda j: evaluate(T, model, j, opts), idx))
    return [evaluate(T, model, j, opts) for j in idx]


def leave_one_out_super(
    T: TechnologySet,
    model: Model,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> list[EfficiencyResult]:
    """Super-efficiency of each DMU against the technology of the others.

    DMUs that stay inside the reduced technology keep their ordinary score.
    """
    out = []
    for j in range(T.n):
        if T.n < 2:
            raise ConfigError("leave-one-out needs at least two DMUs")
        reduced = T.without(j)
        u = T.unit(j)
        if membership(reduced, u, opts):
            try:
                res = solve_gs(model.problem(reduced, u), opts)
            except ZeroDirection as exc:
                res = _degenerate(reduced, u, opts, str(exc))
        else:
            res = evaluate_super(reduced, model, u, opts)
        out.append(res.labelled(T.dmu_ids[j]))
    return out


__all__ = [
    "DEFAULT_OPTIONS",
    "EfficiencyResult",
    "Family",
    "GsProblem",
    "Model",
    "SecondPhase",
    "SolveOptions",
    "Status",
    "UnitClass",
    "classify_unit",
    "evaluate",
    "evaluate_all",
    "evaluate_super",
    "leave_one_out_super",
    "membership",
    "parse_model",
    "second_phase",
    "second_phase_at",
    "solve_gs",
    "solve_linear_direct",
    "super_efficiency",
]
