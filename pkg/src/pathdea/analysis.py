"""Empirical property checks and rank tables.

Each ``check_*`` function transforms an instance, re-solves it and compares
the scores. It also states the verdict that the theory predicts for the
model, so a disagreement between the two is visible in the report.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from pathdea.core import TechnologySet, Unit, dominates
from pathdea.directions import DATA_INDEPENDENT, DirectionPair, Family
from pathdea.errors import DirectionError, NonPositiveData, NotLinearModel
from pathdea.paths import PsiKind, PsiPair
from pathdea.solver import (
    DEFAULT_OPTIONS,
    EfficiencyResult,
    GsProblem,
    Model,
    SolveOptions,
    Status,
    evaluate,
    evaluate_super,
    membership,
    solve_gs,
    super_efficiency,
)


class Verdict(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "FailsWithCounterexample"
    INCONCLUSIVE = "Inconclusive"


def score(
    T: TechnologySet,
    model: Model,
    u: Unit,
    opts: SolveOptions = DEFAULT_OPTIONS,
    directions: DirectionPair | None = None,
) -> float:
    """Score of ``u``, using super-efficiency when it lies outside ``T``.

    Returns ``inf`` for an infeasible super-efficiency program and ``nan``
    when it is unresolved.
    """
    inside = membership(T, u, opts)
    if directions is not None:
        p = GsProblem(T, u, model.psi, directions)
        res = solve_gs(p, opts) if inside else super_efficiency(p, opts)
    else:
        res = evaluate(T, model, u, opts) if inside else evaluate_super(T, model, u, opts)
    return res.theta_star


@dataclass(frozen=True, eq=False)
class Counterexample:
    """A replayable violation.

    The relation compares ``theta_a`` (the score of ``unit_a`` in
    ``technology_a``) with ``theta_b`` (``unit_b`` in ``technology_b``):

    - ``"nonneg"``: violated when ``theta_a < -tol``;
    - ``"ge"``: violated when ``theta_a < theta_b - tol``;
    - ``"affine"``: violated when ``|theta_b - (offset + factor * theta_a)|``
      exceeds ``tol * max(1, |offset + factor * theta_a|)``.

    ``directions_b`` overrides the model's directions for the second solve.
    """

    relation: str
    technology_a: TechnologySet
    unit_a: Unit
    model: Model
    tol: float
    theta_a: float
    technology_b: TechnologySet | None = None
    unit_b: Unit | None = None
    theta_b: float = math.nan
    factor: float = 1.0
    offset: float = 0.0
    directions_b: DirectionPair | None = None
    label: str = ""

    def violated(self, ta: float, tb: float) -> bool:
        if self.relation == "nonneg":
            return ta < -self.tol
        if self.relation == "ge":
            return ta < tb - self.tol
        want = self.offset + self.factor * ta
        return abs(tb - want) > self.tol * max(1.0, abs(want))

    def replay(self, opts: SolveOptions = DEFAULT_OPTIONS) -> bool:
        """Re-solve both sides; True when the violation is reproduced."""
        ta = score(self.technology_a, self.model, self.unit_a, opts)
        tb = math.nan
        if self.relation != "nonneg":
            tb = score(self.technology_b, self.model, self.unit_b, opts, self.directions_b)
        return self.violated(ta, tb)


@dataclass(frozen=True, eq=False)
class PropertyReport:
    property_id: str
    name: str
    verdict: Verdict
    predicted: Verdict | None
    details: dict = field(default_factory=dict)
    counterexample: Counterexample | None = None

    @property
    def matches_theory(self) -> bool | None:
        if self.predicted is None or self.predicted is Verdict.INCONCLUSIVE:
            return None
        return self.verdict is self.predicted

    def to_dict(self) -> dict:
        out = {
            "property": self.property_id,
            "name": self.name,
            "verdict": self.verdict.value,
            "predicted": None if self.predicted is None else self.predicted.value,
            "matches_theory": self.matches_theory,
            "details": _jsonable(self.details),
        }
        if self.counterexample is not None:
            ce = self.counterexample
            out["counterexample"] = {
                "label": ce.label,
                "relation": ce.relation,
                "unit_a": {"x": ce.unit_a.x.tolist(), "y": ce.unit_a.y.tolist()},
                "theta_a": ce.theta_a,
                "unit_b": None
                if ce.unit_b is None
                else {"x": ce.unit_b.x.tolist(), "y": ce.unit_b.y.tolist()},
                "theta_b": None if math.isnan(ce.theta_b) else ce.theta_b,
            }
        return out


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (np.floating, float)):
        f = float(v)
        return f if math.isfinite(f) else str(f)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, enum.Enum):
        return v.value
    return v


def _units(T: TechnologySet, units) -> list[Unit]:
    return T.units() if units is None else list(units)


def _tol2(opts: SolveOptions) -> float:
    return 2.0 * opts.theta_tol


# theory predictions


def scale_covariant(family: Family) -> bool:
    """Whether rescaling the data rescales the directions the same way."""
    return family not in (Family.G6, Family.CUSTOM)


def translation_covariant(family: Family) -> bool:
    """Whether translating the data leaves the directions unchanged."""
    return family in (Family.G2, Family.G3, Family.G5, Family.G6, Family.G20)


def predicted_unit_invariance(model: Model) -> Verdict:
    return Verdict.HOLDS if scale_covariant(model.direction.family) else Verdict.FAILS


def predicted_translation_invariance(model: Model) -> Verdict:
    if model.direction.family is Family.CUSTOM:
        return Verdict.INCONCLUSIVE
    return Verdict.HOLDS if translation_covariant(model.direction.family) else Verdict.FAILS


def predicted_monotonicity(model: Model, T: TechnologySet) -> Verdict:
    fam = model.direction.family
    if fam in DATA_INDEPENDENT or fam in (Family.G2, Family.G20):
        return Verdict.HOLDS
    if fam is Family.G1 and T.is_positive:
        return Verdict.HOLDS
    return Verdict.INCONCLUSIVE


def homogeneity_degree(psi: PsiPair) -> tuple[float, float] | None:
    """``(alpha, beta)`` when ``psi_x = theta^-alpha`` and ``psi_y = theta^-beta``."""

    def power(spec, role_linear):
        k = spec.kind
        if k is PsiKind.ABSENT:
            return 0.0
        if k is PsiKind.LINEAR:
            return -1.0 if role_linear else None
        if k is PsiKind.HYPERBOLIC:
            return 1.0
        if k is PsiKind.POWER:
            return spec.exponent
        return None

    a = power(psi.psi_x, True)
    b = power(psi.psi_y, False)
    if a is None or b is None:
        return None
    return (a, b)


def predicted_homogeneity(model: Model, alpha: float, beta: float) -> Verdict | None:
    if model.direction.family is not Family.G1:
        return None
    deg = homogeneity_degree(model.psi)
    if deg is not None and abs(deg[0] - alpha) < 1e-12 and abs(deg[1] - beta) < 1e-12:
        return Verdict.HOLDS
    return Verdict.FAILS


def linear_score_lower_bound(T: TechnologySet, u: Unit, d: DirectionPair) -> float:
    """Analytic lower bound on the linear-pair score of ``u``.

    It is the largest parameter below which some input would drop under
    its minimum or some output would rise over its maximum.
    """
    agg = T.aggregates
    vals = [-math.inf]
    for i in np.flatnonzero(d.g_x > 0):
        vals.append((agg.x_min[i] + d.g_x[i] - u.x[i]) / d.g_x[i])
    for r in np.flatnonzero(d.g_y > 0):
        vals.append((u.y[r] + d.g_y[r] - agg.y_max[r]) / d.g_y[r])
    return float(max(vals))


# checks


def check_boundedness(
    T: TechnologySet,
    model: Model,
    units: Sequence[Unit] | None = None,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> PropertyReport:
    """Scores in [0, 1] for members of ``T``."""
    us = _units(T, units)
    positive_domain = model.psi.domain_lower == 0.0
    scores, bounds, ce = [], [], None
    for u in us:
        th = evaluate(T, model, u, opts).theta_star
        scores.append(th)
        if model.psi.is_linear:
            try:
                bounds.append(linear_score_lower_bound(T, u, model.directions(T, u)))
            except DirectionError:
                bounds.append(math.nan)
        if ce is None and th < -_tol2(opts):
            ce = Counterexample("nonneg", T, u, model, _tol2(opts), th, label="negative score")
    if positive_domain or (bounds and all(b >= 0 for b in bounds if not math.isnan(b))):
        predicted = Verdict.HOLDS
    else:
        predicted = Verdict.INCONCLUSIVE
    verdict = Verdict.FAILS if ce is not None else Verdict.HOLDS
    details = {"scores": scores, "positive_domain": positive_domain}
    if bounds:
        details["lower_bounds"] = bounds
    return PropertyReport("P4", "boundedness", verdict, predicted, details, ce)


def _compare_all(pid, name, T, T2, model, units, units2, opts, predicted, transform):
    diffs, ce = [], None
    tol = _tol2(opts)
    for u, v in zip(units, units2):
        a = evaluate(T, model, u, opts).theta_star
        b = evaluate(T2, model, v, opts).theta_star
        diffs.append(abs(a - b))
        if ce is None and abs(a - b) > tol:
            ce = Counterexample("affine", T, u, model, tol, a, T2, v, b, label=name)
    verdict = Verdict.FAILS if ce is not None else Verdict.HOLDS
    details = {"transform": transform, "max_shift": max(diffs, default=0.0), "tolerance": tol}
    return PropertyReport(pid, name, verdict, predicted, details, ce)


def _diag(v, size) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.ndim == 2:
        a = np.diag(a)
    a = np.broadcast_to(a, (size,)).astype(float)
    if np.any(a <= 0):
        raise ValueError("scaling factors must be positive")
    return a


def check_unit_invariance(
    T: TechnologySet,
    model: Model,
    C,
    B,
    units: Sequence[Unit] | None = None,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> PropertyReport:
    """Rescale inputs by diag(C), outputs by diag(B) and compare the scores."""
    c, b = _diag(C, T.m), _diag(B, T.s)
    T2 = T.transformed(T.X * c[:, None], T.Y * b[:, None])
    us = _units(T, units)
    us2 = [Unit(u.x * c, u.y * b) for u in us]
    return _compare_all(
        "P5", "unit invariance", T, T2, model, us, us2, opts,
        predicted_unit_invariance(model), {"C": c, "B": b},
    )


def check_translation_invariance(
    T: TechnologySet,
    model: Model,
    c,
    b,
    units: Sequence[Unit] | None = None,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> PropertyReport:
    """Translate inputs by ``c`` and outputs by ``b`` and compare the scores.

    Whether absolute values are taken is decided once, from the original
    data, so the translation cannot silently switch direction variants.
    """
    cv = np.broadcast_to(np.asarray(c, dtype=float), (T.m,))
    bv = np.broadcast_to(np.asarray(b, dtype=float), (T.s,))
    T2 = T.transformed(T.X + cv[:, None], T.Y + bv[:, None])
    us = _units(T, units)
    us2 = [Unit(u.x + cv, u.y + bv) for u in us]
    fixed = model.with_direction(
        model.direction.with_absolute(
            model.direction.absolute if model.direction.absolute is not None else T.has_negative
        )
    )
    return _compare_all(
        "P6", "translation invariance", T, T2, fixed, us, us2, opts,
        predicted_translation_invariance(model), {"c": cv, "b": bv},
    )


def check_monotonicity(
    T: TechnologySet,
    model: Model,
    probe_count: int = 20,
    rng: np.random.Generator | int | None = 0,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> PropertyReport:
    """Dominating units must not score below the units they dominate.

    All dominating pairs among the observed DMUs are compared, followed by
    ``probe_count`` random probes that worsen one input or output of a DMU.
    Probes keep positive outputs positive, and probes whose direction
    cannot be built are skipped.
    """
    if probe_count < 1:
        raise ValueError("probe_count must be at least 1")
    rng = np.random.default_rng(rng)
    tol = _tol2(opts)
    memo = {}

    def sc(u: Unit, key=None) -> float:
        if key is not None and key in memo:
            return memo[key]
        th = evaluate(T, model, u, opts).theta_star
        if key is not None:
            memo[key] = th
        return th

    worst, ce, compared, skipped = 0.0, None, 0, 0
    pairs = [
        (j, k) for j in range(T.n) for k in range(T.n) if j != k and dominates(T.unit(j), T.unit(k))
    ]
    for j, k in pairs:
        a, b = sc(T.unit(j), j), sc(T.unit(k), k)
        compared += 1
        worst = max(worst, b - a)
        if ce is None and a < b - tol:
            ce = Counterexample(
                "ge", T, T.unit(j), model, tol, a, T, T.unit(k), b,
                label=f"{T.dmu_ids[j]} dominates {T.dmu_ids[k]}",
            )
    agg = T.aggregates
    for _ in range(probe_count):
        j = int(rng.integers(T.n))
        u = T.unit(j)
        x, y = u.x.copy(), u.y.copy()
        if rng.random() < 0.5:
            i = int(rng.integers(T.m))
            x[i] += rng.uniform(0.05, 0.5) * (agg.x_max[i] - agg.x_min[i])
        else:
            r = int(rng.integers(T.s))
            step = rng.uniform(0.05, 0.5) * (agg.y_max[r] - agg.y_min[r])
            if y[r] > 0:
                step = min(step, 0.5 * y[r])
            y[r] -= step
        v = Unit(x, y)
        try:
            a, b = sc(u, j), sc(v)
        except DirectionError:
            skipped += 1
            continue
        compared += 1
        worst = max(worst, b - a)
        if ce is None and a < b - tol:
            ce = Counterexample("ge", T, u, model, tol, a, T, v, b, label="random probe")
    verdict = Verdict.FAILS if ce is not None else Verdict.HOLDS
    details = {
        "dominating_pairs": len(pairs),
        "comparisons": compared,
        "skipped_probes": skipped,
        "largest_increase": worst,
        "tolerance": tol,
    }
    return PropertyReport(
        "P7", "monotonicity", verdict, predicted_monotonicity(model, T), details, ce
    )


HOMOGENEITY_MUS = (0.5, 0.9, 1.1, 2.0)


def check_homogeneity(
    T: TechnologySet,
    model: Model,
    alpha: float,
    beta: float,
    mus: Sequence[float] = HOMOGENEITY_MUS,
    units: Sequence[Unit] | None = None,
    rel_tol: float = 1e-6,
    extension: bool = False,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> PropertyReport:
    """Scaling a unit to ``(mu^alpha x, mu^beta y)`` should scale its score by ``mu``.

    Scaled units outside ``T`` are scored by super-efficiency; values of
    ``mu`` for which that program is infeasible or unresolved are skipped
    and recorded. Data with non-positive entries need ``extension=True``.
    """
    if not T.is_positive and not extension:
        raise NonPositiveData(
            "homogeneity is defined on positive data; pass extension=True to check anyway"
        )
    us = _units(T, units)
    ce, skipped, worst, compared = None, [], 0.0, 0
    for idx, u in enumerate(us):
        base = score(T, model, u, opts)
        for mu in mus:
            v = Unit(mu**alpha * u.x, mu**beta * u.y)
            try:
                th = score(T, model, v, opts)
            except DirectionError as exc:
                skipped.append({"unit": idx, "mu": mu, "reason": str(exc)})
                continue
            if not math.isfinite(th):
                skipped.append({"unit": idx, "mu": mu, "reason": "scaled program infeasible"})
                continue
            compared += 1
            want = mu * base
            err = abs(th - want) / max(1.0, abs(want))
            worst = max(worst, err)
            if ce is None and err > rel_tol:
                ce = Counterexample(
                    "affine", T, u, model, rel_tol, base, T, v, th, factor=mu,
                    label=f"mu={mu}",
                )
    if ce is not None:
        verdict = Verdict.FAILS
    elif compared == 0:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.HOLDS
    details = {
        "alpha": alpha, "beta": beta, "gamma": 1.0, "mus": list(mus),
        "comparisons": compared, "skipped": skipped, "worst_relative_error": worst,
        "extension_mode": not T.is_positive,
    }
    return PropertyReport(
        "P10", "homogeneity", verdict, predicted_homogeneity(model, alpha, beta), details, ce
    )


def check_g_homogeneity(
    T: TechnologySet,
    unit: Unit,
    model: Model,
    mus: Sequence[float] = (0.5, 2.0),
    rel_tol: float = 1e-6,
    require_linear: bool = False,
    opts: SolveOptions = DEFAULT_OPTIONS,
) -> PropertyReport:
    """Scaling the directions by ``mu`` should divide ``1 - theta`` by ``mu``.

    Only the linear pair has this property. Other pairs are checked the same
    way and normally fail; ``require_linear=True`` rejects them instead.
    """
    if require_linear and not model.psi.is_linear:
        raise NotLinearModel(f"g-homogeneity concerns the linear pair, got {model.psi.text}")
    d = model.directions(T, unit)
    base = solve_gs(GsProblem(T, unit, model.psi, d), opts).theta_star
    delta = 1.0 - base
    ce, worst = None, 0.0
    for mu in mus:
        dm = d.scaled(mu)
        th = solve_gs(GsProblem(T, unit, model.psi, dm), opts).theta_star
        want = 1.0 - delta / mu
        err = abs(th - want) / max(1.0, abs(want))
        worst = max(worst, err)
        if ce is None and err > rel_tol:
            ce = Counterexample(
                "affine", T, unit, model, rel_tol, base, T, unit, th,
                factor=1.0 / mu, offset=1.0 - 1.0 / mu, directions_b=dm, label=f"mu={mu}",
            )
    if model.psi.is_linear or abs(delta) <= _tol2(opts):
        predicted = Verdict.HOLDS
    else:
        predicted = Verdict.FAILS
    verdict = Verdict.FAILS if ce is not None else Verdict.HOLDS
    details = {"mus": list(mus), "delta": delta, "worst_relative_error": worst}
    return PropertyReport("P10-g", "g-homogeneity", verdict, predicted, details, ce)


# rank tables


@dataclass(frozen=True)
class RankRow:
    dmu: str
    score: float
    rank: str
    star: bool
    status: str
    projection: Unit | None
    benchmark: Unit | None
    slack_total: float


@dataclass(frozen=True)
class RankTable:
    rows: tuple[RankRow, ...]
    average: float
    minimum: float
    correct: int
    weak_at_one: int = 0

    def by_dmu(self, dmu: str) -> RankRow:
        for r in self.rows:
            if r.dmu == dmu:
                return r
        raise KeyError(dmu)


def _rank_labels(scores: list[float], band: float) -> list[str]:
    order = sorted(
        (j for j in range(len(scores)) if math.isfinite(scores[j])),
        key=lambda j: (-scores[j], j),
    )
    labels = ["-"] * len(scores)
    pos = 0
    while pos < len(order):
        head = scores[order[pos]]
        end = pos
        while end + 1 < len(order) and head - scores[order[end + 1]] <= band:
            end += 1
        lab = f"{pos + 1}" if end == pos else f"{pos + 1}-{end + 1}"
        for k in range(pos, end + 1):
            labels[order[k]] = lab
        pos = end + 1
    return labels


def rank_table(
    results: Sequence[EfficiencyResult],
    ids: Sequence[str] | None = None,
    theta_tol: float = DEFAULT_OPTIONS.theta_tol,
) -> RankTable:
    """Rank DMUs by descending score; near-equal scores share a rank range.

    Rows keep the input order. Non-finite scores (infeasible or unresolved
    super-efficiency) get rank ``"-"`` and are left out of the summary.
    """
    ids = [r.dmu or str(j + 1) for j, r in enumerate(results)] if ids is None else list(ids)
    scores = [r.theta_star for r in results]
    labels = _rank_labels(scores, 2.0 * theta_tol)
    rows = tuple(
        RankRow(
            dmu=ids[j],
            score=r.theta_star,
            rank=labels[j],
            star=bool(r.strongly_efficient_projection) and r.solved,
            status=r.status.value,
            projection=r.projection,
            benchmark=r.benchmark,
            slack_total=r.slack_total,
        )
        for j, r in enumerate(results)
    )
    finite = [s for s in scores if math.isfinite(s)]
    weak = sum(
        1
        for r in results
        if r.solved and abs(r.theta_star - 1.0) <= 2.0 * theta_tol
        and not r.strongly_efficient_projection
    )
    return RankTable(
        rows,
        average=float(np.mean(finite)) if finite else math.nan,
        minimum=float(min(finite)) if finite else math.nan,
        correct=sum(1 for row in rows if row.star),
        weak_at_one=weak,
    )


__all__ = [
    "Counterexample",
    "HOMOGENEITY_MUS",
    "PropertyReport",
    "RankRow",
    "RankTable",
    "Status",
    "Verdict",
    "check_boundedness",
    "check_g_homogeneity",
    "check_homogeneity",
    "check_monotonicity",
    "check_translation_invariance",
    "check_unit_invariance",
    "homogeneity_degree",
    "linear_score_lower_bound",
    "predicted_homogeneity",
    "predicted_monotonicity",
    "predicted_translation_invariance",
    "predicted_unit_invariance",
    "rank_table",
    "scale_covariant",
    "score",
    "translation_covariant",
]
