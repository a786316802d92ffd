"""Command-line front end: ``pathdea {solve,super,classify,check,rank}``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace

from pathdea import analysis, report
from pathdea.core import Unit, build_technology
from pathdea.directions import parse_direction
from pathdea.errors import DeaError, SolverError
from pathdea.solver import (
    Model,
    SolveOptions,
    classify_unit,
    evaluate,
    evaluate_all,
    evaluate_super,
    leave_one_out_super,
    membership,
    parse_model,
)

EXIT_OK, EXIT_DATA, EXIT_SOLVER = 0, 2, 3

MODES = ("solve", "super", "classify", "check", "rank")
PROPERTIES = (
    "boundedness", "unit", "translation", "monotonicity", "homogeneity", "g-homogeneity", "all",
)


@dataclass(frozen=True)
class RunConfig:
    mode: str
    input: str
    model: str = "ddf"
    direction: str = "g1"
    theta_min: float | None = None
    absolute: bool | None = None
    theta_tol: float | None = None
    output: str | None = None
    fmt: str = "json"
    force_constant: bool = False
    units: str | None = None
    properties: tuple[str, ...] = ("all",)
    alpha: float | None = None
    beta: float | None = None
    workers: int | None = None

    def build_model(self) -> Model:
        psi = parse_model(self.model)
        spec = parse_direction(self.direction)
        if self.absolute is not None:
            spec = spec.with_absolute(self.absolute)
        if self.theta_min is not None:
            spec = replace(spec, theta_min=self.theta_min)
        return Model(psi, spec, self.model.strip().lower())

    def options(self) -> SolveOptions:
        return SolveOptions() if self.theta_tol is None else SolveOptions(theta_tol=self.theta_tol)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _meta(cfg: RunConfig, model: Model, opts: SolveOptions) -> dict:
    return {
        "mode": cfg.mode,
        "model": model.label,
        "psi": model.psi.text,
        "directions": model.direction.text,
        "tolerances": {
            "theta_tol": opts.theta_tol,
            "membership_tol": opts.membership_tol,
            "slack_tol": opts.slack_tol,
            "lp_feas_tol": opts.lp.feas_tol,
            "lp_opt_tol": opts.lp.opt_tol,
            "lp_piv_tol": opts.lp.piv_tol,
        },
        "version": report.VERSION,
    }


def _checks(cfg: RunConfig, T, model: Model, opts: SolveOptions):
    wanted = set(PROPERTIES[:-1]) if "all" in cfg.properties else set(cfg.properties)
    out = []
    if "boundedness" in wanted:
        out.append(analysis.check_boundedness(T, model, opts=opts))
    if "unit" in wanted:
        out.append(analysis.check_unit_invariance(T, model, 2.0, 3.0, opts=opts))
    if "translation" in wanted:
        agg = T.aggregates
        c = 1.0 + (agg.x_max - agg.x_min)
        b = 1.0 + (agg.y_max - agg.y_min)
        out.append(analysis.check_translation_invariance(T, model, c, b, opts=opts))
    if "monotonicity" in wanted:
        out.append(analysis.check_monotonicity(T, model, opts=opts))
    if "homogeneity" in wanted:
        deg = analysis.homogeneity_degree(model.psi) or (-1.0, 1.0)
        alpha = deg[0] if cfg.alpha is None else cfg.alpha
        beta = deg[1] if cfg.beta is None else cfg.beta
        out.append(
            analysis.check_homogeneity(
                T, model, alpha, beta, extension=not T.is_positive, opts=opts
            )
        )
    if "g-homogeneity" in wanted:
        reps = [analysis.check_g_homogeneity(T, u, model, opts=opts) for u in T.units()]
        bad = next((r for r in reps if r.verdict is analysis.Verdict.FAILS), None)
        pred = {r.predicted for r in reps}
        predicted = analysis.Verdict.FAILS if analysis.Verdict.FAILS in pred else analysis.Verdict.HOLDS
        out.append(
            analysis.PropertyReport(
                "P10-g", "g-homogeneity",
                analysis.Verdict.FAILS if bad else analysis.Verdict.HOLDS,
                predicted,
                {"units": len(reps)},
                bad.counterexample if bad else None,
            )
        )
    return out


def run(cfg: RunConfig) -> int:
    """Execute one configured run; returns the process exit code."""
    if cfg.mode not in MODES:
        raise ValueError(f"unknown mode {cfg.mode!r}")
    model = cfg.build_model()
    opts = cfg.options()
    X, Y, ids = report.parse_dataset(_read(cfg.input))
    T = build_technology(X, Y, ids, constant="drop" if cfg.force_constant else "error")
    for w in T.warnings:
        print(f"pathdea: warning: {w}", file=sys.stderr)
    meta = _meta(cfg, model, opts)
    as_csv = cfg.fmt == "csv"

    if cfg.mode in ("solve", "rank"):
        results = evaluate_all(T, model, opts, cfg.workers)
        rep = report.build_report(
            results, meta, T.m, T.s, opts.theta_tol, order="rank" if cfg.mode == "rank" else "input"
        )
        text = report.report_csv(rep) if as_csv else report.report_json(rep)
    elif cfg.mode == "super":
        if cfg.units:
            UX, UY, uids = report.parse_dataset(_read(cfg.units))
            if UX.shape[0] != T.m or UY.shape[0] != T.s:
                raise report.DatasetError("units file has different input/output columns")
            results = []
            for j, d in enumerate(uids):
                u = Unit(UX[:, j], UY[:, j])
                if membership(T, u, opts):
                    res = evaluate(T, model, u, opts)
                else:
                    res = evaluate_super(T, model, u, opts)
                results.append(res.labelled(d))
        else:
            results = leave_one_out_super(T, model, opts)
        rep = report.build_report(results, meta, T.m, T.s, opts.theta_tol)
        text = report.report_csv(rep) if as_csv else report.report_json(rep)
    elif cfg.mode == "classify":
        classes = [classify_unit(T, u, opts) for u in T.units()]
        text = (
            report.classification_csv(ids, classes)
            if as_csv
            else report.classification_json(meta, ids, classes)
        )
    else:
        reps = _checks(cfg, T, model, opts)
        text = report.properties_csv(reps) if as_csv else report.properties_json(meta, reps)

    if cfg.output and cfg.output != "-":
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pathdea", description="Path-based DEA efficiency scores for CSV datasets."
    )
    sub = p.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        s = sub.add_parser(mode)
        s.add_argument("--input", "-i", required=True, help="dataset CSV (dmu,in:...,out:...)")
        s.add_argument("--model", default="ddf",
                       help="ddf, hdf, bcc-i, bcc-o, log, exp, power:p, gdf:p or xkind/ykind")
        s.add_argument("--dir", dest="direction", default="g1",
                       help="g1..g6, g2.0 or custom:..., with flags abs, theta-min=V, orient=in|out|graph")
        s.add_argument("--abs", dest="absolute", action="store_const", const=True, default=None,
                       help="take absolute values of the directions")
        s.add_argument("--theta-min", type=float, default=None, help="theta_min for g2.0")
        s.add_argument("--tol", type=float, default=None, help="bisection width (default 1e-9)")
        s.add_argument("--out", "-o", default=None, help="output file (default stdout)")
        s.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        s.add_argument("--force-constant-columns", action="store_true",
                       help="drop constant input/output columns instead of failing")
        s.add_argument("--workers", type=int, default=None, help="parallel DMU solves")
        if mode == "super":
            s.add_argument("--units", default=None,
                           help="CSV of units to score against the dataset (default: leave-one-out)")
        if mode == "check":
            s.add_argument("--property", dest="properties", action="append", choices=PROPERTIES,
                           help="property to check (repeatable, default all)")
            s.add_argument("--alpha", type=float, default=None, help="input power for homogeneity")
            s.add_argument("--beta", type=float, default=None, help="output power for homogeneity")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        mode=args.mode,
        input=args.input,
        model=args.model,
        direction=args.direction,
        theta_min=args.theta_min,
        absolute=args.absolute,
        theta_tol=args.tol,
        output=args.out,
        fmt=args.fmt,
        force_constant=args.force_constant_columns,
        units=getattr(args, "units", None),
        properties=tuple(getattr(args, "properties", None) or ("all",)),
        alpha=getattr(args, "alpha", None),
        beta=getattr(args, "beta", None),
        workers=args.workers,
    )
    try:
        return run(cfg)
    except SolverError as exc:
        print(f"pathdea: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (DeaError, ValueError, OSError) as exc:
        print(f"pathdea: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
