"""Dataset parsing and JSON/CSV reports."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from pathdea.analysis import PropertyReport, RankTable, rank_table
from pathdea.errors import DatasetError, MissingHeader, NoInputs, NonNumericCell, NoOutputs
from pathdea.solver import EfficiencyResult

VERSION = "0.1.0"

_NUMBER = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")
_SEPARATOR_HINT = "numbers must not contain thousand separators; write 16655569, not 16,655,569"


def _number(text: str, line: int, col: int) -> float:
    t = text.strip().replace("−", "-")
    if _NUMBER.match(t):
        return float(t)
    hint = _SEPARATOR_HINT if re.fullmatch(r"[+-]?\d{1,3}(,\d{3})+(\.\d*)?", t) else ""
    raise NonNumericCell(line, col, text, hint)


def parse_dataset(text: str) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Read ``dmu,in:...,out:...`` CSV text into ``(X, Y, ids)``.

    ``X`` is m x n and ``Y`` is s x n with DMUs in file order. Blank lines
    and lines starting with ``#`` are ignored.
    """
    rows = []
    for line_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row) or row[0].lstrip().startswith("#"):
            continue
        rows.append((line_no, row))
    if not rows:
        raise MissingHeader("empty dataset: a header row 'dmu,in:...,out:...' is required")
    head_line, header = rows[0]
    names = [h.strip() for h in header]
    if names[0].lower() != "dmu":
        raise MissingHeader(
            f"line {head_line}: first header cell must be 'dmu', found {names[0]!r}"
        )
    kinds = []
    for col, h in enumerate(names[1:], start=2):
        low = h.lower()
        if low.startswith("in:") and len(h) > 3:
            kinds.append("in")
        elif low.startswith("out:") and len(h) > 4:
            kinds.append("out")
        else:
            raise MissingHeader(
                f"line {head_line}, column {col}: header {h!r} must start with 'in:' or 'out:'"
            )
    if "in" not in kinds:
        raise NoInputs("dataset has no 'in:' column")
    if "out" not in kinds:
        raise NoOutputs("dataset has no 'out:' column")
    width = len(names)
    ids, data = [], []
    for line_no, row in rows[1:]:
        if len(row) != width:
            hint = f"; {_SEPARATOR_HINT}" if len(row) > width else ""
            raise DatasetError(
                f"line {line_no}: expected {width} cells, found {len(row)}{hint}"
            )
        ids.append(row[0].strip())
        data.append([_number(c, line_no, col) for col, c in enumerate(row[1:], start=2)])
    if not data:
        raise DatasetError("dataset has a header but no DMU rows")
    if len(set(ids)) != len(ids):
        dup = next(i for i in ids if ids.count(i) > 1)
        raise DatasetError(f"duplicate DMU label {dup!r}")
    M = np.array(data, dtype=float).T
    kin = np.array([k == "in" for k in kinds])
    return M[kin], M[~kin], ids


def dataset_csv(X, Y, ids: Sequence[str], input_names=None, output_names=None) -> str:
    """Inverse of :func:`parse_dataset` (numbers written with ``repr``)."""
    X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
    inn = input_names or [f"x{i + 1}" for i in range(X.shape[0])]
    outn = output_names or [f"y{r + 1}" for r in range(Y.shape[0])]
    lines = [",".join(["dmu"] + [f"in:{n}" for n in inn] + [f"out:{n}" for n in outn])]
    for j, d in enumerate(ids):
        vals = [repr(float(v)) for v in np.concatenate([X[:, j], Y[:, j]])]
        lines.append(",".join([str(d)] + vals))
    return "\n".join(lines) + "\n"


# score reports


def _fmt(v) -> str:
    if v is None:
        return ""
    return "%.6g" % v


def _num(text: str):
    return None if text == "" else float(text)


def _vec(u):
    return None if u is None else (tuple(float(v) for v in u.x), tuple(float(v) for v in u.y))


@dataclass(frozen=True)
class ReportRow:
    dmu: str
    score: float
    rank: str
    star: bool
    status: str
    slack_total: float | None
    projection: tuple[tuple[float, ...], tuple[float, ...]] | None
    benchmark: tuple[tuple[float, ...], tuple[float, ...]] | None
    slacks: tuple[tuple[float, ...], tuple[float, ...]] | None
    certificate: str = ""


@dataclass(frozen=True)
class Report:
    meta: dict
    rows: tuple[ReportRow, ...]
    average: float
    minimum: float
    correct: int
    m: int
    s: int
    extra: dict = field(default_factory=dict)


def build_report(
    results: Sequence[EfficiencyResult],
    meta: dict,
    m: int,
    s: int,
    theta_tol: float,
    order: str = "input",
) -> Report:
    """Attach ranks and the summary rows to a list of results.

    ``order="rank"`` lists rows by rank instead of input order.
    """
    table: RankTable = rank_table(results, theta_tol=theta_tol)
    rows = []
    for r, row in zip(results, table.rows):
        slacks = None
        if r.slacks_x is not None:
            slacks = (tuple(map(float, r.slacks_x)), tuple(map(float, r.slacks_y)))
        rows.append(
            ReportRow(
                dmu=row.dmu,
                score=float(r.theta_star),
                rank=row.rank,
                star=row.star,
                status=row.status,
                slack_total=None if math.isnan(row.slack_total) else row.slack_total,
                projection=_vec(r.projection),
                benchmark=_vec(r.benchmark),
                slacks=slacks,
                certificate=r.certificate or "",
            )
        )
    if order == "rank":
        rows.sort(key=lambda t: (-t.score if math.isfinite(t.score) else math.inf))
    return Report(
        meta, tuple(rows), table.average, table.minimum, table.correct, m, s,
        {"weak_at_one": table.weak_at_one},
    )


def _json_num(v):
    if v is None:
        return None
    return v if math.isfinite(v) else str(v)


def report_json(rep: Report) -> str:
    results = []
    for r in rep.rows:
        item = {
            "dmu": r.dmu,
            "score": _json_num(r.score),
            "rank": r.rank,
            "star": r.star,
            "projection": None if r.projection is None
            else {"x": list(r.projection[0]), "y": list(r.projection[1])},
            "benchmark": None if r.benchmark is None
            else {"x": list(r.benchmark[0]), "y": list(r.benchmark[1])},
            "slacks": None if r.slacks is None
            else {"x": list(r.slacks[0]), "y": list(r.slacks[1])},
            "status": r.status,
        }
        if r.certificate:
            item["certificate"] = r.certificate
        results.append(item)
    doc = {
        "meta": rep.meta,
        "results": results,
        "summary": {
            "average": _json_num(rep.average),
            "minimum": _json_num(rep.minimum),
            "correct": rep.correct,
            **rep.extra,
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def _csv_header(m: int, s: int) -> list[str]:
    h = ["dmu", "score", "rank", "star", "status", "certificate", "slack_total"]
    for pre in ("proj", "bench", "slack"):
        h += [f"{pre}_x{i + 1}" for i in range(m)] + [f"{pre}_y{r + 1}" for r in range(s)]
    return h


def report_csv(rep: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_csv_header(rep.m, rep.s))
    for r in rep.rows:
        cells = [r.dmu, _fmt(r.score), r.rank, "*" if r.star else "", r.status,
                 r.certificate, _fmt(r.slack_total)]
        for vec in (r.projection, r.benchmark, r.slacks):
            if vec is None:
                cells += [""] * (rep.m + rep.s)
            else:
                cells += [_fmt(v) for v in vec[0]] + [_fmt(v) for v in vec[1]]
        w.writerow(cells)
    w.writerow(["#Average", _fmt(rep.average)])
    w.writerow(["#Minimum", _fmt(rep.minimum)])
    w.writerow(["#Correct", str(rep.correct)])
    return buf.getvalue()


def parse_report_csv(text: str) -> Report:
    """Read a CSV score report back; re-emitting it reproduces the text."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][:1] != ["dmu"]:
        raise MissingHeader("not a score report")
    header = rows[0]
    m = sum(1 for h in header if h.startswith("proj_x"))
    s = sum(1 for h in header if h.startswith("proj_y"))
    if header != _csv_header(m, s):
        raise MissingHeader("unexpected report columns")
    out, summary = [], {}
    k = m + s
    for row in rows[1:]:
        if row and row[0].startswith("#"):
            summary[row[0][1:]] = row[1]
            continue
        vals = row[7:]

        def block(b):
            part = vals[b * k : (b + 1) * k]
            if all(c == "" for c in part):
                return None
            nums = [float(c) for c in part]
            return tuple(nums[:m]), tuple(nums[m:])

        out.append(
            ReportRow(
                dmu=row[0],
                score=float(row[1]),
                rank=row[2],
                star=row[3] == "*",
                status=row[4],
                certificate=row[5],
                slack_total=_num(row[6]),
                projection=block(0),
                benchmark=block(1),
                slacks=block(2),
            )
        )
    return Report(
        {}, tuple(out), float(summary.get("Average", "nan")),
        float(summary.get("Minimum", "nan")), int(summary.get("Correct", "0")), m, s,
    )


# other reports


def classification_json(meta: dict, ids: Sequence[str], classes) -> str:
    doc = {"meta": meta, "results": [{"dmu": d, "class": c.value} for d, c in zip(ids, classes)]}
    return json.dumps(doc, indent=2) + "\n"


def classification_csv(ids: Sequence[str], classes) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dmu", "class"])
    for d, c in zip(ids, classes):
        w.writerow([d, c.value])
    return buf.getvalue()


def properties_json(meta: dict, reports: Sequence[PropertyReport]) -> str:
    doc = {"meta": meta, "properties": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=2) + "\n"


def properties_csv(reports: Sequence[PropertyReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["property", "name", "verdict", "predicted", "matches_theory"])
    for r in reports:
        mt = r.matches_theory
        w.writerow([
            r.property_id, r.name, r.verdict.value,
            "" if r.predicted is None else r.predicted.value,
            "" if mt is None else str(mt).lower(),
        ])
    return buf.getvalue()
