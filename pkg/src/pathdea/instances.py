"""Small reference technologies and random instance generators."""

from __future__ import annotations

from importlib import resources

import numpy as np

from pathdea.core import TechnologySet, Unit, build_technology


def two_unit() -> TechnologySet:
    """One input, one output: A=(1,5), B=(5,1)."""
    return build_technology([[1, 5]], [[5, 1]], ["A", "B"])


def negative_pair() -> TechnologySet:
    """A=(-1,3), B=(3,1)."""
    return build_technology([[-1, 3]], [[3, 1]], ["A", "B"])


def negative_triple() -> TechnologySet:
    """A=(-1,4), B=(0.1,0), C=(1,0); B dominates C."""
    return build_technology([[-1, 0.1, 1]], [[4, 0, 0]], ["A", "B", "C"])


def weak_frontier() -> tuple[TechnologySet, Unit]:
    """Two inputs, one output: A=(1,0,1), B=(0,1,1) and the unit C=(0.5,0.5,0.5)."""
    T = build_technology([[1, 0], [0, 1]], [[1, 1]], ["A", "B"], constant="keep")
    return T, Unit([0.5, 0.5], [0.5])


def single_dmu() -> tuple[TechnologySet, Unit]:
    """T generated by A=(2,0) alone and the outside unit B=(1,10)."""
    return build_technology([[2]], [[0]], ["A"], constant="keep"), Unit([1], [10])


def two_output() -> tuple[TechnologySet, Unit]:
    """A=(1,1,10), B=(1,10,1) and the outside unit (2,8,8)."""
    T = build_technology([[1, 1]], [[1, 10], [10, 1]], ["A", "B"], constant="keep")
    return T, Unit([2], [8, 8])


def random_instance(
    rng: np.random.Generator,
    n: int | None = None,
    m: int | None = None,
    s: int | None = None,
    negative: bool = False,
) -> TechnologySet:
    """A random technology whose last DMU is strictly dominated.

    Positive data are drawn from [1, 10]; with ``negative=True`` entries are
    shifted down per row, so most rows mix signs. The final DMU is built from
    the centroid of the others, moved to strictly worse inputs and outputs,
    which makes it an interior point of the technology.
    """
    n = int(rng.integers(4, 13)) if n is None else n
    m = int(rng.integers(1, 4)) if m is None else m
    s = int(rng.integers(1, 4)) if s is None else s
    if n < 2:
        raise ValueError("need at least two DMUs")
    X = rng.uniform(1.0, 10.0, size=(m, n - 1))
    Y = rng.uniform(1.0, 10.0, size=(s, n - 1))
    if negative:
        X -= rng.uniform(2.0, 8.0, size=(m, 1))
        Y -= rng.uniform(2.0, 8.0, size=(s, 1))
    cx, cy = X.mean(axis=1), Y.mean(axis=1)
    rx = X.max(axis=1) - X.min(axis=1)
    ry = Y.max(axis=1) - Y.min(axis=1)
    if negative:
        dx, dy = cx + 0.2 * rx, cy - 0.2 * ry
    else:
        dx, dy = 1.2 * cx, 0.8 * cy
    X = np.column_stack([X, dx])
    Y = np.column_stack([Y, dy])
    return build_technology(X, Y, constant="keep")


def synthetic_path() -> str:
    """Location of the bundled 30-DMU dataset with negative outputs."""
    return str(resources.files("pathdea") / "data" / "synthetic30.csv")


def synthetic30() -> TechnologySet:
    """The bundled 30-DMU, two-input, two-output dataset."""
    from pathdea.report import parse_dataset

    text = (resources.files("pathdea") / "data" / "synthetic30.csv").read_text()
    X, Y, ids = parse_dataset(text)
    return build_technology(X, Y, ids)


def generate_synthetic30(seed: int = 2024) -> str:
    """CSV text of a 30-DMU dataset whose columns respect the target ranges.

    Columns and their (min, max): cost of sales (418242, 16655569), R&D
    spending (1319, 634436), income (-561965, 3092358) and return
    (-0.2583, 3.53714). Values are drawn log-uniformly for inputs and with a
    skew toward small values for outputs, then the extreme rows are pinned.
    """
    rng = np.random.default_rng(seed)
    n = 30
    bounds = {
        "in:cost": (418242.0, 16655569.0),
        "in:rd": (1319.0, 634436.0),
        "out:income": (-561965.0, 3092358.0),
        "out:return": (-0.2583, 3.53714),
    }
    cols = {}
    for k, (lo, hi) in bounds.items():
        if k.startswith("in:"):
            v = np.exp(rng.uniform(np.log(lo), np.log(hi), n))
        else:
            v = lo + (hi - lo) * rng.beta(1.2, 3.0, n)
        lo_at, hi_at = rng.choice(n, size=2, replace=False)
        v[lo_at], v[hi_at] = lo, hi
        cols[k] = v
    lines = ["dmu," + ",".join(bounds)]
    for j in range(n):
        row = [f"D{j + 1:02d}"]
        for k in bounds:
            v = cols[k][j]
            row.append(f"{v:.6g}" if k == "out:return" else f"{v:.0f}")
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
