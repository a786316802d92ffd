"""Units, VRS technology sets, dominance and data aggregates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from pathdea.errors import ConstantComponent, DimensionMismatch

CONSTANT_MODES = ("error", "drop", "keep")


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Unit:
    """An input/output vector pair; entries may have any sign."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = _frozen(np.ravel(self.x))
        y = _frozen(np.ravel(self.y))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def m(self) -> int:
        return self.x.size

    @property
    def s(self) -> int:
        return self.y.size

    def same_as(self, other: "Unit", atol: float = 0.0) -> bool:
        return (
            self.m == other.m
            and self.s == other.s
            and np.allclose(self.x, other.x, rtol=0, atol=atol)
            and np.allclose(self.y, other.y, rtol=0, atol=atol)
        )

    def __repr__(self):
        return f"Unit(x={self.x.tolist()}, y={self.y.tolist()})"


@dataclass(frozen=True, eq=False)
class DataAggregates:
    x_min: np.ndarray
    x_max: np.ndarray
    x_ev: np.ndarray
    x_sd: np.ndarray
    y_min: np.ndarray
    y_max: np.ndarray
    y_ev: np.ndarray
    y_sd: np.ndarray

    @property
    def ideal(self) -> Unit:
        """The point (x_min, y_max), which dominates every unit of T."""
        return Unit(self.x_min, self.y_max)


def _aggregates(X: np.ndarray, Y: np.ndarray) -> DataAggregates:
    return DataAggregates(
        *(_frozen(v) for v in (X.min(1), X.max(1), X.mean(1), X.std(1))),
        *(_frozen(v) for v in (Y.min(1), Y.max(1), Y.mean(1), Y.std(1))),
    )


@dataclass(frozen=True, eq=False)
class TechnologySet:
    """VRS technology generated by the columns of ``X`` (m x n) and ``Y`` (s x n).

    Instances are immutable; build them with :func:`build_technology`.
    """

    X: np.ndarray
    Y: np.ndarray
    dmu_ids: tuple[str, ...]
    warnings: tuple[str, ...] = ()
    aggregates: DataAggregates = field(init=False, repr=False)
    input_scale: np.ndarray = field(init=False, repr=False)
    output_scale: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "aggregates", _aggregates(self.X, self.Y))
        # row scales used to equilibrate every LP built on this set
        object.__setattr__(self, "input_scale", _frozen(_row_scale(self.X)))
        object.__setattr__(self, "output_scale", _frozen(_row_scale(self.Y)))

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def s(self) -> int:
        return self.Y.shape[0]

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def has_negative(self) -> bool:
        return bool((self.X < 0).any() or (self.Y < 0).any())

    @property
    def is_positive(self) -> bool:
        return bool((self.X > 0).all() and (self.Y > 0).all())

    @property
    def max_abs(self) -> float:
        return float(max(np.abs(self.X).max(), np.abs(self.Y).max()))

    def unit(self, j: int) -> Unit:
        return Unit(self.X[:, j], self.Y[:, j])

    def units(self) -> list[Unit]:
        return [self.unit(j) for j in range(self.n)]

    def index(self, dmu_id: str) -> int:
        return self.dmu_ids.index(dmu_id)

    def check_unit(self, u: Unit) -> None:
        if u.m != self.m or u.s != self.s:
            raise DimensionMismatch(
                f"unit has {u.m} inputs / {u.s} outputs, technology has {self.m} / {self.s}"
            )

    def transformed(self, X=None, Y=None) -> "TechnologySet":
        """Same DMU labels with new data matrices (constant rows are kept)."""
        return build_technology(
            self.X if X is None else X,
            self.Y if Y is None else Y,
            self.dmu_ids,
            constant="keep",
        )

    def without(self, j: int) -> "TechnologySet":
        """The technology generated by all DMUs except ``j``."""
        keep = [k for k in range(self.n) if k != j]
        return build_technology(
            self.X[:, keep], self.Y[:, keep], [self.dmu_ids[k] for k in keep], constant="keep"
        )


def _row_scale(M: np.ndarray) -> np.ndarray:
    scale = np.abs(M).max(axis=1)
    scale[scale == 0.0] = 1.0
    return scale


def build_technology(
    X,
    Y,
    ids: Sequence[str] | None = None,
    constant: str = "error",
) -> TechnologySet:
    """Validate data and return the technology set it generates.

    Parameters
    ----------
    X, Y : array_like
        Input (m x n) and output (s x n) matrices, one column per DMU.
    ids : sequence of str, optional
        DMU labels; defaults to ``"1" .. "n"``.
    constant : {"error", "drop", "keep"}
        What to do with a row whose minimum equals its maximum. ``"drop"``
        removes it and records a warning; ``"keep"`` retains it, which is
        useful for tiny hand-made instances.
    """
    if constant not in CONSTANT_MODES:
        raise ValueError(f"constant must be one of {CONSTANT_MODES}")
    X = np.array(X, dtype=float, ndmin=2)
    Y = np.array(Y, dtype=float, ndmin=2)
    if X.ndim != 2 or Y.ndim != 2:
        raise DimensionMismatch("X and Y must be two-dimensional")
    if X.shape[1] != Y.shape[1]:
        raise DimensionMismatch(
            f"X has {X.shape[1]} DMU columns but Y has {Y.shape[1]}"
        )
    n = X.shape[1]
    if n < 1:
        raise DimensionMismatch("at least one DMU is required")
    if not (np.isfinite(X).all() and np.isfinite(Y).all()):
        raise ValueError("data must be finite")
    ids = tuple(str(i) for i in (ids if ids is not None else range(1, n + 1)))
    if len(ids) != n:
        raise DimensionMismatch(f"{len(ids)} labels for {n} DMUs")

    warnings = []
    keep_rows = {}
    for side, M in (("input", X), ("output", Y)):
        const = np.flatnonzero(M.min(axis=1) == M.max(axis=1))
        rows = np.ones(M.shape[0], dtype=bool)
        for r in const:
            if constant == "error":
                raise ConstantComponent(side, int(r))
            if constant == "drop":
                rows[r] = False
                warnings.append(f"dropped constant {side} row {int(r)}")
        keep_rows[side] = rows
    X = X[keep_rows["input"]]
    Y = Y[keep_rows["output"]]
    if X.shape[0] == 0 or Y.shape[0] == 0:
        raise DimensionMismatch("no input or no output rows left")
    return TechnologySet(_frozen(X), _frozen(Y), ids, tuple(warnings))


def dominates(u: Unit, v: Unit) -> bool:
    """True when ``u`` uses no more of any input and yields no less of any output."""
    if u.m != v.m or u.s != v.s:
        raise DimensionMismatch("units have different dimensions")
    return bool(np.all(u.x <= v.x) and np.all(u.y >= v.y))


def aggregates(T: TechnologySet) -> DataAggregates:
    """Componentwise min, max, mean and population standard deviation."""
    return T.aggregates
