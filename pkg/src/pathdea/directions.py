"""Direction families for the path through an evaluated unit."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from pathdea.core import TechnologySet, Unit
from pathdea.errors import ConfigError, NegativeComponent, OutOfDomain, ZeroDirection
from pathdea.paths import PsiKind, PsiPair


class Family(str, enum.Enum):
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"
    G4 = "g4"
    G5 = "g5"
    G6 = "g6"
    G20 = "g2.0"
    CUSTOM = "custom"


class Orientation(str, enum.Enum):
    GRAPH = "graph"
    INPUT_ONLY = "in"
    OUTPUT_ONLY = "out"


# families whose vector does not depend on the evaluated unit
DATA_INDEPENDENT = frozenset({Family.G3, Family.G4, Family.G5, Family.G6})


@dataclass(frozen=True)
class DirectionSpec:
    """How to build ``(g_x, g_y)``.

    ``absolute=None`` means "decide from the data": absolute values are taken
    when the technology has a negative entry or a super-efficiency score is
    requested. ``theta_min=None`` picks a default from the output psi kind.
    """

    family: Family
    absolute: bool | None = None
    orientation: Orientation = Orientation.GRAPH
    theta_min: float | None = None
    custom_x: tuple[float, ...] | None = None
    custom_y: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        if self.theta_min is not None:
            t = float(self.theta_min)
            if self.family is not Family.G20:
                raise ConfigError("theta-min only applies to the g2.0 family")
            if not (0.0 <= t < 1.0):
                raise OutOfDomain(f"theta_min must lie in [0, 1), got {t}")
            object.__setattr__(self, "theta_min", t)
        if self.family is Family.CUSTOM:
            if self.custom_x is None or self.custom_y is None:
                raise ConfigError("custom directions need both vectors")
            object.__setattr__(self, "custom_x", tuple(float(v) for v in self.custom_x))
            object.__setattr__(self, "custom_y", tuple(float(v) for v in self.custom_y))

    @property
    def text(self) -> str:
        parts = [self.family.value]
        if self.family is Family.CUSTOM:
            parts = ["custom:" + ";".join(f"{v:.17g}" for v in self.custom_x)
                     + "|" + ";".join(f"{v:.17g}" for v in self.custom_y)]
        if self.absolute:
            parts.append("abs")
        elif self.absolute is False:
            parts.append("noabs")
        if self.theta_min is not None:
            parts.append(f"theta-min={self.theta_min:.17g}")
        if self.orientation is not Orientation.GRAPH:
            parts.append(f"orient={self.orientation.value}")
        return ",".join(parts)

    def with_absolute(self, absolute: bool | None) -> "DirectionSpec":
        return DirectionSpec(
            self.family, absolute, self.orientation, self.theta_min, self.custom_x, self.custom_y
        )


def parse_direction(text: str) -> DirectionSpec:
    """Decode e.g. ``"g2"``, ``"g1,abs"``, ``"g2.0,theta-min=0.5,orient=out"``.

    A custom direction is written ``custom:gx1;gx2|gy1``.
    """
    items = [t.strip() for t in text.strip().lower().split(",") if t.strip()]
    if not items:
        raise ConfigError("empty direction encoding")
    head, flags = items[0], items[1:]
    custom_x = custom_y = None
    if head.startswith("custom:"):
        body = head[len("custom:"):]
        try:
            gx, gy = body.split("|")
            custom_x = tuple(float(v) for v in gx.split(";"))
            custom_y = tuple(float(v) for v in gy.split(";"))
        except ValueError:
            raise ConfigError(f"cannot read custom direction {head!r}") from None
        head = "custom"
    try:
        family = Family(head)
    except ValueError:
        raise ConfigError(f"unknown direction family {head!r}") from None
    absolute = None
    orientation = Orientation.GRAPH
    theta_min = None
    for f in flags:
        key, _, val = f.partition("=")
        if key == "abs" and not val:
            absolute = True
        elif key == "noabs" and not val:
            absolute = False
        elif key == "theta-min":
            try:
                theta_min = float(val)
            except ValueError:
                raise ConfigError(f"cannot read theta-min value {val!r}") from None
        elif key == "orient":
            try:
                orientation = Orientation(val)
            except ValueError:
                raise ConfigError(f"orient must be in, out or graph, got {val!r}") from None
        else:
            raise ConfigError(f"unknown direction flag {f!r}")
    return DirectionSpec(family, absolute, orientation, theta_min, custom_x, custom_y)


@dataclass(frozen=True, eq=False)
class DirectionPair:
    """Nonnegative, not identically zero direction vectors.

    ``notes`` records components whose sign was flipped by the absolute value.
    """

    g_x: np.ndarray
    g_y: np.ndarray
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        gx = np.array(self.g_x, dtype=float).reshape(-1)
        gy = np.array(self.g_y, dtype=float).reshape(-1)
        if np.any(gx < 0) or np.any(gy < 0):
            raise NegativeComponent(
                "direction has a negative component; use the absolute-value variant"
            )
        if not (np.all(np.isfinite(gx)) and np.all(np.isfinite(gy))):
            raise ConfigError("directions must be finite")
        if not (np.any(gx > 0) or np.any(gy > 0)):
            raise ZeroDirection("direction is identically zero")
        gx.setflags(write=False)
        gy.setflags(write=False)
        object.__setattr__(self, "g_x", gx)
        object.__setattr__(self, "g_y", gy)

    def scaled(self, mu: float) -> "DirectionPair":
        return DirectionPair(mu * self.g_x, mu * self.g_y, self.notes)


def resolve_absolute(spec: DirectionSpec, T: TechnologySet, super_mode: bool = False) -> bool:
    if spec.absolute is not None:
        return spec.absolute
    return T.has_negative or super_mode


def default_theta_min(psi: PsiPair) -> float:
    """Default theta_min for G2.0, keyed on the output psi kind."""
    k = psi.psi_y.kind
    if k in (PsiKind.POWER, PsiKind.HYPERBOLIC):
        t = 0.5
    elif k is PsiKind.LOG:
        t = math.exp(-1.0)
    else:
        t = 0.0
    return t if psi.in_domain(t) else 0.5


def _take_abs(raw_x, raw_y, absolute: bool):
    if not absolute:
        return raw_x, raw_y, ()
    notes = tuple(
        [f"input component {i} sign flipped by absolute value" for i in np.flatnonzero(raw_x < 0)]
        + [f"output component {r} sign flipped by absolute value" for r in np.flatnonzero(raw_y < 0)]
    )
    return np.abs(raw_x), np.abs(raw_y), notes


def _orient(gx, gy, orientation: Orientation, psi: PsiPair | None):
    if orientation is Orientation.INPUT_ONLY or (psi is not None and psi.psi_y.is_absent):
        gy = np.zeros_like(gy)
    if orientation is Orientation.OUTPUT_ONLY or (psi is not None and psi.psi_x.is_absent):
        gx = np.zeros_like(gx)
    return gx, gy


def g20_direction(
    T: TechnologySet,
    u: Unit,
    psi: PsiPair,
    theta_min: float,
    absolute: bool,
) -> DirectionPair:
    """Directions whose path passes through ``(x_min, y_max)`` at ``theta_min``."""
    T.check_unit(u)
    theta_min = float(theta_min)
    if not (0.0 <= theta_min < 1.0) or not psi.in_domain(theta_min):
        raise OutOfDomain(
            f"theta_min={theta_min} must lie in [0, 1) and inside the open domain "
            f"({psi.domain_lower}, inf)"
        )
    agg = T.aggregates
    raw_x = (u.x - agg.x_min) / (1.0 - psi.psi_x.eval(theta_min))
    raw_y = (agg.y_max - u.y) / (psi.psi_y.eval(theta_min) - 1.0)
    gx, gy, notes = _take_abs(raw_x, raw_y, absolute)
    gx, gy = _orient(gx, gy, Orientation.GRAPH, psi)
    if not (np.any(gx != 0) or np.any(gy != 0)):
        raise ZeroDirection("g2.0 direction vanishes at (x_min, y_max)")
    return DirectionPair(gx, gy, notes)


def build_direction(
    spec: DirectionSpec,
    T: TechnologySet,
    u: Unit,
    psi: PsiPair | None = None,
    super_mode: bool = False,
) -> DirectionPair:
    """Directions for unit ``u`` against technology ``T``.

    When ``psi`` is given, a side whose psi kind is absent gets a zero
    direction (oriented models). ``psi`` is required for ``g2.0``.
    """
    T.check_unit(u)
    absolute = resolve_absolute(spec, T, super_mode)
    agg = T.aggregates
    fam = spec.family
    if fam is Family.G20:
        if psi is None:
            raise ConfigError("g2.0 directions need the psi pair")
        tmin = spec.theta_min if spec.theta_min is not None else default_theta_min(psi)
        pair = g20_direction(T, u, psi, tmin, absolute)
        gx, gy = _orient(pair.g_x, pair.g_y, spec.orientation, psi)
        if not (np.any(gx > 0) or np.any(gy > 0)):
            raise ZeroDirection("direction is zero after orientation")
        return DirectionPair(gx, gy, pair.notes)
    if fam is Family.G1:
        raw_x, raw_y = u.x.copy(), u.y.copy()
    elif fam is Family.G2:
        raw_x, raw_y = u.x - agg.x_min, agg.y_max - u.y
    elif fam is Family.G3:
        raw_x, raw_y = agg.x_max - agg.x_min, agg.y_max - agg.y_min
    elif fam is Family.G4:
        raw_x, raw_y = agg.x_ev.copy(), agg.y_ev.copy()
    elif fam is Family.G5:
        raw_x, raw_y = agg.x_sd.copy(), agg.y_sd.copy()
    elif fam is Family.G6:
        raw_x, raw_y = np.ones(T.m), np.ones(T.s)
    else:
        raw_x = np.array(spec.custom_x, dtype=float)
        raw_y = np.array(spec.custom_y, dtype=float)
        if raw_x.size != T.m or raw_y.size != T.s:
            raise ConfigError("custom direction lengths do not match the data")
    gx, gy, notes = _take_abs(raw_x, raw_y, absolute)
    gx, gy = _orient(gx, gy, spec.orientation, psi)
    if np.any(gx < 0) or np.any(gy < 0):
        raise NegativeComponent(
            f"{fam.value} direction has a negative component; enable the 'abs' flag"
        )
    if not (np.any(gx > 0) or np.any(gy > 0)):
        raise ZeroDirection(f"{fam.value} direction is identically zero for this unit")
    return DirectionPair(gx, gy, notes)
