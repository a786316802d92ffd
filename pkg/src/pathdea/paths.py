"""Path functions psi and the parametric path through an evaluated unit.

A path through ``(x_o, y_o)`` with directions ``(g_x, g_y)`` is::

    phi_x(theta) = x_o + (psi_x(theta) - 1) * g_x
    phi_y(theta) = y_o + (psi_y(theta) - 1) * g_y

with ``psi_x`` increasing and concave, ``psi_y`` decreasing and convex and
``psi(1) = 1`` on both sides. Lowering theta therefore moves along the path
toward dominating points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from pathdea.core import Unit
from pathdea.errors import (
    ConfigError,
    DimensionMismatch,
    InvalidExponent,
    InvalidRole,
    OutOfDomain,
    OutOfImage,
)


class Role(str, enum.Enum):
    INPUT = "input"
    OUTPUT = "output"


class PsiKind(str, enum.Enum):
    LINEAR = "linear"  # theta on the input side, 2 - theta on the output side
    HYPERBOLIC = "hyperbolic"
    POWER = "power"
    LOG = "log"
    EXP = "exp"
    LOG_INPUT = "loginput"
    ABSENT = "absent"


_ROLES = {
    PsiKind.LINEAR: (Role.INPUT, Role.OUTPUT),
    PsiKind.HYPERBOLIC: (Role.OUTPUT,),
    PsiKind.POWER: (Role.INPUT, Role.OUTPUT),
    PsiKind.LOG: (Role.OUTPUT,),
    PsiKind.EXP: (Role.OUTPUT,),
    PsiKind.LOG_INPUT: (Role.INPUT,),
    PsiKind.ABSENT: (Role.INPUT, Role.OUTPUT),
}

_POSITIVE_DOMAIN = {PsiKind.HYPERBOLIC, PsiKind.POWER, PsiKind.LOG, PsiKind.LOG_INPUT}


@dataclass(frozen=True)
class PsiSpec:
    """One member of the psi catalogue, bound to a role.

    ``ABSENT`` marks an oriented model whose direction on this side is zero.
    It evaluates like the linear kind of its role so the monotonicity and
    curvature assumptions still hold, but the value never moves the path.
    """

    kind: PsiKind
    role: Role
    exponent: float | None = None

    def __post_init__(self):
        kind = PsiKind(self.kind)
        role = Role(self.role)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "role", role)
        if role not in _ROLES[kind]:
            raise InvalidRole(f"psi kind {kind.value!r} cannot be used on the {role.value} side")
        if kind is PsiKind.POWER:
            if self.exponent is None:
                raise InvalidExponent("power kind needs an exponent")
            p = float(self.exponent)
            if not math.isfinite(p):
                raise InvalidExponent("power exponent must be finite")
            if role is Role.INPUT and not (-1.0 <= p < 0.0):
                raise InvalidExponent(f"input power exponent must lie in [-1, 0), got {p}")
            if role is Role.OUTPUT and not p > 0.0:
                raise InvalidExponent(f"output power exponent must be positive, got {p}")
            object.__setattr__(self, "exponent", p)
        elif self.exponent is not None:
            raise InvalidExponent(f"psi kind {kind.value!r} takes no exponent")

    # descriptors

    @property
    def domain_lower(self) -> float:
        """Left end ``a`` of the open domain ``(a, inf)``."""
        return 0.0 if self.kind in _POSITIVE_DOMAIN else -math.inf

    @property
    def image_lower(self) -> float:
        """Infimum of the image; the supremum is always infinite."""
        if self.kind in (PsiKind.HYPERBOLIC, PsiKind.POWER, PsiKind.EXP):
            return 0.0
        return -math.inf

    @property
    def increasing(self) -> bool:
        return self.role is Role.INPUT

    @property
    def is_absent(self) -> bool:
        return self.kind is PsiKind.ABSENT

    @property
    def text(self) -> str:
        if self.kind is PsiKind.POWER:
            return f"power:{self.exponent:.17g}"
        if self.kind is PsiKind.LINEAR and self.role is Role.OUTPUT:
            return "affine2"
        return self.kind.value

    def in_domain(self, theta) -> bool:
        return bool(np.all(np.asarray(theta) > self.domain_lower))

    # evaluation

    def eval(self, theta):
        """psi(theta); scalars in, float out."""
        if not self.in_domain(theta):
            raise OutOfDomain(f"theta={theta} outside the domain of {self.text}")
        t = np.asarray(theta, dtype=float)
        k = self.kind
        if k in (PsiKind.LINEAR, PsiKind.ABSENT):
            v = t if self.role is Role.INPUT else 2.0 - t
        elif k is PsiKind.HYPERBOLIC:
            v = 1.0 / t
        elif k is PsiKind.POWER:
            v = t ** (-self.exponent)
        elif k is PsiKind.LOG:
            v = 1.0 - np.log(t)
        elif k is PsiKind.EXP:
            v = np.exp(1.0 - t)
        else:
            v = 1.0 + np.log(t)
        return float(v) if v.ndim == 0 else v

    def inverse(self, v):
        """Analytic inverse of :meth:`eval`."""
        if not bool(np.all(np.asarray(v) > self.image_lower)):
            raise OutOfImage(f"value {v} outside the image of {self.text}")
        w = np.asarray(v, dtype=float)
        k = self.kind
        if k in (PsiKind.LINEAR, PsiKind.ABSENT):
            t = w if self.role is Role.INPUT else 2.0 - w
        elif k is PsiKind.HYPERBOLIC:
            t = 1.0 / w
        elif k is PsiKind.POWER:
            t = w ** (-1.0 / self.exponent)
        elif k is PsiKind.LOG:
            t = np.exp(1.0 - w)
        elif k is PsiKind.EXP:
            t = 1.0 - np.log(w)
        else:
            t = np.exp(w - 1.0)
        return float(t) if t.ndim == 0 else t


def psi_eval(spec: PsiSpec, theta):
    return spec.eval(theta)


def psi_inverse(spec: PsiSpec, v):
    return spec.inverse(v)


def parse_psi(text: str, role: Role | str) -> PsiSpec:
    """Decode ``linear``, ``affine2``, ``hyperbolic``, ``power:p``, ``log``,
    ``exp``, ``loginput`` or ``absent`` for the given role."""
    role = Role(role)
    raw = text.strip().lower()
    name, _, arg = raw.partition(":")
    if name == "affine2":
        if role is not Role.OUTPUT:
            raise InvalidRole("affine2 (2 - theta) is an output-side kind")
        return PsiSpec(PsiKind.LINEAR, role)
    if name == "power":
        try:
            p = float(arg)
        except ValueError:
            raise ConfigError(f"cannot read power exponent in {text!r}") from None
        return PsiSpec(PsiKind.POWER, role, p)
    if arg:
        raise ConfigError(f"psi kind {name!r} takes no argument")
    try:
        kind = PsiKind(name)
    except ValueError:
        raise ConfigError(f"unknown psi kind {text!r}") from None
    return PsiSpec(kind, role)


@dataclass(frozen=True)
class PsiPair:
    psi_x: PsiSpec
    psi_y: PsiSpec
    domain_lower: float = field(init=False)

    def __post_init__(self):
        if self.psi_x.role is not Role.INPUT or self.psi_y.role is not Role.OUTPUT:
            raise InvalidRole("psi_x must have the input role and psi_y the output role")
        object.__setattr__(
            self, "domain_lower", max(self.psi_x.domain_lower, self.psi_y.domain_lower)
        )

    @property
    def image_lower_x(self) -> float:
        return self.psi_x.image_lower

    @property
    def image_lower_y(self) -> float:
        return self.psi_y.image_lower

    @property
    def is_linear(self) -> bool:
        """True for pairs whose non-absent sides are theta and 2 - theta."""
        lin = (PsiKind.LINEAR, PsiKind.ABSENT)
        return self.psi_x.kind in lin and self.psi_y.kind in lin

    @property
    def text(self) -> str:
        return f"{self.psi_x.text}/{self.psi_y.text}"

    def in_domain(self, theta) -> bool:
        return bool(np.all(np.asarray(theta) > self.domain_lower))

    def check_theta(self, theta) -> None:
        if not self.in_domain(theta):
            raise OutOfDomain(f"theta={theta} outside the domain ({self.domain_lower}, inf)")


def make_psi(x_kind, y_kind, exponents=(None, None)) -> PsiPair:
    """Build a validated pair from kinds (enum members or text encodings)."""
    px, py = exponents if exponents is not None else (None, None)

    def spec(kind, role, p):
        if isinstance(kind, PsiSpec):
            return kind
        if isinstance(kind, str) and kind not in PsiKind._value2member_map_:
            s = parse_psi(kind, role)
            return s if p is None else PsiSpec(s.kind, role, p)
        return PsiSpec(PsiKind(kind), role, p)

    return PsiPair(spec(x_kind, Role.INPUT, px), spec(y_kind, Role.OUTPUT, py))


def parse_psi_pair(text: str) -> PsiPair:
    """Decode ``"xkind/ykind"``, e.g. ``"linear/hyperbolic"``."""
    parts = text.split("/")
    if len(parts) != 2:
        raise ConfigError(f"psi pair must look like 'xkind/ykind', got {text!r}")
    return PsiPair(parse_psi(parts[0], Role.INPUT), parse_psi(parts[1], Role.OUTPUT))


@dataclass(frozen=True, eq=False)
class Path:
    """The curve ``theta -> phi_o(theta)`` through ``unit``."""

    unit: Unit
    g_x: np.ndarray
    g_y: np.ndarray
    psi: PsiPair

    def __post_init__(self):
        gx = np.array(self.g_x, dtype=float).reshape(-1)
        gy = np.array(self.g_y, dtype=float).reshape(-1)
        if gx.size != self.unit.m or gy.size != self.unit.s:
            raise DimensionMismatch("direction lengths do not match the unit")
        gx.setflags(write=False)
        gy.setflags(write=False)
        object.__setattr__(self, "g_x", gx)
        object.__setattr__(self, "g_y", gy)

    @classmethod
    def of(cls, unit: Unit, directions, psi: PsiPair) -> "Path":
        return cls(unit, directions.g_x, directions.g_y, psi)

    def point_x(self, theta: float) -> np.ndarray:
        return self.unit.x + (self.psi.psi_x.eval(theta) - 1.0) * self.g_x

    def point_y(self, theta: float) -> np.ndarray:
        return self.unit.y + (self.psi.psi_y.eval(theta) - 1.0) * self.g_y

    def point(self, theta: float) -> Unit:
        self.psi.check_theta(theta)
        if theta == 1.0:
            return self.unit
        return Unit(self.point_x(theta), self.point_y(theta))


def path_point(p: Path, theta: float) -> Unit:
    return p.point(theta)


# assumption checks


@dataclass(frozen=True)
class Violation:
    side: str
    check: str
    theta: float
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    samples: int
    grid: tuple[float, ...]
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None


def _grid(domain_lower: float, samples: int) -> np.ndarray:
    if domain_lower == 0.0:
        return np.geomspace(1e-3, 1e3, samples)
    half = max(samples // 2, 2)
    offsets = np.geomspace(1e-3, 1e2, half)
    return np.unique(np.concatenate([1.0 - offsets[::-1], [1.0], 1.0 + offsets]))


def validate_assumptions(pair, samples: int = 64, tol: float = 1e-9) -> ValidationReport:
    """Grid-check normalisation, monotonicity and curvature of a psi pair.

    Works with any object exposing ``psi_x``/``psi_y`` (each with ``eval``)
    and ``domain_lower``, so hand-made broken kinds can be inspected too.
    """
    if samples < 3:
        raise ValueError("samples must be at least 3")
    grid = _grid(float(pair.domain_lower), samples)
    found: list[Violation] = []
    for side, spec, sign in (("input", pair.psi_x, 1.0), ("output", pair.psi_y, -1.0)):
        one = spec.eval(1.0)
        if one != 1.0:
            found.append(Violation(side, "normalisation", 1.0, f"psi(1) = {one!r}"))
        vals = np.array([spec.eval(float(t)) for t in grid])
        slopes = np.diff(vals) / np.diff(grid)
        scale = 1.0 + np.abs(slopes)
        # increasing for inputs, decreasing for outputs
        bad = np.flatnonzero(sign * slopes <= 0.0)
        if bad.size:
            k = int(bad[0])
            found.append(
                Violation(side, "monotonicity", float(grid[k]), f"chord slope {slopes[k]:.6g}")
            )
        # concave for inputs (slopes fall), convex for outputs (slopes rise)
        change = np.diff(slopes)
        bad = np.flatnonzero(sign * change > tol * scale[1:])
        if bad.size:
            k = int(bad[0])
            found.append(
                Violation(side, "curvature", float(grid[k + 1]), f"slope change {change[k]:.6g}")
            )
    return ValidationReport(samples, tuple(float(t) for t in grid), tuple(found))
