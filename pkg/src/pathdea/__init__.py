"""Path-based efficiency measurement over VRS technologies.

The main entry points are :func:`build_technology`, :class:`Model` and
:func:`evaluate`; see the ``analysis`` module for property checks.
"""

from pathdea.core import TechnologySet, Unit, aggregates, build_technology, dominates
from pathdea.directions import DirectionPair, DirectionSpec, Family, build_direction, parse_direction
from pathdea.paths import Path, PsiKind, PsiPair, PsiSpec, make_psi
from pathdea.solver import (
    EfficiencyResult,
    GsProblem,
    Model,
    SolveOptions,
    Status,
    UnitClass,
    classify_unit,
    evaluate,
    evaluate_all,
    evaluate_super,
    membership,
    second_phase,
    solve_gs,
    solve_linear_direct,
    super_efficiency,
)

__version__ = "0.1.0"

__all__ = [
    "DirectionPair",
    "DirectionSpec",
    "EfficiencyResult",
    "Family",
    "GsProblem",
    "Model",
    "Path",
    "PsiKind",
    "PsiPair",
    "PsiSpec",
    "SolveOptions",
    "Status",
    "TechnologySet",
    "Unit",
    "UnitClass",
    "aggregates",
    "build_direction",
    "build_technology",
    "classify_unit",
    "dominates",
    "evaluate",
    "evaluate_all",
    "evaluate_super",
    "make_psi",
    "membership",
    "parse_direction",
    "second_phase",
    "solve_gs",
    "solve_linear_direct",
    "super_efficiency",
]
