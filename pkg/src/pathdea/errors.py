"""Exception hierarchy shared by all pathdea modules."""

from __future__ import annotations


class DeaError(Exception):
    """Base class for every error raised by pathdea."""


class DataError(DeaError, ValueError):
    """Invalid user data (shapes, values, file contents)."""


class DimensionMismatch(DataError):
    pass


class ConstantComponent(DataError):
    def __init__(self, side: str, row: int):
        self.side = side
        self.row = row
        super().__init__(
            f"{side} row {row} is constant across all DMUs; "
            "drop it or build with constant='drop'/'keep'"
        )


class NonPositiveData(DataError):
    pass


class DatasetError(DataError):
    """Problem while parsing a CSV dataset."""


class MissingHeader(DatasetError):
    pass


class NonNumericCell(DatasetError):
    def __init__(self, row: int, col: int, text: str, hint: str = ""):
        self.row = row
        self.col = col
        self.text = text
        msg = f"non-numeric cell {text!r} at line {row}, column {col}"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)


class NoInputs(DatasetError):
    pass


class NoOutputs(DatasetError):
    pass


class ConfigError(DataError):
    """A text encoding (model, direction, psi) could not be decoded."""


class PathError(DeaError, ValueError):
    pass


class InvalidRole(PathError):
    pass


class InvalidExponent(PathError):
    pass


class OutOfDomain(PathError):
    pass


class OutOfImage(PathError):
    pass


class DirectionError(DeaError, ValueError):
    pass


class ZeroDirection(DirectionError):
    pass


class NegativeComponent(DirectionError):
    pass


class SolverError(DeaError, RuntimeError):
    """Numerical or logical failure inside an optimisation routine."""


class NumericalBreakdown(SolverError):
    pass


class InfeasibleSecondPhase(SolverError):
    pass


class UnitOutsideTechnology(DeaError, ValueError):
    pass


class UnitInsideTechnology(DeaError, ValueError):
    pass


class NotLinearModel(DeaError, ValueError):
    pass


class AssumptionViolation(DeaError, ValueError):
    """The psi pair and directions do not satisfy the standing assumptions."""
