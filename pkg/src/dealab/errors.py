"""Exception hierarchy shared by every dealab module."""

from __future__ import annotations


class DeaError(Exception):
    """Base class for all dealab errors."""


class InputError(DeaError, ValueError):
    """Malformed arguments: wrong shapes, bad enum values, out-of-range indices."""


class NumericalError(DeaError, ArithmeticError):
    """The solver failed to reach a trustworthy answer (iteration limit, lost feasibility)."""


class DomainError(DeaError, ValueError):
    """A value lies outside the domain of an operation (log of x <= 1, SE with PTE <= 0)."""


class InconsistencyError(DeaError, ValueError):
    """Two quantities that must agree do not (e.g. TE larger than PTE)."""


class ContractError(DeaError):
    """An operation was called with its precondition violated."""


class UnsupportedShapeError(DeaError, ValueError):
    """The panel's input/output dimensions are not supported by the operation."""


class InvalidPanelError(DeaError, ValueError):
    """The panel violates a data invariant such as semipositivity."""


class DataError(DeaError, ValueError):
    """A problem in tabular input, located by 1-based line number and column name."""

    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        text = f"{', '.join(where)}: {message}" if where else message
        super().__init__(text)

    def __reduce__(self):
        return (type(self), (self.message, self.line, self.column))


class DmuSolveError(NumericalError):
    """A solver failure while evaluating one named DMU."""

    def __init__(self, dmu: str, detail: str):
        self.dmu = dmu
        self.detail = detail
        super().__init__(f"DMU {dmu!r}: {detail}")

    def __reduce__(self):
        return (type(self), (self.dmu, self.detail))


class AnalysisError(DeaError):
    """One or more DMUs failed during a panel-wide analysis."""

    def __init__(self, failures: list[DmuSolveError]):
        self.failures = list(failures)
        names = ", ".join(repr(f.dmu) for f in self.failures)
        super().__init__(f"{len(self.failures)} DMU(s) failed: {names}")

    def __reduce__(self):
        return (type(self), (self.failures,))
