"""DMU data: activities and the input/output panel."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import InputError, InvalidPanelError


def _semipositive(v: np.ndarray) -> bool:
    return bool(np.all(v >= 0) and np.any(v > 0))


@dataclass(frozen=True, eq=False)
class Activity:
    """Input vector ``x`` and output vector ``y`` of a single DMU."""

    inputs: np.ndarray
    outputs: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.inputs, dtype=float).reshape(-1)
        y = np.asarray(self.outputs, dtype=float).reshape(-1)
        if not (_semipositive(x) and _semipositive(y)):
            raise InvalidPanelError("inputs and outputs must each be semipositive")
        object.__setattr__(self, "inputs", x)
        object.__setattr__(self, "outputs", y)


@dataclass(frozen=True, eq=False)
class Panel:
    """``n`` named DMUs with an ``m x n`` input matrix and an ``s x n`` output matrix.

    A panel built with ``strict=True`` (the default) rejects any DMU whose
    input or output vector is not semipositive. The ingestion layer builds
    non-strict panels so that such rows can be reported by validation
    instead of raising; DEA entry points refuse them.
    """

    names: tuple[str, ...]
    X: np.ndarray
    Y: np.ndarray
    input_labels: tuple[str, ...] = ()
    output_labels: tuple[str, ...] = ()
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        names = tuple(str(n) for n in self.names)
        X = np.array(self.X, dtype=float, ndmin=2)
        Y = np.array(self.Y, dtype=float, ndmin=2)
        n = len(names)
        if n < 1:
            raise InputError("a panel needs at least one DMU")
        if X.ndim != 2 or Y.ndim != 2 or X.shape[1] != n or Y.shape[1] != n:
            raise InputError(f"X and Y must have {n} columns, got {X.shape} and {Y.shape}")
        m, s = X.shape[0], Y.shape[0]
        if m < 1 or s < 1:
            raise InputError("a panel needs at least one input and one output")
        if len(set(names)) != n:
            dup = sorted({a for a in names if names.count(a) > 1})
            raise InputError(f"duplicate DMU names: {', '.join(dup)}")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise InputError("panel values must be finite")
        in_labels = tuple(self.input_labels) or tuple(f"x{i + 1}" for i in range(m))
        out_labels = tuple(self.output_labels) or tuple(f"y{r + 1}" for r in range(s))
        if len(in_labels) != m or len(out_labels) != s:
            raise InputError("label counts must match the number of inputs and outputs")
        X.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "input_labels", in_labels)
        object.__setattr__(self, "output_labels", out_labels)
        if self.strict:
            self.require_semipositive()

    @classmethod
    def from_activities(
        cls,
        activities: Mapping[str, tuple[Sequence[float] | float, Sequence[float] | float]],
        input_labels: Sequence[str] = (),
        output_labels: Sequence[str] = (),
    ) -> "Panel":
        """Build a panel from ``{name: (inputs, outputs)}``; scalars are allowed."""
        names = list(activities)
        xs = [np.atleast_1d(np.asarray(activities[k][0], dtype=float)) for k in names]
        ys = [np.atleast_1d(np.asarray(activities[k][1], dtype=float)) for k in names]
        if len({x.size for x in xs}) > 1 or len({y.size for y in ys}) > 1:
            raise InputError("all DMUs must have the same number of inputs and outputs")
        return cls(tuple(names), np.column_stack(xs), np.column_stack(ys), tuple(input_labels), tuple(output_labels))

    def __eq__(self, other):
        if not isinstance(other, Panel):
            return NotImplemented
        return (
            self.names == other.names
            and self.input_labels == other.input_labels
            and self.output_labels == other.output_labels
            and np.array_equal(self.X, other.X)
            and np.array_equal(self.Y, other.Y)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def s(self) -> int:
        return self.Y.shape[0]

    def activity(self, j: int) -> Activity:
        return Activity(self.X[:, j], self.Y[:, j])

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown DMU {name!r}") from None

    def check_index(self, o: int) -> int:
        if isinstance(o, (bool, np.bool_)) or not isinstance(o, (int, np.integer)):
            raise InputError(f"DMU index must be an integer, got {o!r}")
        if not 0 <= o < self.n:
            raise InputError(f"DMU index {o} out of range for {self.n} DMUs")
        return int(o)

    def semipositivity_violations(self) -> list[str]:
        """Names of DMUs whose inputs or outputs are not semipositive, with the reason."""
        out = []
        for j, name in enumerate(self.names):
            if not _semipositive(self.X[:, j]):
                out.append(f"DMU {name!r}: inputs are not semipositive")
            if not _semipositive(self.Y[:, j]):
                out.append(f"DMU {name!r}: outputs are not semipositive")
        return out

    def require_semipositive(self) -> None:
        problems = self.semipositivity_violations()
        if problems:
            raise InvalidPanelError("; ".join(problems))

    def checked(self) -> "Panel":
        """Strict copy of this panel; raises InvalidPanelError if it is not one."""
        if self.strict:
            return self
        return Panel(self.names, self.X, self.Y, self.input_labels, self.output_labels, strict=True)

    def with_values(self, X: np.ndarray, Y: np.ndarray) -> "Panel":
        return Panel(self.names, X, Y, self.input_labels, self.output_labels, strict=self.strict)

    def append(self, name: str, inputs: Sequence[float], outputs: Sequence[float]) -> "Panel":
        X = np.column_stack([self.X, np.asarray(inputs, dtype=float)])
        Y = np.column_stack([self.Y, np.asarray(outputs, dtype=float)])
        return Panel(self.names + (name,), X, Y, self.input_labels, self.output_labels, strict=self.strict)
