"""Dense two-phase primal simplex.

The solver works on a full tableau. Pricing is Dantzig's most-negative
reduced cost; after a run of non-improving (degenerate) pivots it switches
to Bland's smallest-index rule for the rest of the phase, which guarantees
termination. Free variables are split into a difference of two
non-negative columns. Once a basis is optimal the basic values are
recomputed from the original data with a direct solve to shed accumulated
pivoting error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import InputError, NumericalError

__all__ = [
    "Sense",
    "Relation",
    "Status",
    "Tolerances",
    "LinearProgram",
    "LpSolution",
    "solve",
]


class Sense(str, enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class Relation(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by the solver and by DEA classification.

    Attributes:
        feasibility: allowed constraint violation of an optimal point.
        optimality: reduced costs above ``-optimality`` count as non-negative.
        unit: distance from 1 below which a score is treated as exactly 1.
        slack: total slack at or below this value counts as zero.
        positive: values above this count as strictly positive (intensity
            weights, pivot elements, the sign of ``u0``).
    """

    feasibility: float = 1e-8
    optimality: float = 1e-9
    unit: float = 1e-6
    slack: float = 1e-6
    positive: float = 1e-9

    def __post_init__(self):
        for name in ("feasibility", "optimality", "unit", "slack", "positive"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InputError(f"tolerance {name} must be a positive finite number, got {value!r}")

    @classmethod
    def scaled(cls, value: float) -> "Tolerances":
        """Set ``unit = slack = value`` and scale the solver tolerances by the same factor."""
        if not (np.isfinite(value) and value > 0):
            raise InputError(f"tolerance must be a positive finite number, got {value!r}")
        base = cls()
        factor = value / base.unit
        return cls(
            feasibility=base.feasibility * factor,
            optimality=base.optimality * factor,
            unit=value,
            slack=value,
            positive=base.positive * factor,
        )


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """``sense  c @ x  s.t.  A[i] @ x  rel[i]  b[i]``.

    ``free[j]`` marks variable ``j`` as unbounded below; every other
    variable has lower bound zero.
    """

    objective: np.ndarray
    A: np.ndarray
    relations: tuple[Relation, ...]
    rhs: np.ndarray
    sense: Sense = Sense.MINIMIZE
    free: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise InputError("objective must be a non-empty vector")
        n = c.size
        A = np.asarray(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(0, n) if A.ndim != 2 or A.shape[1] != n else A
        if A.ndim != 2 or A.shape[1] != n:
            raise InputError(f"constraint matrix must have {n} columns, got shape {A.shape}")
        b = np.asarray(self.rhs, dtype=float).reshape(-1)
        if b.size != A.shape[0]:
            raise InputError(f"{A.shape[0]} constraint rows but {b.size} right-hand sides")
        try:
            rels = tuple(Relation(r) for r in self.relations)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if len(rels) != A.shape[0]:
            raise InputError(f"{A.shape[0]} constraint rows but {len(rels)} relations")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise InputError("linear program data must be finite")
        free = np.zeros(n, dtype=bool) if self.free is None else np.asarray(self.free, dtype=bool)
        if free.shape != (n,):
            raise InputError(f"free mask must have length {n}")
        try:
            sense = Sense(self.sense)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        for name, value in (("objective", c), ("A", A), ("rhs", b), ("free", free)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "sense", sense)

    @classmethod
    def from_rows(
        cls,
        objective: Sequence[float],
        constraints: Sequence[tuple[Sequence[float], Relation | str, float]],
        sense: Sense | str = Sense.MINIMIZE,
        free: Sequence[bool] | None = None,
    ) -> "LinearProgram":
        n = len(objective)
        rows = [np.asarray(row, dtype=float) for row, _, _ in constraints]
        for i, row in enumerate(rows):
            if row.shape != (n,):
                raise InputError(f"constraint {i} has {row.size} coefficients, expected {n}")
        A = np.vstack(rows) if rows else np.zeros((0, n))
        return cls(
            objective=np.asarray(objective, dtype=float),
            A=A,
            relations=tuple(rel for _, rel, _ in constraints),
            rhs=np.array([rhs for _, _, rhs in constraints], dtype=float),
            sense=Sense(sense),
            free=None if free is None else np.asarray(free, dtype=bool),
        )

    @property
    def num_variables(self) -> int:
        return self.objective.size

    @property
    def num_constraints(self) -> int:
        return self.A.shape[0]

    @property
    def constraints(self) -> Iterator[tuple[np.ndarray, Relation, float]]:
        for row, rel, b in zip(self.A, self.relations, self.rhs):
            yield row, rel, float(b)

    def violations(self, x: np.ndarray) -> np.ndarray:
        """Per-row constraint violation of ``x`` (zero when satisfied)."""
        lhs = self.A @ x
        out = np.zeros(self.num_constraints)
        for i, rel in enumerate(self.relations):
            if rel is Relation.LE:
                out[i] = max(lhs[i] - self.rhs[i], 0.0)
            elif rel is Relation.GE:
                out[i] = max(self.rhs[i] - lhs[i], 0.0)
            else:
                out[i] = abs(lhs[i] - self.rhs[i])
        return out


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: Status
    objective_value: float | None = None
    primal: np.ndarray | None = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Tableau:
    """Row-reduced ``[A | b]`` with a basis and a reduced-cost row."""

    def __init__(self, T: np.ndarray, basis: list[int], pivot_tol: float):
        self.T = T
        self.basis = basis
        self.pivot_tol = pivot_tol
        self.cost = np.zeros(T.shape[1])

    def set_objective(self, c: np.ndarray) -> None:
        # cost row holds reduced costs; its last entry is minus the objective value
        cost = np.append(c, 0.0)
        for i, j in enumerate(self.basis):
            if cost[j] != 0.0:
                cost -= cost[j] * self.T[i]
        self.cost = cost

    @property
    def value(self) -> float:
        return -self.cost[-1]

    def pivot(self, r: int, q: int) -> None:
        T = self.T
        T[r] /= T[r, q]
        col = T[:, q].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        T[:, q] = 0.0
        T[r, q] = 1.0
        self.cost -= self.cost[q] * T[r]
        self.cost[q] = 0.0
        self.basis[r] = q

    def entering(self, eligible: np.ndarray, opt_tol: float, bland: bool) -> int | None:
        rc = np.where(eligible, self.cost[:-1], 0.0)
        candidates = np.flatnonzero(rc < -opt_tol)
        if candidates.size == 0:
            return None
        if bland:
            return int(candidates[0])
        return int(candidates[np.argmin(rc[candidates])])

    def leaving(self, q: int, bland: bool) -> int | None:
        col = self.T[:, q]
        rows = np.flatnonzero(col > self.pivot_tol)
        if rows.size == 0:
            return None
        ratios = self.T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
        if ties.size == 1:
            return int(ties[0])
        if bland:
            return int(min(ties, key=lambda i: self.basis[i]))
        return int(ties[np.argmax(col[ties])])

    def drop_row(self, r: int) -> None:
        self.T = np.delete(self.T, r, axis=0)
        del self.basis[r]


@dataclass
class _Standard:
    """``min c @ z  s.t.  A z = b,  z >= 0,  b >= 0`` with bookkeeping."""

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    basis: list[int]
    artificial: np.ndarray  # bool mask over columns
    pos: np.ndarray  # column of x_j
    neg: np.ndarray  # column of -x_j for free x_j, else -1


def _standardize(lp: LinearProgram) -> _Standard:
    n = lp.num_variables
    k = lp.num_constraints
    pos = np.empty(n, dtype=int)
    neg = np.full(n, -1, dtype=int)
    col = 0
    for j in range(n):
        pos[j] = col
        col += 1
        if lp.free[j]:
            neg[j] = col
            col += 1
    n_struct = col

    rows = np.zeros((k, n_struct))
    rows[:, pos] = lp.A
    free_idx = np.flatnonzero(lp.free)
    rows[:, neg[free_idx]] = -lp.A[:, free_idx]
    b = lp.rhs.astype(float).copy()
    rels = list(lp.relations)
    for i in range(k):
        if b[i] < 0:
            rows[i] = -rows[i]
            b[i] = -b[i]
            if rels[i] is Relation.LE:
                rels[i] = Relation.GE
            elif rels[i] is Relation.GE:
                rels[i] = Relation.LE

    n_slack = sum(r is not Relation.EQ for r in rels)
    n_art = sum(r is not Relation.LE for r in rels)
    total = n_struct + n_slack + n_art
    A = np.zeros((k, total))
    A[:, :n_struct] = rows
    artificial = np.zeros(total, dtype=bool)
    basis = []
    s_col = n_struct
    a_col = n_struct + n_slack
    for i, rel in enumerate(rels):
        if rel is Relation.LE:
            A[i, s_col] = 1.0
            basis.append(s_col)
            s_col += 1
        else:
            if rel is Relation.GE:
                A[i, s_col] = -1.0
                s_col += 1
            A[i, a_col] = 1.0
            artificial[a_col] = True
            basis.append(a_col)
            a_col += 1

    c = np.zeros(total)
    sign = 1.0 if lp.sense is Sense.MINIMIZE else -1.0
    c[pos] = sign * lp.objective
    c[neg[free_idx]] = -sign * lp.objective[free_idx]
    return _Standard(A=A, b=b, c=c, basis=basis, artificial=artificial, pos=pos, neg=neg)


def _run_phase(tab: _Tableau, eligible: np.ndarray, tol: Tolerances, budget: int, stall_limit: int) -> tuple[str, int]:
    """Pivot until optimal or unbounded. Returns (outcome, pivots used)."""
    bland = False
    stalled = 0
    used = 0
    while True:
        q = tab.entering(eligible, tol.optimality, bland)
        if q is None:
            return "optimal", used
        r = tab.leaving(q, bland)
        if r is None:
            return "unbounded", used
        if used >= budget:
            raise NumericalError(f"simplex iteration limit exceeded ({budget} pivots)")
        before = tab.value
        tab.pivot(r, q)
        used += 1
        if tab.value < before - 1e-12 * max(1.0, abs(before)):
            stalled = 0
        else:
            stalled += 1
            if stalled >= stall_limit:
                bland = True


def solve(lp: LinearProgram, tol: Tolerances = DEFAULT_TOLERANCES, max_iterations: int | None = None) -> LpSolution:
    """Solve ``lp`` to a basic optimal solution, or report infeasible/unbounded.

    Raises:
        InputError: ``lp`` is not a LinearProgram.
        NumericalError: the pivot budget (default ``50 * (vars + constraints)``)
            ran out, or the final point fails the feasibility re-check.
    """
    if not isinstance(lp, LinearProgram):
        raise InputError(f"expected LinearProgram, got {type(lp).__name__}")
    if max_iterations is None:
        max_iterations = 50 * (lp.num_variables + lp.num_constraints)
    std = _standardize(lp)
    k, total = std.A.shape
    T = np.hstack([std.A, std.b[:, None]])
    tab = _Tableau(T, list(std.basis), pivot_tol=tol.positive)
    stall_limit = max(10, k)
    used = 0

    # phase 1: minimise the sum of artificials
    art = std.artificial
    if art.any():
        tab.set_objective(art.astype(float))
        outcome, n1 = _run_phase(tab, np.ones(total, dtype=bool), tol, max_iterations, stall_limit)
        used += n1
        scale = 1.0 + float(np.max(std.b, initial=0.0))
        if tab.value > tol.feasibility * scale:
            return LpSolution(Status.INFEASIBLE, iterations=used)
        # drive zero-level artificials out of the basis; drop redundant rows
        r = 0
        while r < len(tab.basis):
            if art[tab.basis[r]]:
                row = np.abs(tab.T[r, :-1]) * ~art
                q = int(np.argmax(row))
                if row[q] > tol.positive:
                    tab.pivot(r, q)
                else:
                    tab.drop_row(r)
                    continue
            r += 1

    keep = ~art
    tab.T = np.hstack([tab.T[:, :-1][:, keep], tab.T[:, -1:]])
    remap = np.cumsum(keep) - 1
    tab.basis = [int(remap[j]) for j in tab.basis]
    c = std.c[keep]
    A_orig = std.A[:, keep]
    tab.set_objective(c)
    outcome, n2 = _run_phase(tab, np.ones(c.size, dtype=bool), tol, max_iterations - used, stall_limit)
    used += n2
    if outcome == "unbounded":
        return LpSolution(Status.UNBOUNDED, iterations=used)

    z = np.zeros(c.size)
    z[tab.basis] = tab.T[:, -1]
    z = _refine(z, tab.basis, A_orig, std.b, tol)
    # map back through the artificial-free column numbering
    full = np.zeros(total)
    full[keep] = z
    x = full[std.pos].copy()
    has_neg = std.neg >= 0
    x[has_neg] -= full[std.neg[has_neg]]

    viol = lp.violations(x)
    scale = 1.0 + np.abs(lp.rhs) + np.abs(lp.A) @ np.abs(x)
    if np.any(viol > tol.feasibility * scale):
        worst = int(np.argmax(viol / scale))
        raise NumericalError(f"optimal point violates constraint {worst} by {viol[worst]:.3g}")
    value = float(lp.objective @ x)
    return LpSolution(Status.OPTIMAL, objective_value=value, primal=x, iterations=used)


def _refine(z: np.ndarray, basis: list[int], A: np.ndarray, b: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Recompute basic values from the original rows; keep the tableau values if that fails."""
    out = np.where(z < 0, 0.0, z)
    if not basis:
        return out
    # rows dropped as redundant during phase 1 are not part of the basis system
    B = A[:, basis]
    try:
        if B.shape[0] == B.shape[1]:
            zb = np.linalg.solve(B, b)
        else:
            zb, *_ = np.linalg.lstsq(B, b, rcond=None)
    except np.linalg.LinAlgError:
        return out
    if not np.all(np.isfinite(zb)) or np.any(zb < -tol.feasibility):
        return out
    if np.max(np.abs(zb - z[basis]), initial=0.0) > 1e-6 * (1.0 + np.max(np.abs(z), initial=0.0)):
        return out
    refined = np.zeros_like(z)
    refined[basis] = np.maximum(zb, 0.0)
    return refined
