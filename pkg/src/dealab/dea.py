"""Input-oriented CCR and BCC models.

For each DMU the envelopment program gives the radial score, a second
max-slack program decides whether the score-1 point is strongly or only
weakly efficient, and its intensity weights give the reference set.
Returns to scale at BCC-efficient points come from the sign of the free
multiplier ``u0``, checked over all optimal multiplier solutions with one
extra program.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AnalysisError,
    ContractError,
    DmuSolveError,
    DomainError,
    InconsistencyError,
    InputError,
    NumericalError,
    UnsupportedShapeError,
)
from .lp import DEFAULT_TOLERANCES, LinearProgram, LpSolution, Relation, Sense, Tolerances, solve
from .panel import Panel

log = logging.getLogger(__name__)

__all__ = [
    "Variant",
    "Rts",
    "U0Branch",
    "Model",
    "EnvelopmentResult",
    "SlackResult",
    "MultiplierResult",
    "DmuSolution",
    "DmuReport",
    "Frontier",
    "build_envelopment",
    "build_slack_phase",
    "build_multiplier",
    "build_rts_program",
    "solve_envelopment",
    "solve_slacks",
    "solve_multiplier",
    "solve_dmu",
    "reference_set",
    "classify_rts",
    "scale_efficiency",
    "analyze",
    "frontier2d",
]


class Variant(str, enum.Enum):
    CCR = "CCR"
    BCC = "BCC"


class Rts(str, enum.Enum):
    CRS = "CRS"
    IRS = "IRS"
    DRS = "DRS"

    @property
    def arrow(self) -> str:
        return {"CRS": "→", "IRS": "↑", "DRS": "↓"}[self.value]


class U0Branch(str, enum.Enum):
    NONPOSITIVE = "nonpositive_u0"
    NONNEGATIVE = "nonnegative_u0"


class Model(str, enum.Enum):
    CCR = "ccr"
    BCC = "bcc"
    BOTH = "both"


@dataclass(frozen=True, eq=False)
class EnvelopmentResult:
    theta_star: float
    lambdas: np.ndarray
    variant: Variant


@dataclass(frozen=True, eq=False)
class SlackResult:
    s_minus: np.ndarray
    s_plus: np.ndarray
    lambdas: np.ndarray
    total_slack: float


@dataclass(frozen=True, eq=False)
class MultiplierResult:
    v: np.ndarray
    u: np.ndarray
    u0: float | None
    objective: float


@dataclass(frozen=True, eq=False)
class DmuSolution:
    envelopment: EnvelopmentResult
    slacks: SlackResult
    efficient: bool
    weakly_efficient: bool


@dataclass(frozen=True)
class DmuReport:
    """One DMU's row of the efficiency report.

    Fields for a variant that was not computed are ``None``; scale
    efficiency and returns to scale need both variants. ``rts`` is only
    set for BCC-efficient DMUs.
    """

    name: str
    theta_ccr: float | None
    theta_bcc: float | None
    scale_efficiency: float | None
    ccr_efficient: bool | None
    bcc_efficient: bool | None
    weakly_efficient_ccr: bool | None
    weakly_efficient_bcc: bool | None
    rts: Rts | None
    reference_set_ccr: tuple[str, ...] | None
    reference_set_bcc: tuple[str, ...] | None


@dataclass(frozen=True)
class Frontier:
    efficient: tuple[str, ...]
    weakly_efficient: tuple[str, ...]
    enveloped: tuple[str, ...]


def _variant(variant) -> Variant:
    try:
        return Variant(variant.upper() if isinstance(variant, str) else variant)
    except ValueError:
        raise InputError(f"unknown DEA variant {variant!r}") from None


# -- program builders -------------------------------------------------------

def build_envelopment(panel: Panel, o: int, variant: Variant | str) -> LinearProgram:
    """Variables ``[theta, lambda_1..lambda_n]``; minimise theta."""
    o = panel.check_index(o)
    variant = _variant(variant)
    X, Y = panel.X, panel.Y
    m, n, s = panel.m, panel.n, panel.s
    A = np.zeros((m + s, n + 1))
    A[:m, 0] = X[:, o]
    A[:m, 1:] = -X
    A[m:, 1:] = Y
    rhs = np.concatenate([np.zeros(m), Y[:, o]])
    rels = [Relation.GE] * (m + s)
    if variant is Variant.BCC:
        A = np.vstack([A, np.r_[0.0, np.ones(n)]])
        rhs = np.r_[rhs, 1.0]
        rels.append(Relation.EQ)
    c = np.zeros(n + 1)
    c[0] = 1.0
    free = np.zeros(n + 1, dtype=bool)
    free[0] = True
    return LinearProgram(c, A, tuple(rels), rhs, Sense.MINIMIZE, free)


def build_slack_phase(
    panel: Panel, o: int, theta_star: float, variant: Variant | str, tol: Tolerances = DEFAULT_TOLERANCES
) -> LinearProgram:
    """Variables ``[lambda (n), s_minus (m), s_plus (s)]``; maximise total slack."""
    o = panel.check_index(o)
    variant = _variant(variant)
    if not (np.isfinite(theta_star) and 0 < theta_star <= 1 + tol.unit):
        raise DomainError(f"theta_star must lie in (0, 1], got {theta_star!r}")
    X, Y = panel.X, panel.Y
    m, n, s = panel.m, panel.n, panel.s
    A = np.zeros((m + s, n + m + s))
    A[:m, :n] = X
    A[:m, n:n + m] = np.eye(m)
    A[m:, :n] = Y
    A[m:, n + m:] = -np.eye(s)
    rhs = np.concatenate([theta_star * X[:, o], Y[:, o]])
    if variant is Variant.BCC:
        A = np.vstack([A, np.r_[np.ones(n), np.zeros(m + s)]])
        rhs = np.r_[rhs, 1.0]
    c = np.r_[np.zeros(n), np.ones(m + s)]
    return LinearProgram(c, A, (Relation.EQ,) * A.shape[0], rhs, Sense.MAXIMIZE)


def build_multiplier(panel: Panel, o: int, variant: Variant | str) -> LinearProgram:
    """Variables ``[v (m), u (s)]`` plus a free ``u0`` for BCC; maximise ``u @ y_o - u0``."""
    o = panel.check_index(o)
    variant = _variant(variant)
    X, Y = panel.X, panel.Y
    m, n, s = panel.m, panel.n, panel.s
    extra = 1 if variant is Variant.BCC else 0
    A = np.zeros((1 + n, m + s + extra))
    A[0, :m] = X[:, o]
    A[1:, :m] = -X.T
    A[1:, m:m + s] = Y.T
    if extra:
        A[1:, -1] = -1.0
    rhs = np.r_[1.0, np.zeros(n)]
    rels = (Relation.EQ,) + (Relation.LE,) * n
    c = np.r_[np.zeros(m), Y[:, o], -np.ones(extra)]
    free = np.zeros(m + s + extra, dtype=bool)
    if extra:
        free[-1] = True
    return LinearProgram(c, A, rels, rhs, Sense.MAXIMIZE, free)


def build_rts_program(panel: Panel, o: int, branch: U0Branch | str) -> LinearProgram:
    """Extreme value of ``u0`` over the optimal face of the BCC multiplier program.

    ``nonpositive_u0`` maximises ``u0`` subject to ``u0 <= 0``;
    ``nonnegative_u0`` minimises it subject to ``u0 >= 0``.
    """
    o = panel.check_index(o)
    try:
        branch = U0Branch(branch)
    except ValueError:
        raise InputError(f"unknown branch {branch!r}") from None
    X, Y = panel.X, panel.Y
    m, n, s = panel.m, panel.n, panel.s
    k = m + s + 1
    A = np.zeros((3 + n, k))
    A[0, :m] = X[:, o]
    A[1, m:m + s] = Y[:, o]
    A[1, -1] = -1.0
    A[2:2 + n, :m] = -X.T
    A[2:2 + n, m:m + s] = Y.T
    A[2:2 + n, -1] = -1.0
    A[-1, -1] = 1.0
    rhs = np.r_[1.0, 1.0, np.zeros(n), 0.0]
    if branch is U0Branch.NONPOSITIVE:
        sign_row, sense = Relation.LE, Sense.MAXIMIZE
    else:
        sign_row, sense = Relation.GE, Sense.MINIMIZE
    rels = (Relation.EQ, Relation.EQ) + (Relation.LE,) * n + (sign_row,)
    c = np.zeros(k)
    c[-1] = 1.0
    free = np.zeros(k, dtype=bool)
    free[-1] = True
    return LinearProgram(c, A, rels, rhs, sense, free)


# -- solves -----------------------------------------------------------------

def _solve(lp: LinearProgram, tol: Tolerances, panel: Panel, o: int, what: str) -> LpSolution:
    try:
        sol = solve(lp, tol)
    except NumericalError as exc:
        raise DmuSolveError(panel.names[o], f"{what}: {exc}") from exc
    if not sol.optimal:
        raise DmuSolveError(panel.names[o], f"{what} program is {sol.status.value}")
    return sol


def solve_envelopment(
    panel: Panel, o: int, variant: Variant | str, tol: Tolerances = DEFAULT_TOLERANCES
) -> EnvelopmentResult:
    variant = _variant(variant)
    sol = _solve(build_envelopment(panel, o, variant), tol, panel, o, f"{variant.value} envelopment")
    theta = float(sol.primal[0])
    if not 0 < theta <= 1 + tol.unit:
        raise DmuSolveError(panel.names[o], f"{variant.value} score {theta!r} outside (0, 1]")
    return EnvelopmentResult(min(theta, 1.0), sol.primal[1:].copy(), variant)


def solve_slacks(
    panel: Panel, o: int, theta_star: float, variant: Variant | str, tol: Tolerances = DEFAULT_TOLERANCES
) -> SlackResult:
    variant = _variant(variant)
    lp = build_slack_phase(panel, o, theta_star, variant, tol)
    sol = _solve(lp, tol, panel, o, f"{variant.value} max-slack")
    n, m = panel.n, panel.m
    x = sol.primal
    s_minus, s_plus = x[n:n + m].copy(), x[n + m:].copy()
    return SlackResult(s_minus, s_plus, x[:n].copy(), float(s_minus.sum() + s_plus.sum()))


def solve_multiplier(
    panel: Panel, o: int, variant: Variant | str, tol: Tolerances = DEFAULT_TOLERANCES
) -> MultiplierResult:
    variant = _variant(variant)
    sol = _solve(build_multiplier(panel, o, variant), tol, panel, o, f"{variant.value} multiplier")
    m, s = panel.m, panel.s
    x = sol.primal
    u0 = float(x[-1]) if variant is Variant.BCC else None
    return MultiplierResult(x[:m].copy(), x[m:m + s].copy(), u0, float(sol.objective_value))


def solve_dmu(panel: Panel, o: int, variant: Variant | str, tol: Tolerances = DEFAULT_TOLERANCES) -> DmuSolution:
    """Score DMU ``o`` and decide efficiency from the score and its maximal slack.

    Efficient means score 1 with zero slack; score 1 with positive slack is
    weakly efficient.
    """
    panel.require_semipositive()
    env = solve_envelopment(panel, o, variant, tol)
    slacks = solve_slacks(panel, o, env.theta_star, variant, tol)
    at_one = env.theta_star >= 1 - tol.unit
    return DmuSolution(
        envelopment=env,
        slacks=slacks,
        efficient=at_one and slacks.total_slack <= tol.slack,
        weakly_efficient=at_one and slacks.total_slack > tol.slack,
    )


def reference_set(slack: SlackResult, names: Sequence[str], tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[str, ...]:
    """Names with positive intensity in the max-slack solution, in panel order."""
    return tuple(names[j] for j in np.flatnonzero(slack.lambdas > tol.positive))


def _rts_of_efficient(panel: Panel, o: int, tol: Tolerances) -> Rts:
    u0 = solve_multiplier(panel, o, Variant.BCC, tol).u0
    if abs(u0) <= tol.positive:
        return Rts.CRS
    branch = U0Branch.NONPOSITIVE if u0 < 0 else U0Branch.NONNEGATIVE
    sol = _solve(build_rts_program(panel, o, branch), tol, panel, o, "returns-to-scale")
    if abs(sol.objective_value) <= tol.positive:
        return Rts.CRS
    return Rts.IRS if branch is U0Branch.NONPOSITIVE else Rts.DRS


def classify_rts(panel: Panel, o: int, tol: Tolerances = DEFAULT_TOLERANCES) -> Rts:
    """Returns to scale at a BCC-efficient DMU.

    Raises:
        ContractError: DMU ``o`` is not BCC-efficient.
    """
    o = panel.check_index(o)
    if not solve_dmu(panel, o, Variant.BCC, tol).efficient:
        raise ContractError(f"DMU {panel.names[o]!r} is not BCC-efficient; returns to scale undefined")
    return _rts_of_efficient(panel, o, tol)


def scale_efficiency(te: float, pte: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``te / pte`` clamped to ``(0, 1]``."""
    if not (np.isfinite(pte) and pte > 0):
        raise DomainError(f"pure technical efficiency must be positive, got {pte!r}")
    if not (np.isfinite(te) and te > 0):
        raise DomainError(f"technical efficiency must be positive, got {te!r}")
    if pte > 1 + tol.unit:
        raise DomainError(f"pure technical efficiency {pte!r} exceeds 1")
    if te > pte + tol.unit:
        raise InconsistencyError(f"technical efficiency {te!r} exceeds pure technical efficiency {pte!r}")
    return min(te / pte, 1.0)


# -- panel-wide analysis ----------------------------------------------------

def _report(panel: Panel, o: int, tol: Tolerances, model: Model) -> DmuReport:
    ccr = bcc = None
    if model in (Model.CCR, Model.BOTH):
        ccr = solve_dmu(panel, o, Variant.CCR, tol)
    if model in (Model.BCC, Model.BOTH):
        bcc = solve_dmu(panel, o, Variant.BCC, tol)
    se = rts = None
    if ccr is not None and bcc is not None:
        se = scale_efficiency(ccr.envelopment.theta_star, bcc.envelopment.theta_star, tol)
        if bcc.efficient:
            rts = _rts_of_efficient(panel, o, tol)
    return DmuReport(
        name=panel.names[o],
        theta_ccr=None if ccr is None else ccr.envelopment.theta_star,
        theta_bcc=None if bcc is None else bcc.envelopment.theta_star,
        scale_efficiency=se,
        ccr_efficient=None if ccr is None else ccr.efficient,
        bcc_efficient=None if bcc is None else bcc.efficient,
        weakly_efficient_ccr=None if ccr is None else ccr.weakly_efficient,
        weakly_efficient_bcc=None if bcc is None else bcc.weakly_efficient,
        rts=rts,
        reference_set_ccr=None if ccr is None else reference_set(ccr.slacks, panel.names, tol),
        reference_set_bcc=None if bcc is None else reference_set(bcc.slacks, panel.names, tol),
    )


def _report_or_error(args) -> DmuReport | DmuSolveError:
    panel, o, tol, model = args
    try:
        return _report(panel, o, tol, model)
    except DmuSolveError as exc:
        return exc
    except NumericalError as exc:
        return DmuSolveError(panel.names[o], str(exc))


def analyze(
    panel: Panel,
    tol: Tolerances = DEFAULT_TOLERANCES,
    model: Model | str = Model.BOTH,
    workers: int | None = None,
) -> list[DmuReport]:
    """Evaluate every DMU of ``panel``; results are in panel order.

    ``workers > 1`` spreads DMUs over a process pool. Output is identical to
    the sequential run. Any per-DMU failure aborts with an AnalysisError
    listing every failed DMU.
    """
    panel = panel.checked()
    try:
        model = Model(model.lower() if isinstance(model, str) else model)
    except ValueError:
        raise InputError(f"unknown model {model!r}") from None
    jobs = [(panel, o, tol, model) for o in range(panel.n)]
    workers = min(workers or 1, panel.n)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_report_or_error, jobs, chunksize=max(1, panel.n // (4 * workers))))
    else:
        results = [_report_or_error(job) for job in jobs]
    failures = [r for r in results if isinstance(r, DmuSolveError)]
    if failures:
        for f in failures:
            log.error("%s", f)
        raise AnalysisError(failures)
    return results


def frontier2d(panel: Panel, tol: Tolerances = DEFAULT_TOLERANCES) -> Frontier:
    """Split DMUs into CCR-efficient, weakly efficient and enveloped.

    Only defined for one input with two outputs or two inputs with one
    output, the shapes that can be drawn in the plane after normalising by
    the single input (or output).
    """
    if (panel.m, panel.s) not in ((1, 2), (2, 1)):
        raise UnsupportedShapeError(
            f"frontier2d needs (1 input, 2 outputs) or (2 inputs, 1 output), got ({panel.m}, {panel.s})"
        )
    panel = panel.checked()
    groups: dict[str, list[str]] = {"efficient": [], "weakly_efficient": [], "enveloped": []}
    for o, name in enumerate(panel.names):
        sol = solve_dmu(panel, o, Variant.CCR, tol)
        if sol.efficient:
            groups["efficient"].append(name)
        elif sol.weakly_efficient:
            groups["weakly_efficient"].append(name)
        else:
            groups["enveloped"].append(name)
    return Frontier(**{k: tuple(v) for k, v in groups.items()})
