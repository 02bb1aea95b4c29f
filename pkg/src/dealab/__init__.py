"""Data envelopment analysis: CCR/BCC scores, efficiency classes, returns to scale."""

from .dea import (
    DmuReport,
    Frontier,
    Rts,
    Variant,
    analyze,
    classify_rts,
    frontier2d,
    reference_set,
    scale_efficiency,
    solve_dmu,
)
from .lp import LinearProgram, LpSolution, Tolerances, solve
from .panel import Activity, Panel

__version__ = "0.1.0"

__all__ = [
    "Activity",
    "DmuReport",
    "Frontier",
    "LinearProgram",
    "LpSolution",
    "Panel",
    "Rts",
    "Tolerances",
    "Variant",
    "analyze",
    "classify_rts",
    "frontier2d",
    "reference_set",
    "scale_efficiency",
    "solve",
    "solve_dmu",
]
