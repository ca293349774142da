from src.netpart.modules.cutting.candidate import CandidateSolution
from src.netpart.modules.cutting.cuts import (
    ComponentSignature, Cut, CutKind, evaluate_phi, linear_bounds_hold, nonlinear_bounds_hold,
    separate_cycles, separate_leader_violations,
)
from src.netpart.modules.cutting.driver import (
    ComponentReport, CutRecord, Driver, SolveMode, SolveReport, SolveStatus, solve_with_cuts,
)

__all__ = [
    "CandidateSolution", "ComponentReport", "ComponentSignature", "Cut", "CutKind", "CutRecord", "Driver",
    "SolveMode", "SolveReport", "SolveStatus", "evaluate_phi", "linear_bounds_hold", "nonlinear_bounds_hold",
    "separate_cycles", "separate_leader_violations", "solve_with_cuts",
]
