from src.netpart.modules.milp.model import Constraint, MipModel, Sense, StandardForm, VarKind, Variable, dump_lp
from src.netpart.modules.milp.simplex import LpSolution, LpStatus, solve_lp
from src.netpart.modules.milp.branch_and_bound import IncumbentCallback, MipSolution, MipStatus, solve_mip

__all__ = [
    "Constraint", "IncumbentCallback", "LpSolution", "LpStatus", "MipModel", "MipSolution", "MipStatus",
    "Sense", "StandardForm", "VarKind", "Variable", "dump_lp", "solve_lp", "solve_mip",
]
