from src.netpart.modules.constraints.variables import VariableMap, allocate_core
from src.netpart.modules.constraints.core_rows import add_core_constraints
from src.netpart.modules.constraints.radiality import add_radiality_constraints, allocate_radiality_variables
from src.netpart.modules.constraints.leaders import add_leader_constraints, allocate_leader_variables
from src.netpart.modules.constraints.switch_coloring import (
    add_switch_coloring_constraints, allocate_switch_coloring_variables,
)
from src.netpart.modules.constraints.builder import LeaderFamily, ModelMode, ObjectiveSpec, build_model

__all__ = [
    "LeaderFamily", "ModelMode", "ObjectiveSpec", "VariableMap", "add_core_constraints",
    "add_leader_constraints", "add_radiality_constraints", "add_switch_coloring_constraints",
    "allocate_core", "allocate_leader_variables", "allocate_radiality_variables",
    "allocate_switch_coloring_variables", "build_model",
]
