from __future__ import annotations

import sys
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.netpart.core.problem import PartitionProblem
from src.netpart.exception import CustomException, InputError
from src.netpart.logger import logging
from src.netpart.modules.constraints.core_rows import add_core_constraints
from src.netpart.modules.constraints.leaders import add_leader_constraints, allocate_leader_variables
from src.netpart.modules.constraints.radiality import add_radiality_constraints, allocate_radiality_variables
from src.netpart.modules.constraints.switch_coloring import (
    add_switch_coloring_constraints, allocate_switch_coloring_variables,
)
from src.netpart.modules.constraints.variables import VariableMap, allocate_core
from src.netpart.modules.milp.model import MipModel


class ModelMode(str, Enum):
    FULL = "full"
    RELAX_RADIALITY = "relax-radiality"
    RELAX_LEADER = "relax-leader"
    RELAX_BOTH = "relax-both"

    @property
    def with_radiality(self) -> bool:
        return self in (ModelMode.FULL, ModelMode.RELAX_LEADER)

    @property
    def with_leaders(self) -> bool:
        return self in (ModelMode.FULL, ModelMode.RELAX_RADIALITY)


class LeaderFamily(str, Enum):
    """Which rows carry the leader requirement when the model keeps it."""
    COMPONENT_COLORING = "component-coloring"
    SWITCH_COLORING = "switch-coloring"


class ObjectiveSpec(BaseModel):
    """nu * sum(alpha_l * (1 - z_bl)) + (1 - nu) * sum(cost_g * gen_g), alpha_l = gamma * |consumers of l|."""
    model_config = ConfigDict(frozen=True)

    nu: float = Field(ge=0.0, le=1.0)
    gamma: float = Field(gt=0.0)
    costs: tuple[float, ...]

    @classmethod
    def from_problem(cls, problem: PartitionProblem) -> "ObjectiveSpec":
        return cls(nu=problem.nu, gamma=problem.gamma, costs=tuple(g.cost for _, g in problem.providers))

    def priority(self, problem: PartitionProblem, position: int) -> float:
        return self.gamma * len(problem.blocks[position].consumers)

    def apply(self, model: MipModel, problem: PartitionProblem, vm: VariableMap) -> None:
        if len(self.costs) != len(vm.generation):
            raise InputError(f"objective has {len(self.costs)} costs for {len(vm.generation)} providers")
        shed_total = 0.0
        for p, z in enumerate(vm.block):
            alpha = self.priority(problem, p)
            shed_total += alpha
            model.set_objective(z, -self.nu * alpha)
        for k, gen in enumerate(vm.generation):
            model.set_objective(gen, (1.0 - self.nu) * self.costs[k])
        model.objective_offset = self.nu * shed_total


def build_model(problem: PartitionProblem, mode: ModelMode | str = ModelMode.FULL,
                objective: ObjectiveSpec | None = None,
                leader_family: LeaderFamily | str = LeaderFamily.COMPONENT_COLORING,
                ) -> tuple[MipModel, VariableMap]:
    """Monolithic model, or a relaxation that leaves radiality and/or leader rows to cuts.

    `leader_family` picks the leader rows; the switch coloring family is kept
    for comparison and does not agree with the leader requirement on every
    assignment (see `switch_coloring.py`).
    """
    try:
        mode = ModelMode(mode)
        leader_family = LeaderFamily(leader_family)
    except ValueError as e:
        raise InputError(f"unknown model mode or leader family: {e}") from e
    try:
        model = MipModel(name=f"partition-{mode.value}")
        vm = allocate_core(model, problem)
        if mode.with_radiality:
            allocate_radiality_variables(model, problem, vm)
        coloring_switches = mode.with_leaders and leader_family is LeaderFamily.SWITCH_COLORING
        if coloring_switches:
            allocate_switch_coloring_variables(model, problem, vm)
        elif mode.with_leaders:
            allocate_leader_variables(model, problem, vm)

        add_core_constraints(model, problem, vm)
        if mode.with_radiality:
            add_radiality_constraints(model, problem, vm)
        if coloring_switches:
            add_switch_coloring_constraints(model, problem, vm)
        elif mode.with_leaders:
            add_leader_constraints(model, problem, vm)
        (objective or ObjectiveSpec.from_problem(problem)).apply(model, problem, vm)

        logging.info(f"built {model.name}: {model.num_variables} variables "
                     f"({len(model.binary_indices)} binary), {model.num_constraints} rows")
        return model, vm
    except CustomException:
        raise
    except Exception as e:
        logging.error(f"Error building model: {e}")
        raise CustomException(e, sys) from e
