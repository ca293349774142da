from __future__ import annotations

from dataclasses import dataclass, field

from src.netpart.core.problem import PartitionProblem
from src.netpart.modules.milp.model import MipModel, VarKind


@dataclass
class VariableMap:
    """Model column handles for every problem symbol.

    Positions follow the problem: `switch[s]` is switch id s, `block[p]` is the
    block at position p, `leader[k]` is `problem.eligible_leaders[k]`,
    `generation[k]` is `problem.providers[k]`.
    """
    switch: list[int] = field(default_factory=list)
    block: list[int] = field(default_factory=list)
    leader: list[int] = field(default_factory=list)
    generation: list[int] = field(default_factory=list)
    flow: list[int] = field(default_factory=list)

    # radiality family
    orientation: list[tuple[int, int]] = field(default_factory=list)   # (forward, backward) per switch
    root_link: dict[int, int] = field(default_factory=dict)            # target position -> column
    commodity: dict[int, dict[tuple[str, int], int]] = field(default_factory=dict)

    # leader family
    color: dict[tuple[int, int], int] = field(default_factory=dict)        # (block pos, color pos)
    color_flow: dict[tuple[int, int], int] = field(default_factory=dict)   # (switch, color pos)
    share: dict[tuple[int, int], int] = field(default_factory=dict)        # (leader index, color pos)

    # switch coloring leader family
    switch_color: dict[tuple[int, int], int] = field(default_factory=dict)  # (block pos, switch)
    reach_flow: dict[tuple[int, int], int] = field(default_factory=dict)    # (source block pos, switch)
    virtual_flow: dict[tuple[int, int], int] = field(default_factory=dict)  # (source block pos, target pos)

    @property
    def has_radiality(self) -> bool:
        return bool(self.orientation)

    @property
    def has_leader_family(self) -> bool:
        return bool(self.color or self.virtual_flow)

    @property
    def binaries(self) -> list[int]:
        return self.switch + self.block + self.leader


def allocate_core(model: MipModel, problem: PartitionProblem) -> VariableMap:
    """Topology binaries plus dispatch variables with their box bounds."""
    vm = VariableMap()
    for s, switch in enumerate(problem.switches):
        vm.switch.append(model.add_variable(f"zsw_{s}", VarKind.BINARY))
    for p, block in enumerate(problem.blocks):
        vm.block.append(model.add_variable(f"zbl_{block.id}", VarKind.BINARY))
    for _, g in problem.eligible_leaders:
        vm.leader.append(model.add_variable(f"zldr_{g.id}", VarKind.BINARY))
    for _, g in problem.providers:
        vm.generation.append(model.add_variable(
            f"gen_{g.id}", lb=min(0.0, g.c_min), ub=max(0.0, g.c_max)))
    for s, switch in enumerate(problem.switches):
        vm.flow.append(model.add_variable(f"flow_{s}", lb=-switch.r_max, ub=switch.r_max))
    return vm
