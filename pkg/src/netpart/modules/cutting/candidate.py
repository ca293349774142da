from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.netpart.core.problem import PartitionProblem
from src.netpart.exception import InputError
from src.netpart.graph.state import SwitchState
from src.netpart.modules.constraints.variables import VariableMap


@dataclass(frozen=True)
class CandidateSolution:
    """Integral topology decision plus the dispatch that came with it."""
    switch_state: SwitchState
    block_state: tuple[int, ...]
    leader_state: tuple[int, ...]
    generation: tuple[float, ...] = ()
    flow: tuple[float, ...] = ()

    @classmethod
    def decode(cls, problem: PartitionProblem, vm: VariableMap, values: np.ndarray) -> "CandidateSolution":
        values = np.asarray(values, dtype=float)

        def binary(cols: list[int]) -> tuple[int, ...]:
            return tuple(int(round(values[c])) for c in cols)

        candidate = cls(
            switch_state=SwitchState(binary(vm.switch)),
            block_state=binary(vm.block),
            leader_state=binary(vm.leader),
            generation=tuple(float(values[c]) for c in vm.generation),
            flow=tuple(float(values[c]) for c in vm.flow),
        )
        candidate.check(problem)
        return candidate

    def check(self, problem: PartitionProblem) -> None:
        if (len(self.switch_state) != problem.switch_count or len(self.block_state) != problem.block_count
                or len(self.leader_state) != len(problem.eligible_leaders)):
            raise InputError("candidate dimensions do not match the problem")

    @property
    def binaries(self) -> tuple[int, ...]:
        return self.switch_state.values + self.block_state + self.leader_state

    def active(self, block_position: int) -> bool:
        return bool(self.block_state[block_position])
