from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from src.netpart.core.problem import PartitionProblem
from src.netpart.exception import InputError


@dataclass(frozen=True)
class SwitchState:
    """Open (0) / closed (1) status per switch id (position in problem.switches)."""
    values: tuple[int, ...]

    @classmethod
    def from_closed(cls, problem: PartitionProblem, closed: Iterable[int]) -> "SwitchState":
        values = [0] * problem.switch_count
        for s in closed:
            if not 0 <= s < problem.switch_count:
                raise InputError(f"switch id {s} out of range 0..{problem.switch_count - 1}")
            values[s] = 1
        return cls(tuple(values))

    @classmethod
    def of(cls, values: Sequence[float]) -> "SwitchState":
        return cls(tuple(1 if v > 0.5 else 0 for v in values))

    @classmethod
    def all_open(cls, problem: PartitionProblem) -> "SwitchState":
        return cls((0,) * problem.switch_count)

    @property
    def closed(self) -> tuple[int, ...]:
        return tuple(s for s, v in enumerate(self.values) if v)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Component:
    blocks: tuple[int, ...]              # block ids, ascending
    internal_switches: tuple[int, ...]   # closed, both endpoints inside
    external_switches: tuple[int, ...]   # open, at least one endpoint inside
    leaders: tuple[str, ...]             # eligible leader provider ids

    @property
    def signature(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (self.external_switches, self.internal_switches, self.blocks)


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Component, ...]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def component_of(self, block_id: int) -> Component:
        for c in self.components:
            if block_id in c.blocks:
                return c
        raise InputError(f"unknown block id {block_id}")


@dataclass(frozen=True)
class CycleSet:
    cycles: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __bool__(self) -> bool:
        return bool(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


def check_state(problem: PartitionProblem, state: SwitchState) -> None:
    if len(state.values) != problem.switch_count:
        raise InputError(
            f"switch state has {len(state.values)} entries, problem has {problem.switch_count} switches")
    for s, v in enumerate(state.values):
        if v not in (0, 1):
            raise InputError(f"switch {s} has non-binary state {v}")
