from __future__ import annotations

from functools import cached_property
from typing import Mapping

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.netpart.config import Config


class Provider(BaseModel):
    """Resource provider node; leader-eligible providers can be designated leaders."""
    model_config = ConfigDict(frozen=True)

    id: str
    c_min: float = 0.0
    c_max: float
    leader_eligible: bool = False
    cost: float = Field(default=Config.default_cost, ge=0.0)

    @model_validator(mode="after")
    def _check_capacity(self) -> "Provider":
        if self.c_min > self.c_max:
            raise ValueError(f"provider {self.id}: c_min {self.c_min} exceeds c_max {self.c_max}")
        return self


class Consumer(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    demand: float = Field(ge=0.0)


class Block(BaseModel):
    """Base block: internally connected sub-network, the vertex of the partition graph."""
    model_config = ConfigDict(frozen=True)

    id: int
    providers: tuple[Provider, ...] = ()
    consumers: tuple[Consumer, ...] = ()
    intermediaries: tuple[str, ...] = ()

    @property
    def demand(self) -> float:
        return sum(m.demand for m in self.consumers)

    @property
    def leaders(self) -> tuple[Provider, ...]:
        return tuple(g for g in self.providers if g.leader_eligible)

    @model_validator(mode="after")
    def _check_roles(self) -> "Block":
        names = [g.id for g in self.providers] + [m.id for m in self.consumers] + list(self.intermediaries)
        if len(names) != len(set(names)):
            raise ValueError(f"block {self.id}: node roles overlap or repeat")
        return self


class Switch(BaseModel):
    """Controllable edge between two blocks. `label` keeps the file-level name."""
    model_config = ConfigDict(frozen=True)

    from_block: int
    to_block: int
    r_max: float = Field(gt=0.0)
    label: str | None = None

    @model_validator(mode="after")
    def _check_loop(self) -> "Switch":
        if self.from_block == self.to_block:
            raise ValueError(f"switch {self.label or ''} is a self-loop on block {self.from_block}")
        return self


class PartitionProblem(BaseModel):
    """Immutable network instance.

    Blocks are kept sorted by id, so block position order equals id order.
    A switch id is its position in `switches`.
    """
    model_config = ConfigDict(frozen=True)

    blocks: tuple[Block, ...]
    switches: tuple[Switch, ...] = ()
    kappa: int = Field(default=Config.default_kappa, ge=1)
    nu: float = Field(default=Config.default_nu, ge=0.0, le=1.0)
    gamma: float = Field(default=Config.default_gamma, gt=0.0)

    @model_validator(mode="before")
    @classmethod
    def _sort_blocks(cls, data):
        if isinstance(data, dict) and data.get("blocks") is not None:
            blocks = list(data["blocks"])
            key = lambda b: b.id if isinstance(b, Block) else b.get("id")
            try:
                data = {**data, "blocks": sorted(blocks, key=key)}
            except TypeError:
                pass
        return data

    @model_validator(mode="after")
    def _check_references(self) -> "PartitionProblem":
        if not self.blocks:
            raise ValueError("a problem needs at least one block")
        ids = [b.id for b in self.blocks]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate block id")
        known = set(ids)
        for position, switch in enumerate(self.switches):
            for end in (switch.from_block, switch.to_block):
                if end not in known:
                    name = switch.label if switch.label is not None else position
                    raise ValueError(f"switch {name} references unknown block {end}")
        node_ids = [n for b in self.blocks
                    for n in [g.id for g in b.providers] + [m.id for m in b.consumers] + list(b.intermediaries)]
        if len(node_ids) != len(set(node_ids)):
            raise ValueError("duplicate node id across blocks")
        labels = [s.label for s in self.switches if s.label is not None]
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate switch id")
        return self

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def switch_count(self) -> int:
        return len(self.switches)

    @cached_property
    def block_ids(self) -> tuple[int, ...]:
        return tuple(b.id for b in self.blocks)

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {b.id: i for i, b in enumerate(self.blocks)}

    def block_position(self, block_id: int) -> int:
        return self._positions[block_id]

    @cached_property
    def endpoints(self) -> tuple[tuple[int, int], ...]:
        """Switch endpoints as block positions."""
        return tuple((self._positions[s.from_block], self._positions[s.to_block]) for s in self.switches)

    @cached_property
    def incident_switches(self) -> tuple[tuple[int, ...], ...]:
        incident: list[list[int]] = [[] for _ in self.blocks]
        for s, (i, j) in enumerate(self.endpoints):
            incident[i].append(s)
            incident[j].append(s)
        return tuple(tuple(x) for x in incident)

    @cached_property
    def providers(self) -> tuple[tuple[int, Provider], ...]:
        """(block position, provider) for every provider."""
        return tuple((p, g) for p, b in enumerate(self.blocks) for g in b.providers)

    @cached_property
    def eligible_leaders(self) -> tuple[tuple[int, Provider], ...]:
        """(block position, provider) for every leader-eligible provider, the z^ldr index order."""
        return tuple((p, g) for p, g in self.providers if g.leader_eligible)

    @cached_property
    def leaders_by_block(self) -> tuple[tuple[int, ...], ...]:
        """Indices into `eligible_leaders` grouped by block position."""
        grouped: list[list[int]] = [[] for _ in self.blocks]
        for k, (p, _) in enumerate(self.eligible_leaders):
            grouped[p].append(k)
        return tuple(tuple(x) for x in grouped)

    @cached_property
    def root_position(self) -> int:
        """Reference block: lowest id holding a provider, else the lowest id."""
        for p, b in enumerate(self.blocks):
            if b.providers:
                return p
        return 0

    def priority(self, position: int) -> float:
        """Shedding priority alpha = gamma * number of consumers in the block."""
        return self.gamma * len(self.blocks[position].consumers)

    @property
    def total_demand(self) -> float:
        return sum(b.demand for b in self.blocks)

    def with_demands(self, demands: Mapping[str, float]) -> "PartitionProblem":
        """Copy with consumer demands replaced by id; unknown ids are ignored."""
        blocks = []
        for b in self.blocks:
            consumers = tuple(m.model_copy(update={"demand": float(demands.get(m.id, m.demand))})
                              for m in b.consumers)
            blocks.append(b.model_copy(update={"consumers": consumers}))
        return PartitionProblem(blocks=tuple(blocks), switches=self.switches,
                                kappa=self.kappa, nu=self.nu, gamma=self.gamma)

    def with_parameters(self, **updates) -> "PartitionProblem":
        """Copy with any of kappa, nu, gamma replaced (validated)."""
        data = {"blocks": self.blocks, "switches": self.switches,
                "kappa": self.kappa, "nu": self.nu, "gamma": self.gamma}
        data.update({k: v for k, v in updates.items() if v is not None})
        return PartitionProblem(**data)
