"""YAML network files.

    parameters: {kappa: 1, nu: 0.9, gamma: 1.0}
    blocks:
      - id: 1
        providers: [{id: g1, c_min: 0, c_max: 5, leader: true, cost: 1}]
        consumers: [{id: m1, demand: 3}]
        intermediaries: [n1]
    switches:
      - {id: s1, from: 1, to: 2, r_max: 10}

Schema errors are reported with the line and column of the offending node.
"""
from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.netpart.config import Config
from src.netpart.core.problem import Block, Consumer, PartitionProblem, Provider, Switch
from src.netpart.exception import NetworkParseError
from src.netpart.logger import logging


def _as_text(value: Any) -> Any:
    return str(value) if isinstance(value, int) and not isinstance(value, bool) else value


class _Entry(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class _Named(_Entry):
    @field_validator("id", mode="before", check_fields=False)
    @classmethod
    def _text_id(cls, value: Any) -> Any:
        return _as_text(value)


class ProviderEntry(_Named):
    id: str
    c_min: float = 0.0
    c_max: float
    leader: bool = False
    cost: float = Config.default_cost


class ConsumerEntry(_Named):
    id: str
    demand: float


class BlockEntry(_Entry):
    id: int
    providers: list[ProviderEntry] = Field(default_factory=list)
    consumers: list[ConsumerEntry] = Field(default_factory=list)
    intermediaries: list[str] = Field(default_factory=list)


class SwitchEntry(_Named):
    id: str | None = None
    from_block: int = Field(alias="from")
    to_block: int = Field(alias="to")
    r_max: float


class ParameterEntry(_Entry):
    kappa: int = Config.default_kappa
    nu: float = Config.default_nu
    gamma: float = Config.default_gamma


class NetworkFile(_Entry):
    parameters: ParameterEntry = Field(default_factory=ParameterEntry)
    blocks: list[BlockEntry]
    switches: list[SwitchEntry] = Field(default_factory=list)

    def to_problem(self) -> PartitionProblem:
        blocks = [
            Block(
                id=b.id,
                providers=tuple(Provider(id=g.id, c_min=g.c_min, c_max=g.c_max, leader_eligible=g.leader,
                                         cost=g.cost) for g in b.providers),
                consumers=tuple(Consumer(id=m.id, demand=m.demand) for m in b.consumers),
                intermediaries=tuple(b.intermediaries),
            )
            for b in self.blocks
        ]
        switches = [Switch(from_block=s.from_block, to_block=s.to_block, r_max=s.r_max, label=s.id)
                    for s in self.switches]
        return PartitionProblem(blocks=tuple(blocks), switches=tuple(switches), **self.parameters.model_dump())


def _locate(node: yaml.Node | None, loc: tuple) -> tuple[int | None, int | None]:
    """1-based line/column of the deepest node on `loc` that exists."""
    if node is None:
        return None, None
    for key in loc:
        child = None
        if isinstance(node, yaml.MappingNode):
            child = next((v for k, v in node.value if k.value == str(key)), None)
            if child is None and key == "from_block":
                child = next((v for k, v in node.value if k.value == "from"), None)
            if child is None and key == "to_block":
                child = next((v for k, v in node.value if k.value == "to"), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            child = node.value[key]
        if child is None:
            break
        node = child
    return node.start_mark.line + 1, node.start_mark.column + 1


def _check_references(document: NetworkFile, root: yaml.Node, path: str) -> None:
    seen_blocks: set[int] = set()
    for index, block in enumerate(document.blocks):
        if block.id in seen_blocks:
            raise NetworkParseError(f"duplicate block id {block.id}", path, *_locate(root, ("blocks", index, "id")))
        seen_blocks.add(block.id)
    seen_switches: set[str] = set()
    for index, switch in enumerate(document.switches):
        name = switch.id if switch.id is not None else str(index)
        if switch.id is not None:
            if switch.id in seen_switches:
                raise NetworkParseError(f"duplicate switch id {name}", path,
                                        *_locate(root, ("switches", index, "id")))
            seen_switches.add(switch.id)
        for field, end in (("from", switch.from_block), ("to", switch.to_block)):
            if end not in seen_blocks:
                raise NetworkParseError(f"switch {name} references unknown block {end}", path,
                                        *_locate(root, ("switches", index, field)))


def parse_network_text(text: str, path: str = "<network>") -> PartitionProblem:
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        raise NetworkParseError(e.problem or "invalid YAML", path,
                                mark.line + 1 if mark else None, mark.column + 1 if mark else None) from e
    if not isinstance(data, dict):
        raise NetworkParseError("expected a mapping with a 'blocks' section", path, 1, 1)

    try:
        document = NetworkFile.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        where = ".".join(str(p) for p in error["loc"])
        raise NetworkParseError(f"{where}: {error['msg']}", path, *_locate(root, tuple(error["loc"]))) from e

    _check_references(document, root, path)
    try:
        return document.to_problem()
    except ValidationError as e:
        error = e.errors()[0]
        raise NetworkParseError(error["msg"], path, *_locate(root, tuple(error["loc"]))) from e


def parse_network(path: str | Path) -> PartitionProblem:
    """Load and validate a network file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise NetworkParseError(f"cannot read network file: {e.strerror}", str(path)) from e
    problem = parse_network_text(text, str(path))
    logging.info(f"parsed {path}: {problem.block_count} blocks, {problem.switch_count} switches")
    return problem


def network_document(problem: PartitionProblem) -> dict:
    """Canonical plain-data form; unlabelled switches are named by position."""
    return {
        "parameters": {"kappa": problem.kappa, "nu": problem.nu, "gamma": problem.gamma},
        "blocks": [
            {
                "id": b.id,
                "providers": [{"id": g.id, "c_min": g.c_min, "c_max": g.c_max, "leader": g.leader_eligible,
                               "cost": g.cost} for g in b.providers],
                "consumers": [{"id": m.id, "demand": m.demand} for m in b.consumers],
                "intermediaries": list(b.intermediaries),
            }
            for b in problem.blocks
        ],
        "switches": [
            {"id": s.label if s.label is not None else str(k), "from": s.from_block, "to": s.to_block,
             "r_max": s.r_max}
            for k, s in enumerate(problem.switches)
        ],
    }


def serialize_network(problem: PartitionProblem) -> str:
    return yaml.safe_dump(network_document(problem), sort_keys=False)


def write_network(problem: PartitionProblem, path: str | Path) -> None:
    Path(path).write_text(serialize_network(problem), encoding="utf-8")
