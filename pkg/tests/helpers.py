from __future__ import annotations

from typing import Sequence

from src.netpart.core.problem import Block, Consumer, PartitionProblem, Provider, Switch


def block(block_id: int, providers: Sequence[tuple] = (), demands: Sequence[float] = ()) -> Block:
    """providers: (c_min, c_max, leader_eligible[, cost]) tuples."""
    return Block(
        id=block_id,
        providers=tuple(
            Provider(id=f"g{block_id}_{k}", c_min=spec[0], c_max=spec[1], leader_eligible=spec[2],
                     cost=spec[3] if len(spec) > 3 else 1.0)
            for k, spec in enumerate(providers)),
        consumers=tuple(Consumer(id=f"m{block_id}_{k}", demand=d) for k, d in enumerate(demands)),
    )


def problem(blocks: Sequence[Block], pairs: Sequence[tuple[int, int]] = (), r_max: float = 10.0,
            **parameters) -> PartitionProblem:
    return PartitionProblem(
        blocks=tuple(blocks),
        switches=tuple(Switch(from_block=i, to_block=j, r_max=r_max, label=f"s{k}") for k, (i, j) in enumerate(pairs)),
        **parameters,
    )


def bare(n: int, pairs: Sequence[tuple[int, int]]) -> PartitionProblem:
    """Blocks 1..n without providers or consumers; for pure graph queries."""
    return problem([block(i) for i in range(1, n + 1)], pairs)


TRIANGLE = [(1, 2), (2, 3), (1, 3)]
K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
