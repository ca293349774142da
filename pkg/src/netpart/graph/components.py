from __future__ import annotations

from src.netpart.core.problem import PartitionProblem
from src.netpart.graph.state import Component, ComponentDecomposition, SwitchState, check_state


class UnionFind:
    """Disjoint sets over block positions with path compression.

    Union keeps the smaller root as parent, so every root is the lowest
    position of its set.
    """

    def __init__(self, size: int):
        self.size = size
        self.parents = list(range(size))
        self.num_components = size

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False when they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.num_components -= 1
        return True

    def groups(self) -> list[list[int]]:
        grouped: dict[int, list[int]] = {}
        for i in range(self.size):
            grouped.setdefault(self.find(i), []).append(i)
        return sorted(grouped.values(), key=lambda g: g[0])


def connected_components(problem: PartitionProblem, state: SwitchState) -> ComponentDecomposition:
    """Components of the block graph under the closed switches of `state`."""
    check_state(problem, state)
    uf = UnionFind(problem.block_count)
    for s in state.closed:
        uf.union(*problem.endpoints[s])

    components = []
    for group in uf.groups():
        members = set(group)
        internal, external = [], []
        for s, (i, j) in enumerate(problem.endpoints):
            if i not in members and j not in members:
                continue
            if state.values[s]:
                internal.append(s)
            else:
                external.append(s)
        leaders = tuple(g.id for p in group for g in problem.blocks[p].leaders)
        components.append(Component(
            blocks=tuple(problem.blocks[p].id for p in group),
            internal_switches=tuple(internal),
            external_switches=tuple(external),
            leaders=leaders,
        ))
    return ComponentDecomposition(tuple(components))
