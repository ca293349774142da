from __future__ import annotations

from collections import deque

from src.netpart.core.problem import PartitionProblem
from src.netpart.graph.components import UnionFind
from src.netpart.graph.state import CycleSet, SwitchState, check_state


def _spanning_forest(problem: PartitionProblem, state: SwitchState):
    """BFS forest over closed switches, rooted at the lowest block of each component.

    Returns (parent block, parent switch, depth) per block position and the
    closed switches left out of the forest (chords), ascending.
    """
    n = problem.block_count
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for s in state.closed:
        i, j = problem.endpoints[s]
        adjacency[i].append((s, j))
        adjacency[j].append((s, i))

    parent = [-1] * n
    parent_switch = [-1] * n
    depth = [-1] * n
    tree_switches: set[int] = set()
    for root in range(n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for s, v in sorted(adjacency[u]):
                if depth[v] < 0:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    parent_switch[v] = s
                    tree_switches.add(s)
                    queue.append(v)
    chords = [s for s in state.closed if s not in tree_switches]
    return parent, parent_switch, depth, chords


def detect_cycles(problem: PartitionProblem, state: SwitchState) -> CycleSet:
    """Fundamental cycle basis of the closed-switch graph, one cycle per chord."""
    check_state(problem, state)
    parent, parent_switch, depth, chords = _spanning_forest(problem, state)
    cycles = []
    for chord in chords:
        u, v = problem.endpoints[chord]
        left, right = [], []
        while depth[u] > depth[v]:
            left.append(parent_switch[u])
            u = parent[u]
        while depth[v] > depth[u]:
            right.append(parent_switch[v])
            v = parent[v]
        while u != v:
            left.append(parent_switch[u])
            right.append(parent_switch[v])
            u, v = parent[u], parent[v]
        cycles.append(tuple([chord] + left + right[::-1]))
    return CycleSet(tuple(cycles))


def fundamental_cycle_count(problem: PartitionProblem, state: SwitchState) -> int:
    """closed switches - blocks + components."""
    check_state(problem, state)
    uf = UnionFind(problem.block_count)
    for s in state.closed:
        uf.union(*problem.endpoints[s])
    return len(state.closed) - problem.block_count + uf.num_components


def is_radial(problem: PartitionProblem, state: SwitchState) -> bool:
    return fundamental_cycle_count(problem, state) == 0
