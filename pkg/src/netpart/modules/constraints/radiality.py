"""Spanning-tree radiality family.

The block graph is augmented with a virtual link from the root block to every
other block. Closed switches plus the chosen links must carry one unit of
flow from the root to every block, and their count is |blocks| - 1, so the
closed switches form a forest and each extra tree costs one link.
"""
from __future__ import annotations

from src.netpart.core.problem import PartitionProblem
from src.netpart.modules.constraints.variables import VariableMap
from src.netpart.modules.milp.model import MipModel, Sense


def _arcs(problem: PartitionProblem, vm: VariableMap) -> list[tuple[tuple[str, int], int, int, int]]:
    """(key, tail, head, capacity column) for every directed arc."""
    root = problem.root_position
    arcs = []
    for s, (i, j) in enumerate(problem.endpoints):
        fwd, bwd = vm.orientation[s]
        arcs.append((("f", s), i, j, fwd))
        arcs.append((("b", s), j, i, bwd))
    for k, link in sorted(vm.root_link.items()):
        arcs.append((("r", k), root, k, link))
    return arcs


def allocate_radiality_variables(model: MipModel, problem: PartitionProblem, vm: VariableMap) -> None:
    root = problem.root_position
    for s in range(problem.switch_count):
        vm.orientation.append((model.add_variable(f"lam_f_{s}"), model.add_variable(f"lam_b_{s}")))
    for k in range(problem.block_count):
        if k != root:
            vm.root_link[k] = model.add_variable(f"link_{problem.blocks[k].id}")
    for k in vm.root_link:
        vm.commodity[k] = {key: model.add_variable(f"f{problem.blocks[k].id}_{key[0]}{key[1]}")
                           for key, *_ in _arcs(problem, vm)}


def add_radiality_constraints(model: MipModel, problem: PartitionProblem, vm: VariableMap) -> None:
    root = problem.root_position
    n = problem.block_count

    for s in range(problem.switch_count):
        fwd, bwd = vm.orientation[s]
        model.add_constraint({fwd: 1.0, bwd: 1.0, vm.switch[s]: -1.0}, Sense.EQ, 0.0, f"orient_{s}")

    cardinality = {z: 1.0 for z in vm.switch}
    cardinality.update({link: 1.0 for link in vm.root_link.values()})
    model.add_constraint(cardinality, Sense.EQ, float(n - 1), "tree_cardinality")

    arcs = _arcs(problem, vm)
    for k, flows in vm.commodity.items():
        tag = problem.blocks[k].id
        for key, _, _, capacity in arcs:
            model.add_constraint({flows[key]: 1.0, capacity: -1.0}, Sense.LE, 0.0,
                                 f"cap_{tag}_{key[0]}{key[1]}")
        for v in range(n):
            row: dict[int, float] = {}
            for key, tail, head, _ in arcs:
                if head == v:
                    row[flows[key]] = row.get(flows[key], 0.0) + 1.0
                if tail == v:
                    row[flows[key]] = row.get(flows[key], 0.0) - 1.0
            rhs = 1.0 if v == k else (-1.0 if v == root else 0.0)
            if row:
                model.add_constraint(row, Sense.EQ, rhs, f"conserve_{tag}_{problem.blocks[v].id}")
