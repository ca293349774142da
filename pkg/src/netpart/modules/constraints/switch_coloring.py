"""Leader rows that color closed switches by block.

Each block may color the closed switches it reaches: a colored switch needs
between 1 and kappa leaders in the coloring block, colors agree across every
pair of closed switches, and a unit flow from each block to every other one
(over closed switches or through a virtual edge) decides which switches a
block may reach. Isolated active blocks carry their own leader bounds.

These rows do not match the leader requirement on every assignment:
  - two islands that each hold a leader and a closed switch are rejected,
    because every closed switch must be colored by every leader block;
  - nothing adds up leaders across the blocks of one component, so two
    blocks with one leader each may share a closed switch when kappa is 1.
`build_model` therefore uses the component coloring of `leaders.py` unless
this family is asked for explicitly.
"""
from __future__ import annotations

import itertools

from src.netpart.core.problem import PartitionProblem
from src.netpart.modules.constraints.variables import VariableMap
from src.netpart.modules.milp.model import MipModel, Sense, VarKind


def allocate_switch_coloring_variables(model: MipModel, problem: PartitionProblem, vm: VariableMap) -> None:
    n = problem.block_count
    ids = problem.block_ids
    capacity = float(max(n - 1, 1))
    for p in range(n):
        for s in range(problem.switch_count):
            vm.switch_color[(p, s)] = model.add_variable(f"swcolor_{ids[p]}_{s}", VarKind.BINARY)
        for s in range(problem.switch_count):
            vm.reach_flow[(p, s)] = model.add_variable(f"reach_{ids[p]}_{s}", lb=-capacity, ub=capacity)
        for q in range(n):
            if q != p:
                vm.virtual_flow[(p, q)] = model.add_variable(f"virtual_{ids[p]}_{ids[q]}")


def _leaders(problem: PartitionProblem, vm: VariableMap, p: int) -> dict[int, float]:
    return {vm.leader[k]: 1.0 for k in problem.leaders_by_block[p]}


def add_switch_coloring_constraints(model: MipModel, problem: PartitionProblem, vm: VariableMap) -> None:
    n = problem.block_count
    ids = problem.block_ids
    kappa = float(problem.kappa)
    capacity = float(max(n - 1, 1))

    for p in range(n):
        leaders = _leaders(problem, vm, p)
        for s in range(problem.switch_count):
            y, zsw = vm.switch_color[(p, s)], vm.switch[s]
            tag = f"{ids[p]}_{s}"
            model.add_constraint({y: 1.0, zsw: -1.0}, Sense.LE, 0.0, f"coloring_assign_{tag}")
            model.add_constraint({y: 1.0, **{z: -1.0 for z in leaders}}, Sense.LE, 0.0, f"coloring_leader_{tag}")
            # y - (1 - zsw) <= leaders <= kappa * (y + 1 - zsw)
            model.add_constraint({y: 1.0, zsw: 1.0, **{z: -1.0 for z in leaders}}, Sense.LE, 1.0,
                                 f"participation_min_{tag}")
            model.add_constraint({**leaders, y: -kappa, zsw: kappa}, Sense.LE, kappa, f"participation_max_{tag}")

    for p in range(n):
        for s, t in itertools.combinations(range(problem.switch_count), 2):
            ys, yt = vm.switch_color[(p, s)], vm.switch_color[(p, t)]
            zs, zt = vm.switch[s], vm.switch[t]
            model.add_constraint({yt: 1.0, ys: -1.0, zs: 1.0, zt: 1.0}, Sense.LE, 2.0,
                                 f"coloring_sync_a_{ids[p]}_{s}_{t}")
            model.add_constraint({ys: 1.0, yt: -1.0, zs: 1.0, zt: 1.0}, Sense.LE, 2.0,
                                 f"coloring_sync_b_{ids[p]}_{s}_{t}")

    for p in range(n):
        row = {vm.block[p]: 1.0, **{z: -1.0 for z in _leaders(problem, vm, p)}}
        for s in problem.incident_switches[p]:
            for q in range(n):
                row[vm.switch_color[(q, s)]] = -1.0
        model.add_constraint(row, Sense.LE, 0.0, f"coloring_activation_{ids[p]}")

    for (p, s), eta in vm.reach_flow.items():
        zsw = vm.switch[s]
        model.add_constraint({eta: 1.0, zsw: -capacity}, Sense.LE, 0.0, f"reach_up_{ids[p]}_{s}")
        model.add_constraint({eta: -1.0, zsw: -capacity}, Sense.LE, 0.0, f"reach_down_{ids[p]}_{s}")

    for p in range(n):
        for v in range(n):
            row: dict[int, float] = {}
            for s, (i, j) in enumerate(problem.endpoints):
                eta = vm.reach_flow[(p, s)]
                if i == v:
                    row[eta] = row.get(eta, 0.0) + 1.0
                if j == v:
                    row[eta] = row.get(eta, 0.0) - 1.0
            if v == p:
                row.update({vm.virtual_flow[(p, q)]: 1.0 for q in range(n) if q != p})
                model.add_constraint(row, Sense.EQ, float(n - 1), f"reach_source_{ids[p]}")
            else:
                row[vm.virtual_flow[(p, v)]] = -1.0
                model.add_constraint(row, Sense.EQ, -1.0, f"reach_sink_{ids[p]}_{ids[v]}")

    # a block may only color switches next to blocks its flow reaches
    for (p, q), xi in vm.virtual_flow.items():
        for s in problem.incident_switches[q]:
            model.add_constraint({vm.switch_color[(p, s)]: 1.0, xi: 1.0}, Sense.LE, 1.0,
                                 f"coloring_reach_{ids[p]}_{ids[q]}_{s}")

    for p in range(n):
        leaders = _leaders(problem, vm, p)
        row = {vm.block[p]: 1.0, **{z: -1.0 for z in leaders}}
        row.update({vm.switch[s]: -1.0 for s in problem.incident_switches[p]})
        model.add_constraint(row, Sense.LE, 0.0, f"block_leader_min_{ids[p]}")
        model.add_constraint({**leaders, vm.block[p]: -kappa}, Sense.LE, 0.0, f"block_leader_max_{ids[p]}")
