"""Leader allocation family.

Every active block takes one color, the position of the lowest block of its
component. Colors agree across closed switches, and a flow over closed
switches from each representative reaches every block of its color, which
pins the color to the component. Leaders are shared onto the color of their
block and each color hosts between 1 and kappa of them.
"""
from __future__ import annotations

from src.netpart.core.problem import PartitionProblem
from src.netpart.modules.constraints.variables import VariableMap
from src.netpart.modules.milp.model import MipModel, Sense


def allocate_leader_variables(model: MipModel, problem: PartitionProblem, vm: VariableMap) -> None:
    n = problem.block_count
    ids = problem.block_ids
    for p in range(n):
        for c in range(p + 1):
            vm.color[(p, c)] = model.add_variable(f"color_{ids[p]}_{ids[c]}")
    span = float(max(n - 1, 1))
    for c in range(n):
        for s, (i, j) in enumerate(problem.endpoints):
            if i >= c and j >= c:
                vm.color_flow[(s, c)] = model.add_variable(f"eta_{s}_{ids[c]}", lb=-span, ub=span)
    for k, (p, g) in enumerate(problem.eligible_leaders):
        for c in range(p + 1):
            vm.share[(k, c)] = model.add_variable(f"share_{g.id}_{ids[c]}")


def add_leader_constraints(model: MipModel, problem: PartitionProblem, vm: VariableMap) -> None:
    n = problem.block_count
    ids = problem.block_ids
    kappa = float(problem.kappa)
    span = float(max(n - 1, 1))

    for p in range(n):
        row = {vm.color[(p, c)]: 1.0 for c in range(p + 1)}
        row[vm.block[p]] = -1.0
        model.add_constraint(row, Sense.EQ, 0.0, f"color_assign_{ids[p]}")
        for c in range(p):
            model.add_constraint({vm.color[(p, c)]: 1.0, vm.color[(c, c)]: -1.0}, Sense.LE, 0.0,
                                 f"color_rep_{ids[p]}_{ids[c]}")

    for s, (i, j) in enumerate(problem.endpoints):
        zsw = vm.switch[s]
        for c in range(max(i, j) + 1):
            ci, cj = vm.color.get((i, c)), vm.color.get((j, c))
            for a, b, tag in ((ci, cj, "a"), (cj, ci, "b")):
                row = {zsw: 1.0}
                if a is not None:
                    row[a] = 1.0
                if b is not None:
                    row[b] = -1.0
                model.add_constraint(row, Sense.LE, 1.0, f"color_sync_{tag}_{s}_{ids[c]}")

    for (s, c), eta in vm.color_flow.items():
        zsw = vm.switch[s]
        model.add_constraint({eta: 1.0, zsw: -span}, Sense.LE, 0.0, f"eta_up_{s}_{ids[c]}")
        model.add_constraint({eta: -1.0, zsw: -span}, Sense.LE, 0.0, f"eta_down_{s}_{ids[c]}")

    for c in range(n):
        for v in range(c, n):
            row: dict[int, float] = {}
            for s, (i, j) in enumerate(problem.endpoints):
                eta = vm.color_flow.get((s, c))
                if eta is None:
                    continue
                if j == v:
                    row[eta] = row.get(eta, 0.0) + 1.0
                if i == v:
                    row[eta] = row.get(eta, 0.0) - 1.0
            if v == c:
                for other in range(c + 1, n):
                    row[vm.color[(other, c)]] = 1.0
            else:
                row[vm.color[(v, c)]] = -1.0
            model.add_constraint(row, Sense.EQ, 0.0, f"color_flow_{ids[c]}_{ids[v]}")

    for k, (p, g) in enumerate(problem.eligible_leaders):
        for c in range(p + 1):
            model.add_constraint({vm.share[(k, c)]: 1.0, vm.color[(p, c)]: -1.0}, Sense.LE, 0.0,
                                 f"share_color_{g.id}_{ids[c]}")
        row = {vm.share[(k, c)]: 1.0 for c in range(p + 1)}
        row[vm.leader[k]] = -1.0
        model.add_constraint(row, Sense.EQ, 0.0, f"share_total_{g.id}")

    for c in range(n):
        shares = {col: 1.0 for (k, cc), col in vm.share.items() if cc == c}
        rep = vm.color[(c, c)]
        model.add_constraint({**shares, rep: -1.0}, Sense.GE, 0.0, f"color_leader_min_{ids[c]}")
        model.add_constraint({**shares, rep: -kappa}, Sense.LE, 0.0, f"color_leader_max_{ids[c]}")

    # isolated active blocks need their own leader; no block exceeds kappa
    for p in range(n):
        own = [vm.leader[k] for k in problem.leaders_by_block[p]]
        row = {vm.block[p]: 1.0}
        row.update({vm.switch[s]: -1.0 for s in problem.incident_switches[p]})
        row.update({z: -1.0 for z in own})
        model.add_constraint(row, Sense.LE, 0.0, f"block_leader_min_{ids[p]}")
        if own:
            row = {z: 1.0 for z in own}
            row[vm.block[p]] = -kappa
            model.add_constraint(row, Sense.LE, 0.0, f"block_leader_max_{ids[p]}")
