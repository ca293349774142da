from __future__ import annotations

from src.netpart.core.problem import PartitionProblem
from src.netpart.modules.constraints.variables import VariableMap
from src.netpart.modules.milp.model import MipModel, Sense


def add_core_constraints(model: MipModel, problem: PartitionProblem, vm: VariableMap) -> None:
    """Resource balance, generation capacity, flow limits, block status and leader gating."""
    # balance: outflow - inflow = generation - demand * z_bl
    for p, block in enumerate(problem.blocks):
        row: dict[int, float] = {}
        for s in problem.incident_switches[p]:
            i, j = problem.endpoints[s]
            row[vm.flow[s]] = row.get(vm.flow[s], 0.0) + (1.0 if i == p else -1.0)
        for k, (q, _) in enumerate(problem.providers):
            if q == p:
                row[vm.generation[k]] = -1.0
        row[vm.block[p]] = block.demand
        model.add_constraint(row, Sense.EQ, 0.0, f"balance_{block.id}")

    for k, (p, g) in enumerate(problem.providers):
        gen, zbl = vm.generation[k], vm.block[p]
        model.add_constraint({gen: 1.0, zbl: -g.c_min}, Sense.GE, 0.0, f"gen_min_{g.id}")
        model.add_constraint({gen: 1.0, zbl: -g.c_max}, Sense.LE, 0.0, f"gen_max_{g.id}")

    for s, switch in enumerate(problem.switches):
        flow, zsw = vm.flow[s], vm.switch[s]
        model.add_constraint({flow: 1.0, zsw: -switch.r_max}, Sense.LE, 0.0, f"flow_up_{s}")
        model.add_constraint({flow: -1.0, zsw: -switch.r_max}, Sense.LE, 0.0, f"flow_down_{s}")

    # a closed switch joins blocks of equal status
    for s, (i, j) in enumerate(problem.endpoints):
        zi, zj, zsw = vm.block[i], vm.block[j], vm.switch[s]
        model.add_constraint({zi: 1.0, zj: -1.0, zsw: 1.0}, Sense.LE, 1.0, f"status_a_{s}")
        model.add_constraint({zi: -1.0, zj: 1.0, zsw: 1.0}, Sense.LE, 1.0, f"status_b_{s}")

    for k, (p, g) in enumerate(problem.eligible_leaders):
        model.add_constraint({vm.leader[k]: 1.0, vm.block[p]: -1.0}, Sense.LE, 0.0, f"leader_gate_{g.id}")
