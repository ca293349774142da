from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from src.netpart.config import Config
from src.netpart.exception import ContractViolation, SolverFailure
from src.netpart.logger import logging
from src.netpart.modules.milp.model import Constraint, MipModel, append_rows
from src.netpart.modules.milp.simplex import LpStatus, solve_standard_form

# Given an integral candidate (full value vector, binaries rounded), return
# the rows it violates; an empty sequence accepts the candidate.
IncumbentCallback = Callable[[np.ndarray], Sequence[Constraint]]


class MipStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass
class MipSolution:
    status: MipStatus
    values: np.ndarray
    objective: float
    node_count: int = 0
    cut_count: int = 0
    cuts: list[Constraint] = field(default_factory=list)
    bound_history: list[float] = field(default_factory=list)
    lp_iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status is MipStatus.OPTIMAL


@dataclass
class _Node:
    bound: float
    depth: int
    lb: np.ndarray
    ub: np.ndarray


def _branching_variable(values: np.ndarray, binaries: np.ndarray) -> int | None:
    """Most fractional binary, ties broken by lowest variable id."""
    x = values[binaries]
    distance = np.minimum(x - np.floor(x), np.ceil(x) - x)
    fractional = distance > Config.integrality_tol
    if not fractional.any():
        return None
    score = np.where(fractional, np.minimum(x, 1.0 - x), -1.0)
    return int(binaries[int(np.argmax(score))])


def solve_mip(model: MipModel, callback: IncumbentCallback | None = None,
              node_limit: int | None = None) -> MipSolution:
    """Branch and bound over the binaries of `model`.

    Nodes are explored best-bound first with depth-first plunging. Every
    integral node is offered to `callback`; returned rows must be violated by
    the candidate, are added globally and the node is solved again.
    """
    form = model.to_standard_form()
    binaries = model.binary_indices
    node_limit = node_limit or Config.node_limit
    obj_tol = Config.objective_tol

    incumbent: np.ndarray | None = None
    incumbent_obj = np.inf
    cuts: list[Constraint] = []
    bound_history: list[float] = []
    heap: list[tuple[float, int, _Node]] = []
    order = itertools.count()
    current: _Node | None = _Node(-np.inf, 0, form.lb.copy(), form.ub.copy())
    nodes = 0
    lp_iterations = 0

    while current is not None or heap:
        if current is None:
            _, _, current = heapq.heappop(heap)
        node, current = current, None
        open_bound = min(node.bound, heap[0][0] if heap else np.inf)
        bound_history.append(float(min(open_bound, incumbent_obj)))
        if node.bound >= incumbent_obj - obj_tol:
            continue
        nodes += 1
        if nodes > node_limit:
            raise SolverFailure(f"branch and bound exceeded the node limit of {node_limit}")

        while True:
            lp = solve_standard_form(form, node.lb, node.ub)
            lp_iterations += lp.iterations
            if lp.status is LpStatus.INFEASIBLE:
                break
            if lp.status is not LpStatus.OPTIMAL:
                raise SolverFailure(f"LP relaxation at depth {node.depth} ended with status {lp.status.value}")
            if lp.objective >= incumbent_obj - obj_tol:
                break

            k = _branching_variable(lp.values, binaries)
            if k is None:
                candidate = lp.values.copy()
                candidate[binaries] = np.round(candidate[binaries])
                rows = list(callback(candidate)) if callback is not None else []
                if rows:
                    for row in rows:
                        if row.violation(candidate) <= Config.feasibility_tol:
                            raise ContractViolation(
                                f"callback returned row {row.name or '<unnamed>'} not violated by the candidate")
                    form = append_rows(form, rows)
                    cuts.extend(rows)
                    continue
                candidate_obj = float(form.c @ candidate + form.offset)
                if candidate_obj < incumbent_obj:
                    incumbent, incumbent_obj = candidate, candidate_obj
                break

            child_bound = max(node.bound, lp.objective)
            down = _Node(child_bound, node.depth + 1, node.lb.copy(), node.ub.copy())
            down.ub[k] = 0.0
            up = _Node(child_bound, node.depth + 1, node.lb.copy(), node.ub.copy())
            up.lb[k] = 1.0
            first, second = (up, down) if lp.values[k] >= 0.5 else (down, up)
            heapq.heappush(heap, (second.bound, next(order), second))
            current = first
            break

    bound_history.append(float(incumbent_obj))
    status = MipStatus.OPTIMAL if incumbent is not None else MipStatus.INFEASIBLE
    logging.info(f"{model.name}: branch and bound {status.value} after {nodes} nodes, "
                 f"{len(cuts)} callback rows, objective {incumbent_obj:.6g}")
    return MipSolution(
        status=status,
        values=incumbent if incumbent is not None else np.zeros(model.num_variables),
        objective=float(incumbent_obj),
        node_count=nodes,
        cut_count=len(cuts),
        cuts=cuts,
        bound_history=bound_history,
        lp_iterations=lp_iterations,
    )
