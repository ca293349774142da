"""Exhaustive ground truth for small instances.

Switch states are enumerated and filtered by radiality; every radial state
splits into components whose activity is chosen independently. Leader choices
never change the objective, so they are counted instead of enumerated, and
the dispatch LP of an active component is solved once per (blocks, internal
switches) pair.
"""
from __future__ import annotations

import itertools
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, Sequence

from pydantic import BaseModel, Field

from src.netpart.config import Config
from src.netpart.core.problem import PartitionProblem
from src.netpart.exception import CustomException, InputError, SolverFailure
from src.netpart.graph.components import connected_components
from src.netpart.graph.cycles import is_radial
from src.netpart.graph.state import SwitchState
from src.netpart.logger import logging
from src.netpart.modules.milp.model import MipModel, Sense
from src.netpart.modules.milp.simplex import LpStatus, solve_lp


class OracleConfiguration(BaseModel):
    switch_state: list[int]
    block_state: list[int]


class OracleResult(BaseModel):
    objective: float | None
    configurations: list[OracleConfiguration] = Field(default_factory=list)
    feasible_count: int = 0
    enumeration_size: int = 0

    @property
    def is_feasible(self) -> bool:
        return self.objective is not None


def check_dimensions(problem: PartitionProblem) -> None:
    limit = Config.oracle_max_dimension
    sizes = {"switches": problem.switch_count, "blocks": problem.block_count,
             "eligible leaders": len(problem.eligible_leaders)}
    for what, size in sizes.items():
        if size > limit:
            raise InputError(f"oracle refuses {size} {what}; the limit is {limit}")


def _leader_choices(available: int, kappa: int) -> int:
    return sum(math.comb(available, j) for j in range(1, min(kappa, available) + 1))


class _Dispatch:
    """Generation cost of serving one component, memoized by its structure."""

    def __init__(self, problem: PartitionProblem):
        self.problem = problem
        self.cache: dict[tuple[tuple[int, ...], tuple[int, ...]], float | None] = {}

    def cost(self, blocks: tuple[int, ...], internal: tuple[int, ...]) -> float | None:
        key = (blocks, internal)
        if key not in self.cache:
            self.cache[key] = self._solve(blocks, internal)
        return self.cache[key]

    def _solve(self, blocks: tuple[int, ...], internal: tuple[int, ...]) -> float | None:
        problem = self.problem
        members = set(blocks)
        model = MipModel(name="dispatch")
        weight = 1.0 - problem.nu
        gens = {k: model.add_variable(f"gen_{g.id}", lb=g.c_min, ub=g.c_max, obj=weight * g.cost)
                for k, (p, g) in enumerate(problem.providers) if p in members}
        flows = {s: model.add_variable(f"flow_{s}", lb=-problem.switches[s].r_max, ub=problem.switches[s].r_max)
                 for s in internal}
        for p in blocks:
            row: dict[int, float] = {}
            for s, col in flows.items():
                i, j = problem.endpoints[s]
                if i == p:
                    row[col] = row.get(col, 0.0) + 1.0
                if j == p:
                    row[col] = row.get(col, 0.0) - 1.0
            for k, col in gens.items():
                if problem.providers[k][0] == p:
                    row[col] = -1.0
            model.add_constraint(row, Sense.EQ, -problem.blocks[p].demand, f"balance_{p}")
        solution = solve_lp(model)
        if solution.status is LpStatus.INFEASIBLE:
            return None
        if solution.status is not LpStatus.OPTIMAL:
            raise SolverFailure(f"dispatch LP for blocks {blocks} ended with status {solution.status.value}")
        return solution.objective


def _structures(problem: PartitionProblem, state: SwitchState):
    """(positions, internal switches, eligible leaders, shed penalty) per component."""
    result = []
    for component in connected_components(problem, state):
        positions = tuple(sorted(problem.block_position(b) for b in component.blocks))
        leaders = sum(len(problem.leaders_by_block[p]) for p in positions)
        penalty = problem.nu * sum(problem.priority(p) for p in positions)
        result.append((positions, tuple(sorted(component.internal_switches)), leaders, penalty))
    return result


def check_configuration(problem: PartitionProblem, switch_state: Sequence[int], block_state: Sequence[int],
                        leader_state: Sequence[int], dispatch: _Dispatch | None = None) -> float | None:
    """Objective of one binary assignment, or None when it is infeasible."""
    if (len(switch_state) != problem.switch_count or len(block_state) != problem.block_count
            or len(leader_state) != len(problem.eligible_leaders)):
        raise InputError("assignment dimensions do not match the problem")
    state = SwitchState(tuple(int(v) for v in switch_state))
    for s in state.closed:
        i, j = problem.endpoints[s]
        if block_state[i] != block_state[j]:
            return None
    if not is_radial(problem, state):
        return None
    for k, (p, _) in enumerate(problem.eligible_leaders):
        if leader_state[k] and not block_state[p]:
            return None

    dispatch = dispatch or _Dispatch(problem)
    objective = 0.0
    for positions, internal, _, penalty in _structures(problem, state):
        if not block_state[positions[0]]:
            objective += penalty
            continue
        selected = sum(leader_state[k] for p in positions for k in problem.leaders_by_block[p])
        if not 1 <= selected <= problem.kappa:
            return None
        cost = dispatch.cost(positions, internal)
        if cost is None:
            return None
        objective += cost
    return objective


def _topologies(problem: PartitionProblem, states: Iterator[tuple[int, ...]], dispatch: _Dispatch):
    """Feasible (switch state, block state, objective, leader multiplicity) for the given switch states."""
    for values in states:
        state = SwitchState(values)
        if not is_radial(problem, state):
            continue
        parts = _structures(problem, state)
        options = []
        for positions, internal, leaders, penalty in parts:
            choices = [(0, penalty, 1)]
            choices_active = _leader_choices(leaders, problem.kappa)
            if choices_active:
                cost = dispatch.cost(positions, internal)
                if cost is not None:
                    choices.append((1, cost, choices_active))
            options.append(choices)
        for picks in itertools.product(*options):
            blocks = [0] * problem.block_count
            objective, multiplicity = 0.0, 1
            for (positions, *_), (active, value, count) in zip(parts, picks):
                for p in positions:
                    blocks[p] = active
                objective += value
                multiplicity *= count
            yield values, tuple(blocks), objective, multiplicity


def _scan(problem: PartitionProblem, start: int, stop: int) -> tuple[float | None, list[tuple], int]:
    m = problem.switch_count
    dispatch = _Dispatch(problem)
    states = (tuple((index >> s) & 1 for s in range(m)) for index in range(start, stop))
    best, argmin, count = None, [], 0
    tol = Config.objective_tol
    for switches, blocks, objective, multiplicity in _topologies(problem, states, dispatch):
        count += multiplicity
        if best is None or objective < best - tol:
            best, argmin = objective, [(switches, blocks)]
        elif abs(objective - best) <= tol:
            argmin.append((switches, blocks))
            best = min(best, objective)
    return best, argmin, count


def enumerate_optimal(problem: PartitionProblem, workers: int = 1) -> OracleResult:
    """Minimum objective over every feasible binary assignment, with all argmin topologies."""
    check_dimensions(problem)
    try:
        total = 2 ** problem.switch_count
        size = 2 ** (problem.switch_count + problem.block_count + len(problem.eligible_leaders))
        logging.info(f"oracle: {total} switch states, {size} binary assignments")
        if workers > 1 and total > 1:
            step = max(1, total // (workers * 4))
            bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_scan, itertools.repeat(problem), *zip(*bounds)))
        else:
            parts = [_scan(problem, 0, total)]

        tol = Config.objective_tol
        best = min((b for b, _, _ in parts if b is not None), default=None)
        configurations = []
        if best is not None:
            for b, argmin, _ in parts:
                if b is not None and abs(b - best) <= tol:
                    configurations += [OracleConfiguration(switch_state=list(sw), block_state=list(bl))
                                       for sw, bl in argmin]
        configurations.sort(key=lambda c: (c.switch_state, c.block_state))
        result = OracleResult(objective=best, configurations=configurations,
                              feasible_count=sum(c for _, _, c in parts), enumeration_size=size)
        logging.info(f"oracle: objective {best}, {result.feasible_count} feasible assignments, "
                     f"{len(configurations)} optimal topologies")
        return result
    except CustomException:
        raise
    except Exception as e:
        logging.error(f"Error in oracle enumeration: {e}")
        raise CustomException(e, sys) from e


def iter_feasible(problem: PartitionProblem) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], float]]:
    """Every feasible (switch, block, leader) assignment with its objective."""
    check_dimensions(problem)
    m = problem.switch_count
    dispatch = _Dispatch(problem)
    states = (tuple((index >> s) & 1 for s in range(m)) for index in range(2 ** m))
    leaders = problem.eligible_leaders
    for switches, blocks, objective, _ in _topologies(problem, states, dispatch):
        per_component = []
        for positions, *_ in _structures(problem, SwitchState(switches)):
            own = [k for p in positions for k in problem.leaders_by_block[p]]
            if not blocks[positions[0]]:
                per_component.append([()])
                continue
            per_component.append([subset for j in range(1, min(problem.kappa, len(own)) + 1)
                                  for subset in itertools.combinations(own, j)])
        for subsets in itertools.product(*per_component):
            chosen = {k for subset in subsets for k in subset}
            yield switches, blocks, tuple(int(k in chosen) for k in range(len(leaders))), objective
