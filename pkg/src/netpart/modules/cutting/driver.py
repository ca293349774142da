from __future__ import annotations

import sys
import time
from enum import Enum
from typing import Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.netpart.core.problem import PartitionProblem
from src.netpart.exception import ContractViolation, CustomException, InputError
from src.netpart.graph.components import connected_components
from src.netpart.logger import logging
from src.netpart.modules.constraints.builder import ModelMode, build_model
from src.netpart.modules.constraints.variables import VariableMap
from src.netpart.modules.cutting.candidate import CandidateSolution
from src.netpart.modules.cutting.cuts import Cut, CutKind, separate_cycles, separate_leader_violations
from src.netpart.modules.milp.branch_and_bound import solve_mip
from src.netpart.modules.milp.model import Constraint, MipModel, Sense


class SolveMode(str, Enum):
    FULL = "full"
    CP_RADIAL = "cp-radial"
    CP_GF = "cp-gf"
    CP_BOTH = "cp-both"

    @property
    def model_mode(self) -> ModelMode:
        return {
            SolveMode.FULL: ModelMode.FULL,
            SolveMode.CP_RADIAL: ModelMode.RELAX_RADIALITY,
            SolveMode.CP_GF: ModelMode.RELAX_LEADER,
            SolveMode.CP_BOTH: ModelMode.RELAX_BOTH,
        }[self]

    @property
    def separates_cycles(self) -> bool:
        return not self.model_mode.with_radiality

    @property
    def separates_leaders(self) -> bool:
        return not self.model_mode.with_leaders


class Driver(str, Enum):
    RESTART = "restart"
    CALLBACK = "callback"


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    INTERNAL_ERROR = "internal-error"


class CutRecord(BaseModel):
    """Serializable cut over block ids, switch ids and leader provider ids."""
    model_config = ConfigDict(frozen=True)

    kind: CutKind
    switch_terms: list[tuple[int, int]]
    block_terms: list[tuple[int, int]]
    leader_terms: list[tuple[str, int]]
    sense: Sense
    rhs: int

    @classmethod
    def from_cut(cls, problem: PartitionProblem, cut: Cut) -> "CutRecord":
        return cls(
            kind=cut.kind,
            switch_terms=list(cut.switch_terms),
            block_terms=[(problem.block_ids[p], c) for p, c in cut.block_terms],
            leader_terms=[(problem.eligible_leaders[k][1].id, c) for k, c in cut.leader_terms],
            sense=cut.sense,
            rhs=cut.rhs,
        )

    def to_cut(self, problem: PartitionProblem) -> Cut:
        leader_index = {g.id: k for k, (_, g) in enumerate(problem.eligible_leaders)}
        return Cut(
            kind=self.kind,
            switch_terms=tuple(tuple(t) for t in self.switch_terms),
            block_terms=tuple((problem.block_position(b), c) for b, c in self.block_terms),
            leader_terms=tuple((leader_index[g], c) for g, c in self.leader_terms),
            sense=self.sense,
            rhs=self.rhs,
            provenance=("record",),
        )


class ComponentReport(BaseModel):
    blocks: list[int]
    internal_switches: list[int]
    leaders: list[str]
    active: bool
    served_demand: float


class SolveReport(BaseModel):
    mode: SolveMode
    driver: Driver
    status: SolveStatus
    objective: float | None = None
    switch_state: list[int] = Field(default_factory=list)
    block_state: list[int] = Field(default_factory=list)
    leader_state: list[int] = Field(default_factory=list)
    topology: list[ComponentReport] = Field(default_factory=list)
    served_demand: dict[int, float] = Field(default_factory=dict)
    shed_demand: dict[int, float] = Field(default_factory=dict)
    iterations: int = 0
    cuts_by_kind: dict[str, int] = Field(default_factory=lambda: {k.value: 0 for k in CutKind})
    cuts: list[CutRecord] = Field(default_factory=list)
    candidate_history: list[list[int]] = Field(default_factory=list)
    node_count: int = 0
    wall_time: float = 0.0

    @property
    def radial_cuts(self) -> int:
        return self.cuts_by_kind.get(CutKind.CYCLE.value, 0)

    @property
    def leader_cuts(self) -> int:
        return self.cuts_by_kind.get(CutKind.LEADER_LB.value, 0) + self.cuts_by_kind.get(CutKind.LEADER_UB.value, 0)

    @property
    def total_cuts(self) -> int:
        return sum(self.cuts_by_kind.values())

    @property
    def served_total(self) -> float:
        return sum(self.served_demand.values())


class _CutSession:
    """Separators of a mode plus the cuts already handed to the solver."""

    def __init__(self, problem: PartitionProblem, vm: VariableMap, mode: SolveMode):
        self.problem = problem
        self.vm = vm
        self.mode = mode
        self.cuts: list[Cut] = []
        self.keys: set[tuple] = set()
        self.rounds = 0

    def violations(self, candidate: CandidateSolution) -> list[Cut]:
        """Cycle cuts when the candidate has a closed cycle, leader cuts only on radial candidates."""
        if self.mode.separates_cycles:
            cycles = separate_cycles(self.problem, candidate)
            if cycles:
                return cycles
        if self.mode.separates_leaders:
            return separate_leader_violations(self.problem, candidate)
        return []

    def separate(self, candidate: CandidateSolution) -> list[Cut]:
        found = self.violations(candidate)
        for cut in found:
            if cut.key in self.keys:
                raise ContractViolation(f"cut {cut.name} is already in the model but violated again")
        if found:
            self.rounds += 1
            self.cuts.extend(found)
            self.keys.update(cut.key for cut in found)
            kinds = {k.value: sum(1 for c in found if c.kind is k) for k in CutKind}
            logging.info(f"{self.mode.value}: cut round {self.rounds} adds {kinds}")
        return found

    def rows(self, cuts: list[Cut]) -> list[Constraint]:
        return [cut.to_constraint(self.vm) for cut in cuts]


def _topology_report(problem: PartitionProblem, candidate: CandidateSolution) -> list[ComponentReport]:
    selected = {problem.eligible_leaders[k][1].id for k, v in enumerate(candidate.leader_state) if v}
    report = []
    for component in connected_components(problem, candidate.switch_state):
        positions = [problem.block_position(b) for b in component.blocks]
        active = all(candidate.active(p) for p in positions)
        report.append(ComponentReport(
            blocks=list(component.blocks),
            internal_switches=list(component.internal_switches),
            leaders=[g for g in component.leaders if g in selected],
            active=active,
            served_demand=sum(problem.blocks[p].demand for p in positions) if active else 0.0,
        ))
    return report


def _final_report(problem: PartitionProblem, mode: SolveMode, driver: Driver, session: _CutSession,
                  candidate: CandidateSolution, objective: float, history: list[list[int]],
                  nodes: int, started: float, status: SolveStatus = SolveStatus.OPTIMAL) -> SolveReport:
    counts = {k.value: sum(1 for c in session.cuts if c.kind is k) for k in CutKind}
    served = {b.id: (b.demand if candidate.active(p) else 0.0) for p, b in enumerate(problem.blocks)}
    return SolveReport(
        mode=mode,
        driver=driver,
        status=status,
        objective=objective if status is SolveStatus.OPTIMAL else None,
        switch_state=list(candidate.switch_state.values),
        block_state=list(candidate.block_state),
        leader_state=list(candidate.leader_state),
        topology=_topology_report(problem, candidate),
        served_demand=served,
        shed_demand={b.id: b.demand - served[b.id] for b in problem.blocks},
        iterations=session.rounds,
        cuts_by_kind=counts,
        cuts=[CutRecord.from_cut(problem, c) for c in session.cuts],
        candidate_history=history,
        node_count=nodes,
        wall_time=time.perf_counter() - started,
    )


def _verify_final(problem: PartitionProblem, candidate: CandidateSolution) -> None:
    """Every returned topology is radial with 1..kappa leaders per active component."""
    leftover = separate_cycles(problem, candidate) + separate_leader_violations(problem, candidate)
    if leftover:
        raise ContractViolation(f"final topology still violates {len(leftover)} radiality or leader rows")


def _solve_restart(problem: PartitionProblem, model: MipModel, session: _CutSession,
                   mode: SolveMode, started: float) -> SolveReport:
    cap = 2 ** problem.switch_count
    seen: set[tuple[int, ...]] = set()
    history: list[list[int]] = []
    nodes = 0
    while True:
        solution = solve_mip(model)
        nodes += solution.node_count
        if not solution.is_optimal:
            return SolveReport(mode=mode, driver=Driver.RESTART, status=SolveStatus.INFEASIBLE,
                               iterations=session.rounds, node_count=nodes,
                               wall_time=time.perf_counter() - started)
        candidate = CandidateSolution.decode(problem, session.vm, solution.values)
        if candidate.binaries in seen:
            raise ContractViolation(f"candidate repeated after {session.rounds} cut rounds")
        seen.add(candidate.binaries)
        history.append(list(candidate.binaries))

        cuts = session.separate(candidate)
        if not cuts:
            _verify_final(problem, candidate)
            return _final_report(problem, mode, Driver.RESTART, session, candidate,
                                 solution.objective, history, nodes, started)
        if session.rounds > cap:
            logging.error(f"{mode.value}: restart driver exceeded {cap} iterations")
            return _final_report(problem, mode, Driver.RESTART, session, candidate, solution.objective,
                                 history, nodes, started, SolveStatus.INTERNAL_ERROR)
        model.constraints.extend(session.rows(cuts))


def _solve_callback(problem: PartitionProblem, model: MipModel, session: _CutSession,
                    mode: SolveMode, started: float) -> SolveReport:
    history: list[list[int]] = []

    def on_incumbent(values: np.ndarray) -> list[Constraint]:
        candidate = CandidateSolution.decode(problem, session.vm, values)
        cuts = session.separate(candidate)
        if cuts:
            history.append(list(candidate.binaries))
        return session.rows(cuts)

    callback = on_incumbent if (mode.separates_cycles or mode.separates_leaders) else None
    solution = solve_mip(model, callback)
    if not solution.is_optimal:
        return SolveReport(mode=mode, driver=Driver.CALLBACK, status=SolveStatus.INFEASIBLE,
                           iterations=session.rounds, node_count=solution.node_count,
                           wall_time=time.perf_counter() - started)
    candidate = CandidateSolution.decode(problem, session.vm, solution.values)
    _verify_final(problem, candidate)
    history.append(list(candidate.binaries))
    return _final_report(problem, mode, Driver.CALLBACK, session, candidate, solution.objective,
                         history, solution.node_count, started)


def solve_with_cuts(problem: PartitionProblem, mode: SolveMode | str = SolveMode.CP_BOTH,
                    driver: Driver | str = Driver.RESTART,
                    demands: Mapping[str, float] | None = None) -> SolveReport:
    """Solve `problem` in `mode`, enforcing relaxed families with cuts.

    The restart driver re-solves the relaxation after every cut round; the
    callback driver adds cuts at integral nodes of a single search tree.
    `demands` overrides consumer demands by id.
    """
    try:
        mode, driver = SolveMode(mode), Driver(driver)
    except ValueError as e:
        raise InputError(f"unknown solve mode or driver: {mode!r}, {driver!r}") from e
    try:
        if demands:
            problem = problem.with_demands(demands)
        started = time.perf_counter()
        model, vm = build_model(problem, mode.model_mode)
        session = _CutSession(problem, vm, mode)
        if driver is Driver.RESTART:
            report = _solve_restart(problem, model, session, mode, started)
        else:
            report = _solve_callback(problem, model, session, mode, started)
        logging.info(f"{mode.value}/{driver.value}: {report.status.value}, objective {report.objective}, "
                     f"{report.iterations} rounds, {report.total_cuts} cuts, {report.wall_time:.3f}s")
        return report
    except CustomException:
        raise
    except Exception as e:
        logging.error(f"Error in solve_with_cuts: {e}")
        raise CustomException(e, sys) from e
