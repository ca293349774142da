from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from src.netpart.core.problem import PartitionProblem
from src.netpart.exception import ContractViolation
from src.netpart.graph.components import connected_components
from src.netpart.graph.cycles import detect_cycles
from src.netpart.graph.state import Component
from src.netpart.modules.constraints.variables import VariableMap
from src.netpart.modules.cutting.candidate import CandidateSolution
from src.netpart.modules.milp.model import Constraint, Sense


class CutKind(str, Enum):
    CYCLE = "cycle"
    LEADER_LB = "leader-lb"
    LEADER_UB = "leader-ub"

    @property
    def is_leader(self) -> bool:
        return self is not CutKind.CYCLE


@dataclass(frozen=True)
class ComponentSignature:
    """Positions of a component's open boundary switches, closed internal switches, blocks and leaders."""
    external: tuple[int, ...]
    internal: tuple[int, ...]
    blocks: tuple[int, ...]
    leaders: tuple[int, ...]

    @classmethod
    def of(cls, problem: PartitionProblem, component: Component) -> "ComponentSignature":
        blocks = tuple(sorted(problem.block_position(b) for b in component.blocks))
        leaders = tuple(k for p in blocks for k in problem.leaders_by_block[p])
        return cls(tuple(sorted(component.external_switches)), tuple(sorted(component.internal_switches)),
                   blocks, leaders)


@dataclass(frozen=True)
class Cut:
    """Integer inequality over switch, block and leader binaries.

    Terms are (position, coefficient) pairs so the row can be evaluated on
    any configuration and mapped onto any model through a VariableMap.
    """
    kind: CutKind
    switch_terms: tuple[tuple[int, int], ...]
    block_terms: tuple[tuple[int, int], ...]
    leader_terms: tuple[tuple[int, int], ...]
    sense: Sense
    rhs: int
    provenance: tuple

    @property
    def key(self) -> tuple:
        return (self.kind.value, self.provenance)

    def lhs(self, switches: Sequence[int], blocks: Sequence[int], leaders: Sequence[int]) -> int:
        return (sum(c * int(switches[s]) for s, c in self.switch_terms)
                + sum(c * int(blocks[p]) for p, c in self.block_terms)
                + sum(c * int(leaders[k]) for k, c in self.leader_terms))

    def holds(self, switches: Sequence[int], blocks: Sequence[int], leaders: Sequence[int]) -> bool:
        value = self.lhs(switches, blocks, leaders)
        return value <= self.rhs if self.sense is Sense.LE else value >= self.rhs

    def holds_for(self, candidate: CandidateSolution) -> bool:
        return self.holds(candidate.switch_state.values, candidate.block_state, candidate.leader_state)

    def to_constraint(self, vm: VariableMap) -> Constraint:
        coefficients: dict[int, float] = {}
        for cols, terms in ((vm.switch, self.switch_terms), (vm.block, self.block_terms),
                            (vm.leader, self.leader_terms)):
            for pos, coef in terms:
                coefficients[cols[pos]] = coefficients.get(cols[pos], 0.0) + float(coef)
        return Constraint(coefficients, self.sense, float(self.rhs), self.name)

    @property
    def name(self) -> str:
        if self.kind is CutKind.CYCLE:
            return "cycle_" + "_".join(map(str, self.provenance))
        external, internal, blocks = self.provenance
        return f"{self.kind.value}_" + "_".join(map(str, blocks)) + "_ex" + "_".join(map(str, external))


def cycle_cut(cycle: Sequence[int]) -> Cut:
    switches = tuple(sorted(cycle))
    return Cut(CutKind.CYCLE, tuple((s, 1) for s in switches), (), (), Sense.LE, len(switches) - 1, switches)


def leader_lower_cut(signature: ComponentSignature) -> Cut:
    """sum(ldr) + sum(z_ex) - sum(z_in) - sum(z_bl) >= 1 - |in| - |bl|."""
    return Cut(
        CutKind.LEADER_LB,
        tuple((s, 1) for s in signature.external) + tuple((s, -1) for s in signature.internal),
        tuple((p, -1) for p in signature.blocks),
        tuple((k, 1) for k in signature.leaders),
        Sense.GE,
        1 - len(signature.internal) - len(signature.blocks),
        (signature.external, signature.internal, signature.blocks),
    )


def leader_upper_cut(signature: ComponentSignature, kappa: int) -> Cut:
    """sum(ldr) <= kappa + (L - kappa) * (number of indicator terms not at their isolated value)."""
    slack = len(signature.leaders) - kappa
    return Cut(
        CutKind.LEADER_UB,
        tuple((s, -slack) for s in signature.external) + tuple((s, slack) for s in signature.internal),
        tuple((p, slack) for p in signature.blocks),
        tuple((k, 1) for k in signature.leaders),
        Sense.LE,
        kappa + slack * (len(signature.internal) + len(signature.blocks)),
        (signature.external, signature.internal, signature.blocks),
    )


def evaluate_phi(candidate: CandidateSolution, signature: ComponentSignature) -> int:
    """1 iff every external switch is open, every internal switch closed and every block active."""
    sw = candidate.switch_state.values
    return int(all(sw[s] == 0 for s in signature.external)
               and all(sw[s] == 1 for s in signature.internal)
               and all(candidate.block_state[p] == 1 for p in signature.blocks))


def _require_violated(cuts: list[Cut], candidate: CandidateSolution) -> list[Cut]:
    for cut in cuts:
        if cut.holds_for(candidate):
            raise ContractViolation(f"{cut.kind.value} cut {cut.provenance} does not cut off its candidate")
    return cuts


def separate_cycles(problem: PartitionProblem, candidate: CandidateSolution) -> list[Cut]:
    """One cut per fundamental cycle of the closed switches."""
    cycles = detect_cycles(problem, candidate.switch_state)
    return _require_violated([cycle_cut(c) for c in cycles], candidate)


def separate_leader_violations(problem: PartitionProblem, candidate: CandidateSolution,
                               kappa: int | None = None) -> list[Cut]:
    """Lower or upper leader cut for each active component outside 1..kappa leaders."""
    kappa = problem.kappa if kappa is None else kappa
    cuts = []
    for component in connected_components(problem, candidate.switch_state):
        signature = ComponentSignature.of(problem, component)
        if not all(candidate.active(p) for p in signature.blocks):
            continue
        leaders = sum(candidate.leader_state[k] for k in signature.leaders)
        if leaders == 0:
            cuts.append(leader_lower_cut(signature))
        elif leaders > kappa:
            cuts.append(leader_upper_cut(signature, kappa))
    return _require_violated(cuts, candidate)


def nonlinear_bounds_hold(signature: ComponentSignature, candidate: CandidateSolution, kappa: int) -> bool:
    """Leader bounds in product form: 1 <= sum(ldr) <= kappa whenever phi is 1."""
    if not evaluate_phi(candidate, signature):
        return True
    leaders = sum(candidate.leader_state[k] for k in signature.leaders)
    return 1 <= leaders <= kappa


def linear_bounds_hold(signature: ComponentSignature, candidate: CandidateSolution, kappa: int) -> bool:
    cuts = [leader_lower_cut(signature)]
    if len(signature.leaders) > kappa:
        cuts.append(leader_upper_cut(signature, kappa))
    return all(cut.holds_for(candidate) for cut in cuts)
