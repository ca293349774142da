import itertools

import pytest

from src.netpart.exception import ContractViolation
from src.netpart.graph import SwitchState, connected_components, is_radial
from src.netpart.modules.cutting import (
    CandidateSolution, ComponentSignature, CutKind, evaluate_phi, linear_bounds_hold, nonlinear_bounds_hold,
    separate_cycles, separate_leader_violations,
)
from src.netpart.modules.cutting.cuts import _require_violated, cycle_cut, leader_lower_cut, leader_upper_cut
from tests.helpers import K4, TRIANGLE, bare, block, problem


def _candidate(switches, blocks, leaders=()):
    return CandidateSolution(SwitchState(tuple(switches)), tuple(blocks), tuple(leaders))


@pytest.fixture
def leader_pair():
    return problem([block(1, [(0.0, 5.0, True)], [1.0]), block(2, [(0.0, 5.0, True)], [1.0])], [(1, 2)])


def test_triangle_cycle_cut():
    p = bare(3, TRIANGLE)
    cuts = separate_cycles(p, _candidate((1, 1, 1), (0, 0, 0)))
    assert len(cuts) == 1
    cut = cuts[0]
    assert cut.kind is CutKind.CYCLE
    assert cut.switch_terms == ((0, 1), (1, 1), (2, 1))
    assert cut.rhs == 2
    for state in itertools.product((0, 1), repeat=3):
        assert cut.holds(state, (0, 0, 0), ()) == is_radial(p, SwitchState(state))


def test_k4_cycle_cuts_keep_every_radial_state():
    p = bare(4, K4)
    cuts = separate_cycles(p, _candidate((1,) * 6, (1,) * 4))
    assert len(cuts) == 3
    for state in itertools.product((0, 1), repeat=6):
        if is_radial(p, SwitchState(state)):
            assert all(c.holds(state, (1,) * 4, ()) for c in cuts)


def test_radial_candidate_yields_no_cycle_cut():
    assert separate_cycles(bare(4, K4), _candidate((1, 1, 1, 0, 0, 0), (1,) * 4)) == []


def test_lower_cut_for_a_leaderless_component(leader_pair):
    cuts = separate_leader_violations(leader_pair, _candidate((0,), (1, 1), (0, 1)))
    assert len(cuts) == 1
    cut = cuts[0]
    assert cut.kind is CutKind.LEADER_LB
    # ldr0 + z_sw0 - z_bl0 >= 0
    assert cut.switch_terms == ((0, 1),)
    assert cut.block_terms == ((0, -1),)
    assert cut.leader_terms == ((0, 1),)
    assert cut.rhs == 0
    assert cut.holds((1,), (1, 1), (0, 0))
    assert cut.holds((0,), (0, 1), (0, 1))


def test_upper_cut_when_a_component_has_too_many_leaders(leader_pair):
    candidate = _candidate((1,), (1, 1), (1, 1))
    cuts = separate_leader_violations(leader_pair, candidate)
    assert [c.kind for c in cuts] == [CutKind.LEADER_UB]
    cut = cuts[0]
    # ldr0 + ldr1 + z_sw0 + z_bl0 + z_bl1 <= 1 + 1 * (1 + 2)
    assert cut.rhs == 4
    assert cut.lhs(*[candidate.switch_state.values, candidate.block_state, candidate.leader_state]) == 5
    assert cut.holds((1,), (1, 1), (1, 0))
    assert cut.holds((0,), (1, 1), (1, 1))
    assert separate_leader_violations(leader_pair, candidate, kappa=2) == []


def test_inactive_components_are_not_separated(leader_pair):
    assert separate_leader_violations(leader_pair, _candidate((0,), (0, 0), (0, 0))) == []


def test_phi(leader_pair):
    component = connected_components(leader_pair, SwitchState((1,))).components[0]
    signature = ComponentSignature.of(leader_pair, component)
    assert signature == ComponentSignature(external=(), internal=(0,), blocks=(0, 1), leaders=(0, 1))
    assert evaluate_phi(_candidate((1,), (1, 1), (0, 0)), signature) == 1
    assert evaluate_phi(_candidate((0,), (1, 1), (0, 0)), signature) == 0
    assert evaluate_phi(_candidate((1,), (1, 0), (0, 0)), signature) == 0


def test_upper_cut_needs_more_leaders_than_the_limit():
    sig = ComponentSignature(external=(1,), internal=(0,), blocks=(0, 1), leaders=(0, 1, 2))
    cut = leader_upper_cut(sig, kappa=2)
    assert cut.switch_terms == ((1, -1), (0, 1))
    assert cut.rhs == 2 + 1 * 3
    assert leader_lower_cut(sig).rhs == 1 - 1 - 2


@pytest.mark.parametrize("kappa", [1, 2, 3])
def test_linear_cuts_match_product_form_on_every_assignment(kappa):
    """Exhaustive check over a triangle with three eligible leaders."""
    p = problem([block(1, [(0.0, 1.0, True), (0.0, 1.0, True)]), block(2), block(3, [(0.0, 1.0, True)])],
                TRIANGLE, kappa=kappa)
    signatures = {ComponentSignature.of(p, c)
                  for state in itertools.product((0, 1), repeat=3)
                  for c in connected_components(p, SwitchState(state))}
    assert len(signatures) > 5
    for sw, bl, ldr in itertools.product(itertools.product((0, 1), repeat=3),
                                         itertools.product((0, 1), repeat=3),
                                         itertools.product((0, 1), repeat=3)):
        candidate = _candidate(sw, bl, ldr)
        for sig in signatures:
            assert linear_bounds_hold(sig, candidate, kappa) == nonlinear_bounds_hold(sig, candidate, kappa)


def test_separators_reject_cuts_that_do_not_cut():
    cut = cycle_cut((0, 1, 2))
    with pytest.raises(ContractViolation):
        _require_violated([cut], _candidate((1, 1, 0), (0, 0, 0)))


def test_cut_names_are_stable(leader_pair):
    cut = separate_leader_violations(leader_pair, _candidate((1,), (1, 1), (1, 1)))[0]
    assert cut.name == "leader-ub_0_1_ex"
    assert cycle_cut((2, 0, 1)).name == "cycle_0_1_2"
    assert cycle_cut((2, 0, 1)).key == cycle_cut((0, 1, 2)).key
