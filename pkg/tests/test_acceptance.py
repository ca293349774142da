"""Long sweeps against the brute-force oracle. Run with `pytest -m slow`."""
import itertools

import numpy as np
import pytest

from src.netpart.graph import SwitchState, connected_components, is_radial
from src.netpart.modules.constraints import build_model
from src.netpart.modules.cutting import (
    CandidateSolution, ComponentSignature, Driver, SolveMode, linear_bounds_hold, nonlinear_bounds_hold,
    solve_with_cuts,
)
from src.netpart.modules.milp import LpStatus, solve_lp
from src.netpart.modules.oracle import check_configuration, enumerate_optimal, iter_feasible
from src.netpart.tools import ScenarioBatch, generate_instance, run_benchmark

pytestmark = pytest.mark.slow


def _random_instance(seed: int):
    rng = np.random.default_rng(seed)
    blocks = int(rng.integers(3, 9))
    switches = int(rng.integers(blocks - 1, min(10, blocks * (blocks - 1) // 2) + 1))
    return generate_instance(blocks, providers=int(rng.integers(1, 9)), seed=seed, switches=switches,
                             kappa=int(rng.integers(1, 3)))


@pytest.mark.parametrize("seed", range(100))
def test_every_mode_and_driver_reaches_the_oracle_optimum(seed):
    p = _random_instance(seed)
    oracle = enumerate_optimal(p)
    feasible = [(sw, bl, ldr) for sw, bl, ldr, _ in iter_feasible(p)]
    for mode, driver in itertools.product(SolveMode, Driver):
        report = solve_with_cuts(p, mode, driver)
        assert report.objective == pytest.approx(oracle.objective, abs=1e-6), (mode, driver)

        state = SwitchState(tuple(report.switch_state))
        assert is_radial(p, state)
        for component in connected_components(p, state):
            positions = [p.block_position(b) for b in component.blocks]
            assert len({report.block_state[q] for q in positions}) == 1
            if report.block_state[positions[0]]:
                leaders = sum(report.leader_state[k] for q in positions for k in p.leaders_by_block[q])
                assert 1 <= leaders <= p.kappa

        for record in report.cuts:
            cut = record.to_cut(p)
            assert all(cut.holds(*assignment) for assignment in feasible), (mode, driver, record)
        if driver is Driver.RESTART:
            history = [tuple(c) for c in report.candidate_history]
            assert len(history) == len(set(history))
            assert report.iterations <= 2 ** p.switch_count


@pytest.mark.parametrize("kappa", [1, 2])
def test_linear_leader_bounds_are_exact(kappa):
    external, internal, blocks = (0, 1, 2), (3, 4, 5), (0, 1, 2)
    for n_ex, n_in, n_bl in itertools.product(range(4), range(4), range(1, 4)):
        for n_ldr in range(kappa + 3):
            sig = ComponentSignature(external[:n_ex], internal[:n_in], blocks[:n_bl], tuple(range(n_ldr)))
            for sw in itertools.product((0, 1), repeat=6):
                if any(sw[s] for s in range(6) if s not in sig.external + sig.internal):
                    continue
                for bl in itertools.product((0, 1), repeat=n_bl):
                    for ldr in itertools.product((0, 1), repeat=n_ldr):
                        candidate = CandidateSolution(SwitchState(sw), bl + (0,) * (3 - n_bl), ldr)
                        assert linear_bounds_hold(sig, candidate, kappa) == \
                            nonlinear_bounds_hold(sig, candidate, kappa)


@pytest.mark.parametrize("seed", range(6))
def test_full_model_feasibility_matches_the_oracle_filter(seed):
    p = generate_instance(3 + seed % 2, providers=2, seed=seed, switches=3 + seed % 3)
    model, vm = build_model(p)
    L = len(p.eligible_leaders)
    for sw, bl, ldr in itertools.product(itertools.product((0, 1), repeat=p.switch_count),
                                         itertools.product((0, 1), repeat=p.block_count),
                                         itertools.product((0, 1), repeat=L)):
        fixed = model.copy()
        for cols, values in ((vm.switch, sw), (vm.block, bl), (vm.leader, ldr)):
            for col, value in zip(cols, values):
                fixed.fix(col, value)
        lp = solve_lp(fixed)
        expected = check_configuration(p, sw, bl, ldr)
        assert (lp.status is LpStatus.OPTIMAL) == (expected is not None), (sw, bl, ldr)
        if expected is not None:
            assert lp.objective == pytest.approx(expected, abs=1e-6)


def test_scenario_batch_report():
    base = generate_instance(8, seed=42, switches=9)
    batch = ScenarioBatch(base=base, samples=250, rho=0.2, seed=42)
    report = run_benchmark(base, ["full", "cp-radial", "cp-gf", "cp-both"], batch, workers=4)
    for name, results in report.modes.items():
        assert len(results.times) == 250
        assert report.aggregates[name].radial_cuts.avg == pytest.approx(np.mean(results.radial_cuts))
        assert report.aggregates[name].leader_cuts.max == max(results.leader_cuts)
    full = report.modes["full"].times
    both = report.modes["cp-both"].times
    assert report.speedups["cp-both"].median == pytest.approx(np.median(full) / np.median(both))


def test_cut_generation_is_not_slower_than_the_monolithic_model():
    base = generate_instance(8, seed=7, switches=12)
    batch = ScenarioBatch(base=base, samples=20, rho=0.2, seed=7)
    report = run_benchmark(base, ["full", "cp-both"], batch)
    assert np.median(report.modes["cp-both"].times) <= np.median(report.modes["full"].times)


@pytest.mark.parametrize("seed", range(1000, 1008))
def test_eight_block_networks_match_the_oracle(seed):
    p = generate_instance(8, seed=seed, switches=8 + seed % 3, kappa=2)
    oracle = enumerate_optimal(p)
    for driver in Driver:
        for mode in (SolveMode.FULL, SolveMode.CP_BOTH):
            report = solve_with_cuts(p, mode, driver)
            assert report.objective == pytest.approx(oracle.objective, abs=1e-6), (mode, driver)


def test_radial_cuts_do_not_add_leader_cuts():
    base = generate_instance(8, seed=42, switches=9)
    batch = ScenarioBatch(base=base, samples=250, rho=0.2, seed=1)
    report = run_benchmark(base, ["cp-gf", "cp-both"], batch, workers=4)
    assert report.aggregates["cp-both"].leader_cuts.avg <= report.aggregates["cp-gf"].leader_cuts.avg
