import pytest
from pydantic import ValidationError

from src.netpart.exception import InputError
from src.netpart.graph import SwitchState, connected_components
from src.netpart.tools import ScenarioBatch, generate_instance


def test_full_density_on_three_blocks_is_a_triangle():
    p = generate_instance(3, density=1.0)
    assert sorted(tuple(sorted((s.from_block, s.to_block))) for s in p.switches) == [(1, 2), (1, 3), (2, 3)]


def test_same_seed_same_instance():
    assert generate_instance(6, seed=5) == generate_instance(6, seed=5)
    assert generate_instance(6, seed=5) != generate_instance(6, seed=6)


def test_invariants_over_many_seeds():
    capacity_short, capacity_ample = 0, 0
    for seed in range(100):
        p = generate_instance(8, seed=seed)
        assert p.block_count == 8
        assert p.eligible_leaders
        closed = SwitchState((1,) * p.switch_count)
        assert len(connected_components(p, closed)) == 1
        capacity = sum(g.c_max for _, g in p.providers)
        if capacity < p.total_demand:
            capacity_short += 1
        else:
            capacity_ample += 1
    assert capacity_short and capacity_ample


def test_switch_count_control():
    assert generate_instance(4, switches=5, seed=1).switch_count == 5
    # parallel switches once every pair is used
    assert generate_instance(3, switches=5, seed=1).switch_count == 5
    assert generate_instance(4, switches=2, connected=False).switch_count == 2
    with pytest.raises(InputError):
        generate_instance(4, switches=2)


def test_parameter_errors():
    with pytest.raises(InputError):
        generate_instance(0)
    with pytest.raises(InputError):
        generate_instance(4, density=1.5)
    with pytest.raises(InputError):
        generate_instance(4, providers=0)
    with pytest.raises(InputError):
        generate_instance(1, switches=1)


def test_single_block():
    p = generate_instance(1, seed=2)
    assert p.switch_count == 0 and p.block_count == 1


def test_scenarios_stay_in_the_box_and_repeat():
    base = generate_instance(6, seed=4)
    batch = ScenarioBatch(base=base, samples=30, rho=0.2, seed=42)
    vectors = batch.demand_vectors()
    assert len(vectors) == 30
    nominal = {m.id: m.demand for b in base.blocks for m in b.consumers}
    for vector in vectors:
        assert vector.keys() == nominal.keys()
        for key, value in vector.items():
            assert 0.8 * nominal[key] - 1e-12 <= value <= 1.2 * nominal[key] + 1e-12
    assert vectors == ScenarioBatch(base=base, samples=30, rho=0.2, seed=42).demand_vectors()
    assert vectors != ScenarioBatch(base=base, samples=30, rho=0.2, seed=43).demand_vectors()


def test_zero_rho_is_nominal():
    base = generate_instance(5, seed=9)
    problems = ScenarioBatch(base=base, samples=2, rho=0.0).problems()
    assert all(p == base for p in problems)


def test_scenario_batch_validation():
    base = generate_instance(3)
    with pytest.raises(ValidationError):
        ScenarioBatch(base=base, samples=0)
    with pytest.raises(ValidationError):
        ScenarioBatch(base=base, samples=1, rho=1.5)
