import itertools

import pytest

from src.netpart.exception import InputError
from src.netpart.modules.oracle import check_configuration, check_dimensions, enumerate_optimal, iter_feasible
from tests.helpers import block, problem


def test_single_block_serves_rather_than_sheds():
    p = problem([block(1, [(0.0, 5.0, True)], [3.0])])
    result = enumerate_optimal(p)
    assert result.objective == pytest.approx(0.3)
    assert [(c.switch_state, c.block_state) for c in result.configurations] == [([], [1])]
    assert result.feasible_count == 2
    assert result.enumeration_size == 2 ** 2


def test_triangle_never_closes_the_cycle(tiny_triangle):
    result = enumerate_optimal(tiny_triangle)
    assert result.is_feasible
    assert result.configurations
    assert all(c.switch_state != [1, 1, 1] for c in result.configurations)


def test_counts_agree_with_direct_evaluation(tiny_triangle):
    p = tiny_triangle
    values = [check_configuration(p, sw, bl, ldr)
              for sw in itertools.product((0, 1), repeat=3)
              for bl in itertools.product((0, 1), repeat=3)
              for ldr in itertools.product((0, 1), repeat=2)]
    feasible = [v for v in values if v is not None]
    result = enumerate_optimal(p)
    assert result.feasible_count == len(feasible) == len(list(iter_feasible(p)))
    assert result.objective == pytest.approx(min(feasible))
    assert result.enumeration_size == 2 ** 8


def test_iter_feasible_objectives_match_check(tiny_triangle):
    for sw, bl, ldr, objective in iter_feasible(tiny_triangle):
        assert check_configuration(tiny_triangle, sw, bl, ldr) == pytest.approx(objective)


def test_all_ties_are_recorded(ring5):
    result = enumerate_optimal(ring5)
    assert result.objective == pytest.approx(0.9)
    assert len(result.configurations) > 1
    assert all(c.block_state[2] == 0 for c in result.configurations)
    assert result.configurations == sorted(result.configurations, key=lambda c: (c.switch_state, c.block_state))


def test_workers_do_not_change_the_result(ring5):
    serial, pooled = enumerate_optimal(ring5), enumerate_optimal(ring5, workers=2)
    assert pooled.objective == pytest.approx(serial.objective)
    assert pooled.configurations == serial.configurations
    assert pooled.feasible_count == serial.feasible_count


def test_check_configuration_rejections(tiny_triangle):
    p = tiny_triangle
    # closed switch between an active and an inactive block
    assert check_configuration(p, (1, 0, 0), (1, 0, 0), (1, 0)) is None
    # leader in an inactive block
    assert check_configuration(p, (0, 0, 0), (0, 0, 0), (1, 0)) is None
    # active component without a leader
    assert check_configuration(p, (1, 0, 0), (1, 1, 0), (0, 0)) is None
    # two leaders with kappa 1
    assert check_configuration(p, (1, 1, 0), (1, 1, 1), (1, 1)) is None
    assert check_configuration(p, (1, 1, 0), (1, 1, 1), (1, 0)) is not None
    with pytest.raises(InputError):
        check_configuration(p, (1, 1), (1, 1, 1), (1, 0))


def test_everything_off_is_always_feasible(ring5):
    value = check_configuration(ring5, (0,) * 5, (0,) * 5, (0,))
    assert value == pytest.approx(0.9)


def test_guard_rail():
    p = problem([block(i) for i in range(1, 14)])
    with pytest.raises(InputError, match="13 blocks"):
        check_dimensions(p)
    with pytest.raises(InputError):
        enumerate_optimal(p)
