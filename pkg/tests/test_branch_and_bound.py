import itertools

import numpy as np
import pytest

from src.netpart.exception import ContractViolation, SolverFailure
from src.netpart.modules.milp import Constraint, MipModel, MipStatus, Sense, VarKind, solve_mip


def _knapsack(values, weights, capacity):
    model = MipModel(name="knapsack")
    cols = [model.add_variable(f"x{k}", VarKind.BINARY, obj=-v) for k, v in enumerate(values)]
    model.add_constraint(dict(zip(cols, weights)), Sense.LE, capacity, "capacity")
    return model, cols


def test_small_knapsack():
    model, cols = _knapsack([3.0, 2.0, 4.0], [2.0, 1.0, 3.0], 4.0)
    result = solve_mip(model)
    assert result.status is MipStatus.OPTIMAL
    assert result.objective == pytest.approx(-6.0)
    assert [int(round(result.values[c])) for c in cols] == [0, 1, 1]


@pytest.mark.parametrize("seed", range(10))
def test_random_knapsack_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = 8
    values = rng.integers(1, 20, size=n).astype(float)
    weights = rng.integers(1, 10, size=n).astype(float)
    capacity = float(weights.sum() // 2)
    model, _ = _knapsack(values, weights, capacity)

    best = min(-float(np.dot(values, pick)) for pick in itertools.product((0, 1), repeat=n)
               if np.dot(weights, pick) <= capacity)
    result = solve_mip(model)
    assert result.objective == pytest.approx(best)
    assert result.node_count >= 1


def test_bound_history_is_monotone_and_ends_at_the_optimum():
    model, _ = _knapsack([5.0, 4.0, 3.0, 7.0, 6.0], [4.0, 3.0, 2.0, 6.0, 5.0], 9.0)
    result = solve_mip(model)
    history = result.bound_history
    assert all(b >= a - 1e-9 for a, b in zip(history, history[1:]))
    assert history[-1] == pytest.approx(result.objective)


def test_mixed_integer_with_continuous_part():
    model = MipModel()
    z = model.add_variable("z", VarKind.BINARY, obj=2.0)
    x = model.add_variable("x", lb=0.0, ub=10.0, obj=1.0)
    model.add_constraint({x: 1.0, z: 5.0}, Sense.GE, 4.5)
    result = solve_mip(model)
    # z = 1 costs 2, z = 0 forces x = 4.5
    assert result.objective == pytest.approx(2.0)
    assert result.values[z] == pytest.approx(1.0)


def test_integer_infeasible():
    model = MipModel()
    a = model.add_variable("a", VarKind.BINARY)
    b = model.add_variable("b", VarKind.BINARY)
    model.add_constraint({a: 1.0, b: 1.0}, Sense.EQ, 1.5)
    result = solve_mip(model)
    assert result.status is MipStatus.INFEASIBLE
    assert not result.is_optimal


def test_callback_rows_are_enforced():
    model = MipModel()
    a = model.add_variable("a", VarKind.BINARY, obj=-1.0)
    b = model.add_variable("b", VarKind.BINARY, obj=-1.0)
    seen = []

    def exclusive(values):
        seen.append(values[[a, b]].tolist())
        if values[a] + values[b] > 1.5:
            return [Constraint({a: 1.0, b: 1.0}, Sense.LE, 1.0, "exclusive")]
        return []

    result = solve_mip(model, exclusive)
    assert result.objective == pytest.approx(-1.0)
    assert result.cut_count == 1
    assert result.cuts[0].name == "exclusive"
    assert seen[0] == [1.0, 1.0]
    assert all(v in (0.0, 1.0) for pair in seen for v in pair)


def test_callback_must_return_violated_rows():
    model = MipModel()
    a = model.add_variable("a", VarKind.BINARY, obj=-1.0)
    with pytest.raises(ContractViolation):
        solve_mip(model, lambda values: [Constraint({a: 1.0}, Sense.LE, 5.0, "loose")])


def test_node_limit():
    model = MipModel()
    a = model.add_variable("a", VarKind.BINARY, obj=-1.0)
    b = model.add_variable("b", VarKind.BINARY, obj=-1.0)
    model.add_constraint({a: 2.0, b: 2.0}, Sense.LE, 3.0)
    with pytest.raises(SolverFailure):
        solve_mip(model, node_limit=1)
    assert solve_mip(model).objective == pytest.approx(-1.0)
