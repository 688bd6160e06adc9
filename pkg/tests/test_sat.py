import itertools
import random

import pytest

from kbide.engine.sat import Solver, solve_clauses
from kbide.limits import LimitExceeded


def brute_force_sat(nvars, clauses):
    for bits in itertools.product((1, -1), repeat=nvars):
        assign = (0,) + bits
        if all(any(assign[abs(l)] == (1 if l > 0 else -1) for l in c) for c in clauses):
            return True
    return False


def test_direct_contradiction_unsat():
    assert solve_clauses(1, [[1], [-1]]).sat is False


def test_single_clause_sat():
    result = solve_clauses(2, [[1, 2]])
    assert result.sat
    model = result.model
    assert model[1] == 1 or model[2] == 1


def test_empty_clause_unsat():
    assert solve_clauses(3, [[1, 2], []]).sat is False


def test_model_is_total():
    result = solve_clauses(4, [[1, -2]])
    assert result.sat
    assert all(result.model[v] in (1, -1) for v in range(1, 5))


def test_unit_propagation_chain():
    clauses = [[1], [-1, 2], [-2, 3], [-3, 4]]
    result = solve_clauses(4, clauses)
    assert result.sat
    assert [result.model[v] for v in (1, 2, 3, 4)] == [1, 1, 1, 1]


def test_assumptions_restrict_and_conflict():
    solver = Solver(2)
    solver.add_clause([1, 2])
    assert solver.solve([-1]).model[2] == 1
    assert solver.solve([-1, -2]).sat is False
    # solver is reusable after an assumption conflict
    assert solver.solve([1]).sat is True


def test_random_instances_agree_with_truth_table():
    rng = random.Random(1234)
    for _ in range(400):
        nvars = rng.randint(1, 12)
        n_clauses = rng.randint(1, 40)
        clauses = []
        for _ in range(n_clauses):
            width = rng.randint(1, 4)
            clause = [
                rng.choice((1, -1)) * rng.randint(1, nvars) for _ in range(width)
            ]
            clauses.append(clause)
        expected = brute_force_sat(nvars, clauses)
        result = solve_clauses(nvars, clauses)
        assert result.sat == expected
        if result.sat:
            assign = result.model
            assert all(
                any(assign[abs(l)] == (1 if l > 0 else -1) for l in c) for c in clauses
            )


def test_deterministic_under_fixed_ordering():
    rng = random.Random(5)
    clauses = [
        [rng.choice((1, -1)) * rng.randint(1, 8) for _ in range(3)] for _ in range(20)
    ]
    first = solve_clauses(8, [list(c) for c in clauses])
    second = solve_clauses(8, [list(c) for c in clauses])
    assert first.sat == second.sat
    assert first.model == second.model


def test_decision_limit():
    # nothing propagates, so every variable costs one decision
    nvars = 12
    clauses = [[v, v + 1] for v in range(1, nvars, 2)]
    with pytest.raises(LimitExceeded) as exc:
        solve_clauses(nvars, clauses, max_decisions=3)
    assert exc.value.kind == "decisions"


def test_enumeration_distinct_on_real_prefix():
    # vars 1..2 real, var 3 free auxiliary: models must not duplicate
    solver = Solver(3)
    solver.add_clause([1, 2])
    models = solver.solve_all((), real_count=2, max_models=100)
    reals = [(m[1], m[2]) for m in models]
    assert len(reals) == len(set(reals)) == 3


def test_enumeration_respects_max_models():
    solver = Solver(3)
    models = solver.solve_all((), real_count=3, max_models=5)
    assert len(models) == 5
