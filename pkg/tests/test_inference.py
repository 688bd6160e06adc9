import random

import pytest

import oracle
from kbide.engine import (
    Inconsistent,
    Satisfiable,
    build_structure,
    evaluate,
    ground,
    modelexpand,
    propagate,
    solve,
    unsatcore,
)
from kbide.lang import analyze


def setup(text, theory="T", structure="S"):
    result = analyze({"main.kb": text})
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.typed.theories[theory], build_structure(result.typed, structure)


# -- modelexpand -----------------------------------------------------------


def test_fig3_conflict_has_no_models(fig3):
    theory, structure = fig3
    assert modelexpand(theory, structure, 10) == []


def test_unconstrained_predicate_has_four_models():
    theory, structure = setup(
        "vocabulary V { type A p(A) } theory T : V { } structure S : V { A = { a; b } }"
    )
    models = modelexpand(theory, structure, 10)
    assert len(models) == 4
    assert len({m.key() for m in models}) == 4
    for m in models:
        assert m.is_total()


def test_total_satisfying_input_returns_itself():
    theory, structure = setup(
        "vocabulary V { type A fly(A) } theory T : V { !x: fly(x). } "
        "structure S : V { A = { a; b } fly = { a; b } }"
    )
    models = modelexpand(theory, structure, 10)
    assert len(models) == 1
    assert models[0].atoms == structure.atoms


def test_models_satisfy_theory_and_extend_input(fig3_open):
    theory, structure = fig3_open
    models = modelexpand(theory, structure, 10)
    assert len(models) == 1
    for m in models:
        for s in theory.sentences:
            assert evaluate(s, m)
        for key, value in structure.atoms.items():
            assert m.atoms[key] == value


def test_max_models_cuts_enumeration():
    theory, structure = setup(
        "vocabulary V { type A p(A) } theory T : V { } structure S : V { A = { a; b } }"
    )
    assert len(modelexpand(theory, structure, 2)) == 2
    with pytest.raises(ValueError):
        modelexpand(theory, structure, 0)


def test_uninterpreted_constant_choices_enumerate():
    theory, structure = setup(
        "vocabulary V { type A c : A p(A) } theory T : V { p(c). } "
        "structure S : V { A = { a; b } p = { a } }"
    )
    models = modelexpand(theory, structure, 10)
    assert len(models) == 1
    assert models[0].constants == {"c": "a"}


def test_modelexpand_deterministic(fig3_open):
    theory, structure = fig3_open
    first = [m.key() for m in modelexpand(theory, structure, 10)]
    second = [m.key() for m in modelexpand(theory, structure, 10)]
    assert first == second


# -- propagate ---------------------------------------------------------------


def test_propagate_forces_all_fly(fig3_open):
    theory, structure = fig3_open
    refined = propagate(theory, structure)
    assert refined.atoms == {("fly", ("penguin",)): True, ("fly", ("eagle",)): True}


def test_propagate_empty_theory_is_identity():
    theory, structure = setup(
        "vocabulary V { type A p(A) } theory T : V { } "
        "structure S : V { A = { a; b } p<ct> = { a } }"
    )
    refined = propagate(theory, structure)
    assert refined.atoms == structure.atoms
    assert refined.constants == structure.constants


def test_propagate_modus_ponens():
    theory, structure = setup(
        "vocabulary V { p() q() } theory T : V { p => q. p. } structure S : V { }"
    )
    refined = propagate(theory, structure)
    assert refined.atoms == {("p", ()): True, ("q", ()): True}


def test_propagate_preserves_input_and_is_idempotent(fig3_open):
    theory, structure = fig3_open
    structure.atoms[("fly", ("eagle",))] = True
    once = propagate(theory, structure)
    assert once.atoms[("fly", ("eagle",))] is True
    twice = propagate(theory, once)
    assert twice.atoms == once.atoms
    assert twice.constants == once.constants


def test_propagate_inconsistent_raises(fig3):
    theory, structure = fig3
    with pytest.raises(Inconsistent):
        propagate(theory, structure)


def test_propagate_fixes_constant_when_entailed():
    theory, structure = setup(
        "vocabulary V { type A c : A p(A) } theory T : V { p(c). } "
        "structure S : V { A = { a; b } p = { a } }"
    )
    refined = propagate(theory, structure)
    assert refined.constants == {"c": "a"}


# -- unsatcore ----------------------------------------------------------------


def test_fig3_core_is_the_penguin_instantiation(fig3):
    theory, structure = fig3
    core = unsatcore(theory, structure)
    assert [(i.sentence_index, i.substitution) for i in core.items] == [(1, "x = penguin")]
    assert core.items[0].range.line == 7


def test_direct_contradiction_core_has_both_sentences():
    theory, structure = setup(
        "vocabulary V { p() } theory T : V { p. ~p. } structure S : V { }"
    )
    core = unsatcore(theory, structure)
    assert [(i.sentence_index, i.substitution) for i in core.items] == [
        (1, "{}"),
        (2, "{}"),
    ]


def test_unsatcore_on_satisfiable_raises(fig3_open):
    theory, structure = fig3_open
    with pytest.raises(Satisfiable):
        unsatcore(theory, structure)


def test_core_minimality_on_random_unsat_instances():
    rng = random.Random(314)
    found = 0
    while found < 12:
        text = oracle.random_instance(rng)
        theory, structure = oracle.load_instance(text)
        if oracle.enumerate_models(theory, structure):
            continue
        found += 1
        core = unsatcore(theory, structure)
        assert oracle.core_is_minimal_mus(core, theory, structure), text


def test_unsatcore_deterministic(fig3):
    theory, structure = fig3
    first = unsatcore(theory, structure)
    second = unsatcore(theory, structure)
    assert first.items == second.items


# -- evaluate ------------------------------------------------------------------


def test_evaluate_forall(fig3_open):
    theory, structure = fig3_open
    total = structure.copy()
    total.atoms = {("fly", ("penguin",)): True, ("fly", ("eagle",)): True}
    assert evaluate(theory.sentences[0], total) is True
    total.atoms[("fly", ("penguin",))] = False
    assert evaluate(theory.sentences[0], total) is False


def test_evaluate_requires_total_structure(fig3_open):
    theory, structure = fig3_open
    from kbide.engine import EngineError

    with pytest.raises(EngineError):
        evaluate(theory.sentences[0], structure)


def test_evaluate_agrees_with_solver_on_total_structures():
    rng = random.Random(2718)
    for _ in range(60):
        text = oracle.random_instance(rng)
        theory, structure = oracle.load_instance(text)
        for total in list(oracle.total_expansions(structure))[:8]:
            by_eval = all(evaluate(s, total) for s in theory.sentences)
            problem = ground(theory, total)
            result = solve(problem, problem.all_selectors())
            assert result.sat == by_eval, text


# -- engine vs oracle property ---------------------------------------------------


def test_engine_matches_oracle_on_random_instances():
    rng = random.Random(60902)
    for _ in range(60):
        text = oracle.random_instance(rng)
        theory, structure = oracle.load_instance(text)
        expected = {m.key() for m in oracle.enumerate_models(theory, structure)}
        got = modelexpand(theory, structure, 10**9)
        assert {m.key() for m in got} == expected, text
        assert len(got) == len(expected), text
        if expected:
            bb = oracle.backbone(theory, structure)
            refined = propagate(theory, structure)
            assert refined.atoms == bb.atoms, text
            assert refined.constants == bb.constants, text
