import pytest

from kbide.engine import build_structure, ground
from kbide.engine.ground import PROV_AXIOM, PROV_STRUCTURE
from kbide.lang import analyze
from kbide.limits import LimitExceeded, ResourceLimits


def setup(text, theory="T", structure="S"):
    result = analyze({"main.kb": text})
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.typed.theories[theory], build_structure(result.typed, structure)


def test_forall_yields_one_instantiation_per_element(fig3_open):
    theory, structure = fig3_open
    problem = ground(theory, structure)
    pairs = [(i.sentence.index, i.subst_text) for i in problem.instantiations]
    assert pairs == [(1, "x = penguin"), (1, "x = eagle")]


def test_quantifier_free_sentence_has_empty_substitution():
    theory, structure = setup(
        "vocabulary V { p() } theory T : V { p. } structure S : V { }"
    )
    problem = ground(theory, structure)
    assert [(i.sentence.index, i.subst_text) for i in problem.instantiations] == [(1, "{}")]


def test_forall_exists_grounds_to_three_three_literal_clauses():
    theory, structure = setup(
        "vocabulary V { type D r(D, D) } theory T : V { !x: ?y: r(x, y). } "
        "structure S : V { D = { d1; d2; d3 } }"
    )
    problem = ground(theory, structure)
    assert len(problem.instantiations) == 3
    selectors = {i.selector for i in problem.instantiations}
    theory_clauses = [
        c
        for c, prov in zip(problem.clauses, problem.provenance)
        if prov[0] == "theory"
    ]
    assert len(theory_clauses) == 3
    for clause in theory_clauses:
        body = [lit for lit in clause if abs(lit) not in selectors]
        assert len(body) == 3
        assert all(lit > 0 for lit in body)


def test_structure_facts_get_structure_provenance(fig3):
    theory, structure = fig3
    problem = ground(theory, structure)
    structure_units = [
        c
        for c, prov in zip(problem.clauses, problem.provenance)
        if prov == PROV_STRUCTURE
    ]
    assert len(structure_units) == 2  # fly(penguin)=false, fly(eagle)=true
    assert all(len(c) == 1 for c in structure_units)


def test_every_theory_clause_has_instantiation_provenance(fig3):
    theory, structure = fig3
    problem = ground(theory, structure)
    for prov in problem.provenance:
        assert prov[0] in ("structure", "axiom", "theory")
        if prov[0] == "theory":
            assert 0 <= prov[1] < len(problem.instantiations)


def test_uninterpreted_constant_gets_choice_axioms():
    theory, structure = setup(
        "vocabulary V { type A p(A) c : A } theory T : V { p(c). } "
        "structure S : V { A = { a; b } }"
    )
    problem = ground(theory, structure)
    axioms = [
        c for c, prov in zip(problem.clauses, problem.provenance) if prov == PROV_AXIOM
    ]
    # at-least-one (1 clause) + at-most-one (1 pair) for a 2-element domain
    assert sorted(len(c) for c in axioms) == [2, 2]
    assert problem.real_count == 4  # two atoms + two choice variables


def test_atom_budget_enforced():
    theory, structure = setup(
        "vocabulary V { type D r(D, D) } theory T : V { !x: r(x, x). } "
        "structure S : V { D = { d1; d2; d3 } }"
    )
    with pytest.raises(LimitExceeded) as exc:
        ground(theory, structure, ResourceLimits(ground_atoms_max=8))
    assert exc.value.kind == "ground_atoms"


def test_trivially_false_sentence_yields_selector_only_clause():
    theory, structure = setup(
        "vocabulary V { type A c : A d : A } theory T : V { c = d. } "
        "structure S : V { A = { a1; a2 } c = a1 d = a2 }"
    )
    problem = ground(theory, structure)
    inst = problem.instantiations[0]
    theory_clauses = [
        c
        for c, prov in zip(problem.clauses, problem.provenance)
        if prov == ("theory", inst.index)
    ]
    assert theory_clauses == [[-inst.selector]]


def test_vocabulary_mismatch_rejected():
    result = analyze(
        {
            "a.kb": "vocabulary V { p() } vocabulary W { type B } "
            "theory T : V { p. } structure S : W { B = { b } }"
        }
    )
    assert result.ok
    from kbide.engine import EngineError

    theory = result.typed.theories["T"]
    structure = build_structure(result.typed, "S")
    with pytest.raises(EngineError):
        ground(theory, structure)
