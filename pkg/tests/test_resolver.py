import pytest

from conftest import FIG3
from kbide.lang import Severity, analyze, parse, resolve


def run(text):
    return analyze({"main.kb": text})


def errors_of(result):
    return [d for d in result.diagnostics if d.severity is Severity.ERROR]


def warnings_of(result):
    return [d for d in result.diagnostics if d.severity is Severity.WARNING]


def test_fig3_resolves_clean():
    result = run(FIG3)
    assert result.ok
    assert result.diagnostics == []
    typed = result.typed
    assert set(typed.vocabs) == {"V"}
    assert set(typed.theories) == {"T"}
    assert typed.structures["S"].domains == {"Animal": ["penguin", "eagle"]}
    assert typed.structures["S"].atoms == {
        ("fly", ("penguin",)): False,
        ("fly", ("eagle",)): True,
    }


def test_unknown_predicate():
    result = run("vocabulary V { type A } theory T : V { !x: flies(x). }")
    assert not result.ok
    assert any("unknown predicate 'flies'" in d.message for d in errors_of(result))


def test_unused_predicate_warns_at_declaration():
    result = run(
        "vocabulary V { type Animal fly(Animal) swim(Animal) } theory T : V { !x: fly(x). }"
    )
    assert result.ok
    warns = warnings_of(result)
    assert len(warns) == 1
    assert "'swim' is declared but never used" in warns[0].message
    assert warns[0].range.line == 1


def test_variable_type_inference_and_mismatch():
    result = run(
        "vocabulary V { type A type B p(A) q(B) } theory T : V { !x: p(x) & q(x). }"
    )
    assert not result.ok
    assert any("used as both A and B" in d.message for d in errors_of(result))


def test_cannot_infer_type():
    result = run("vocabulary V { type A p(A) } theory T : V { !x y: p(x). }")
    assert not result.ok
    assert any("cannot infer a type for variable 'y'" in d.message for d in errors_of(result))


def test_type_flows_through_equality():
    result = run("vocabulary V { type A p(A) } theory T : V { !x y: p(x) & x = y. }")
    assert result.ok


def test_arity_mismatch():
    result = run("vocabulary V { type A r(A, A) } theory T : V { !x: r(x). }")
    assert not result.ok
    assert any("expects 2 argument(s), got 1" in d.message for d in errors_of(result))


def test_unbound_symbol_in_sentence():
    result = run("vocabulary V { type A p(A) } theory T : V { p(goose). }")
    assert not result.ok
    assert any("unknown symbol 'goose'" in d.message for d in errors_of(result))


def test_shadowing_warns():
    result = run("vocabulary V { type A p(A) } theory T : V { !x: p(x) & ?x: p(x). }")
    assert result.ok
    assert any("shadows" in d.message for d in warnings_of(result))


def test_unknown_vocabulary_reference():
    result = run("theory T : Missing { p. }")
    assert not result.ok
    assert any("unknown vocabulary 'Missing'" in d.message for d in errors_of(result))


def test_duplicate_declarations_and_blocks():
    result = run("vocabulary V { type A type A } vocabulary V { }")
    assert not result.ok
    messages = " | ".join(d.message for d in errors_of(result))
    assert "duplicate declaration of 'A'" in messages
    assert "duplicate vocabulary 'V'" in messages


def test_structure_must_interpret_all_types():
    result = run("vocabulary V { type A type B p(A) } structure S : V { A = { a } }")
    assert not result.ok
    assert any("type 'B' is not interpreted" in d.message for d in errors_of(result))


def test_structure_empty_domain_rejected():
    result = run("vocabulary V { type A } structure S : V { A = { } }")
    assert not result.ok
    assert any("at least one element" in d.message for d in errors_of(result))


def test_structure_unknown_element():
    result = run(
        "vocabulary V { type A p(A) } structure S : V { A = { a } p = { b } }"
    )
    assert not result.ok
    assert any("unknown element 'b'" in d.message for d in errors_of(result))


def test_structure_ct_cf_overlap_rejected():
    result = run(
        "vocabulary V { type A p(A) } structure S : V { A = { a } p<ct> = { a } p<cf> = { a } }"
    )
    assert not result.ok
    assert any("both certainly true and certainly false" in d.message for d in errors_of(result))


def test_structure_conflicting_total_and_partial():
    result = run(
        "vocabulary V { type A p(A) } structure S : V { A = { a } p = { a } p<ct> = { a } }"
    )
    assert not result.ok
    assert any("conflicting assignment" in d.message for d in errors_of(result))


def test_structure_constant_out_of_domain():
    result = run(
        "vocabulary V { type A c : A } structure S : V { A = { a } c = z }"
    )
    assert not result.ok
    assert any("unknown element 'z'" in d.message for d in errors_of(result))


def test_zero_ary_interpretation():
    result = run("vocabulary V { p() } theory T : V { p. } structure S : V { p = true }")
    assert result.ok
    assert result.typed.structures["S"].atoms == {("p", ()): True}


def test_tuple_arity_checked():
    result = run(
        "vocabulary V { type A r(A, A) } structure S : V { A = { a } r = { a } }"
    )
    assert not result.ok
    assert any("takes 2 element(s) per tuple" in d.message for d in errors_of(result))


def test_constant_usage_tracks_and_types():
    result = run(
        "vocabulary V { type A p(A) c : A } theory T : V { p(c). } structure S : V { A = { a } }"
    )
    assert result.ok
    assert warnings_of(result) == []


def test_predicate_used_as_term_rejected():
    result = run("vocabulary V { type A p(A) q(A) } theory T : V { !x: p(q). }")
    assert not result.ok
    assert any("'q' is a predicate, not a term" in d.message for d in errors_of(result))


def test_multiple_files_share_namespace():
    result = analyze(
        {
            "vocab.kb": "vocabulary V { type A p(A) }",
            "theory.kb": "theory T : V { !x: p(x). }",
            "struct.kb": "structure S : V { A = { a } }",
        }
    )
    assert result.ok
    assert result.typed.theories["T"].vocab.name == "V"


def test_diagnostics_carry_file_names():
    result = analyze({"one.kb": "vocabulary V {}", "two.kb": "theory T : W { p. }"})
    assert not result.ok
    assert all(d.file == "two.kb" for d in result.diagnostics)
