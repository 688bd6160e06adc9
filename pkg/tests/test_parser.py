import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genprog import fuzz_text, random_program_text
from kbide.lang import Severity, parse
from kbide.lang import ast


def ok(text):
    result = parse(text)
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.program


def errors(text):
    result = parse(text)
    assert not result.ok
    assert result.diagnostics
    assert all(d.severity is Severity.ERROR for d in result.diagnostics)
    return result.diagnostics


def test_two_block_program():
    program = ok("vocabulary V { type Animal fly(Animal) } theory T: V { !x: fly(x). }")
    assert len(program.blocks) == 2
    assert isinstance(program.blocks[0], ast.VocabularyBlock)
    assert isinstance(program.blocks[1], ast.TheoryBlock)
    theory = program.blocks[1]
    assert len(theory.sentences) == 1
    assert theory.sentences[0].index == 1


def test_missing_colon_after_quantifier_points_at_atom():
    diags = errors("theory T: V { !x fly(x). }")
    assert len(diags) == 1
    d = diags[0]
    assert d.range.line == 1
    assert d.range.col == 18  # the "fly" token
    assert "':'" in d.message


def test_empty_vocabulary():
    program = ok("vocabulary V {}")
    assert len(program.blocks) == 1
    assert program.blocks[0].decls == []


def test_recovery_reports_one_error_per_broken_block():
    text = (
        "vocabulary V { type }\n"
        "theory T : V { p. }\n"
        "structure S : V { T = }\n"
    )
    diags = errors(text)
    assert len(diags) == 2
    assert diags[0].range.line == 1
    assert diags[1].range.line == 3


def test_unclosed_block_recovers_at_next_keyword():
    diags = errors("theory T : V { p.\nvocabulary W {}")
    assert diags  # at least the theory reports


def test_sentence_spans_cover_the_dot():
    program = ok("theory T : V {\n    !x: fly(x).\n}")
    span = program.blocks[0].sentences[0].span
    assert (span.line, span.col) == (2, 5)
    assert (span.end_line, span.end_col) == (2, 16)


def test_connective_precedence_and_associativity():
    program = ok("theory T : V { a & b | c => d <=> e. p => q => r. }")
    s1, s2 = program.blocks[0].sentences
    # <=> binds loosest, then =>, then |, then &
    assert s1.formula.op == "equiv"
    assert s1.formula.left.op == "implies"
    assert s1.formula.left.left.op == "or"
    assert s1.formula.left.left.left.op == "and"
    # implies associates right
    assert s2.formula.op == "implies"
    assert isinstance(s2.formula.left, ast.Atom)
    assert s2.formula.right.op == "implies"


def test_quantifier_reaches_right_and_multi_vars():
    program = ok("theory T : V { !x y: p(x) | q(y). }")
    f = program.blocks[0].sentences[0].formula
    assert isinstance(f, ast.Quant)
    assert [v.name for v in f.vars] == ["x", "y"]
    assert f.body.op == "or"


def test_equality_and_zero_ary_atoms():
    program = ok("theory T : V { p. x = y. }")
    s1, s2 = program.blocks[0].sentences
    assert isinstance(s1.formula, ast.Atom) and s1.formula.args == []
    assert isinstance(s2.formula, ast.Eq)


def test_functions_rejected_with_clear_message():
    diags = errors("vocabulary V { f(T) : T }")
    assert "functions are not supported" in diags[0].message


def test_arithmetic_rejected_in_sentences():
    for text in (
        "theory T : V { p(1). }",
        "theory T : V { x + y. }",
        "theory T : V { p & 3. }",
    ):
        diags = errors(text)
        assert "arithmetic is not supported" in diags[0].message


def test_inductive_definitions_rejected():
    diags = errors("theory T : V { { p <- q. } }")
    assert "inductive definitions are not supported" in diags[0].message
    diags = errors("theory T : V { p <- q. }")
    assert "inductive definitions are not supported" in diags[0].message


def test_structure_assignments():
    program = ok(
        "structure S : V { Animal = { a; b } fly<ct> = { a } r = { (a, b); (b, a) } p = true c = a }"
    )
    assigns = program.blocks[0].assignments
    assert isinstance(assigns[0], ast.SetAssign) and assigns[0].part == "total"
    assert assigns[1].part == "ct"
    assert assigns[2].tuples[0].elements == ["a", "b"]
    assert isinstance(assigns[3], ast.SimpleAssign) and assigns[3].value is True
    assert isinstance(assigns[4], ast.SimpleAssign) and assigns[4].value == "a"


def test_structure_bad_part_marker():
    diags = errors("structure S : V { p<what> = { a } }")
    assert "'ct' or 'cf'" in diags[0].message


def test_procedure_statements_parse():
    program = ok(
        'procedure main() { x := ask("name?") print(x) if x == "bob" { exit(1) } else { exit } '
        "while true { draw_cell(1, 2, \"red\") } }"
    )
    body = program.blocks[0].body
    assert isinstance(body[0], ast.AssignStmt)
    assert isinstance(body[1], ast.CallStmt)
    assert isinstance(body[2], ast.IfStmt)
    assert isinstance(body[3], ast.WhileStmt)


def test_string_escapes():
    program = ok('procedure main() { print("a\\"b\\n\\\\") }')
    lit = program.blocks[0].body[0].call.args[0]
    assert lit.value == 'a"b\n\\'


def test_unterminated_comment_diagnostic():
    diags = errors("vocabulary V { /* open")
    assert "unterminated block comment" in diags[0].message


def test_unterminated_string_diagnostic():
    diags = errors('procedure main() { print("open) }')
    assert "unterminated string literal" in diags[0].message


def test_top_level_junk():
    diags = errors("junk here vocabulary V {}")
    assert "expected 'vocabulary', 'theory', 'structure', or 'procedure'" in diags[0].message


def _in_bounds(text, diag):
    lines = text.split("\n")
    if not 1 <= diag.range.line <= len(lines):
        return False
    if not 1 <= diag.range.col <= len(lines[diag.range.line - 1]) + 1:
        return False
    if not 1 <= diag.range.end_line <= len(lines):
        return False
    return 1 <= diag.range.end_col <= len(lines[diag.range.end_line - 1]) + 1


def test_parser_never_crashes_and_ranges_stay_in_bounds():
    rng = random.Random(77)
    for _ in range(600):
        text = fuzz_text(rng)
        result = parse(text)  # must not raise
        for diag in result.diagnostics:
            assert _in_bounds(text, diag), (text, str(diag))


@given(st.text(max_size=200))
@settings(max_examples=200, deadline=None)
def test_parser_never_crashes_on_arbitrary_text(text):
    result = parse(text)
    for diag in result.diagnostics:
        assert _in_bounds(text, diag)


def test_generated_programs_parse():
    rng = random.Random(99)
    for _ in range(150):
        text = random_program_text(rng)
        result = parse(text)
        assert result.ok, (text, [str(d) for d in result.diagnostics])


def test_pathological_nesting_is_a_diagnostic_not_a_crash():
    cases = [
        "theory T : V { " + "(" * 3000 + "p" + ")" * 3000 + ". }",
        "theory T : V { " + "~" * 5000 + "p. }",
        "theory T : V { " + "!x: " * 3000 + "p. }",
        "procedure m() { x := " + "~" * 5000 + "1 }",
        "procedure m() { " + "if true { " * 1500 + "}" * 1500 + " }",
    ]
    for text in cases:
        result = parse(text)
        assert not result.ok
        assert any("too deep" in d.message for d in result.diagnostics)


def test_reasonable_nesting_still_parses():
    assert parse("theory T : V { " + "(" * 50 + "p" + ")" * 50 + ". }").ok
