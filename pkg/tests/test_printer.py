import random

from genprog import random_program_text
from kbide.lang import parse, print_program, structurally_equal


def roundtrip(text):
    first = parse(text)
    assert first.ok, (text, [str(d) for d in first.diagnostics])
    printed = print_program(first.program)
    second = parse(printed)
    assert second.ok, (printed, [str(d) for d in second.diagnostics])
    assert structurally_equal(first.program, second.program), (text, printed)
    # and printing is a fixed point from then on
    assert print_program(second.program) == printed
    return printed


def test_roundtrip_fig3_like_program():
    printed = roundtrip(
        "vocabulary V { type Animal fly(Animal) c : Animal }\n"
        "theory T : V { !x: fly(x). ?x: ~fly(x). c = c. }\n"
        "structure S : V { Animal = { penguin; eagle } fly<ct> = { eagle } c = penguin }\n"
    )
    assert "!x: fly(x)." in printed
    assert "fly<ct> = { eagle }" in printed


def test_roundtrip_preserves_precedence_shapes():
    cases = [
        "theory T : V { (a | b) & c. }",
        "theory T : V { a | (b & c). }",
        "theory T : V { (a => b) => c. }",
        "theory T : V { a => (b => c). }",
        "theory T : V { ~(a & b). }",
        "theory T : V { ~a & b. }",
        "theory T : V { (!x: p(x)) => q. }",
        "theory T : V { !x: p(x) => q. }",
        "theory T : V { (a <=> b) <=> (c <=> d). }",
    ]
    for text in cases:
        roundtrip(text)


def test_parenthesized_vs_bare_differ():
    a = parse("theory T : V { (a | b) & c. }").program
    b = parse("theory T : V { a | (b & c). }").program
    assert not structurally_equal(a, b)


def test_roundtrip_procedures_and_structures():
    roundtrip(
        'procedure main() { x := ask("a\\"b") if x == "q" { exit(2) } else { print(x, 1 + 2 - 3) } '
        "while ~(x == \"\") { draw_label(0, 0, x) x := ask(\"more?\") } }"
    )
    roundtrip("structure S : V { p = {} q = { (a, b) } r<cf> = { x } b = false }")


def test_roundtrip_random_programs():
    rng = random.Random(20240101)
    for _ in range(200):
        roundtrip(random_program_text(rng))
