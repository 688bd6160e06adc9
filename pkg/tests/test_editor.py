import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genprog import fuzz_text, random_program_text
from kbide.editor import (
    BUILTIN_SNIPPETS,
    SYMBOL_MAP,
    Snippet,
    classify,
    completions,
    indent_line,
    load_snippets,
    reindent,
    replace_symbols,
)
from kbide.lang import tokenize
from kbide.lang.tokens import TokenKind

# -- classify -----------------------------------------------------------


def classes_of(text):
    return [(cls, text) for _, cls in classify(tokenize(text))]


def test_comment_classified():
    spans = classify(tokenize("// x"))
    assert len(spans) == 1 and spans[0][1] == "comment"


def test_keyword_and_logical_classes():
    spans = classify(tokenize("theory =>"))
    assert [cls for _, cls in spans] == ["keyword", "logical"]


def test_classify_covers_non_whitespace_exactly_once():
    rng = random.Random(7)
    for _ in range(100):
        text = fuzz_text(rng)
        tokens = tokenize(text)
        spans = classify(tokens)
        non_ws = [t for t in tokens if t.kind is not TokenKind.WHITESPACE]
        assert len(spans) == len(non_ws)
        # spans sit in token order, so adjacency means no overlap
        flat = [s for s, _ in spans]
        for a, b in zip(flat, flat[1:]):
            assert (a.end_line, a.end_col) <= (b.line, b.col)


# -- replace_symbols -------------------------------------------------------


def test_symbol_replacement_display():
    display, _ = replace_symbols("!x: p(x) => q(x).")
    assert display == "∀x: p(x) ⇒ q(x)."


def test_comments_and_identifiers_untouched():
    display, _ = replace_symbols("// a => b")
    assert display == "// a => b"
    display, _ = replace_symbols('procedure m() { print("a => b") }')
    assert "=>" in display and "⇒" not in display


def test_position_map_exactness():
    source = "p & q => r"
    display, pm = replace_symbols(source)
    assert display == "p ∧ q ⇒ r"
    # "=>" starts at source offset 6, display offset 6; display is 1 shorter after it
    assert pm.to_source(display.index("⇒")) == source.index("=>")
    assert pm.to_display(source.index("=>")) == display.index("⇒")
    assert pm.to_source(len(display)) == len(source)
    assert pm.to_display(len(source)) == len(display)


def test_restore_reproduces_source_on_random_programs():
    rng = random.Random(11)
    for _ in range(150):
        text = random_program_text(rng)
        display, pm = replace_symbols(text)
        assert pm.restore(display) == text


@given(st.text(max_size=200))
@settings(max_examples=150, deadline=None)
def test_restore_is_total_inverse(text):
    display, pm = replace_symbols(text)
    assert pm.restore(display) == text


def test_replacement_keeps_token_count_and_classes():
    rng = random.Random(13)
    for _ in range(60):
        text = random_program_text(rng)
        before = [t for t in tokenize(text) if t.kind is not TokenKind.WHITESPACE]
        display, _ = replace_symbols(text)
        unicode_map = {d: a for a, d in SYMBOL_MAP}
        restored_kinds = []
        for t in tokenize(display):
            if t.kind is TokenKind.WHITESPACE:
                continue
            restored_kinds.append(t.kind)
        assert len(restored_kinds) == len(before)


# -- indentation ---------------------------------------------------------


def test_line_inside_braces_indents_four():
    doc = "vocabulary V {\ntype A\n}"
    assert indent_line(doc, 2) == 4
    assert indent_line(doc, 3) == 0


def test_reindent_document():
    doc = "vocabulary V {\n  type A\n      fly(A)\n}\nprocedure m() {\nif true {\nprint(1)\n}\n}"
    expected = (
        "vocabulary V {\n    type A\n    fly(A)\n}\nprocedure m() {\n    if true {\n"
        "        print(1)\n    }\n}"
    )
    assert reindent(doc) == expected


def test_reindent_normalizes_leading_tabs():
    assert reindent("vocabulary V {\n\ttype A\n}") == "vocabulary V {\n    type A\n}"


def test_reindent_leaves_multiline_comment_interiors():
    doc = "vocabulary V {\n/* one\n        two\n*/\n}"
    out = reindent(doc)
    assert "        two" in out


def test_braces_in_comments_and_strings_do_not_count():
    doc = 'procedure m() {\nprint("}x{")\n// }}}\nprint(1)\n}'
    out = reindent(doc)
    assert out.split("\n")[3] == "    print(1)"


def test_reindent_idempotent_on_random_documents():
    rng = random.Random(3)
    for _ in range(150):
        text = fuzz_text(rng)
        once = reindent(text)
        assert reindent(once) == once


# -- completion -------------------------------------------------------------


def test_word_completion_from_document():
    doc = "theory T : V { penguin } pen"
    out = completions(doc, len(doc))
    assert [c.text for c in out] == ["penguin"]
    assert out[0].kind == "word"


def test_snippet_completion():
    out = completions("voc", 3)
    assert out and out[0].kind == "snippet" and out[0].text == "vocabulary"
    assert "$0" in out[0].body


def test_no_matches_is_empty():
    assert completions("zzz qqq", 3) == []


def test_current_occurrence_excluded_but_other_occurrences_count():
    # the word being typed is its only occurrence: no self-completion
    assert completions("pengu", 5) == []
    doc = "penguin pengu"
    out = completions(doc, len(doc))
    assert [c.text for c in out] == ["penguin"]


def test_snippets_sort_before_words():
    doc = "target tern t"
    out = completions(doc, len(doc))
    kinds = [c.kind for c in out]
    assert kinds == sorted(kinds, key=lambda k: k != "snippet")
    texts = [c.text for c in out]
    assert texts.index("theory") < texts.index("target")


def test_every_candidate_has_prefix():
    rng = random.Random(21)
    for _ in range(100):
        text = random_program_text(rng)
        cursor = rng.randint(0, len(text))
        start = cursor
        while start > 0 and (text[start - 1].isalnum() or text[start - 1] == "_"):
            start -= 1
        prefix = text[start:cursor]
        for cand in completions(text, cursor):
            assert cand.text.startswith(prefix)


def test_dedup_word_equal_to_trigger():
    doc = "vocabulary V {} voc"
    out = completions(doc, len(doc))
    assert [c.text for c in out].count("vocabulary") == 1
    assert out[0].kind == "snippet"


# -- snippets ------------------------------------------------------------------


def test_builtin_snippets_shape():
    triggers = [s.trigger for s in BUILTIN_SNIPPETS]
    assert {"vocabulary", "theory", "structure", "procedure", "reachability"} <= set(triggers)
    reach = next(s for s in BUILTIN_SNIPPETS if s.trigger == "reachability")
    assert "reach" in reach.body


def test_snippets_json_roundtrip(tmp_path):
    path = tmp_path / "snippets.json"
    path.write_text(
        json.dumps(
            [{"trigger": "hello", "body": "print($0)", "description": "say hi"}]
        )
    )
    loaded = load_snippets(path)
    assert loaded == [Snippet("hello", "print($0)", "say hi")]


def test_snippets_json_validation(tmp_path):
    path = tmp_path / "snippets.json"
    path.write_text(json.dumps([{"body": "x"}]))
    with pytest.raises(ValueError):
        load_snippets(path)
    path.write_text(json.dumps({"trigger": "x"}))
    with pytest.raises(ValueError):
        load_snippets(path)
    with pytest.raises(ValueError):
        Snippet("not valid!", "x", "")
