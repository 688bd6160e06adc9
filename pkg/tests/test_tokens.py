import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genprog import fuzz_text
from kbide.lang import Token, TokenKind, tokenize


def kinds_and_lexemes(text):
    return [(t.kind.value, t.lexeme) for t in tokenize(text)]


def test_forall_sentence_token_stream():
    assert kinds_and_lexemes("!x: fly(x).") == [
        ("logical", "!"),
        ("identifier", "x"),
        ("punct", ":"),
        ("whitespace", " "),
        ("identifier", "fly"),
        ("punct", "("),
        ("identifier", "x"),
        ("punct", ")"),
        ("punct", "."),
    ]


def test_empty_input():
    assert tokenize("") == []


def test_comment_then_negation():
    assert kinds_and_lexemes("// hi\n~p") == [
        ("comment", "// hi"),
        ("whitespace", "\n"),
        ("logical", "~"),
        ("identifier", "p"),
    ]


def test_keywords_vs_identifiers():
    toks = tokenize("vocabulary vocab true truth")
    assert [t.kind.value for t in toks if t.kind is not TokenKind.WHITESPACE] == [
        "keyword",
        "identifier",
        "keyword",
        "identifier",
    ]


def test_longest_match_connectives():
    assert kinds_and_lexemes("<=>") == [("logical", "<=>")]
    assert kinds_and_lexemes("=>") == [("logical", "=>")]
    assert kinds_and_lexemes("<=") == [("punct", "<=")]
    assert kinds_and_lexemes("a:=1") == [
        ("identifier", "a"),
        ("punct", ":="),
        ("number", "1"),
    ]
    assert kinds_and_lexemes("p<ct>") == [
        ("identifier", "p"),
        ("punct", "<"),
        ("identifier", "ct"),
        ("punct", ">"),
    ]


def test_block_comment_and_string():
    assert kinds_and_lexemes('/* a\nb */ "hi\\"x"') == [
        ("comment", "/* a\nb */"),
        ("whitespace", " "),
        ("string", '"hi\\"x"'),
    ]


def test_unterminated_block_comment_is_error_token():
    toks = tokenize("/* open")
    assert [t.kind for t in toks] == [TokenKind.ERROR]
    assert toks[0].lexeme == "/* open"


def test_unterminated_string_is_error_token():
    toks = tokenize('"abc\np')
    assert [(t.kind.value, t.lexeme) for t in toks] == [
        ("error", '"abc'),
        ("whitespace", "\n"),
        ("identifier", "p"),
    ]


def test_unknown_characters_become_error_tokens():
    toks = tokenize("p @#$ q")
    errors = [t for t in toks if t.kind is TokenKind.ERROR]
    assert len(errors) == 1 and errors[0].lexeme == "@#$"


def test_positions_are_one_based_scalar_columns():
    toks = tokenize("ab\nπc d")
    by_lexeme = {t.lexeme: (t.line, t.col) for t in toks if t.lexeme.strip()}
    assert by_lexeme["ab"] == (1, 1)
    assert by_lexeme["πc"] == (2, 1)
    assert by_lexeme["d"] == (2, 4)


def test_error_tokens_nonempty():
    for text in ("£", "p £€ q", '"open', "/* x"):
        for tok in tokenize(text):
            if tok.kind is TokenKind.ERROR:
                assert tok.lexeme


def lossless(text: str) -> bool:
    return "".join(t.lexeme for t in tokenize(text)) == text


@given(st.text(max_size=300))
@settings(max_examples=300, deadline=None)
def test_lossless_lexing_property(text):
    assert lossless(text)


def test_lossless_on_seeded_fuzz_corpus():
    rng = random.Random(20240809)
    for _ in range(500):
        assert lossless(fuzz_text(rng))
