"""Token classification for syntax highlighting."""

from __future__ import annotations

from ..lang.diagnostics import Range
from ..lang.tokens import Token, TokenKind

# Whitespace gets no class; everything else is covered exactly once.
_CLASSES = {
    TokenKind.KEYWORD: "keyword",
    TokenKind.IDENTIFIER: "identifier",
    TokenKind.LOGICAL: "logical",
    TokenKind.PUNCT: "punct",
    TokenKind.NUMBER: "number",
    TokenKind.STRING: "string",
    TokenKind.COMMENT: "comment",
    TokenKind.ERROR: "error",
}


def classify(tokens: list[Token]) -> list[tuple[Range, str]]:
    return [
        (t.range, _CLASSES[t.kind])
        for t in tokens
        if t.kind is not TokenKind.WHITESPACE
    ]
