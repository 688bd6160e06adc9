"""Prefix completion from document words and snippet triggers.

No semantic analysis: candidates are the identifiers already in the
document (minus the occurrence being typed) plus the snippet triggers,
all filtered by the prefix under the cursor. Snippets sort before
words; both groups are alphabetical.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..lang.tokens import TokenKind, tokenize
from .snippets import BUILTIN_SNIPPETS, Snippet


@dataclass(frozen=True)
class Candidate:
    text: str
    kind: str  # "snippet" | "word"
    body: str | None = None
    description: str | None = None


def _is_word_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def completions(
    document: str,
    cursor: int,
    snippets: list[Snippet] | None = None,
) -> list[Candidate]:
    if not 0 <= cursor <= len(document):
        raise ValueError(f"cursor {cursor} is outside the document")
    snippets = BUILTIN_SNIPPETS if snippets is None else snippets

    start = cursor
    while start > 0 and _is_word_char(document[start - 1]):
        start -= 1
    prefix = document[start:cursor]

    words: set[str] = set()
    offset = 0
    for token in tokenize(document):
        if token.kind is TokenKind.IDENTIFIER and offset != start:
            words.add(token.lexeme)
        offset += len(token.lexeme)

    chosen_snippets = sorted(
        (s for s in snippets if s.trigger.startswith(prefix)), key=lambda s: s.trigger
    )
    trigger_names = {s.trigger for s in chosen_snippets}
    chosen_words = sorted(
        w for w in words if w.startswith(prefix) and w not in trigger_names
    )

    out = [
        Candidate(s.trigger, "snippet", s.body, s.description) for s in chosen_snippets
    ]
    out.extend(Candidate(w, "word") for w in chosen_words)
    return out
