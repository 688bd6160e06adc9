"""Lexer for the knowledge-base language.

The token stream is lossless: concatenating the lexemes reproduces the
input byte for byte. Anything the lexer does not understand becomes an
``error`` token instead of an exception, so the editor can still
highlight and the parser can point at the bad spot.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .diagnostics import Range, advance_position


class TokenKind(str, Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    LOGICAL = "logical"
    PUNCT = "punct"
    NUMBER = "number"
    STRING = "string"
    COMMENT = "comment"
    WHITESPACE = "whitespace"
    ERROR = "error"


KEYWORDS = frozenset(
    {
        "vocabulary",
        "theory",
        "structure",
        "procedure",
        "type",
        "if",
        "else",
        "while",
        "true",
        "false",
        "exit",
    }
)

# The seven connective spellings; these are the only tokens the symbol
# replacement feature may touch.
LOGICAL_SPELLINGS = ("<=>", "=>", "!", "?", "&", "|", "~")

# Longest match first so "<=>" wins over "<=" and "<".
_FIXED = [
    ("<=>", TokenKind.LOGICAL),
    (":=", TokenKind.PUNCT),
    ("==", TokenKind.PUNCT),
    ("!=", TokenKind.PUNCT),
    ("=>", TokenKind.LOGICAL),
    ("<=", TokenKind.PUNCT),
    (">=", TokenKind.PUNCT),
    ("<-", TokenKind.PUNCT),
    ("!", TokenKind.LOGICAL),
    ("?", TokenKind.LOGICAL),
    ("&", TokenKind.LOGICAL),
    ("|", TokenKind.LOGICAL),
    ("~", TokenKind.LOGICAL),
    ("(", TokenKind.PUNCT),
    (")", TokenKind.PUNCT),
    ("{", TokenKind.PUNCT),
    ("}", TokenKind.PUNCT),
    (":", TokenKind.PUNCT),
    (";", TokenKind.PUNCT),
    (",", TokenKind.PUNCT),
    (".", TokenKind.PUNCT),
    ("=", TokenKind.PUNCT),
    ("<", TokenKind.PUNCT),
    (">", TokenKind.PUNCT),
    ("+", TokenKind.PUNCT),
    ("-", TokenKind.PUNCT),
]

_FIXED_STARTS = {spelling[0] for spelling, _ in _FIXED}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int
    col: int

    @property
    def range(self) -> Range:
        end_line, end_col = advance_position(self.line, self.col, self.lexeme)
        return Range(self.line, self.col, end_line, end_col)

    def __repr__(self) -> str:
        return f"Token({self.kind.value}, {self.lexeme!r}, {self.line}:{self.col})"


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def _is_known_start(c: str) -> bool:
    return (
        c in " \t\r\n"
        or c == "/"
        or c == '"'
        or _is_ident_start(c)
        or c.isdigit()
        or c in _FIXED_STARTS
    )


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    line, col = 1, 1

    def emit(kind: TokenKind, lexeme: str) -> None:
        nonlocal line, col
        tokens.append(Token(kind, lexeme, line, col))
        line, col = advance_position(line, col, lexeme)

    while i < n:
        c = text[i]

        if c in " \t\r\n":
            j = i
            while j < n and text[j] in " \t\r\n":
                j += 1
            emit(TokenKind.WHITESPACE, text[i:j])
            i = j
            continue

        if c == "/" and text.startswith("//", i):
            j = text.find("\n", i)
            j = n if j == -1 else j
            emit(TokenKind.COMMENT, text[i:j])
            i = j
            continue

        if c == "/" and text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j == -1:
                emit(TokenKind.ERROR, text[i:])  # unterminated block comment
                i = n
            else:
                emit(TokenKind.COMMENT, text[i : j + 2])
                i = j + 2
            continue

        if c == '"':
            j = i + 1
            closed = False
            while j < n and text[j] != "\n":
                if text[j] == "\\" and j + 1 < n and text[j + 1] != "\n":
                    j += 2
                    continue
                if text[j] == '"':
                    closed = True
                    j += 1
                    break
                j += 1
            if closed:
                emit(TokenKind.STRING, text[i:j])
            else:
                emit(TokenKind.ERROR, text[i:j])  # unterminated string
            i = j
            continue

        if _is_ident_start(c):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            emit(TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENTIFIER, word)
            i = j
            continue

        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            emit(TokenKind.NUMBER, text[i:j])
            i = j
            continue

        for spelling, kind in _FIXED:
            if text.startswith(spelling, i):
                emit(kind, spelling)
                i += len(spelling)
                break
        else:
            j = i + 1
            while j < n and not _is_known_start(text[j]):
                j += 1
            emit(TokenKind.ERROR, text[i:j])
            i = j

    return tokens
