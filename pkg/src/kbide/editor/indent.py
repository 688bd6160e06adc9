"""Auto indentation: four spaces per brace-nesting level.

A line whose first token is ``}`` dedents one level. Lines that start
inside a multi-line comment are left untouched, and braces inside
comments and strings never count. Reindenting is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..lang.diagnostics import advance_position
from ..lang.tokens import TokenKind, tokenize

INDENT_WIDTH = 4


@dataclass
class _LineInfo:
    depth: int = 0  # brace depth at the start of the line
    first_lexeme: str | None = None
    inside_multiline: bool = False  # line starts inside a comment/error token


def _analyze(text: str) -> list[_LineInfo]:
    line_count = text.count("\n") + 1
    info = [_LineInfo() for _ in range(line_count + 1)]  # 1-based
    depth = 0
    stamped = 1

    for token in tokenize(text):
        while stamped <= token.line:
            info[stamped].depth = depth
            stamped += 1
        end_line, _ = advance_position(token.line, token.col, token.lexeme)
        if token.kind is not TokenKind.WHITESPACE:
            if info[token.line].first_lexeme is None and not info[token.line].inside_multiline:
                info[token.line].first_lexeme = token.lexeme
            for spanned in range(token.line + 1, min(end_line, line_count) + 1):
                while stamped <= spanned:
                    info[stamped].depth = depth
                    stamped += 1
                info[spanned].inside_multiline = True
        if token.kind is TokenKind.PUNCT:
            if token.lexeme == "{":
                depth += 1
            elif token.lexeme == "}":
                depth -= 1
    while stamped <= line_count:
        info[stamped].depth = depth
        stamped += 1
    return info


def _target_columns(info: _LineInfo) -> int:
    depth = info.depth
    if info.first_lexeme == "}":
        depth -= 1
    return INDENT_WIDTH * max(depth, 0)


def indent_line(document: str, line_no: int) -> int:
    """The indentation column (number of leading spaces) for a line."""
    info = _analyze(document)
    if not 1 <= line_no < len(info):
        raise ValueError(f"line {line_no} is outside the document")
    line = document.split("\n")[line_no - 1]
    if info[line_no].inside_multiline:
        return len(line) - len(line.lstrip(" \t"))
    return _target_columns(info[line_no])


def reindent(document: str) -> str:
    info = _analyze(document)
    lines = document.split("\n")
    out: list[str] = []
    for i, line in enumerate(lines, start=1):
        if info[i].inside_multiline:
            out.append(line)
            continue
        body = line.lstrip(" \t")
        if not body:
            out.append("")
            continue
        out.append(" " * _target_columns(info[i]) + body)
    return "\n".join(out)
