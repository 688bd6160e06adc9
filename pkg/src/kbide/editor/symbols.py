"""Logical symbol replacement: a display-only transform.

The ASCII connectives are swapped for their mathematical counterparts
inside tokens classified as logical, and nowhere else; comments and
identifiers keep their text. Files on disk and on the wire always
store the ASCII form, so the position map must convert display offsets
back to source offsets exactly.

Offsets are absolute indices in Unicode scalar values.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from ..lang.tokens import TokenKind, tokenize

# Longest match first; the lexer guarantees this by tokenizing "<=>"
# before "=>". The mapping is injective.
SYMBOL_MAP: tuple[tuple[str, str], ...] = (
    ("<=>", "⇔"),  # ⇔
    ("=>", "⇒"),  # ⇒
    ("!", "∀"),  # ∀
    ("?", "∃"),  # ∃
    ("&", "∧"),  # ∧
    ("|", "∨"),  # ∨
    ("~", "¬"),  # ¬
)

_ASCII_TO_DISPLAY = dict(SYMBOL_MAP)


@dataclass(frozen=True)
class Segment:
    """One replaced span: source [src_start, src_end) shown as display
    [disp_start, disp_end)."""

    src_start: int
    src_end: int
    disp_start: int
    disp_end: int
    source_text: str


class PositionMap:
    def __init__(self, segments: list[Segment], src_len: int, disp_len: int):
        self.segments = segments
        self.src_len = src_len
        self.disp_len = disp_len
        self._disp_starts = [s.disp_start for s in segments]
        self._src_starts = [s.src_start for s in segments]

    def to_source(self, disp_offset: int) -> int:
        disp_offset = max(0, min(disp_offset, self.disp_len))
        i = bisect_right(self._disp_starts, disp_offset) - 1
        if i < 0:
            return disp_offset
        seg = self.segments[i]
        if disp_offset < seg.disp_end:
            return seg.src_start
        return disp_offset + (seg.src_end - seg.disp_end)

    def to_display(self, src_offset: int) -> int:
        src_offset = max(0, min(src_offset, self.src_len))
        i = bisect_right(self._src_starts, src_offset) - 1
        if i < 0:
            return src_offset
        seg = self.segments[i]
        if src_offset < seg.src_end:
            return seg.disp_start
        return src_offset + (seg.disp_end - seg.src_end)

    def restore(self, display_text: str) -> str:
        """Reverse the transform: splice the ASCII spellings back in."""
        out: list[str] = []
        pos = 0
        for seg in self.segments:
            out.append(display_text[pos : seg.disp_start])
            out.append(seg.source_text)
            pos = seg.disp_end
        out.append(display_text[pos:])
        return "".join(out)


def replace_symbols(
    text: str, symbol_map: tuple[tuple[str, str], ...] = SYMBOL_MAP
) -> tuple[str, PositionMap]:
    mapping = dict(symbol_map)
    out: list[str] = []
    segments: list[Segment] = []
    src_off = 0
    disp_off = 0
    for token in tokenize(text):
        lexeme = token.lexeme
        if token.kind is TokenKind.LOGICAL and lexeme in mapping:
            display = mapping[lexeme]
            segments.append(
                Segment(src_off, src_off + len(lexeme), disp_off, disp_off + len(display), lexeme)
            )
            out.append(display)
            disp_off += len(display)
        else:
            out.append(lexeme)
            disp_off += len(lexeme)
        src_off += len(lexeme)
    return "".join(out), PositionMap(segments, len(text), disp_off)
