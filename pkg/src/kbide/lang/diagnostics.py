"""Source positions and diagnostics.

All positions are 1-based line/column counted in Unicode scalar values.
Ranges are inclusive at the start and exclusive at the end, which is the
shape editors expect for squiggle decorations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    CORE = "core"


@dataclass(frozen=True)
class Range:
    line: int
    col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if (self.end_line, self.end_col) < (self.line, self.col):
            raise ValueError(f"range end before start: {self}")

    def merge(self, other: "Range") -> "Range":
        start = min((self.line, self.col), (other.line, other.col))
        end = max((self.end_line, self.end_col), (other.end_line, other.end_col))
        return Range(start[0], start[1], end[0], end[1])

    def __str__(self) -> str:
        return f"{self.line}:{self.col}-{self.end_line}:{self.end_col}"


def advance_position(line: int, col: int, text: str) -> tuple[int, int]:
    """Position after reading ``text`` starting at (line, col)."""
    newlines = text.count("\n")
    if newlines:
        return line + newlines, len(text) - text.rfind("\n")
    return line, col + len(text)


@dataclass
class Diagnostic:
    severity: Severity
    file: str
    range: Range
    message: str
    instantiations: list[str] | None = None

    def to_wire(self) -> dict:
        doc = {
            "severity": self.severity.value,
            "file": self.file,
            "line": self.range.line,
            "col": self.range.col,
            "end_line": self.range.end_line,
            "end_col": self.range.end_col,
            "message": self.message,
        }
        if self.instantiations is not None:
            doc["instantiations"] = list(self.instantiations)
        return doc

    def __str__(self) -> str:
        return f"{self.file}:{self.range.line}:{self.range.col}: {self.severity.value}: {self.message}"


def sort_diagnostics(diags: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=lambda d: (d.file, d.range.line, d.range.col, d.severity.value))
