"""Language-aware editing support: highlighting, symbol replacement,
indentation, and completion."""

from .complete import Candidate, completions
from .highlight import classify
from .indent import INDENT_WIDTH, indent_line, reindent
from .snippets import BUILTIN_SNIPPETS, CURSOR_MARK, Snippet, load_snippets
from .symbols import SYMBOL_MAP, PositionMap, replace_symbols

__all__ = [
    "Candidate",
    "completions",
    "classify",
    "INDENT_WIDTH",
    "indent_line",
    "reindent",
    "BUILTIN_SNIPPETS",
    "CURSOR_MARK",
    "Snippet",
    "load_snippets",
    "SYMBOL_MAP",
    "PositionMap",
    "replace_symbols",
]
