"""Code snippets offered by completion.

A snippet body may contain the cursor placeholder ``$0``, which the
frontend removes and uses as the caret position after insertion.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

CURSOR_MARK = "$0"

_TRIGGER_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Snippet:
    trigger: str
    body: str
    description: str

    def __post_init__(self) -> None:
        if not _TRIGGER_RE.match(self.trigger):
            raise ValueError(f"snippet trigger {self.trigger!r} is not a valid identifier")


BUILTIN_SNIPPETS: list[Snippet] = [
    Snippet(
        "vocabulary",
        "vocabulary V {\n    $0\n}",
        "Vocabulary block: declare types, predicates, and constants",
    ),
    Snippet(
        "theory",
        "theory T : V {\n    $0\n}",
        "Theory block: sentences over a vocabulary",
    ),
    Snippet(
        "structure",
        "structure S : V {\n    $0\n}",
        "Structure block: domains and interpretations",
    ),
    Snippet(
        "procedure",
        "procedure main() {\n    $0\n}",
        "Procedure block: the commands to run",
    ),
    Snippet(
        "reachability",
        "/* reachability of y from x through edge, as an inductive definition\n"
        "   (definitions are not executable in this engine):\n"
        "   { reach(x, y) <- edge(x, y).\n"
        "     reach(x, y) <- reach(x, z) & edge(z, y). } */\n$0",
        "Reachability relation definition, inserted as a comment",
    ),
]


def load_snippets(path: str | Path) -> list[Snippet]:
    """Read a ``snippets.json`` array of {trigger, body, description}."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, list):
        raise ValueError("snippets.json must contain an array")
    out = []
    for i, entry in enumerate(doc):
        try:
            out.append(
                Snippet(str(entry["trigger"]), str(entry["body"]), str(entry.get("description", "")))
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"snippets.json entry {i} is malformed") from exc
    return out
