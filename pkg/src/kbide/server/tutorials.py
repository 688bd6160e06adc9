"""Tutorial bundles: an explanation pane coupled to example files.

Each tutorial is one JSON document: {"title", "explanation", "files"}.
The bundle id is the file stem. Files are parse-checked at load time;
problems are logged as warnings, never fatal, so a broken example
cannot take the server down.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..lang import analyze

log = logging.getLogger(__name__)

_SLUG_RE = re.compile(r"^[a-z0-9][a-z0-9\-_]*$")


@dataclass(frozen=True)
class TutorialBundle:
    id: str
    title: str
    explanation: str
    files: dict[str, str]


def _load_one(slug: str, text: str) -> TutorialBundle | None:
    if not _SLUG_RE.match(slug):
        log.warning("tutorial id %r is not a slug; skipped", slug)
        return None
    try:
        doc = json.loads(text)
        bundle = TutorialBundle(
            slug,
            str(doc["title"]),
            str(doc["explanation"]),
            {str(k): str(v) for k, v in doc["files"].items()},
        )
    except (json.JSONDecodeError, KeyError, TypeError, AttributeError) as exc:
        log.warning("tutorial %r is malformed: %s", slug, exc)
        return None
    check = analyze(bundle.files)
    for diag in check.diagnostics:
        log.warning("tutorial %r: %s", slug, diag)
    return bundle


def load_tutorials(directory: Path | None = None) -> dict[str, TutorialBundle]:
    """Tutorials from a directory, or the packaged set when none given."""
    bundles: dict[str, TutorialBundle] = {}
    if directory is not None:
        for path in sorted(directory.glob("*.json")):
            bundle = _load_one(path.stem, path.read_text(encoding="utf-8"))
            if bundle is not None:
                bundles[bundle.id] = bundle
        return bundles
    seed_dir = resources.files(__package__) / "tutorials"
    for entry in sorted(seed_dir.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            bundle = _load_one(entry.name[: -len(".json")], entry.read_text(encoding="utf-8"))
            if bundle is not None:
                bundles[bundle.id] = bundle
    return bundles
