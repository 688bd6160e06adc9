"""Three-valued structures over finite typed domains."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..lang.resolver import TypedProgram, VocabInfo

AtomKey = tuple[str, tuple[str, ...]]


class EngineError(Exception):
    pass


@dataclass
class PartialStructure:
    """A (partial) interpretation: domains, atom values, constant values.

    ``atoms`` holds only the determined atoms; anything absent is
    unknown. Domain element order is the declaration order and is
    preserved everywhere for deterministic output.
    """

    vocab: VocabInfo
    domains: dict[str, list[str]]
    atoms: dict[AtomKey, bool] = field(default_factory=dict)
    constants: dict[str, str] = field(default_factory=dict)
    name: str = "S"

    def value(self, pred: str, args: tuple[str, ...]) -> bool | None:
        return self.atoms.get((pred, args))

    def copy(self) -> "PartialStructure":
        return PartialStructure(
            self.vocab,
            {t: list(es) for t, es in self.domains.items()},
            dict(self.atoms),
            dict(self.constants),
            self.name,
        )

    def pred_atoms(self, pred: str) -> list[AtomKey]:
        sig = self.vocab.predicates[pred]
        combos = itertools.product(*(self.domains[ty] for ty in sig.arg_types))
        return [(pred, combo) for combo in combos]

    def all_pred_atoms(self) -> list[AtomKey]:
        out: list[AtomKey] = []
        for pred in self.vocab.predicates:
            out.extend(self.pred_atoms(pred))
        return out

    def is_total(self) -> bool:
        if any(key not in self.atoms for key in self.all_pred_atoms()):
            return False
        return all(c in self.constants for c in self.vocab.constants)

    def key(self) -> tuple:
        """Hashable identity for set comparisons in tests."""
        return (
            tuple(sorted(self.atoms.items())),
            tuple(sorted(self.constants.items())),
        )

    def render(self, name: str | None = None) -> str:
        """Canonical structure block text; reparses to an equal structure."""
        lines = [f"structure {name or self.name} : {self.vocab.name} {{"]
        for t in self.vocab.types:
            elems = "; ".join(self.domains[t])
            lines.append(f"    {t} = {{ {elems} }}")
        for c in self.vocab.constants:
            if c in self.constants:
                lines.append(f"    {c} = {self.constants[c]}")
        for pred, sig in self.vocab.predicates.items():
            if not sig.arg_types:
                v = self.atoms.get((pred, ()))
                if v is not None:
                    lines.append(f"    {pred} = {'true' if v else 'false'}")
                continue
            keys = self.pred_atoms(pred)
            trues = [k for k in keys if self.atoms.get(k) is True]
            falses = [k for k in keys if self.atoms.get(k) is False]
            if len(trues) + len(falses) == len(keys):
                lines.append(f"    {pred} = {_render_set(trues)}")
            else:
                if trues:
                    lines.append(f"    {pred}<ct> = {_render_set(trues)}")
                if falses:
                    lines.append(f"    {pred}<cf> = {_render_set(falses)}")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _render_set(keys: list[AtomKey]) -> str:
    parts = []
    for _, combo in keys:
        if len(combo) == 1:
            parts.append(combo[0])
        else:
            parts.append("(" + ", ".join(combo) + ")")
    if not parts:
        return "{}"
    return "{ " + "; ".join(parts) + " }"


def build_structure(typed: TypedProgram, name: str) -> PartialStructure:
    """Materialize a resolved structure block by name."""
    info = typed.structures.get(name)
    if info is None:
        raise EngineError(f"unknown structure '{name}'")
    return PartialStructure(
        info.vocab,
        {t: list(es) for t, es in info.domains.items()},
        dict(info.atoms),
        dict(info.constants),
        name,
    )
