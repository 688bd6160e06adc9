"""Resource limits shared by the inference engine and run sessions."""

from __future__ import annotations

from dataclasses import dataclass

# Stands in for "no wall limit" in local mode; roughly 24 days.
UNLIMITED_WALL_MS = 2**31


@dataclass(frozen=True)
class ResourceLimits:
    wall_ms: int = UNLIMITED_WALL_MS
    output_bytes_max: int = 1_048_576
    max_models: int = 100
    ground_atoms_max: int = 100_000
    max_decisions: int = 1_000_000

    def __post_init__(self) -> None:
        for name in ("wall_ms", "output_bytes_max", "max_models", "ground_atoms_max", "max_decisions"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def local(cls, **overrides) -> "ResourceLimits":
        return cls(**overrides)

    @classmethod
    def online(cls, **overrides) -> "ResourceLimits":
        values = {"wall_ms": 10_000}
        values.update(overrides)
        return cls(**values)


class LimitExceeded(Exception):
    """A run crossed one of its limits.

    ``kind`` is one of: wall, output, ground_atoms, decisions, killed.
    """

    def __init__(self, kind: str):
        super().__init__(f"limit exceeded: {kind}")
        self.kind = kind
