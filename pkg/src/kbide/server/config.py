"""Server configuration: ide.json plus environment overrides.

The config file is a single JSON document. ``KBIDE_MODE`` and
``KBIDE_PORT`` override the file; explicit keyword overrides (from CLI
flags) win over both. Local mode binds to loopback by default; online
mode must be given a bind address explicitly.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..limits import ResourceLimits


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class ShareBackendConfig:
    kind: str = "local"  # "local" | "external"
    base_url: str | None = None
    token_env_var: str | None = None


@dataclass(frozen=True)
class ServerConfig:
    workspace: Path
    mode: str = "local"
    port: int = 8080
    host: str | None = None
    limits: ResourceLimits = field(default_factory=ResourceLimits)
    share_backend: ShareBackendConfig = field(default_factory=ShareBackendConfig)
    static_dir: Path | None = None
    tutorials_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("local", "online"):
            raise ConfigError(f"mode must be 'local' or 'online', not {self.mode!r}")
        if not 1 <= self.port <= 65535:
            raise ConfigError(f"port {self.port} is out of range")
        if not self.workspace.is_dir():
            raise ConfigError(f"workspace '{self.workspace}' is not a readable directory")
        if not os.access(self.workspace, os.R_OK):
            raise ConfigError(f"workspace '{self.workspace}' is not readable")
        if self.share_backend.kind not in ("local", "external"):
            raise ConfigError("share_backend kind must be 'local' or 'external'")
        if self.share_backend.kind == "external" and not self.share_backend.base_url:
            raise ConfigError("an external share backend needs a base_url")

    @property
    def bind_host(self) -> str:
        if self.host:
            return self.host
        if self.mode == "local":
            return "127.0.0.1"
        raise ConfigError("online mode needs an explicit bind address (host)")


def _default_limits(mode: str) -> ResourceLimits:
    return ResourceLimits.online() if mode == "online" else ResourceLimits.local()


def load_config(
    config_path: str | Path | None = None,
    env: dict[str, str] | None = None,
    **overrides,
) -> ServerConfig:
    env = os.environ if env is None else env
    doc: dict = {}
    if config_path is not None:
        path = Path(config_path)
        if not path.is_file():
            raise ConfigError(f"config file '{path}' not found")
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file '{path}' is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"config file '{path}' must hold a JSON object")

    mode = overrides.get("mode") or env.get("KBIDE_MODE") or doc.get("mode") or "local"

    port_text = env.get("KBIDE_PORT")
    if overrides.get("port") is not None:
        port = int(overrides["port"])
    elif port_text:
        try:
            port = int(port_text)
        except ValueError as exc:
            raise ConfigError(f"KBIDE_PORT is not a number: {port_text!r}") from exc
    else:
        port = int(doc.get("port", 8080))

    workspace = overrides.get("workspace") or doc.get("workspace") or "."
    host = overrides.get("host") or doc.get("host")

    limit_values = dict(doc.get("limits", {}))
    unknown = set(limit_values) - {
        "wall_ms",
        "output_bytes_max",
        "max_models",
        "ground_atoms_max",
        "max_decisions",
    }
    if unknown:
        raise ConfigError(f"unknown limit keys: {sorted(unknown)}")
    limits = replace(_default_limits(mode), **limit_values)

    share_doc = doc.get("share_backend", {})
    if isinstance(share_doc, str):
        share_doc = {"kind": share_doc}
    share = ShareBackendConfig(
        kind=share_doc.get("kind", "local"),
        base_url=share_doc.get("base_url"),
        token_env_var=share_doc.get("token_env_var"),
    )

    static_dir = overrides.get("static_dir") or doc.get("static_dir")
    tutorials_dir = overrides.get("tutorials_dir") or doc.get("tutorials_dir")

    return ServerConfig(
        workspace=Path(workspace),
        mode=mode,
        port=port,
        host=host,
        limits=limits,
        share_backend=share,
        static_dir=Path(static_dir) if static_dir else None,
        tutorials_dir=Path(tutorials_dir) if tutorials_dir else None,
    )
