"""Durable share records behind a global link.

The local backend writes one JSON document per record, atomically
(write to a temp file, then rename), so records survive restarts. The
external backend posts to a configured paste service; its failures
surface as UpstreamError, never as a silent fallback. The in-memory
backend backs online mode when no external service is configured,
since online mode must not write the filesystem.
"""

from __future__ import annotations

import json
import os
import re
import secrets
import string
import threading
from datetime import datetime, timezone
from pathlib import Path

import httpx

SHARE_SIZE_CAP = 256 * 1024  # bytes of names plus contents

_ID_ALPHABET = string.digits + string.ascii_lowercase  # base36
_ID_LENGTH = 8
_ID_RE = re.compile(r"^[0-9a-z]{8}$")


class ShareError(Exception):
    pass


class ShareNotFound(ShareError):
    pass


class ShareTooLarge(ShareError):
    pass


class UpstreamError(ShareError):
    pass


def new_share_id() -> str:
    return "".join(secrets.choice(_ID_ALPHABET) for _ in range(_ID_LENGTH))


def payload_size(files: dict[str, str]) -> int:
    return sum(len(n.encode("utf-8")) + len(c.encode("utf-8")) for n, c in files.items())


def _check_payload(files: dict[str, str]) -> None:
    if not files:
        raise ShareError("nothing to share: no files given")
    size = payload_size(files)
    if size > SHARE_SIZE_CAP:
        raise ShareTooLarge(f"share payload is {size} bytes; the cap is {SHARE_SIZE_CAP}")


class LocalShareStore:
    """One JSON file per record under ``directory``."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def create(self, files: dict[str, str]) -> str:
        _check_payload(files)
        with self._lock:
            for _ in range(100):
                share_id = new_share_id()
                path = self.directory / f"{share_id}.json"
                if path.exists():
                    continue
                record = {
                    "id": share_id,
                    "created_at": datetime.now(timezone.utc).isoformat(),
                    "files": files,
                }
                tmp = path.with_suffix(".tmp")
                tmp.write_text(json.dumps(record, indent=2), encoding="utf-8")
                os.replace(tmp, path)
                return share_id
            raise ShareError("could not allocate a fresh share id")

    def fetch(self, share_id: str) -> dict[str, str]:
        if not _ID_RE.match(share_id):
            raise ShareNotFound(f"unknown share '{share_id}'")
        path = self.directory / f"{share_id}.json"
        if not path.exists():
            raise ShareNotFound(f"unknown share '{share_id}'")
        record = json.loads(path.read_text(encoding="utf-8"))
        return dict(record["files"])


class MemoryShareStore:
    """Volatile store; used in online mode without an external backend."""

    def __init__(self):
        self._lock = threading.Lock()
        self._records: dict[str, dict[str, str]] = {}

    def create(self, files: dict[str, str]) -> str:
        _check_payload(files)
        with self._lock:
            while True:
                share_id = new_share_id()
                if share_id not in self._records:
                    self._records[share_id] = dict(files)
                    return share_id

    def fetch(self, share_id: str) -> dict[str, str]:
        with self._lock:
            if share_id not in self._records:
                raise ShareNotFound(f"unknown share '{share_id}'")
            return dict(self._records[share_id])


class ExternalShareStore:
    """Client for a remote paste service.

    Contract: POST ``base_url`` with {"files": {...}} returns
    {"id": ...}; GET ``base_url/<id>`` returns {"files": {...}}. An
    optional bearer token is read from the named environment variable.
    """

    def __init__(
        self,
        base_url: str,
        token_env_var: str | None = None,
        client: httpx.Client | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.token_env_var = token_env_var
        self._client = client or httpx.Client(timeout=10.0)

    def _headers(self) -> dict[str, str]:
        if self.token_env_var:
            token = os.environ.get(self.token_env_var, "")
            if token:
                return {"Authorization": f"Bearer {token}"}
        return {}

    def create(self, files: dict[str, str]) -> str:
        _check_payload(files)
        try:
            response = self._client.post(
                self.base_url, json={"files": files}, headers=self._headers()
            )
        except httpx.HTTPError as exc:
            raise UpstreamError(f"share backend unreachable: {exc}") from exc
        if response.status_code != 200:
            raise UpstreamError(f"share backend returned {response.status_code}")
        try:
            return str(response.json()["id"])
        except (KeyError, ValueError) as exc:
            raise UpstreamError("share backend returned a malformed response") from exc

    def fetch(self, share_id: str) -> dict[str, str]:
        try:
            response = self._client.get(f"{self.base_url}/{share_id}", headers=self._headers())
        except httpx.HTTPError as exc:
            raise UpstreamError(f"share backend unreachable: {exc}") from exc
        if response.status_code == 404:
            raise ShareNotFound(f"unknown share '{share_id}'")
        if response.status_code != 200:
            raise UpstreamError(f"share backend returned {response.status_code}")
        try:
            return dict(response.json()["files"])
        except (KeyError, ValueError) as exc:
            raise UpstreamError("share backend returned a malformed response") from exc
