"""The HTTP server: REST API, session WebSocket, and static assets.

Route map:

    GET  /api/files              workspace listing
    GET  /api/file?path=...      file content
    PUT  /api/file               write (local mode only)
    POST /api/check              parse + resolve diagnostics
    POST /api/inference          modelexpand | propagate | unsatcore
    GET  /api/tutorials          tutorial index
    GET  /api/tutorials/{id}     one tutorial bundle
    POST /api/share              create a share record
    GET  /api/share/{id}         fetch a share record
    WS   /ws/session             interactive runs
    GET  /                       frontend assets

Positions on the wire are 1-based everywhere. In online mode no API
call writes the filesystem: file writes answer 403 and shares go to
memory or the external backend.
"""

from __future__ import annotations

import asyncio
import logging
import os
from pathlib import Path

from fastapi import FastAPI, Request, Response, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from ..engine import Inconsistent, Satisfiable, build_structure, modelexpand, propagate, unsatcore
from ..lang import analyze
from ..lang.diagnostics import Diagnostic, Range, Severity
from ..limits import LimitExceeded
from ..sessions import Exit, SessionRegistry, run_main, run_shell, to_wire
from ..share import (
    ExternalShareStore,
    LocalShareStore,
    MemoryShareStore,
    ShareNotFound,
    ShareTooLarge,
    UpstreamError,
)
from .config import ServerConfig
from .tutorials import load_tutorials

log = logging.getLogger(__name__)

MAX_PAYLOAD_BYTES = 1_048_576

_FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>kbide</title></head>
<body><h1>kbide server</h1>
<p>The API is up. No frontend build was found; point static_dir at a
built frontend, or use the REST API directly (see /api/files).</p>
</body></html>
"""


class TraversalError(Exception):
    pass


class Workspace:
    """Filesystem access rooted at the workspace directory.

    Pure reads in online mode; writes are atomic in local mode. The
    shares directory is owned by the share store and hidden from
    listings.
    """

    def __init__(self, root: Path, writable: bool):
        self.root = root.resolve()
        self.writable = writable

    def _resolve(self, rel_path: str) -> Path:
        if not rel_path or "\\" in rel_path:
            raise TraversalError(rel_path)
        candidate = Path(rel_path)
        if candidate.is_absolute() or ".." in candidate.parts:
            raise TraversalError(rel_path)
        resolved = (self.root / candidate).resolve()
        if resolved != self.root and self.root not in resolved.parents:
            raise TraversalError(rel_path)
        return resolved

    def list_files(self) -> list[str]:
        names: list[str] = []
        for path in self.root.rglob("*"):
            if not path.is_file():
                continue
            rel = path.relative_to(self.root)
            if rel.parts and rel.parts[0] == "shares":
                continue
            if any(part.startswith(".") for part in rel.parts):
                continue
            names.append(rel.as_posix())
        return sorted(names)

    def read(self, rel_path: str) -> str:
        path = self._resolve(rel_path)
        if not path.is_file():
            raise FileNotFoundError(rel_path)
        return path.read_text(encoding="utf-8")

    def write(self, rel_path: str, content: str) -> None:
        path = self._resolve(rel_path)  # malformed paths are 400 in any mode
        if not self.writable:
            raise PermissionError("the workspace is read-only in online mode")
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(content, encoding="utf-8")
        os.replace(tmp, path)


class FileEntry(BaseModel):
    name: str
    content: str


class WriteRequest(BaseModel):
    path: str
    content: str


class CheckRequest(BaseModel):
    files: list[FileEntry] = Field(default_factory=list)


class InferenceRequest(BaseModel):
    files: list[FileEntry] = Field(default_factory=list)
    kind: str
    theory: str
    structure: str
    max_models: int | None = None


class ShareRequest(BaseModel):
    files: list[FileEntry] = Field(default_factory=list)


def _files_dict(entries: list[FileEntry]) -> dict[str, str]:
    return {e.name: e.content for e in entries}


def _diag_payload(diags: list[Diagnostic]) -> dict:
    return {"diagnostics": [d.to_wire() for d in diags]}


def _core_diagnostics(core) -> list[Diagnostic]:
    """One core diagnostic per sentence, instantiations aggregated."""
    grouped: dict[tuple, list] = {}
    order: list[tuple] = []
    for item in core.items:
        key = (item.file, item.sentence_index, item.range)
        if key not in grouped:
            grouped[key] = []
            order.append(key)
        grouped[key].append(item.substitution)
    diagnostics = []
    for key in order:
        file, _, rng = key
        insts = grouped[key]
        diagnostics.append(
            Diagnostic(
                Severity.CORE,
                file,
                rng,
                "this sentence is part of a minimal unsatisfiable core",
                instantiations=insts,
            )
        )
    return diagnostics


def create_app(config: ServerConfig) -> FastAPI:
    app = FastAPI(title="kbide", version="0.1.0", docs_url=None, redoc_url=None)

    workspace = Workspace(config.workspace, writable=config.mode == "local")
    registry = SessionRegistry()
    share_store = _make_share_store(config)
    tutorials = load_tutorials(config.tutorials_dir)

    app.state.config = config
    app.state.workspace = workspace
    app.state.registry = registry
    app.state.share_store = share_store
    app.state.tutorials = tutorials

    @app.middleware("http")
    async def payload_cap(request: Request, call_next):
        if request.url.path.startswith("/api/"):
            length = request.headers.get("content-length")
            if length and length.isdigit() and int(length) > MAX_PAYLOAD_BYTES:
                return JSONResponse({"detail": "payload too large"}, status_code=413)
        return await call_next(request)

    # -- workspace files ------------------------------------------------

    @app.get("/api/files")
    def list_files():
        return {"files": workspace.list_files()}

    @app.get("/api/file")
    def read_file(path: str):
        try:
            return {"path": path, "content": workspace.read(path)}
        except TraversalError:
            return JSONResponse({"detail": "path escapes the workspace"}, status_code=400)
        except FileNotFoundError:
            return JSONResponse({"detail": f"no such file: {path}"}, status_code=404)
        except (OSError, UnicodeDecodeError):
            return JSONResponse({"detail": f"cannot read {path}"}, status_code=400)

    @app.put("/api/file")
    def write_file(body: WriteRequest):
        try:
            workspace.write(body.path, body.content)
        except TraversalError:
            return JSONResponse({"detail": "path escapes the workspace"}, status_code=400)
        except PermissionError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=403)
        return {"ok": True, "path": body.path}

    # -- language services ------------------------------------------------

    @app.post("/api/check")
    def check(body: CheckRequest):
        result = analyze(_files_dict(body.files))
        return _diag_payload(result.diagnostics)

    @app.post("/api/inference")
    def inference(body: InferenceRequest):
        if body.kind not in ("modelexpand", "propagate", "unsatcore"):
            return JSONResponse(
                {"detail": f"unknown inference kind {body.kind!r}"}, status_code=422
            )
        result = analyze(_files_dict(body.files))
        if not result.ok:
            return JSONResponse(_diag_payload(result.diagnostics), status_code=422)
        typed = result.typed

        def missing(kind: str, name: str) -> JSONResponse:
            diag = Diagnostic(
                Severity.ERROR, "<request>", Range(1, 1, 1, 1), f"unknown {kind} '{name}'"
            )
            return JSONResponse(_diag_payload([diag]), status_code=422)

        theory = typed.theories.get(body.theory)
        if theory is None:
            return missing("theory", body.theory)
        if body.structure not in typed.structures:
            return missing("structure", body.structure)
        structure = build_structure(typed, body.structure)
        if theory.vocab.name != structure.vocab.name:
            diag = Diagnostic(
                Severity.ERROR,
                "<request>",
                Range(1, 1, 1, 1),
                f"theory '{body.theory}' and structure '{body.structure}' use different vocabularies",
            )
            return JSONResponse(_diag_payload([diag]), status_code=422)

        limits = config.limits
        try:
            if body.kind == "modelexpand":
                requested = body.max_models if body.max_models is not None else 1
                if requested < 1:
                    return JSONResponse(
                        {"detail": "max_models must be at least 1"}, status_code=422
                    )
                cap = min(requested, limits.max_models)
                models = modelexpand(theory, structure, cap, limits)
                return {
                    "models": [m.render(name=f"M{i}") for i, m in enumerate(models, start=1)],
                    "count": len(models),
                }
            if body.kind == "propagate":
                try:
                    refined = propagate(theory, structure, limits)
                except Inconsistent:
                    return {"satisfiable": False}
                return {"satisfiable": True, "structure": refined.render()}
            try:
                core = unsatcore(theory, structure, limits)
            except Satisfiable:
                return {"satisfiable": True}
            return {
                "satisfiable": False,
                **_diag_payload(_core_diagnostics(core)),
            }
        except LimitExceeded as exc:
            return JSONResponse({"error": "limit", "kind": exc.kind}, status_code=422)

    # -- tutorials ---------------------------------------------------------

    @app.get("/api/tutorials")
    def tutorial_index():
        return {
            "tutorials": [
                {"id": t.id, "title": t.title} for t in tutorials.values()
            ]
        }

    @app.get("/api/tutorials/{tutorial_id}")
    def tutorial_detail(tutorial_id: str):
        bundle = tutorials.get(tutorial_id)
        if bundle is None:
            return JSONResponse(
                {"detail": f"no such tutorial: {tutorial_id}"}, status_code=404
            )
        return {
            "id": bundle.id,
            "title": bundle.title,
            "explanation": bundle.explanation,
            "files": bundle.files,
        }

    # -- sharing ---------------------------------------------------------

    @app.post("/api/share")
    def create_share(body: ShareRequest, request: Request):
        files = _files_dict(body.files)
        if not files:
            return JSONResponse({"detail": "no files to share"}, status_code=422)
        try:
            share_id = share_store.create(files)
        except ShareTooLarge as exc:
            return JSONResponse({"detail": str(exc)}, status_code=413)
        except UpstreamError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=502)
        url = f"{request.base_url}#share={share_id}"
        return {"id": share_id, "url": url}

    @app.get("/api/share/{share_id}")
    def fetch_share(share_id: str):
        try:
            files = share_store.fetch(share_id)
        except ShareNotFound:
            return JSONResponse({"detail": f"unknown share '{share_id}'"}, status_code=404)
        except UpstreamError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=502)
        return {"files": [{"name": n, "content": c} for n, c in sorted(files.items())]}

    # -- interactive sessions ----------------------------------------------

    @app.websocket("/ws/session")
    async def ws_session(websocket: WebSocket):
        await websocket.accept()
        try:
            first = await websocket.receive_json()
        except WebSocketDisconnect:
            return
        except Exception:
            await websocket.close(code=4400, reason="malformed message")
            return
        if not isinstance(first, dict) or first.get("type") != "start":
            await websocket.close(code=4400, reason="the first message must be start")
            return
        mode = first.get("mode", "main")
        if mode not in ("main", "shell"):
            await websocket.close(code=4400, reason=f"unknown mode {mode!r}")
            return
        raw_files = first.get("files", [])
        if isinstance(raw_files, dict):
            files = {str(k): str(v) for k, v in raw_files.items()}
        elif isinstance(raw_files, list):
            try:
                files = {str(e["name"]): str(e["content"]) for e in raw_files}
            except (TypeError, KeyError):
                await websocket.close(code=4400, reason="malformed files")
                return
        else:
            await websocket.close(code=4400, reason="malformed files")
            return
        entry = str(first.get("entry", "main"))

        session = registry.create(files, mode, config.limits)
        run = run_main(session, entry) if mode == "main" else run_shell(session)

        protocol_error: list[str] = []

        async def reader():
            while True:
                try:
                    message = await websocket.receive_json()
                except WebSocketDisconnect:
                    run.kill()
                    return
                except Exception:
                    protocol_error.append("malformed message")
                    run.kill()
                    return
                kind = message.get("type") if isinstance(message, dict) else None
                if kind == "stdin":
                    run.send_input(str(message.get("data", "")))
                elif kind == "click":
                    try:
                        run.send_click(int(message["x"]), int(message["y"]))
                    except (KeyError, TypeError, ValueError):
                        protocol_error.append("malformed click")
                        run.kill()
                        return
                elif kind == "kill":
                    run.kill()
                else:
                    protocol_error.append(f"unexpected message type {kind!r}")
                    run.kill()
                    return

        async def pump():
            while True:
                event = await asyncio.to_thread(run.next_event, 0.05)
                if event is None:
                    continue
                await websocket.send_json(to_wire(event))
                if isinstance(event, Exit):
                    return

        reader_task = asyncio.create_task(reader())
        pump_task = asyncio.create_task(pump())
        try:
            done, pending = await asyncio.wait(
                {reader_task, pump_task}, return_when=asyncio.FIRST_COMPLETED
            )
            if pump_task in done:
                reader_task.cancel()
            else:
                # reader finished first: disconnect or protocol violation;
                # the run is already killed, drain it quietly
                pump_task.cancel()
            for task in pending:
                try:
                    await task
                except (asyncio.CancelledError, Exception):
                    pass
        finally:
            run.kill()
            try:
                if protocol_error:
                    await websocket.close(code=4400, reason=protocol_error[0])
                else:
                    await websocket.close()
            except Exception:
                pass

    # -- frontend assets ---------------------------------------------------

    static_dir = config.static_dir
    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")
    else:
        if static_dir is not None:
            log.warning("static_dir %s does not exist; serving a fallback page", static_dir)

        @app.get("/", response_class=HTMLResponse)
        def index():
            return HTMLResponse(_FALLBACK_PAGE)

    return app


def _make_share_store(config: ServerConfig):
    backend = config.share_backend
    if backend.kind == "external":
        return ExternalShareStore(backend.base_url, backend.token_env_var)
    if config.mode == "online":
        # Online mode must not write the filesystem; a plain local
        # backend would. Durable online sharing needs the external
        # backend, mirroring the hosted-paste setup.
        return MemoryShareStore()
    return LocalShareStore(config.workspace / "shares")
