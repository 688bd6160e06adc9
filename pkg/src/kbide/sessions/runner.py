"""Run execution: one worker thread per run, events over a queue.

A run owns its event queue (single consumer), an input buffer for
stdin lines, and a click buffer. The wall-clock deadline and the kill
flag are checked cooperatively: at every statement, inside solver
ticks, and while blocked waiting for input, with a 50 ms poll. The
output budget counts emitted text bytes; the chunk that crosses the
budget is still delivered, then the run ends with limit(output).

Every run emits exactly one exit event, last, no matter how it ends.
"""

from __future__ import annotations

import queue
import secrets
import threading
import time
from collections import deque
from dataclasses import dataclass, field

from ..limits import LimitExceeded, ResourceLimits
from .events import Ask, Cell, Exit, Grid, Label, Limit, SessionEvent, Stderr, Stdout, Viz
from .interpreter import Interpreter

_POLL_SECONDS = 0.05


class Killed(Exception):
    pass


class SessionBusy(Exception):
    pass


class VizState:
    """Grid dimensions and cell colors of the active visualization.

    Shared between the interpreter (drawing) and the run (click
    validation), so access is locked.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._width = 0
        self._height = 0
        self._colors: dict[tuple[int, int], str] = {}

    def set_grid(self, width: int, height: int) -> None:
        with self._lock:
            self._width = width
            self._height = height
            self._colors.clear()

    def has_grid(self) -> bool:
        with self._lock:
            return self._width > 0

    def in_bounds(self, x: int, y: int) -> bool:
        with self._lock:
            return 0 <= x < self._width and 0 <= y < self._height

    def set_cell(self, x: int, y: int, color: str) -> None:
        with self._lock:
            self._colors[(x, y)] = color

    def color_at(self, x: int, y: int) -> str:
        with self._lock:
            return self._colors.get((x, y), "")


class Run:
    """One execution of a session, in main or shell mode."""

    def __init__(self, session: "Session", mode: str, entry: str = "main"):
        self.session = session
        self.mode = mode
        self.entry = entry
        self.limits = session.limits
        self.events: "queue.Queue[SessionEvent]" = queue.Queue()
        self.viz = VizState()
        self._cv = threading.Condition()
        self._stdin: deque[str] = deque()
        self._clicks: deque[tuple[int, int]] = deque()
        self._killed = False
        self._deadline = time.monotonic() + self.limits.wall_ms / 1000.0
        self._emitted_bytes = 0
        self._out_limited = False
        self.finished = threading.Event()
        self._thread = threading.Thread(target=self._worker, daemon=True)

    def start(self) -> "Run":
        self._thread.start()
        return self

    # -- control (called from any thread) --------------------------------

    def send_input(self, line: str) -> None:
        with self._cv:
            self._stdin.append(line)
            self._cv.notify_all()

    def send_click(self, x: int, y: int) -> None:
        if not self.viz.has_grid():
            self._put(Stderr("warning: click ignored: no active grid\n"))
            return
        if not self.viz.in_bounds(x, y):
            self._put(Stderr(f"warning: click ({x}, {y}) outside the grid; ignored\n"))
            return
        with self._cv:
            self._clicks.append((x, y))
            self._cv.notify_all()

    def kill(self) -> None:
        with self._cv:
            self._killed = True
            self._cv.notify_all()

    def next_event(self, timeout: float | None = None) -> SessionEvent | None:
        try:
            return self.events.get(timeout=timeout)
        except queue.Empty:
            return None

    def drain(self, timeout: float = 30.0) -> list[SessionEvent]:
        """All events through exit; for tests and synchronous callers."""
        out: list[SessionEvent] = []
        end = time.monotonic() + timeout
        while True:
            remaining = end - time.monotonic()
            if remaining <= 0:
                raise TimeoutError("run did not finish in time")
            event = self.next_event(timeout=min(remaining, 1.0))
            if event is None:
                continue
            out.append(event)
            if isinstance(event, Exit):
                return out

    # -- context interface for the interpreter ----------------------------

    def tick(self) -> None:
        if self._killed:
            raise Killed()
        if time.monotonic() > self._deadline:
            raise LimitExceeded("wall")

    def _put(self, event: SessionEvent) -> None:
        self.events.put(event)

    def _emit_text(self, event: Stdout | Stderr) -> None:
        self.tick()
        self._put(event)
        self._emitted_bytes += len(event.data.encode("utf-8"))
        if self._emitted_bytes > self.limits.output_bytes_max:
            raise LimitExceeded("output")

    def emit_stdout(self, data: str) -> None:
        self._emit_text(Stdout(data))

    def emit_stderr(self, data: str) -> None:
        self._emit_text(Stderr(data))

    def emit_grid(self, width: int, height: int) -> None:
        self._put(Viz((Grid(width, height),)))

    def emit_cell(self, x: int, y: int, color: str) -> None:
        self._put(Viz((Cell(x, y, color),)))

    def emit_label(self, x: int, y: int, text: str) -> None:
        self._put(Viz((Label(x, y, text),)))

    def ask(self, prompt: str) -> str:
        self.tick()
        self._put(Ask(prompt))
        with self._cv:
            while True:
                if self._stdin:
                    return self._stdin.popleft()
                if self._killed:
                    raise Killed()
                if time.monotonic() > self._deadline:
                    raise LimitExceeded("wall")
                self._cv.wait(_POLL_SECONDS)

    def wait_click(self) -> tuple[int, int]:
        self.tick()
        with self._cv:
            while True:
                if self._clicks:
                    return self._clicks.popleft()
                if self._killed:
                    raise Killed()
                if time.monotonic() > self._deadline:
                    raise LimitExceeded("wall")
                self._cv.wait(_POLL_SECONDS)

    # -- worker ------------------------------------------------------------

    def _worker(self) -> None:
        code = 0
        try:
            interpreter = Interpreter(self, self.session.files, self.limits)
            if self.mode == "shell":
                code = interpreter.run_shell()
            else:
                code = interpreter.run_main(self.entry)
        except Killed:
            self._put(Limit("killed"))
            code = 2
        except LimitExceeded as exc:
            self._put(Limit(exc.kind))
            code = 2
        except BaseException as exc:  # pragma: no cover - defensive
            self._put(Stderr(f"internal error: {exc}\n"))
            code = 1
        finally:
            self._put(Exit(code))
            self.session.state = "finished"
            self.finished.set()


@dataclass
class Session:
    id: str
    files: dict[str, str]
    mode: str  # "main" | "shell"
    limits: ResourceLimits
    state: str = "idle"
    run: Run | None = None


class SessionRegistry:
    """Thread-safe session table; ids are unguessable."""

    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def create(self, files: dict[str, str], mode: str, limits: ResourceLimits) -> Session:
        if mode not in ("main", "shell"):
            raise ValueError(f"unknown mode {mode!r}")
        session = Session(secrets.token_urlsafe(16), dict(files), mode, limits)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

    def remove(self, session_id: str) -> None:
        with self._lock:
            self._sessions.pop(session_id, None)

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._sessions)


def _start(session: Session, mode: str, entry: str = "main") -> Run:
    if session.run is not None and not session.run.finished.is_set():
        raise SessionBusy(f"session {session.id} already has an active run")
    session.state = "running"
    run = Run(session, mode, entry)
    session.run = run
    return run.start()


def run_main(session: Session, entry: str = "main") -> Run:
    return _start(session, "main", entry)


def run_shell(session: Session) -> Run:
    return _start(session, "shell")
