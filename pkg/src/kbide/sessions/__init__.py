"""Run sessions: procedure and shell execution under resource limits."""

from ..limits import LimitExceeded, ResourceLimits
from .events import (
    Ask,
    Cell,
    Exit,
    Grid,
    Label,
    Limit,
    SessionEvent,
    Stderr,
    Stdout,
    Viz,
    VizCommand,
    command_to_wire,
    to_wire,
)
from .interpreter import ExitSignal, Interpreter, ProcError
from .runner import (
    Killed,
    Run,
    Session,
    SessionBusy,
    SessionRegistry,
    VizState,
    run_main,
    run_shell,
)

__all__ = [
    "ResourceLimits",
    "LimitExceeded",
    "Ask",
    "Cell",
    "Exit",
    "Grid",
    "Label",
    "Limit",
    "SessionEvent",
    "Stderr",
    "Stdout",
    "Viz",
    "VizCommand",
    "command_to_wire",
    "to_wire",
    "ExitSignal",
    "Interpreter",
    "ProcError",
    "Killed",
    "Run",
    "Session",
    "SessionBusy",
    "SessionRegistry",
    "VizState",
    "run_main",
    "run_shell",
]
