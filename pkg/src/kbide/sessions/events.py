"""Typed events of a run and their wire form.

Every run emits a stream matching ``(stdout|stderr|ask|viz|limit)* exit``
with exactly one exit event, always last. The wire form is the JSON
sent over the session WebSocket.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Grid:
    width: int
    height: int


@dataclass(frozen=True)
class Cell:
    x: int
    y: int
    color: str


@dataclass(frozen=True)
class Label:
    x: int
    y: int
    text: str


VizCommand = Union[Grid, Cell, Label]


@dataclass(frozen=True)
class Stdout:
    data: str


@dataclass(frozen=True)
class Stderr:
    data: str


@dataclass(frozen=True)
class Ask:
    prompt: str


@dataclass(frozen=True)
class Viz:
    commands: tuple[VizCommand, ...]


@dataclass(frozen=True)
class Limit:
    kind: str


@dataclass(frozen=True)
class Exit:
    code: int


SessionEvent = Union[Stdout, Stderr, Ask, Viz, Limit, Exit]


def command_to_wire(cmd: VizCommand) -> dict:
    if isinstance(cmd, Grid):
        return {"op": "grid", "width": cmd.width, "height": cmd.height}
    if isinstance(cmd, Cell):
        return {"op": "cell", "x": cmd.x, "y": cmd.y, "color": cmd.color}
    return {"op": "label", "x": cmd.x, "y": cmd.y, "text": cmd.text}


def to_wire(event: SessionEvent) -> dict:
    if isinstance(event, Stdout):
        return {"type": "stdout", "data": event.data}
    if isinstance(event, Stderr):
        return {"type": "stderr", "data": event.data}
    if isinstance(event, Ask):
        return {"type": "ask", "prompt": event.prompt}
    if isinstance(event, Viz):
        return {"type": "viz", "commands": [command_to_wire(c) for c in event.commands]}
    if isinstance(event, Limit):
        return {"type": "limit", "kind": event.kind}
    if isinstance(event, Exit):
        return {"type": "exit", "code": event.code}
    raise TypeError(f"unknown event {event!r}")
