import time

import pytest
from fastapi.testclient import TestClient

from conftest import FIG3, make_app


def entry(name, content):
    return {"name": name, "content": content}


def start_message(source, mode="main", entry_name=None):
    message = {"type": "start", "mode": mode, "files": [entry("main.kb", source)]}
    if entry_name:
        message["entry"] = entry_name
    return message


def collect_until_exit(sock, limit=200):
    events = []
    for _ in range(limit):
        event = sock.receive_json()
        events.append(event)
        if event["type"] == "exit":
            return events
    raise AssertionError(f"no exit event within {limit} messages: {events[-3:]}")


def test_main_ask_flow(local_client):
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json(start_message('procedure main() { x := ask("name?") print(x) }'))
        assert sock.receive_json() == {"type": "ask", "prompt": "name?"}
        sock.send_json({"type": "stdin", "data": "bob"})
        assert sock.receive_json() == {"type": "stdout", "data": "bob\n"}
        assert sock.receive_json() == {"type": "exit", "code": 0}


def test_shell_session_over_ws(local_client):
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json(start_message(FIG3, mode="shell"))
        assert sock.receive_json() == {"type": "ask", "prompt": "> "}
        sock.send_json({"type": "stdin", "data": "unsatcore(T, S)"})
        out = sock.receive_json()
        assert out["type"] == "stdout"
        assert "x = penguin" in out["data"]
        sock.send_json({"type": "stdin", "data": "exit"})
        events = collect_until_exit(sock)
        assert events[-1] == {"type": "exit", "code": 0}


def test_viz_and_click_roundtrip(local_client):
    source = (
        "procedure main() { draw_grid(2, 2) onclick(x, y) draw_cell(x, y, \"on\") }"
    )
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json(start_message(source))
        grid = sock.receive_json()
        assert grid == {
            "type": "viz",
            "commands": [{"op": "grid", "width": 2, "height": 2}],
        }
        sock.send_json({"type": "click", "x": 1, "y": 0})
        cell = sock.receive_json()
        assert cell == {
            "type": "viz",
            "commands": [{"op": "cell", "x": 1, "y": 0, "color": "on"}],
        }
        assert sock.receive_json() == {"type": "exit", "code": 0}


def test_kill_message(local_client):
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json(start_message("procedure main() { while true { } }"))
        sock.send_json({"type": "kill"})
        events = collect_until_exit(sock)
        assert {"type": "limit", "kind": "killed"} in events
        assert events[-1] == {"type": "exit", "code": 2}


def test_limit_event_streams(local_client, tmp_path):
    from kbide.limits import ResourceLimits

    app = make_app(tmp_path / "wslim", "local", limits=ResourceLimits(wall_ms=100))
    with TestClient(app) as client:
        with client.websocket_connect("/ws/session") as sock:
            sock.send_json(start_message("procedure main() { while true { } }"))
            events = collect_until_exit(sock)
    assert {"type": "limit", "kind": "wall"} in events
    assert events[-1] == {"type": "exit", "code": 2}


def test_first_message_must_be_start(local_client):
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json({"type": "stdin", "data": "hi"})
        # close frame with the protocol-violation code
        with pytest.raises(Exception):
            while True:
                sock.receive_json()


def test_second_start_closes_with_protocol_error(local_client):
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json(start_message('procedure main() { x := ask("q") print(x) }'))
        assert sock.receive_json()["type"] == "ask"
        sock.send_json(start_message("procedure main() { }"))
        closed = False
        try:
            for _ in range(50):
                sock.receive_json()
        except Exception:
            closed = True
        assert closed


def test_disconnect_kills_run(local_client):
    registry = local_client.app.state.registry
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json(start_message("procedure main() { while true { } }"))
        time.sleep(0.1)
        ids = registry.ids()
        assert len(ids) == 1
        session = registry.get(ids[0])
        assert session.run is not None
    # leaving the context closes the socket; the run must die promptly
    assert session.run.finished.wait(timeout=2.0)


def test_entry_procedure_selectable(local_client):
    source = 'procedure main() { print("nope") } procedure other() { print("yes") }'
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json(start_message(source, entry_name="other"))
        assert sock.receive_json() == {"type": "stdout", "data": "yes\n"}
        assert sock.receive_json()["type"] == "exit"


def test_start_accepts_files_as_mapping(local_client):
    with local_client.websocket_connect("/ws/session") as sock:
        sock.send_json(
            {
                "type": "start",
                "mode": "main",
                "files": {"main.kb": 'procedure main() { print("map") }'},
            }
        )
        assert sock.receive_json() == {"type": "stdout", "data": "map\n"}
        assert sock.receive_json()["type"] == "exit"


def test_concurrent_sessions_do_not_crosstalk(local_client):
    n = 8
    socks = []
    for i in range(n):
        sock = local_client.websocket_connect("/ws/session").__enter__()
        source = f'procedure main() {{ x := ask("q{i}") print("s{i}", x) }}'
        sock.send_json({"type": "start", "mode": "main", "files": [entry("m.kb", source)]})
        socks.append(sock)
    try:
        for i, sock in enumerate(socks):
            assert sock.receive_json() == {"type": "ask", "prompt": f"q{i}"}
        for i, sock in reversed(list(enumerate(socks))):
            sock.send_json({"type": "stdin", "data": f"in{i}"})
        for i, sock in enumerate(socks):
            assert sock.receive_json() == {"type": "stdout", "data": f"s{i} in{i}\n"}
            assert sock.receive_json() == {"type": "exit", "code": 0}
    finally:
        for sock in socks:
            sock.__exit__(None, None, None)
