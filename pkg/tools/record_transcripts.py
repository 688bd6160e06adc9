"""Record real server transcripts for the frontend contract tests.

Drives the FastAPI app in-process and freezes request/response pairs
and WebSocket message sequences into frontend/test/fixtures/. Rerun
after changing the wire contract:

    python3 tools/record_transcripts.py
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "frontend" / "test" / "fixtures"

FIG3 = (REPO / "sample_workspace" / "penguin.kb").read_text()

MISSING_DOT = "theory T : V {\n    p\n}\n"

LIGHTS_OUT_TWO_CLICKS = """procedure main() {
    draw_grid(3, 3)
    draw_label(0, 0, "click cells to toggle")
    clicks := 0
    while clicks < 2 {
        onclick(cx, cy)
        if cell_color(cx, cy) == "on" {
            draw_cell(cx, cy, "off")
        } else {
            draw_cell(cx, cy, "on")
        }
        clicks := clicks + 1
    }
}
"""

ASK_PROGRAM = 'procedure main() { x := ask("name?") print("hello", x) }'


def rest_fixture(client: TestClient, name: str, method: str, path: str, body: dict):
    response = client.request(method, path, json=body)
    doc = {
        "name": name,
        "request": {"method": method, "path": path, "body": body},
        "response": {"status": response.status_code, "body": response.json()},
    }
    (FIXTURES / f"{name}.json").write_text(json.dumps(doc, indent=2))
    print(f"recorded {name}: {method} {path} -> {response.status_code}")


def ws_fixture(client: TestClient, name: str, steps):
    """steps: list of ("send", message) and ("recv", count_or_predicate)."""
    messages = []
    with client.websocket_connect("/ws/session") as sock:
        for action, payload in steps:
            if action == "send":
                sock.send_json(payload)
                messages.append({"dir": "client", "msg": payload})
            else:
                for _ in range(payload):
                    received = sock.receive_json()
                    messages.append({"dir": "server", "msg": received})
    doc = {"name": name, "messages": messages}
    (FIXTURES / f"{name}.json").write_text(json.dumps(doc, indent=2))
    print(f"recorded {name}: {len(messages)} messages")


def main() -> int:
    sys.path.insert(0, str(REPO / "src"))
    from kbide.server.app import create_app
    from kbide.server.config import ServerConfig

    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as workspace:
        app = create_app(ServerConfig(workspace=Path(workspace), mode="local"))
        with TestClient(app) as client:
            rest_fixture(
                client,
                "check_missing_dot",
                "POST",
                "/api/check",
                {"files": [{"name": "broken.kb", "content": MISSING_DOT}]},
            )
            rest_fixture(
                client,
                "check_clean",
                "POST",
                "/api/check",
                {"files": [{"name": "penguin.kb", "content": FIG3}]},
            )
            rest_fixture(
                client,
                "inference_unsatcore_fig3",
                "POST",
                "/api/inference",
                {
                    "files": [{"name": "penguin.kb", "content": FIG3}],
                    "kind": "unsatcore",
                    "theory": "T",
                    "structure": "S",
                },
            )
            rest_fixture(client, "tutorials_index", "GET", "/api/tutorials", None)
            ws_fixture(
                client,
                "ws_ask_flow",
                [
                    (
                        "send",
                        {
                            "type": "start",
                            "mode": "main",
                            "files": [{"name": "m.kb", "content": ASK_PROGRAM}],
                        },
                    ),
                    ("recv", 1),  # ask
                    ("send", {"type": "stdin", "data": "world"}),
                    ("recv", 2),  # stdout, exit
                ],
            )
            ws_fixture(
                client,
                "ws_lightsout",
                [
                    (
                        "send",
                        {
                            "type": "start",
                            "mode": "main",
                            "files": [{"name": "m.kb", "content": LIGHTS_OUT_TWO_CLICKS}],
                        },
                    ),
                    ("recv", 2),  # viz grid, viz label
                    ("send", {"type": "click", "x": 1, "y": 2}),
                    ("recv", 1),  # viz cell on
                    ("send", {"type": "click", "x": 1, "y": 2}),
                    ("recv", 2),  # viz cell off, exit
                ],
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
