import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kbide.engine import build_structure
from kbide.lang import analyze

FIG3 = """vocabulary V {
    type Animal
    fly(Animal)
}

theory T : V {
    !x: fly(x).
}

structure S : V {
    Animal = { penguin; eagle }
    fly = { eagle }
}
"""

FIG3_OPEN = """vocabulary V {
    type Animal
    fly(Animal)
}

theory T : V {
    !x: fly(x).
}

structure S : V {
    Animal = { penguin; eagle }
}
"""


@pytest.fixture
def fig3_typed():
    result = analyze({"penguin.kb": FIG3})
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.typed


@pytest.fixture
def fig3(fig3_typed):
    return fig3_typed.theories["T"], build_structure(fig3_typed, "S")


@pytest.fixture
def fig3_open():
    result = analyze({"penguin.kb": FIG3_OPEN})
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.typed.theories["T"], build_structure(result.typed, "S")


def make_app(workspace: Path, mode: str = "local", **kwargs):
    from kbide.server.app import create_app
    from kbide.server.config import ServerConfig

    workspace.mkdir(parents=True, exist_ok=True)
    config = ServerConfig(workspace=workspace, mode=mode, **kwargs)
    return create_app(config)


@pytest.fixture
def local_app(tmp_path):
    return make_app(tmp_path / "ws", "local")


@pytest.fixture
def local_client(local_app):
    from fastapi.testclient import TestClient

    with TestClient(local_app) as client:
        yield client
