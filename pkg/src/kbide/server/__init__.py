"""REST + WebSocket server for the IDE."""

from .app import create_app
from .config import ConfigError, ServerConfig, ShareBackendConfig, load_config
from .tutorials import TutorialBundle, load_tutorials

__all__ = [
    "create_app",
    "ConfigError",
    "ServerConfig",
    "ShareBackendConfig",
    "load_config",
    "TutorialBundle",
    "load_tutorials",
]
