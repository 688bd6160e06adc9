"""Command line entry point.

``kbide serve`` runs the IDE server; ``kbide check`` runs the parser
and resolver over files and prints diagnostics, which is handy in CI
and editors outside the browser.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, load_config


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kbide", description="knowledge-base IDE server")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the IDE server")
    serve.add_argument("--config", help="path to ide.json")
    serve.add_argument("--workspace", help="workspace directory (default: .)")
    serve.add_argument("--mode", choices=["local", "online"], help="server mode")
    serve.add_argument("--port", type=int, help="listen port")
    serve.add_argument("--host", help="bind address (required for online mode)")
    serve.add_argument("--static-dir", help="directory with built frontend assets")

    check = sub.add_parser("check", help="parse and resolve files, print diagnostics")
    check.add_argument("files", nargs="+", help="files to check")
    return parser


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .app import create_app

    config_path = args.config
    if config_path is None and Path("ide.json").is_file():
        config_path = "ide.json"
    try:
        config = load_config(
            config_path,
            workspace=args.workspace,
            mode=args.mode,
            port=args.port,
            host=args.host,
            static_dir=args.static_dir,
        )
        host = config.bind_host
    except ConfigError as exc:
        print(f"kbide: {exc}", file=sys.stderr)
        return 2

    if config.static_dir is None:
        bundled = Path("frontend/dist")
        if bundled.is_dir():
            config = type(config)(**{**config.__dict__, "static_dir": bundled})

    app = create_app(config)
    uvicorn.run(app, host=host, port=config.port, log_level="info")
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    from ..lang import analyze
    from ..lang.diagnostics import Severity

    files = {}
    for name in args.files:
        path = Path(name)
        if not path.is_file():
            print(f"kbide: no such file: {name}", file=sys.stderr)
            return 2
        files[name] = path.read_text(encoding="utf-8")
    result = analyze(files)
    for diag in result.diagnostics:
        print(diag)
    errors = sum(d.severity is Severity.ERROR for d in result.diagnostics)
    if errors:
        print(f"{errors} error(s)", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    return _cmd_check(args)


if __name__ == "__main__":
    sys.exit(main())
