"""`wellness`: serve the ingestion API or run batch analysis.

The service is the long-running piece; `analyze` is a thin batch client
that reads journals, exported files, or a running service's dataset URL.
"""
from __future__ import annotations

import argparse
import os
import sys
from .analysis import cli as analysis_cli
from .service.config import DEFAULT_PORT, Settings


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    if args.data_dir:
        os.environ["WELLNESS_DATA_DIR"] = args.data_dir
    if args.experiments:
        os.environ["WELLNESS_EXPERIMENT_CONFIG"] = args.experiments
    if args.emulator:
        os.environ["WELLNESS_EMULATOR_ADDR"] = args.emulator
    settings = Settings.from_env()
    app = create_app(settings)
    port = args.port or int(os.environ.get("WELLNESS_PORT", DEFAULT_PORT))
    uvicorn.run(app, host=args.host, port=port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wellness")
    commands = parser.add_subparsers(dest="command", required=True)

    serve = commands.add_parser("serve", help="run the ingestion service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--data-dir", default=None, help="journal directory")
    serve.add_argument("--experiments", default=None,
                       help="experiment config JSON path")
    serve.add_argument("--emulator", default=None, metavar="HOST:PORT",
                       help="sensor emulator address for the snapshot proxy")
    serve.set_defaults(handler=_serve)

    analyze = commands.add_parser("analyze", help="build report tables")
    analysis_cli.add_analyze_arguments(analyze)
    analyze.set_defaults(
        handler=lambda args: analysis_cli.run(analysis_cli.config_from_args(args))
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"wellness: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
