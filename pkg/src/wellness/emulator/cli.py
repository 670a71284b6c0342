"""`wellness-emu`: serve one emulated sensor board over TCP."""
from __future__ import annotations

import argparse
import sys

from .profiles import DEFAULT_PROFILE_NAME, load_profile, parse_fault
from .stream import EmulatorServer


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wellness-emu",
        description="Emulated environmental sensor board speaking a "
        "newline-delimited stream protocol.",
    )
    parser.add_argument(
        "--profile",
        default=DEFAULT_PROFILE_NAME,
        help="named profile (indoor_office, outdoor_daylight, late_night_dorm) "
        "or path to a profile JSON file",
    )
    parser.add_argument(
        "--fault",
        default="none",
        help="none | zero:<var,var,...> | drop:<probability>",
    )
    parser.add_argument("--seed", type=int, default=None, help="64-bit stream seed")
    parser.add_argument(
        "--listen", default="127.0.0.1:7700", metavar="ADDR:PORT",
        help="listen address (default 127.0.0.1:7700)",
    )
    parser.add_argument("--device-id", default="emu-0001")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        profile = load_profile(args.profile, seed=args.seed)
        fault = parse_fault(args.fault)
        host, _, port = args.listen.rpartition(":")
        server = EmulatorServer(
            profile, fault, host=host or "127.0.0.1", port=int(port),
            device_id=args.device_id,
        )
    except (ValueError, OSError) as exc:
        print(f"wellness-emu: {exc}", file=sys.stderr)
        return 2
    host, port = server.address
    print(f"wellness-emu: {profile.name} on {host}:{port} (fault={args.fault})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
