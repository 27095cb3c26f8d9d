"""
IsoKin - Main entry point

This is the command-line entry point for IsoKin, responsible for loading the
settings, configuring logging, registering the subcommands and mapping
errors onto exit codes.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

# Add the repository root to the path so `Scripts.*` imports resolve when run as a script
root_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
if root_dir not in sys.path:
    sys.path.insert(0, root_dir)

from Scripts.IsoKin import __version__
from Scripts.IsoKin.commands import register_all_commands
from Scripts.IsoKin.errors import EXIT_IO, IsoKinError
from Scripts.IsoKin.utils.helpers import Settings, load_settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger("IsoKin")


# ========== Logging ==========

def configure_logging(settings: Settings) -> None:
    """
    Point the IsoKin logger at stderr and, when configured, a log file.

    Handlers are replaced on every call so repeated runs in one process do
    not duplicate output.
    """
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file, mode="a"))
    for handler in handlers:
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    logger.setLevel(getattr(logging, settings.log_level, logging.INFO))
    logger.propagate = False


# ========== Argument parsing ==========

def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=settings.tol,
                        help="numerical tolerance (env ISOKIN_TOL)")
    common.add_argument("--seed", type=int, default=settings.seed,
                        help="seed for randomized search starts (env ISOKIN_SEED)")
    common.add_argument("--out", help="output file; stdout when omitted")
    common.add_argument("--format", choices=["json", "csv", "xlsx"], default="json",
                        help="report format")

    parser = argparse.ArgumentParser(
        prog="isokin",
        description="Isotropic point sets, the planar nR manipulators they induce "
                    "and their conditioning and characteristic lengths.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    register_all_commands(subparsers, common, settings)
    return parser


def _report_error(name: str, message: str, exit_code: int) -> int:
    logger.error(f"{name}: {message}")
    print(json.dumps({"error": name, "message": message, "exit_code": exit_code}), file=sys.stderr)
    return exit_code


# ========== Entry point ==========

def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one IsoKin command.

    Args:
        argv: Arguments without the program name; sys.argv[1:] by default

    Returns:
        The process exit code: 0 success, 1 I/O, 2 validation, 3 numeric
    """
    try:
        settings = load_settings()
    except IsoKinError as e:
        configure_logging(Settings())
        return _report_error(e.name, str(e), e.exit_code)
    configure_logging(settings)

    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logger.debug(f"Running {args.command} with tol={args.tol} seed={args.seed}")
    try:
        return args.handler(args)
    except IsoKinError as e:
        return _report_error(e.name, str(e), e.exit_code)
    except FileNotFoundError as e:
        return _report_error("FileNotFound", f"{e.filename}: {e.strerror}", EXIT_IO)
    except OSError as e:
        return _report_error("IOError", str(e), EXIT_IO)


if __name__ == "__main__":
    sys.exit(main())
