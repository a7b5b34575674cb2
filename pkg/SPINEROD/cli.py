"""
The main entry point, which tells argparse what commands there are and
turns what they return, or raise, into an exit status.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from SPINEROD.utils.actions import Outcome, Message, FAILED
from SPINEROD.utils.consts import LOG_LEVEL
from SPINEROD.utils.errors import SpineRodError, ScenarioParseError, SolverFailureError

logger = logging.getLogger(__name__)

def on_command_error(error : Exception) -> Outcome:
    if isinstance(error, ScenarioParseError):
        return Message(f"Sorry, that scenario file wasn't understood: {error}", FAILED.exit_code, error=True)
    if isinstance(error, SolverFailureError):
        return Message(f"The solver gave up. Diagnostics: {error.diagnostics}", FAILED.exit_code, error=True)
    if isinstance(error, OSError):
        return Message(f"Could not read or write a file: {error}", FAILED.exit_code, error=True)
    return Message(f"ERROR: {error}", FAILED.exit_code, error=True)

from SPINEROD.commands.solving import Solving
from SPINEROD.commands.studies import Studies
from SPINEROD.commands.identification import Identification

COMMAND_GROUPS = [Solving(), Studies(), Identification()]

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinerod",
                                     description="Static Cosserat rod solver for a pneumatic soft robot with a jammed spine.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress (-v) or every Newton iteration (-vv)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for group in COMMAND_GROUPS:
        group.register(subparsers)
    return parser

def configure_logging(verbose : int):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

def main(argv : Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        outcome = args.handler(args)
    except (SpineRodError, OSError) as error:
        logger.debug("Command %s failed", args.command, exc_info=True)
        outcome = on_command_error(error)
    return outcome.report()

def run_cli():
    sys.exit(main())
