import argparse
import asyncio
import inspect
import json
import sys
from typing import List, Optional

from cli.commands import SETTINGS_ARGUMENTS, get_commands
from cli.demo import demo
from cli.handlers import (
    build,
    collapse,
    compare,
    count_regions,
    render_foliation_command,
    render_leafspace_command,
    reverse,
    validate_file,
    verify,
)
from cli.models import CommandResult
from flows.models import FlowSettings
from leafspace.errors import IntegratorError, LeafSpaceError
from leafspace_logging import setup_logging

# Set up logging
logger = setup_logging()

# 1 (negative verdict) comes from the handlers, 2 (usage) from argparse
EXIT_INVALID = 3
EXIT_NUMERIC = 4

COMMAND_MAP = {
    "validate": validate_file,
    "compare": compare,
    "collapse": collapse,
    "build": build,
    "reverse": reverse,
    "count-regions": count_regions,
    "render-foliation": render_foliation_command,
    "render-leafspace": render_leafspace_command,
    "verify": verify,
    "demo": demo,
}

SETTINGS_FIELDS = [a.get("dest", a["flags"][0].lstrip("-")) for a in SETTINGS_ARGUMENTS]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leafspace", description="Leaf spaces and conjugacy of free mappings of the plane.")
    parser.add_argument("--json", action="store_true", help="Print machine-readable records.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in get_commands():
        sub = subparsers.add_parser(command.name, help=command.description, description=command.description)
        # --json may also follow the subcommand
        sub.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="Print machine-readable records.")
        for argument in command.arguments:
            options = {k: v for k, v in argument.items() if k != "flags"}
            sub.add_argument(*argument["flags"], **options)
    return parser


def _handler_arguments(handler, args: argparse.Namespace) -> dict:
    """
    Picks the handler's parameters out of the parsed namespace; settings flags
    are folded into one FlowSettings.
    """
    values = vars(args)
    kwargs = {}
    for name in inspect.signature(handler).parameters:
        if name == "settings":
            kwargs[name] = FlowSettings(**{f: values[f] for f in SETTINGS_FIELDS if f in values})
        elif name in values:
            kwargs[name] = values[name]
    return kwargs


async def dispatch(args: argparse.Namespace) -> CommandResult:
    """
    Runs one subcommand and maps failures to exit codes.
    """
    logger.info(f"Client call: {json.dumps(vars(args), default=str)}")
    handler = COMMAND_MAP[args.command]
    try:
        result = await handler(**_handler_arguments(handler, args))
        logger.info(f"Command result: {args.command} exit={result.exitCode}")
        return result
    except LeafSpaceError as e:
        logger.info(f"{type(e).__name__}: {e}")
        return CommandResult(exitCode=EXIT_INVALID, text=f"error: {e}\n", record={"error": type(e).__name__, "message": str(e)})
    except IntegratorError as e:
        logger.error(f"Numeric failure: {e}", exc_info=True)
        return CommandResult(exitCode=EXIT_NUMERIC, text=f"numeric failure: {e}\n", record={"error": "IntegratorError", "message": str(e)})
    except Exception as e:
        logger.error(f"An unexpected error occurred: {e}", exc_info=True)
        return CommandResult(
            exitCode=EXIT_NUMERIC,
            text=f"unexpected failure: {e}. See logs for details.\n",
            record={"error": type(e).__name__, "message": str(e)},
        )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    result = asyncio.run(dispatch(args))
    if args.json:
        print(json.dumps({"exitCode": result.exitCode, **result.record}, default=str), flush=True)
    else:
        sys.stdout.write(result.text)
        sys.stdout.flush()
    return result.exitCode


if __name__ == "__main__":
    sys.exit(main())
