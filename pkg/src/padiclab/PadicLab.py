# In src/padiclab/PadicLab.py

import argparse
import importlib
import os
import sys

from pydantic import ValidationError

from padiclab import __version__
from padiclab.config import LOG_LEVEL, OUTPUT_DIR, PLUGIN_PATH
from padiclab.lib.constants import EXIT_USAGE
from padiclab.lib.exceptions import PadicLabError
from padiclab.lib.logging_config import get_logger, setup_cli_logging
from padiclab.lib.models import format_validation_errors

logger = get_logger(__name__)


# --- Plugin Loading ---
def get_plugins(directory: str) -> list[str]:
    plugin_list = []
    try:
        for file_name in sorted(os.listdir(directory)):
            if file_name.endswith(".py") and not file_name.startswith("__"):
                plugin_list.append(f"padiclab.plugins.{file_name[:-3]}")
        return plugin_list
    except FileNotFoundError:
        logger.error("Plugin directory not found: %s", directory)
        return []
    except OSError as e:
        logger.error("Error listing plugin directory: %s", e)
        return []


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padiclab",
        description="PadicLab - p-adic frequency probability, complexity growth and "
        "interference-memory experiments",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument(
        "--verbose", action="store_true", help="Log progress and fit diagnostics to stderr"
    )
    verbosity.add_argument("--debug", action="store_true", help="Log everything to stderr")
    parser.add_argument(
        "--output-dir",
        default=OUTPUT_DIR,
        help="Directory for output artifacts (env PADICLAB_OUTPUT_DIR)",
    )
    parser.add_argument(
        "--no-log-file", action="store_true", help="Do not write logs/padiclab.log"
    )

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for plugin in get_plugins(PLUGIN_PATH):
        module = importlib.import_module(plugin)
        module.setup(subparsers)
        logger.debug("Loaded plugin: %s", plugin)
    return parser


def _parse_and_dispatch(argv: list[str] | None = None) -> int:
    """Defines, parses, and dispatches command-line arguments."""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = "DEBUG" if args.debug else "INFO" if args.verbose else LOG_LEVEL
    setup_cli_logging(level, log_to_file=not args.no_log_file)
    os.makedirs(args.output_dir, exist_ok=True)

    try:
        return int(args.handler(args))
    except ValidationError as e:
        for problem in format_validation_errors(e):
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    except PadicLabError as e:
        print(f"error: {e}", file=sys.stderr)
        logger.debug("Command %s failed", args.command, exc_info=True)
        return EXIT_USAGE
    except (ValueError, FileNotFoundError, IsADirectoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    """Entry point for the padiclab script alias."""
    sys.exit(_parse_and_dispatch())


if __name__ == "__main__":
    main()
