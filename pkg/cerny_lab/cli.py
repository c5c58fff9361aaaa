"""Standalone entry point: ``cerny-lab <subcommand> ...`` dispatches to the management commands"""

import os
import sys
from typing import List, Optional

from django.core.management import load_command_class

from cerny_lab.management.base import EXIT_USAGE

SUBCOMMANDS = (
    "validate",
    "gen",
    "reset-word",
    "trt",
    "t-ell",
    "columns",
    "spf",
    "strategies",
    "bounds",
    "check-conjectures",
    "game-sim",
    "screen",
)

USAGE = "usage: cerny-lab {" + ",".join(SUBCOMMANDS) + "} ..."


def run(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code: 0 success, 1 negative result, 2 usage or input error"""
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        sys.stderr.write(USAGE + "\n")
        return EXIT_USAGE
    subcommand, rest = argv[0], argv[1:]
    command = load_command_class("cerny_lab", subcommand.replace("-", "_"))
    try:
        command.run_from_argv(["cerny-lab", subcommand, *rest])
    except SystemExit as exit:
        if exit.code is None:
            return 0
        return exit.code if isinstance(exit.code, int) else EXIT_USAGE
    return command.exit_code


def main() -> None:
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "cerny_lab.settings")
    import django

    django.setup()
    sys.exit(run())
