import logging
import os
import sys

from django.core.management.base import BaseCommand, CommandError

from cerny_lab.automaton import Automaton, parse_automaton
from cerny_lab.exceptions import CernyLabError
from cerny_lab.families import parse_family
from cerny_lab.serializers import dumps, envelope

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

# Django verbosity 2 and 3 open up the cerny_lab loggers
VERBOSITY_LEVELS = {2: logging.INFO, 3: logging.DEBUG}


class LabCommand(BaseCommand):
    """Shared plumbing for the cerny_lab commands

    Input errors become a CommandError with return code 2, negative results set ``exit_code`` to 1 and still print
    their structured output.
    """

    requires_system_checks = []
    stealth_options = ("stdin",)
    exit_code = EXIT_OK

    def add_input_argument(self, parser):
        parser.add_argument(
            "input",
            help="Automaton file, '-' for stdin, or a builtin: cerny:n, tr:n, random:n:m:seed",
        )

    def add_json_argument(self, parser):
        parser.add_argument(
            "--json",
            action="store_true",
            default=False,
            help="Emit the versioned JSON document instead of text",
        )

    def execute(self, *args, **options):
        self.exit_code = EXIT_OK
        self.stdin = options.get("stdin", sys.stdin)
        level = VERBOSITY_LEVELS.get(options.get("verbosity", 1))
        if level is not None:
            logging.getLogger("cerny_lab").setLevel(level)
        try:
            return super().execute(*args, **options)
        except CernyLabError as error:
            raise CommandError(str(error), returncode=EXIT_USAGE)
        except ValueError as error:
            raise CommandError(str(error), returncode=EXIT_USAGE)

    def load_automaton(self, source: str) -> Automaton:
        """Read an automaton from a file, stdin or a builtin family"""
        logger.debug("loading automaton from %s", source)
        if source == "-":
            return parse_automaton(self.stdin.read())
        if os.path.exists(source):
            with open(source, encoding="utf-8") as handle:
                return parse_automaton(handle.read())
        if ":" in source:
            return parse_family(source).build()
        raise CommandError(f"{source} is neither a file nor a builtin", returncode=EXIT_USAGE)

    def negative(self) -> None:
        self.exit_code = EXIT_NEGATIVE

    def write_json(self, command: str, **payload) -> None:
        self.stdout.write(dumps(envelope(command, **payload)))
