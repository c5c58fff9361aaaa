from cerny_lab.automaton import is_strongly_connected, is_synchronizing
from cerny_lab.management.base import LabCommand
from cerny_lab.serializers import automaton_payload


class Command(LabCommand):
    """Parses an automaton file and reports its basic properties"""

    help = "Parse an automaton and report its basic properties"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Validates the input"""
        automaton = self.load_automaton(options["input"])
        synchronizing = is_synchronizing(automaton)
        connected = is_strongly_connected(automaton)
        if options["json"]:
            self.write_json(
                "validate",
                automaton=automaton_payload(automaton),
                synchronizing=synchronizing,
                strongly_connected=connected,
            )
            return
        self.stdout.write(
            f"ok n={automaton.n} m={automaton.m} "
            f"synchronizing={'yes' if synchronizing else 'no'} "
            f"strongly_connected={'yes' if connected else 'no'}"
        )
