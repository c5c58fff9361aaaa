from cerny_lab.automaton import format_automaton
from cerny_lab.families import FAMILIES, FamilySpec
from cerny_lab.management.base import LabCommand


class Command(LabCommand):
    """Writes a builtin automaton in the text format"""

    help = "Print a builtin automaton in the text format"

    def add_arguments(self, parser):
        parser.add_argument("family", choices=FAMILIES)
        parser.add_argument("n", type=int, help="Number of states")
        parser.add_argument("m", type=int, nargs="?", default=2, help="Number of letters (random only)")
        parser.add_argument("--seed", type=int, default=0, help="Seed for random automata")

    def handle(self, *args, **options):
        """Generates the automaton"""
        spec = FamilySpec(options["family"], options["n"], options["m"], options["seed"])
        self.stdout.write(format_automaton(spec.build()), ending="")
