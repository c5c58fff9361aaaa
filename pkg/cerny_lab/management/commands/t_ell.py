from cerny_lab.automaton import NotFound, format_word
from cerny_lab.management.base import LabCommand
from cerny_lab.reachability import t_ell
from cerny_lab.serializers import rendezvous_payload


class Command(LabCommand):
    """Computes T_l, the first t at which some word merges l states"""

    help = "Compute T_l, the length of a shortest word merging l states into one"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--l", type=int, required=True, help="Number of states to merge")
        parser.add_argument("--cap", type=int, default=None, help="Largest t searched, (n^3 - n)/6 by default")
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Handles the request"""
        automaton = self.load_automaton(options["input"])
        result = t_ell(automaton, options["l"], options["cap"])
        if isinstance(result, NotFound):
            self.negative()
        if options["json"]:
            self.write_json("t-ell", result=rendezvous_payload(automaton, result))
        elif isinstance(result, NotFound):
            self.stdout.write(f"not found cap={result.cap} reason={result.reason}")
        else:
            self.stdout.write(
                f"t={result.t} witness={format_word(automaton, result.witness)} "
                f"merged={','.join(str(s) for s in result.merged_states.states())} target={result.target}"
            )
