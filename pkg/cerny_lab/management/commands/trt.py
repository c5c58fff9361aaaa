from cerny_lab.automaton import NotFound, format_word
from cerny_lab.management.base import LabCommand
from cerny_lab.reachability import triple_rendezvous_time
from cerny_lab.serializers import rendezvous_payload


class Command(LabCommand):
    """Computes the triple rendezvous time with a witness word"""

    help = "Compute the triple rendezvous time T_3 with a witness word"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--cap", type=int, default=None, help="Largest t searched, n(n+4)/4 + 1 by default")
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Exits 1 when no word merges three states within the cap"""
        automaton = self.load_automaton(options["input"])
        result = triple_rendezvous_time(automaton, options["cap"])
        if isinstance(result, NotFound):
            self.negative()
        if options["json"]:
            self.write_json("trt", result=rendezvous_payload(automaton, result))
        elif isinstance(result, NotFound):
            self.stdout.write(f"not found cap={result.cap} reason={result.reason}")
        else:
            self.stdout.write(
                f"t3={result.t} witness={format_word(automaton, result.witness)} "
                f"merged={','.join(str(s) for s in result.merged_states.states())} target={result.target}"
            )
