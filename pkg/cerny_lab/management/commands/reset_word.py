from cerny_lab.automaton import NotFound, default_reset_cap, format_word, shortest_reset_word
from cerny_lab.management.base import LabCommand
from cerny_lab.serializers import word_payload


class Command(LabCommand):
    """Finds a shortest reset word by subset search"""

    help = "Find a shortest reset word by breadth first search over subsets"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--cap", type=int, default=None, help="Maximum word length, (n-1)^2 + n by default")
        parser.add_argument(
            "--pin-frankl",
            action="store_true",
            default=False,
            help="Use (n^3 - n)/6 as the default cap",
        )
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Exits 1 when none is found within the cap"""
        automaton = self.load_automaton(options["input"])
        cap = options["cap"]
        if cap is None:
            cap = default_reset_cap(automaton.n, options["pin_frankl"])
        result = shortest_reset_word(automaton, cap)
        if isinstance(result, NotFound):
            self.negative()
            if options["json"]:
                self.write_json("reset-word", result=result)
            else:
                self.stdout.write(f"not found cap={result.cap} reason={result.reason}")
            return
        if options["json"]:
            self.write_json("reset-word", result={"found": True, **word_payload(automaton, result.word)})
        else:
            self.stdout.write(f"length={result.length} word={format_word(automaton, result.word)}")
