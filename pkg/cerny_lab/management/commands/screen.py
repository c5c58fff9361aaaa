from cerny_lab.families import screen_random
from cerny_lab.management.base import LabCommand


class Command(LabCommand):
    """Samples random automata and keeps those with a large T_3"""

    help = "Sample random automata and keep the slowly merging ones, filtered by T_3"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--m", type=int, default=2)
        parser.add_argument("--samples", type=int, default=1000)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--min-t3", type=int, default=0)
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Lists the hits"""
        hits = screen_random(
            options["n"], options["m"], options["samples"], options["seed"], options["min_t3"]
        )
        if options["json"]:
            self.write_json("screen", n=options["n"], m=options["m"], hits=hits)
            return
        for hit in hits:
            reset = "-" if hit.reset_threshold is None else hit.reset_threshold
            self.stdout.write(
                f"random:{options['n']}:{options['m']}:{hit.seed} t3={hit.t3} reset_threshold={reset}"
            )
