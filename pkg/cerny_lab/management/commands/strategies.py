from cerny_lab.exceptions import WeightTooHigh
from cerny_lab.management.base import LabCommand
from cerny_lab.reachability import columns_at
from cerny_lab.serializers import display, solution_payload
from cerny_lab.spf import DUAL, PRIMAL, canonicalize_support, critical_columns, polytope_dimension, spf_at


class Command(LabCommand):
    """Shows optimal strategies and their canonical support at one t"""

    help = "Optimal strategies at one t: p, q, the critical columns and a canonical support"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--t", type=int, required=True)
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Exits 1 when a weight three column blocks canonicalization"""
        automaton = self.load_automaton(options["input"])
        table = columns_at(automaton, options["t"])
        solution = spf_at(automaton, table)
        critical = critical_columns(automaton, table, solution.k, solution.p, solution.q)
        dimensions = {
            "dim_P": polytope_dimension(automaton, table, PRIMAL, solution),
            "dim_Q": polytope_dimension(automaton, table, DUAL, solution),
        }
        canonical = support = None
        reason = None
        try:
            canonical, support = canonicalize_support(automaton, table, solution)
        except WeightTooHigh as error:
            reason = str(error)
            self.negative()

        if options["json"]:
            payload = solution_payload(automaton, solution, critical, canonical, support)
            payload.update(dimensions)
            if reason:
                payload["canonical_support"] = None
                payload["reason"] = reason
            self.write_json("strategies", solution=payload)
            return
        self.stdout.write(f"t={solution.t} k={display(solution.k)} m_t={table.m}")
        self.stdout.write("p=" + " ".join(display(value) for value in solution.p))
        self.stdout.write("q=" + " ".join(display(value) for value in solution.q))
        self.stdout.write("critical=" + ",".join(str(j) for j in sorted(critical)))
        self.stdout.write(f"dim_P={dimensions['dim_P']} dim_Q={dimensions['dim_Q']}")
        if support is None:
            self.stdout.write(f"canonical support unavailable: {reason}")
            return
        self.stdout.write(f"canonical n1={support.n1} pairs={len(support.pairs)} cycles={len(support.cycles())}")
        for element in support.elements:
            states = ",".join(str(state) for state in element.states)
            self.stdout.write(f"  column {element.column} {{{states}}} {element.kind} q={display(canonical[element.column])}")
