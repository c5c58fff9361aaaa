from cerny_lab.automaton import NotFound, is_synchronizing, shortest_reset_word
from cerny_lab.bounds import (
    check_conjecture_spf,
    check_conjecture_t3,
    verify_dichotomy_lemma,
    verify_zero_entry_lemma,
)
from cerny_lab.management.base import LabCommand
from cerny_lab.reachability import triple_rendezvous_time
from cerny_lab.serializers import report_payload
from cerny_lab.spf import spf_curve


class Command(LabCommand):
    """Checks the SPF and triple rendezvous conjectures on one automaton"""

    help = "Check the SPF and T_3 conjectures, and optionally the lemmas behind the bounds"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument(
            "--t-max",
            type=int,
            default=None,
            help="Horizon of the SPF curve, the reset threshold or the last t the conjecture needs by default",
        )
        parser.add_argument(
            "--lemmas",
            action="store_true",
            default=False,
            help="Also verify the zero entry and dichotomy lemmas for every s in 1..n/2",
        )
        self.add_json_argument(parser)

    def default_horizon(self, automaton) -> int:
        needed = 1 + max(automaton.n - 2, 0) * (automaton.n + 1)
        if is_synchronizing(automaton):
            reset = shortest_reset_word(automaton)
            if not isinstance(reset, NotFound):
                return min(needed, reset.length)
        return needed

    def handle(self, *args, **options):
        """Exits 1 when any report is violated"""
        automaton = self.load_automaton(options["input"])
        t_max = options["t_max"]
        if t_max is None:
            t_max = self.default_horizon(automaton)
        curve = spf_curve(automaton, t_max)
        t3 = triple_rendezvous_time(automaton) if automaton.n >= 3 else NotFound(0, "saturated")
        reports = [check_conjecture_spf(automaton, curve), check_conjecture_t3(automaton, t3)]

        if options["lemmas"]:
            k_n = None
            for s in range(1, automaton.n // 2 + 1):
                zero_entry = verify_zero_entry_lemma(automaton, s, k_n)
                k_n = zero_entry.details["k_n"]
                reports.append(zero_entry)
                reports.append(verify_dichotomy_lemma(automaton, s, k_n, t3))

        if any(report.status == "violated" for report in reports):
            self.negative()
        if options["json"]:
            self.write_json("check-conjectures", t_max=t_max, reports=[report_payload(r) for r in reports])
            return
        for report in reports:
            label = report.name
            if "s" in report.details:
                label += f" s={report.details['s']}"
            self.stdout.write(f"{label}: {report.status}")
            for violation in report.violations:
                self.stdout.write(f"  {violation}")
