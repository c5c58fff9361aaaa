from cerny_lab.bounds import bound_report
from cerny_lab.management.base import LabCommand
from cerny_lab.serializers import report_payload


class Command(LabCommand):
    """Prints the T_3 bounds for n states, or for an automaton with its measured values"""

    help = "Closed form bounds on T_3, optionally checked against the measured values"

    def add_arguments(self, parser):
        parser.add_argument(
            "input",
            nargs="?",
            default=None,
            help="Automaton file, '-' for stdin, or a builtin: cerny:n, tr:n, random:n:m:seed",
        )
        parser.add_argument("--n", type=int, default=None, help="Evaluate the formulas for n states only")
        parser.add_argument("--measure", action="store_true", default=False)
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Formulas only with --n, measured values with --measure"""
        if options["input"] is not None:
            report = bound_report(self.load_automaton(options["input"]), options["measure"])
        elif options["n"] is not None:
            report = bound_report(options["n"])
        else:
            raise ValueError("give an automaton or --n")
        if report.violations:
            self.negative()

        if options["json"]:
            self.write_json(
                "bounds",
                n=report.n,
                bounds=report.bounds,
                measured=report.measured,
                conjectures={name: report_payload(flag) for name, flag in report.conjecture_flags.items()},
                violations=report.violations,
                notes=report.notes,
            )
            return
        width = max(len(name) for name in report.bounds)
        for name, value in report.bounds.items():
            self.stdout.write(f"{name.ljust(width)}  {value}")
        for name, value in report.measured.items():
            self.stdout.write(f"{name.ljust(width)}  {'-' if value is None else value}  (measured)")
        for name, flag in report.conjecture_flags.items():
            self.stdout.write(f"conjecture {name}: {flag.status}")
        for line in report.violations + report.notes:
            self.stdout.write(line)
