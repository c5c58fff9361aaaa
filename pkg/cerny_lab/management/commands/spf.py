from cerny_lab.management.base import LabCommand
from cerny_lab.serializers import curve_payload, display, report_payload, write_curve_csv
from cerny_lab.spf import audit_curve, spf_curve


class Command(LabCommand):
    """Computes k(t) exactly for every t up to --t-max"""

    help = "Compute the synchronizing probability function k(0) .. k(T) exactly"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--t-max", type=int, required=True)
        parser.add_argument("--csv", default=None, metavar="PATH", help="Write the curve as CSV, '-' for stdout")
        parser.add_argument("--dim-q", action="store_true", default=False, help="Also compute dim Q_t")
        parser.add_argument(
            "--audit",
            action="store_true",
            default=False,
            help="Check value quantization and polytope inclusion below T_3",
        )
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Curve first, then the optional audits and output format"""
        automaton = self.load_automaton(options["input"])
        curve = spf_curve(automaton, options["t_max"], primal_dimension=True, dual_dimension=options["dim_q"])

        reports = []
        if options["audit"]:
            reports = audit_curve(automaton, curve)
            if any(not report.ok for report in reports):
                self.negative()

        if options["csv"] == "-":
            write_curve_csv(curve, self.stdout, dual=options["dim_q"])
            return
        if options["csv"]:
            with open(options["csv"], "w", encoding="utf-8", newline="") as handle:
                write_curve_csv(curve, handle, dual=options["dim_q"])

        if options["json"]:
            self.write_json(
                "spf",
                curve=curve_payload(curve),
                audits=[report_payload(report) for report in reports],
            )
            return
        for point in curve:
            line = f"t={point.t} k={display(point.k)} m_t={point.m_t} dim_P={point.dim_p}"
            if options["dim_q"]:
                line += f" dim_Q={point.dim_q}"
            self.stdout.write(line)
        for report in reports:
            line = f"audit {report.name}: {report.status}"
            if "reason" in report.details:
                line += f" ({report.details['reason']})"
            self.stdout.write(line)
            for violation in report.violations:
                self.stdout.write(f"  {violation}")
