from cerny_lab.management.base import LabCommand
from cerny_lab.reachability import columns_at
from cerny_lab.serializers import table_payload


class Command(LabCommand):
    """Dumps A(t) as a 0/1 matrix"""

    help = "Print the reachable columns A(t) as a 0/1 matrix in canonical order"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--t", type=int, required=True)
        parser.add_argument("--format", choices=["matrix", "csv"], default="matrix")
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        """Rows are states, columns follow the canonical order"""
        automaton = self.load_automaton(options["input"])
        table = columns_at(automaton, options["t"])
        if options["json"]:
            self.write_json("columns", table=table_payload(automaton, table))
            return
        separator = "," if options["format"] == "csv" else " "
        for row in table.rows():
            self.stdout.write(separator.join(str(entry) for entry in row))
