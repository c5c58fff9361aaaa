import io
import json

from django.core.management import call_command
from django.test import SimpleTestCase

from cerny_lab.management.commands.trt import Command


class TrtTestCase(SimpleTestCase):
    def test_tr9(self):
        out = io.StringIO()
        call_command(Command(), "tr:9", stdout=out)
        self.assertEqual(out.getvalue(), "t3=12 witness=abbabbababba merged=3,5,9 target=3\n")

    def test_not_found(self):
        cmd = Command()
        out = io.StringIO()
        call_command(cmd, "-", stdin=io.StringIO("3 1\n2 3 1\n"), stdout=out)
        self.assertEqual(cmd.exit_code, 1)
        self.assertEqual(out.getvalue(), "not found cap=6 reason=saturated\n")

    def test_json(self):
        out = io.StringIO()
        call_command(Command(), "cerny:6", "--json", stdout=out)
        result = json.loads(out.getvalue())["result"]
        self.assertEqual(result["t"], 7)
        self.assertEqual(len(result["merged_states"]), 3)
