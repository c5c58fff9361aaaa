import io
import json
import os
import tempfile

from django.core.management import call_command
from django.test import SimpleTestCase

from cerny_lab.management.commands.spf import Command


class SpfCommandTestCase(SimpleTestCase):
    def test_text(self):
        out = io.StringIO()
        call_command(Command(), "cerny:4", "--t-max", "1", stdout=out)
        self.assertEqual(out.getvalue(), "t=0 k=1/4 m_t=4 dim_P=0\nt=1 k=1/3 m_t=5 dim_P=1\n")

    def test_csv_to_stdout(self):
        out = io.StringIO()
        call_command(Command(), "cerny:4", "--t-max", "1", "--csv", "-", "--dim-q", stdout=out)
        self.assertEqual(
            out.getvalue(),
            "t,k_num,k_den,k_float,m_t,dim_P,dim_Q\n0,1,4,0.25,4,0,0\n1,1,3,0.333333333333,5,1,0\n",
        )

    def test_csv_to_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "curve.csv")
            call_command(Command(), "cerny:4", "--t-max", "3", "--csv", path, stdout=io.StringIO())
            with open(path, encoding="utf-8") as handle:
                lines = handle.read().splitlines()
        self.assertEqual(lines[0], "t,k_num,k_den,k_float,m_t,dim_P")
        self.assertEqual(lines[-1], "3,1,2,0.5,7,2")

    def test_audit(self):
        cmd = Command()
        out = io.StringIO()
        call_command(cmd, "cerny:4", "--t-max", "5", "--audit", "--json", stdout=out)
        document = json.loads(out.getvalue())
        self.assertEqual(cmd.exit_code, 0)
        self.assertEqual([audit["status"] for audit in document["audits"]], ["holds", "holds"])
        self.assertEqual(document["curve"][3]["k"]["display"], "1/2")

    def test_audit_is_skipped_without_synchronization(self):
        """Permutation letters and a closed two-cycle never merge three states, so there is nothing to audit"""
        for text in ("3 2\n2 3 1\n2 1 3\n", "4 2\n1 1 4 3\n2 1 4 3\n"):
            with self.subTest(text=text):
                cmd = Command()
                out = io.StringIO()
                call_command(cmd, "-", "--t-max", "3", "--audit", stdin=io.StringIO(text), stdout=out)
                self.assertEqual(cmd.exit_code, 0)
                self.assertEqual(
                    out.getvalue().splitlines()[-2:],
                    [
                        "audit stagnation: skipped (the automaton is not synchronizing)",
                        "audit inclusion: skipped (the automaton is not synchronizing)",
                    ],
                )

    def test_audit_json_carries_the_reason(self):
        out = io.StringIO()
        call_command(Command(), "cerny:2", "--t-max", "3", "--audit", "--json", stdout=out)
        audits = json.loads(out.getvalue())["audits"]
        self.assertEqual([audit["status"] for audit in audits], ["skipped", "skipped"])
        self.assertEqual(audits[0]["details"], {"reason": "fewer than three states"})
