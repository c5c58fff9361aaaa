import io

from django.core.management import call_command
from django.test import SimpleTestCase

from cerny_lab.automaton import parse_automaton
from cerny_lab.families import random_automaton
from cerny_lab.management.commands.gen import Command


class GenTestCase(SimpleTestCase):
    def test_cerny(self):
        out = io.StringIO()
        call_command(Command(), "cerny", "4", stdout=out)
        self.assertEqual(out.getvalue(), "4 2\n1 2 3 1\n2 3 4 1\n")

    def test_tr_parses_back(self):
        out = io.StringIO()
        call_command(Command(), "tr", "9", stdout=out)
        self.assertEqual(parse_automaton(out.getvalue()).letters[1], (2, 3, 1, 5, 6, 4, 9, 8, 7))

    def test_random_is_seeded(self):
        out = io.StringIO()
        call_command(Command(), "random", "5", "3", "--seed", "8", stdout=out)
        self.assertEqual(parse_automaton(out.getvalue()), random_automaton(5, 3, 8))
