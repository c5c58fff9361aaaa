import math
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from cerny_lab.exceptions import DimensionMismatch
from cerny_lab.families import cerny, tr
from cerny_lab.gamesim import (
    Atom,
    GameConfig,
    _thresholds,
    atoms_from_table,
    expected_win,
    optimal_config,
    simulate,
    uniform_config,
)
from cerny_lab.reachability import columns_at
from cerny_lab.spf import spf_at

F = Fraction


class ExpectedWinTestCase(SimpleTestCase):
    def setUp(self):
        self.automaton = cerny(4)
        self.table = columns_at(self.automaton, 3)

    def test_optimal_strategies_win_with_probability_k(self):
        solution = spf_at(self.automaton, self.table)
        self.assertEqual(expected_win(self.automaton, self.table, solution.p, solution.q), F(1, 2))
        config = optimal_config(self.automaton, self.table, rounds=10, seed=1)
        self.assertEqual(config.p, solution.p)
        self.assertEqual([atom.weight for atom in config.q], [w for w in solution.q if w])

    def test_uniform_strategies(self):
        p = [F(1, 4)] * 4
        q = [F(1, 7)] * 7
        self.assertEqual(expected_win(self.automaton, self.table, p, q), F(5, 14))

    def test_lengths_are_checked(self):
        with self.assertRaises(DimensionMismatch):
            expected_win(self.automaton, self.table, [F(1)], [F(1, 7)] * 7)
        with self.assertRaises(DimensionMismatch):
            atoms_from_table(self.table, [F(1)])


class ConfigTestCase(SimpleTestCase):
    def setUp(self):
        self.automaton = cerny(4)
        self.table = columns_at(self.automaton, 3)

    def test_uniform_config_drops_nothing(self):
        config = uniform_config(self.automaton, self.table, 100, 0)
        self.assertEqual(len(config.q), 7)
        self.assertEqual(sum(atom.weight for atom in config.q), 1)

    def test_validation(self):
        p = (F(1, 4),) * 4
        atom = Atom((0,), 1, F(1))
        cases = [
            (GameConfig(1, (F(1),), (atom,), 10, 0), DimensionMismatch),
            (GameConfig(1, (F(1, 2),) * 4, (atom,), 10, 0), ValueError),
            (GameConfig(0, p, (atom,), 10, 0), ValueError),
            (GameConfig(1, p, (Atom((0,), 5, F(1)),), 10, 0), ValueError),
            (GameConfig(1, p, (atom,), 0, 0), ValueError),
        ]
        for config, error in cases:
            with self.subTest(config=config):
                with self.assertRaises(error):
                    config.validate(self.automaton)

    def test_thresholds_are_exact(self):
        self.assertEqual(_thresholds([F(1, 2), F(1, 2)]), [2**63, 2**64])
        self.assertEqual(_thresholds([F(0), F(1)]), [0, 2**64])
        self.assertEqual(_thresholds([F(1, 3), F(2, 3)])[0], 2**64 // 3 + 1)


class SimulateTestCase(SimpleTestCase):
    def setUp(self):
        self.automaton = cerny(4)
        self.table = columns_at(self.automaton, 3)

    def test_same_seed_same_result(self):
        config = optimal_config(self.automaton, self.table, rounds=1200, seed=5)
        self.assertEqual(simulate(self.automaton, config), simulate(self.automaton, config))

    @override_settings(CERNY_LAB_THREADS=1, CERNY_LAB_SIM_CHUNK=300)
    def test_result_does_not_depend_on_thread_count(self):
        config = optimal_config(self.automaton, self.table, rounds=1200, seed=5)
        single = simulate(self.automaton, config)
        with self.settings(CERNY_LAB_THREADS=4):
            self.assertEqual(simulate(self.automaton, config), single)

    def test_frequency_is_close_to_the_expected_payoff(self):
        config = optimal_config(self.automaton, self.table, rounds=4000, seed=11)
        result = simulate(self.automaton, config)
        self.assertEqual(result.rounds, 4000)
        self.assertEqual(result.frequency, F(result.wins, 4000))
        self.assertLess(abs(float(result.frequency) - 0.5), 5 * result.stderr_estimate + 1e-9)

    def test_a_sure_win(self):
        """Guessing state 1 after the reset word always wins"""
        automaton = cerny(4)
        config = GameConfig(9, (F(1, 4),) * 4, (Atom((0, 1, 1, 1, 0, 1, 1, 1, 0), 1, F(1)),), 500, 3)
        result = simulate(automaton, config)
        self.assertEqual(result.wins, 500)
        self.assertEqual(result.stderr_estimate, 0)


class LongRunTestCase(SimpleTestCase):
    """10^5 rounds of the optimal strategies land within five standard deviations of k(t)"""

    def assertWithinFiveSigma(self, automaton, t, expected, seed):
        table = columns_at(automaton, t)
        solution = spf_at(automaton, table)
        self.assertEqual(expected_win(automaton, table, solution.p, solution.q), expected)
        config = optimal_config(automaton, table, rounds=100000, seed=seed)
        result = simulate(automaton, config)
        sigma = math.sqrt(float(expected * (1 - expected)) / result.rounds)
        self.assertLess(abs(float(result.frequency) - float(expected)), 5 * sigma)

    def test_cerny4_at_three(self):
        self.assertWithinFiveSigma(cerny(4), 3, F(1, 2), seed=2024)

    def test_tr9_at_eleven(self):
        self.assertWithinFiveSigma(tr(9), 11, F(2, 9), seed=2024)
