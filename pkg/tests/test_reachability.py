from django.test import SimpleTestCase
from hypothesis import given, settings

from cerny_lab.automaton import Automaton, NotFound, StateVector, format_word, preimage_of_set
from cerny_lab.exceptions import InvariantViolation
from cerny_lab.families import cerny, tr
from cerny_lab.reachability import (
    ColumnTable,
    census_bound_holds,
    column_of_word,
    column_word_mismatches,
    columns_at,
    extend_columns,
    iter_tables,
    support_graph,
    t_ell,
    triple_rendezvous_time,
)
from tests.hypothesis_strategies import automata
from tests.oracles import all_automata, naive_columns, naive_rendezvous_time


def states_of(table):
    return [column.states() for column in table.columns]


class ColumnTableTestCase(SimpleTestCase):
    def test_initial_table_is_the_identity(self):
        table = ColumnTable.initial(cerny(3))
        self.assertEqual(states_of(table), [(1,), (2,), (3,)])
        self.assertEqual(table.rows(), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        self.assertEqual(table.block(0), (0, 1, 2))

    def test_cerny4_columns_up_to_three(self):
        automaton = cerny(4)
        table = columns_at(automaton, 3)
        self.assertEqual(table.m, 7)
        self.assertEqual(states_of(table), [(1,), (2,), (3,), (4,), (1, 4), (3, 4), (2, 3)])
        self.assertEqual(
            [format_word(automaton, meta.witness) for meta in table.meta[4:]], ["a", "ba", "bba"]
        )
        self.assertEqual([meta.target for meta in table.meta[4:]], [1, 1, 1])
        self.assertEqual([table.block(t) for t in (1, 2, 3)], [(4,), (5,), (6,)])
        self.assertEqual(table.frontier, (6,))
        self.assertEqual(column_word_mismatches(automaton, table), [])

    def test_tr9_blocks(self):
        """Within a block the columns are sorted ascending, so {1,7} comes after {5,9}"""
        expected = {
            1: [(3, 5)],
            2: [(2, 4)],
            3: [(1, 6)],
            4: [(7, 8)],
            5: [(8, 9)],
            6: [(6, 9)],
            7: [(5, 7)],
            8: [(4, 9)],
            9: [(6, 7), (2, 9)],
            10: [(5, 9), (1, 8), (1, 7)],
            11: [(4, 7), (3, 9), (3, 8)],
        }
        table = columns_at(tr(9), 11)
        self.assertEqual(table.m, 25)
        for t, block in expected.items():
            with self.subTest(t=t):
                self.assertEqual([table.columns[i].states() for i in table.block(t)], block)
        self.assertTrue(census_bound_holds(table))
        self.assertEqual(table.max_weight(), 2)

    def test_columns_grow_monotonically(self):
        automaton = cerny(5)
        previous = None
        for table in iter_tables(automaton, 10):
            if previous is not None:
                self.assertEqual(table.columns[: previous.m], previous.columns)
                self.assertGreaterEqual(table.m, previous.m)
            previous = table
        self.assertEqual(previous.t, 10)

    def test_saturated_table_only_advances_t(self):
        automaton = Automaton(2, ((2, 1),))
        table = columns_at(automaton, 1)
        self.assertTrue(table.saturated)
        self.assertEqual(table.m, 2)
        self.assertEqual(extend_columns(automaton, table).t, 2)

    def test_negative_t(self):
        with self.assertRaises(ValueError):
            columns_at(cerny(3), -1)

    def test_column_of_word(self):
        automaton = cerny(4)
        self.assertEqual(column_of_word(automaton, (1, 0), 1), StateVector.from_states(4, [3, 4]))
        self.assertEqual(column_of_word(automaton, (), 2), StateVector.basis(4, 2))

    @settings(max_examples=40, deadline=None)
    @given(automata(max_n=4, max_m=2))
    def test_columns_match_every_word(self, automaton):
        t = 4
        table = columns_at(automaton, t)
        self.assertEqual({column.bits for column in table.columns}, naive_columns(automaton, t))
        self.assertEqual(column_word_mismatches(automaton, table), [])


class TripleRendezvousTestCase(SimpleTestCase):
    def test_cerny4(self):
        automaton = cerny(4)
        result = triple_rendezvous_time(automaton)
        self.assertEqual(result.t3, 5)
        self.assertEqual(format_word(automaton, result.witness), "abbba")
        self.assertEqual(result.merged_states.states(), (1, 2, 4))
        self.assertEqual(result.target, 1)

    def test_cerny6(self):
        self.assertEqual(triple_rendezvous_time(cerny(6)).t, 7)

    def test_tr9(self):
        automaton = tr(9)
        result = triple_rendezvous_time(automaton)
        self.assertEqual(result.t, 12)
        self.assertEqual(format_word(automaton, result.witness), "abbabbababba")
        self.assertEqual(result.merged_states.states(), (3, 5, 9))
        self.assertEqual(result.target, 3)

    def test_two_states_cannot_merge_three(self):
        result = triple_rendezvous_time(cerny(2))
        self.assertIsInstance(result, NotFound)
        self.assertEqual(result.reason, "saturated")

    def test_permutations_saturate(self):
        result = triple_rendezvous_time(Automaton(3, ((2, 3, 1),)))
        self.assertEqual(result.reason, "saturated")

    def test_cap(self):
        self.assertEqual(triple_rendezvous_time(cerny(4), cap=4), NotFound(4, "cap"))

    def test_synchronizing_table_must_reach_the_full_column(self):
        """A table of a synchronizing automaton that stops growing early is an internal error"""
        automaton = cerny(3)
        table = columns_at(automaton, 1)
        stuck = ColumnTable(automaton, table.t, table.columns, table.meta, frontier=())
        with self.assertRaises(InvariantViolation):
            extend_columns(automaton, stuck)

    @settings(max_examples=60, deadline=None)
    @given(automata(min_n=3, max_n=5, max_m=2))
    def test_t3_matches_brute_force(self, automaton):
        result = triple_rendezvous_time(automaton)
        cap = automaton.n * (automaton.n - 1) // 2 + 1
        expected = naive_rendezvous_time(automaton, 3, min(cap, 8))
        if isinstance(result, NotFound):
            self.assertIsNone(expected)
        elif result.t <= 8:
            self.assertEqual(result.t, expected)
            self.assertEqual(column_of_word(automaton, result.witness, result.target), result.merged_states)


class TEllTestCase(SimpleTestCase):
    def test_l_equal_to_n_is_the_reset_threshold(self):
        self.assertEqual(t_ell(cerny(4), 4).t, 9)
        self.assertEqual(t_ell(cerny(5), 5).t, 16)

    def test_l_two(self):
        self.assertEqual(t_ell(cerny(4), 2).t, 1)

    def test_l_out_of_range(self):
        for l in (1, 5):
            with self.subTest(l=l):
                with self.assertRaises(ValueError):
                    t_ell(cerny(4), l)


class SupportGraphTestCase(SimpleTestCase):
    def test_cerny4_graph_is_a_path(self):
        table = columns_at(cerny(4), 3)
        graph = support_graph(table)
        self.assertEqual(sorted(graph.edges), [(1, 4), (2, 3), (3, 4)])
        self.assertEqual(graph.edge_columns, (4, 5, 6))
        self.assertEqual(graph.singleton_columns, (0, 1, 2, 3))
        self.assertEqual(graph.components(), [(1, 2, 3, 4)])
        self.assertEqual(graph.classify((1, 2, 3, 4)), "path")
        self.assertEqual(graph.degree(4), 2)

    def test_classify(self):
        table = columns_at(cerny(4), 5)
        graph = support_graph(table, [0, 4])
        self.assertEqual(graph.classify((1, 4)), "pair")
        self.assertEqual(graph.classify((2,)), "singleton")
        # {1,4}, {3,4}, {2,3}, {1,2} close a 4-cycle
        cycle = support_graph(table, [4, 5, 6, 7])
        self.assertEqual(cycle.classify((1, 2, 3, 4)), "even_cycle")


class CensusTestCase(SimpleTestCase):
    def test_holds_up_to_the_triple_rendezvous(self):
        automaton = cerny(4)
        for t in range(6):
            with self.subTest(t=t):
                self.assertTrue(census_bound_holds(columns_at(automaton, t)))

    def test_fails_once_a_heavy_column_is_older_than_the_last_block(self):
        self.assertFalse(census_bound_holds(columns_at(cerny(4), 6)))

    def test_fails_when_a_step_added_nothing(self):
        self.assertFalse(census_bound_holds(columns_at(Automaton(3, ((2, 3, 1),)), 1)))


class TrStructureTestCase(SimpleTestCase):
    def test_double_letters_fix_the_tail_pairs(self):
        """a^2 and b^2 fix every column {q_2i, q_2j-1} with i, j > 3"""
        for n in (9, 11, 13):
            automaton = tr(n)
            evens = range(8, n + 1, 2)
            odds = range(7, n + 1, 2)
            for even in evens:
                for odd in odds:
                    column = StateVector.from_states(n, [even, odd])
                    for letter in range(automaton.m):
                        with self.subTest(n=n, column=(even, odd), letter=letter):
                            once = preimage_of_set(automaton, column, letter)
                            self.assertEqual(preimage_of_set(automaton, once, letter), column)


class ExhaustiveTripleRendezvousTestCase(SimpleTestCase):
    def test_every_three_state_two_letter_automaton(self):
        """T_3 <= 4 for three states, so words up to length six decide every case"""
        for automaton in all_automata(3, 2):
            result = triple_rendezvous_time(automaton)
            expected = naive_rendezvous_time(automaton, 3, 6)
            if isinstance(result, NotFound):
                self.assertIsNone(expected, automaton.letters)
            else:
                self.assertEqual(result.t, expected, automaton.letters)
