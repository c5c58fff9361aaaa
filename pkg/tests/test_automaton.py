from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from cerny_lab.automaton import (
    Automaton,
    NotFound,
    StateVector,
    apply_word_image,
    apply_word_state,
    cerny_bound,
    default_reset_cap,
    format_automaton,
    format_word,
    image_of_set,
    is_strongly_connected,
    is_synchronizing,
    parse_automaton,
    parse_word,
    pin_frankl_bound,
    preimage_of_set,
    shortest_reset_word,
)
from cerny_lab.exceptions import AutomatonParseError, InvalidAutomatonError
from cerny_lab.families import cerny
from tests.hypothesis_strategies import automata
from tests.oracles import naive_reset_threshold

C4_TEXT = "4 2\n1 2 3 1\n2 3 4 1\n"


class StateVectorTestCase(SimpleTestCase):
    def test_states_are_one_indexed(self):
        vector = StateVector.from_states(4, [1, 4])
        self.assertEqual(vector.bits, 0b1001)
        self.assertEqual(vector.states(), (1, 4))
        self.assertEqual(vector.entries(), (1, 0, 0, 1))
        self.assertEqual(vector.weight, 2)
        self.assertEqual(str(vector), "{1,4}")
        self.assertIn(4, vector)
        self.assertNotIn(2, vector)
        self.assertNotIn(5, vector)

    def test_state_outside_range_is_rejected(self):
        with self.assertRaises(ValueError):
            StateVector.from_states(3, [4])

    def test_lex_key_orders_ascending_with_zero_before_one(self):
        vectors = [StateVector.from_states(3, s) for s in ([1], [2, 3], [1, 2], [3])]
        ordered = sorted(vectors, key=StateVector.lex_key)
        self.assertEqual([v.states() for v in ordered], [(3,), (2, 3), (1,), (1, 2)])


class ParseAutomatonTestCase(SimpleTestCase):
    def test_parse_and_format_are_inverse(self):
        automaton = parse_automaton(C4_TEXT)
        self.assertEqual(automaton.n, 4)
        self.assertEqual(automaton.m, 2)
        self.assertEqual(automaton.letter_names, ("a", "b"))
        self.assertEqual(format_automaton(automaton), C4_TEXT)
        self.assertEqual(automaton, cerny(4))

    def test_comments_and_blank_lines_are_ignored(self):
        text = "# the Cerny automaton\n\n4 2\n# a\n1 2 3 1\n\n2 3 4 1\n"
        self.assertEqual(parse_automaton(text), cerny(4))

    def test_errors_carry_the_line_number(self):
        cases = [
            ("", 1),
            ("4\n", 1),
            ("4 2\n1 2 3 1\n", 3),
            ("4 2\n1 2 3 1\n2 3 4\n", 3),
            ("4 2\n1 2 3 5\n2 3 4 1\n", 2),
            ("4 2\n1 2 x 1\n2 3 4 1\n", 2),
            ("4 1\n1 2 3 1\n2 3 4 1\n", 3),
            ("0 2\n", 1),
        ]
        for text, line in cases:
            with self.subTest(text=text):
                with self.assertRaises(AutomatonParseError) as e:
                    parse_automaton(text)
                self.assertEqual(e.exception.line, line)
                self.assertTrue(str(e.exception).startswith(f"line {line}:"))

    def test_parse_errors_are_value_errors(self):
        with self.assertRaises(ValueError):
            parse_automaton("two states\n")

    def test_invalid_automaton_is_rejected(self):
        with self.assertRaises(InvalidAutomatonError):
            Automaton(2, ((1, 3),))
        with self.assertRaises(InvalidAutomatonError):
            Automaton(2, ())
        with self.assertRaises(InvalidAutomatonError):
            Automaton(2, ((1, 2), (2, 1)), ("a", "a"))


class WordTestCase(SimpleTestCase):
    def setUp(self):
        self.automaton = cerny(4)

    def test_words_apply_left_to_right(self):
        word = parse_word(self.automaton, "ba")
        self.assertEqual(word, (1, 0))
        # 4 -b-> 1 -a-> 1, 3 -b-> 4 -a-> 1
        self.assertEqual(apply_word_state(self.automaton, 4, word), 1)
        self.assertEqual(apply_word_state(self.automaton, 3, word), 1)
        self.assertEqual(format_word(self.automaton, word), "ba")

    def test_unknown_letter(self):
        with self.assertRaises(ValueError):
            parse_word(self.automaton, "abc")

    def test_image_and_preimage(self):
        full = StateVector.full(4)
        self.assertEqual(image_of_set(self.automaton, full, 0).states(), (1, 2, 3))
        self.assertEqual(preimage_of_set(self.automaton, StateVector.basis(4, 1), 0).states(), (1, 4))
        self.assertEqual(apply_word_image(self.automaton, full, (0, 1)).states(), (2, 3, 4))

    def test_letter_index_is_checked(self):
        with self.assertRaises(ValueError):
            image_of_set(self.automaton, StateVector.full(4), 2)

    @given(automata(), st.data())
    def test_preimage_is_adjoint_to_image(self, automaton, data):
        """q is in the preimage of S exactly when the image of {q} meets S"""
        letter = data.draw(st.integers(min_value=0, max_value=automaton.m - 1))
        bits = data.draw(st.integers(min_value=0, max_value=(1 << automaton.n) - 1))
        subset = StateVector(automaton.n, bits)
        preimage = preimage_of_set(automaton, subset, letter)
        for state in range(1, automaton.n + 1):
            image = image_of_set(automaton, StateVector.basis(automaton.n, state), letter)
            self.assertEqual(state in preimage, bool(image.bits & subset.bits))


class SynchronizationTestCase(SimpleTestCase):
    def test_cerny_automata_have_reset_threshold_cerny_bound(self):
        for n in range(2, 7):
            with self.subTest(n=n):
                result = shortest_reset_word(cerny(n))
                self.assertEqual(result.length, (n - 1) ** 2)
                final = apply_word_image(cerny(n), StateVector.full(n), result.word)
                self.assertEqual(final.weight, 1)

    def test_first_shortest_word_in_letter_order(self):
        result = shortest_reset_word(cerny(4))
        self.assertEqual(format_word(cerny(4), result.word), "abbbabbba")

    def test_single_state_needs_the_empty_word(self):
        result = shortest_reset_word(Automaton(1, ((1,),)))
        self.assertEqual(result.length, 0)
        self.assertEqual(result.word, ())

    def test_permutation_automaton_never_synchronizes(self):
        automaton = Automaton(3, ((2, 3, 1), (2, 1, 3)))
        self.assertFalse(is_synchronizing(automaton))
        result = shortest_reset_word(automaton)
        self.assertIsInstance(result, NotFound)
        self.assertFalse(result)
        self.assertEqual(result.reason, "saturated")

    def test_cap_stops_the_search(self):
        result = shortest_reset_word(cerny(4), cap=8)
        self.assertEqual(result, NotFound(8, "cap"))

    def test_negative_cap(self):
        with self.assertRaises(ValueError):
            shortest_reset_word(cerny(4), cap=-1)

    def test_caps(self):
        self.assertEqual(cerny_bound(5), 16)
        self.assertEqual(pin_frankl_bound(5), 20)
        self.assertEqual(default_reset_cap(5), 21)
        self.assertEqual(default_reset_cap(5, pin_frankl=True), 20)

    def test_strong_connectivity(self):
        self.assertTrue(is_strongly_connected(cerny(5)))
        self.assertFalse(is_strongly_connected(Automaton(2, ((2, 2),))))

    @settings(max_examples=60, deadline=None)
    @given(automata(max_n=4, max_m=2))
    def test_reset_search_matches_brute_force(self, automaton):
        cap = default_reset_cap(automaton.n, pin_frankl=True)
        expected = naive_reset_threshold(automaton, cap)
        result = shortest_reset_word(automaton, cap=max(cap, 1))
        self.assertEqual(is_synchronizing(automaton), expected is not None)
        if expected is None:
            self.assertIsInstance(result, NotFound)
        else:
            self.assertEqual(result.length, expected)
