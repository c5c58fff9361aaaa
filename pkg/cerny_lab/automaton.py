"""Deterministic complete automata and the set operations the rest of the package is built on.

States are 1-indexed (q_1 .. q_n) everywhere a caller sees them. Letters are addressed by their 0-based position in
``Automaton.letters``; a word is a tuple of such positions, applied left to right.
"""

import logging
import string
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple, Union

import networkx as nx

from cerny_lab.exceptions import AutomatonParseError, InvalidAutomatonError

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

EMPTY_WORD: Word = ()


def _popcount(bits: int) -> int:
    return bin(bits).count("1")


@dataclass(frozen=True, order=False)
class StateVector:
    """A subset of {q_1..q_n}, equivalently a binary column vector, stored as a bitmask (bit i-1 is state i)"""

    n: int
    bits: int

    @classmethod
    def from_states(cls, n: int, states: Iterable[int]) -> "StateVector":
        bits = 0
        for state in states:
            if not 1 <= state <= n:
                raise ValueError(f"state {state} is outside 1..{n}")
            bits |= 1 << (state - 1)
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "StateVector":
        return cls(n, (1 << n) - 1)

    @classmethod
    def basis(cls, n: int, state: int) -> "StateVector":
        return cls.from_states(n, [state])

    @property
    def weight(self) -> int:
        return _popcount(self.bits)

    def states(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def entries(self) -> Tuple[int, ...]:
        """The 0/1 entries in state order"""
        return tuple(self.bits >> i & 1 for i in range(self.n))

    def lex_key(self) -> Tuple[int, ...]:
        """Ascending lexicographic key: entries compared from state 1 to state n with 0 < 1"""
        return self.entries()

    def __contains__(self, state: int) -> bool:
        return 1 <= state <= self.n and bool(self.bits >> (state - 1) & 1)

    def __len__(self) -> int:
        return self.weight

    def __iter__(self):
        return iter(self.states())

    def __str__(self) -> str:
        return "{" + ",".join(str(s) for s in self.states()) + "}"


@dataclass(frozen=True)
class Automaton:
    """n states and an ordered tuple of letters, each a total map given as the tuple (δ(q_1), .., δ(q_n))"""

    n: int
    letters: Tuple[Tuple[int, ...], ...]
    letter_names: Tuple[str, ...] = ()
    _images: tuple = field(init=False, repr=False, compare=False)
    _preimages: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidAutomatonError("an automaton needs at least one state")
        if not self.letters:
            raise InvalidAutomatonError("an automaton needs at least one letter")
        letters = tuple(tuple(letter) for letter in self.letters)
        for index, letter in enumerate(letters):
            if len(letter) != self.n:
                raise InvalidAutomatonError(
                    f"letter {index} maps {len(letter)} states, expected {self.n}"
                )
            for target in letter:
                if not 1 <= target <= self.n:
                    raise InvalidAutomatonError(
                        f"letter {index} has target {target} outside 1..{self.n}"
                    )
        names = tuple(self.letter_names) or default_letter_names(len(letters))
        if len(names) != len(letters) or len(set(names)) != len(names):
            raise InvalidAutomatonError("letter names must be distinct, one per letter")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "letter_names", names)

        images = []
        preimages = []
        for letter in letters:
            images.append(tuple(1 << (target - 1) for target in letter))
            pre = [0] * self.n
            for state, target in enumerate(letter):
                pre[target - 1] |= 1 << state
            preimages.append(tuple(pre))
        object.__setattr__(self, "_images", tuple(images))
        object.__setattr__(self, "_preimages", tuple(preimages))

    @property
    def m(self) -> int:
        return len(self.letters)

    def delta(self, state: int, letter: int) -> int:
        return self.letters[letter][state - 1]

    def check_letter(self, letter: int) -> None:
        if not 0 <= letter < self.m:
            raise ValueError(f"letter index {letter} is outside 0..{self.m - 1}")

    def image_bits(self, bits: int, letter: int) -> int:
        images = self._images[letter]
        result = 0
        i = 0
        while bits:
            if bits & 1:
                result |= images[i]
            bits >>= 1
            i += 1
        return result

    def preimage_bits(self, bits: int, letter: int) -> int:
        preimages = self._preimages[letter]
        result = 0
        i = 0
        while bits:
            if bits & 1:
                result |= preimages[i]
            bits >>= 1
            i += 1
        return result


def default_letter_names(m: int) -> Tuple[str, ...]:
    if m <= 26:
        return tuple(string.ascii_lowercase[:m])
    return tuple(f"l{i + 1}" for i in range(m))


def parse_automaton(text: str) -> Automaton:
    """Parse the "n m" header followed by m rows of n targets. Lines starting with '#' and blank lines are ignored"""
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((number, line.split()))

    if not rows:
        raise AutomatonParseError("missing header 'n m'", line=1)
    header_line, header = rows[0]
    if len(header) != 2:
        raise AutomatonParseError("header must be two integers 'n m'", line=header_line)
    try:
        n, m = (int(value) for value in header)
    except ValueError:
        raise AutomatonParseError("header must be two integers 'n m'", line=header_line)
    if n < 1 or m < 1:
        raise AutomatonParseError("n and m must both be at least 1", line=header_line)

    body = rows[1:]
    if len(body) < m:
        last_line = body[-1][0] if body else header_line
        raise AutomatonParseError(
            f"expected {m} letter rows, found {len(body)}", line=last_line + 1
        )
    if len(body) > m:
        raise AutomatonParseError(
            f"expected {m} letter rows, found {len(body)}", line=body[m][0]
        )

    letters = []
    for number, tokens in body:
        if len(tokens) != n:
            raise AutomatonParseError(
                f"expected {n} targets, found {len(tokens)}", line=number
            )
        try:
            targets = tuple(int(token) for token in tokens)
        except ValueError:
            raise AutomatonParseError("targets must be integers", line=number)
        for target in targets:
            if not 1 <= target <= n:
                raise AutomatonParseError(
                    f"target state {target} is outside 1..{n}", line=number
                )
        letters.append(targets)
    return Automaton(n, tuple(letters))


def format_automaton(automaton: Automaton) -> str:
    lines = [f"{automaton.n} {automaton.m}"]
    lines.extend(" ".join(str(target) for target in letter) for letter in automaton.letters)
    return "\n".join(lines) + "\n"


def parse_word(automaton: Automaton, text: str) -> Word:
    index = {name: i for i, name in enumerate(automaton.letter_names)}
    if all(len(name) == 1 for name in automaton.letter_names):
        symbols = list(text.strip())
    else:
        symbols = text.split()
    try:
        return tuple(index[symbol] for symbol in symbols)
    except KeyError as error:
        raise ValueError(f"unknown letter {error.args[0]!r}")


def format_word(automaton: Automaton, word: Word) -> str:
    separator = "" if all(len(name) == 1 for name in automaton.letter_names) else " "
    return separator.join(automaton.letter_names[letter] for letter in word)


def image_of_set(automaton: Automaton, subset: StateVector, letter: int) -> StateVector:
    """{δ(q, letter) : q in subset}"""
    automaton.check_letter(letter)
    return StateVector(automaton.n, automaton.image_bits(subset.bits, letter))


def preimage_of_set(automaton: Automaton, subset: StateVector, letter: int) -> StateVector:
    """{q : δ(q, letter) in subset}, the product L·c for the characteristic column c of subset"""
    automaton.check_letter(letter)
    return StateVector(automaton.n, automaton.preimage_bits(subset.bits, letter))


def apply_word_image(automaton: Automaton, subset: StateVector, word: Word) -> StateVector:
    bits = subset.bits
    for letter in word:
        automaton.check_letter(letter)
        bits = automaton.image_bits(bits, letter)
    return StateVector(automaton.n, bits)


def apply_word_state(automaton: Automaton, state: int, word: Word) -> int:
    for letter in word:
        state = automaton.letters[letter][state - 1]
    return state


def is_synchronizing(automaton: Automaton) -> bool:
    """Pair-merging criterion: every pair of states can be merged by some word

    Walks the pair graph backwards from the pairs a single letter merges.
    """
    n = automaton.n
    predecessors = defaultdict(list)
    merged = set()
    queue = deque()
    for p in range(1, n + 1):
        for q in range(p + 1, n + 1):
            for letter in automaton.letters:
                a, b = letter[p - 1], letter[q - 1]
                if a == b:
                    if (p, q) not in merged:
                        merged.add((p, q))
                        queue.append((p, q))
                else:
                    predecessors[(min(a, b), max(a, b))].append((p, q))
    while queue:
        pair = queue.popleft()
        for source in predecessors[pair]:
            if source not in merged:
                merged.add(source)
                queue.append(source)
    return len(merged) == n * (n - 1) // 2


def is_strongly_connected(automaton: Automaton) -> bool:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, automaton.n + 1))
    for letter in automaton.letters:
        graph.add_edges_from((state, target) for state, target in enumerate(letter, start=1))
    return nx.is_strongly_connected(graph)


@dataclass(frozen=True)
class NotFound:
    """Negative search result. reason is "cap" when the search stopped at cap, "saturated" when nothing is left to find"""

    cap: int
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ResetWord:
    length: int
    word: Word


def cerny_bound(n: int) -> int:
    return (n - 1) ** 2


def pin_frankl_bound(n: int) -> int:
    return (n**3 - n) // 6


def default_reset_cap(n: int, pin_frankl: bool = False) -> int:
    if pin_frankl:
        return pin_frankl_bound(n)
    return cerny_bound(n) + n


def shortest_reset_word(
    automaton: Automaton, cap: Optional[int] = None
) -> Union[ResetWord, NotFound]:
    """Breadth first search over subsets from the full state set

    Letters are expanded in declared order so the returned word is the first shortest one in that order.
    """
    if cap is None:
        cap = default_reset_cap(automaton.n)
    if cap < 0:
        raise ValueError("cap must be non-negative")
    start = (1 << automaton.n) - 1
    if _popcount(start) == 1:
        return ResetWord(0, EMPTY_WORD)

    parents = {start: None}
    layer = [start]
    for length in range(1, cap + 1):
        next_layer = []
        for subset in layer:
            for letter in range(automaton.m):
                image = automaton.image_bits(subset, letter)
                if image in parents:
                    continue
                parents[image] = (subset, letter)
                if _popcount(image) == 1:
                    word = []
                    node = image
                    while parents[node] is not None:
                        node, step = parents[node]
                        word.append(step)
                    logger.debug("reset word of length %s after %s subsets", length, len(parents))
                    return ResetWord(length, tuple(reversed(word)))
                next_layer.append(image)
        if not next_layer:
            return NotFound(cap, "saturated")
        layer = next_layer
    return NotFound(cap, "cap")
