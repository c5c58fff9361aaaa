"""Builtin automata: the Černý family C_n, the TR_n family with T_3 = n + 3, and seeded random automata"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from cerny_lab.automaton import Automaton, NotFound, is_synchronizing, shortest_reset_word
from cerny_lab.exceptions import FamilyParameterError
from cerny_lab.reachability import triple_rendezvous_time

logger = logging.getLogger(__name__)

FAMILIES = ("cerny", "tr", "random")

TR9_LETTERS = (
    (7, 4, 3, 2, 3, 8, 1, 6, 9),
    (2, 3, 1, 5, 6, 4, 9, 8, 7),
)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    m: int = 2
    seed: Optional[int] = None

    def build(self) -> Automaton:
        if self.kind == "cerny":
            return cerny(self.n)
        if self.kind == "tr":
            return tr(self.n)
        if self.kind == "random":
            return random_automaton(self.n, self.m, self.seed or 0)
        raise FamilyParameterError(f"unknown family {self.kind!r}, expected one of {', '.join(FAMILIES)}")

    def __str__(self) -> str:
        if self.kind == "random":
            return f"random:{self.n}:{self.m}:{self.seed or 0}"
        return f"{self.kind}:{self.n}"


def cerny(n: int) -> Automaton:
    """a sends q_n to q_1 and fixes the rest, b is the cycle q_i -> q_{i+1}"""
    if n < 2:
        raise FamilyParameterError(f"the Černý family needs n >= 2, got {n}")
    a = tuple(range(1, n)) + (1,)
    b = tuple(range(2, n + 1)) + (1,)
    return Automaton(n, (a, b))


def tr(n: int) -> Automaton:
    """TR_9 extended two states at a time up to n"""
    if n < 9 or n % 2 == 0:
        raise FamilyParameterError(f"the TR family needs an odd n >= 9, got {n}")
    letters = [list(letter) for letter in TR9_LETTERS]
    size = 9
    while size < n:
        letters = _extend_tr(letters, size)
        size += 2
    return Automaton(n, tuple(tuple(letter) for letter in letters))


def _extend_tr(letters: List[List[int]], n: int) -> List[List[int]]:
    """Step from TR_n to TR_{n+2}. l_1 is the letter fixing q_n"""
    fixing = [index for index, letter in enumerate(letters) if letter[n - 1] == n]
    if len(fixing) != 1:
        raise FamilyParameterError(f"TR_{n} must have exactly one letter fixing q_{n}")
    l1 = fixing[0]
    l2 = 1 - l1
    extended = [letter + [0, 0] for letter in letters]
    extended[l1][n - 1] = n + 2
    extended[l1][n + 1] = n
    extended[l1][n] = n + 1
    extended[l2][n - 2] = n + 1
    extended[l2][n] = n - 1
    extended[l2][n + 1] = n + 2
    return extended


def random_automaton(n: int, m: int, seed: int) -> Automaton:
    """Every transition drawn uniformly from {1..n} by numpy's PCG64 generator seeded with seed"""
    if n < 1 or m < 1:
        raise FamilyParameterError(f"random automata need n >= 1 and m >= 1, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    table = rng.integers(1, n + 1, size=(m, n))
    return Automaton(n, tuple(tuple(int(target) for target in row) for row in table))


def synchronizing_fraction(n: int, m: int, samples: int, seed: int) -> Fraction:
    """Share of synchronizing automata among samples random ones, drawn with the same seeds as screen_random"""
    if samples < 1:
        raise FamilyParameterError("samples must be positive")
    seeds = np.random.default_rng(seed).integers(0, 2**63 - 1, size=samples)
    count = sum(is_synchronizing(random_automaton(n, m, int(sample_seed))) for sample_seed in seeds)
    fraction = Fraction(count, samples)
    logger.info(
        "%s of %s random automata (n=%s, m=%s) synchronize: %.3f", count, samples, n, m, float(fraction)
    )
    return fraction


def parse_family(spec: str) -> FamilySpec:
    """Parse "cerny:n", "tr:n" or "random:n:m:seed" """
    kind, _, rest = spec.partition(":")
    try:
        values = [int(part) for part in rest.split(":")] if rest else []
    except ValueError:
        raise FamilyParameterError(f"family parameters must be integers in {spec!r}")
    if kind in ("cerny", "tr") and len(values) == 1:
        return FamilySpec(kind, values[0])
    if kind == "random" and len(values) == 3:
        return FamilySpec(kind, values[0], values[1], values[2])
    raise FamilyParameterError(
        f"unrecognised builtin {spec!r}, expected cerny:n, tr:n or random:n:m:seed"
    )


@dataclass(frozen=True)
class ScreenHit:
    index: int
    seed: int
    t3: int
    reset_threshold: Optional[int]


def screen_random(n: int, m: int, samples: int, seed: int, min_t3: int) -> List[ScreenHit]:
    """Sample random automata and keep the synchronizing ones whose triple rendezvous time is at least min_t3

    T_3 is cheap next to the reset threshold, so it is computed first and the subset search only runs on hits.
    Each hit's seed reproduces it through random_automaton.
    """
    if samples < 0:
        raise FamilyParameterError("samples must be non-negative")
    seeds = np.random.default_rng(seed).integers(0, 2**63 - 1, size=samples)
    hits = []
    synchronizing = 0
    for index, sample_seed in enumerate(seeds):
        automaton = random_automaton(n, m, int(sample_seed))
        if not is_synchronizing(automaton):
            continue
        synchronizing += 1
        result = triple_rendezvous_time(automaton)
        if isinstance(result, NotFound) or result.t3 < min_t3:
            continue
        reset = shortest_reset_word(automaton)
        hits.append(
            ScreenHit(
                index=index,
                seed=int(sample_seed),
                t3=result.t3,
                reset_threshold=None if isinstance(reset, NotFound) else reset.length,
            )
        )
    logger.info(
        "screened %s automata (n=%s, m=%s): %s synchronizing, %s with T_3 >= %s",
        samples,
        n,
        m,
        synchronizing,
        len(hits),
        min_t3,
    )
    return hits
