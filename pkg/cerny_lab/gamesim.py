"""Monte Carlo play of the guessing game behind k(t), and its exact expected payoff

Each round Player Two draws a hidden state from p, Player One draws a word and a guess from q, and Player One wins
when the word sends the hidden state to the guess. Draws use exact inverse CDF sampling on raw 64-bit outputs of
numpy's PCG64, one independent stream per chunk of rounds spawned from the master seed.
"""

import logging
import math
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from cerny_lab.automaton import Automaton, Word, apply_word_state
from cerny_lab.conf import lab_settings
from cerny_lab.exceptions import DimensionMismatch
from cerny_lab.reachability import ColumnTable
from cerny_lab.spf import payoffs, spf_at

logger = logging.getLogger(__name__)

SCALE = 1 << 64


@dataclass(frozen=True)
class Atom:
    """A pure strategy of Player One: apply word, then guess target"""

    word: Word
    target: int
    weight: Fraction


@dataclass(frozen=True)
class GameConfig:
    t: int
    p: Tuple[Fraction, ...]
    q: Tuple[Atom, ...]
    rounds: int
    seed: int

    def validate(self, automaton: Automaton) -> None:
        if len(self.p) != automaton.n:
            raise DimensionMismatch(f"p has {len(self.p)} entries, expected {automaton.n}")
        _check_distribution("p", self.p)
        _check_distribution("q", [atom.weight for atom in self.q])
        for atom in self.q:
            if len(atom.word) > self.t:
                raise ValueError(f"a word of length {len(atom.word)} exceeds the horizon t={self.t}")
            if not 1 <= atom.target <= automaton.n:
                raise ValueError(f"guess {atom.target} is not a state")
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")


def _check_distribution(name: str, values: Sequence[Fraction]) -> None:
    if any(value < 0 for value in values) or sum(values) != 1:
        raise ValueError(f"{name} must be non-negative and sum to 1")


@dataclass(frozen=True)
class SimulationResult:
    wins: int
    rounds: int
    frequency: Fraction
    stderr_estimate: float


def expected_win(
    automaton: Automaton, table: ColumnTable, p: Sequence[Fraction], q: Sequence[Fraction]
) -> Fraction:
    """sum_j q_j (p . a_j)"""
    if len(p) != automaton.n:
        raise DimensionMismatch(f"p has {len(p)} entries, expected {automaton.n}")
    if len(q) != table.m:
        raise DimensionMismatch(f"q has {len(q)} entries, expected {table.m}")
    return sum(
        (weight * value for weight, value in zip(q, payoffs(p, table.columns)) if weight),
        Fraction(0),
    )


def atoms_from_table(table: ColumnTable, q: Sequence[Fraction]) -> Tuple[Atom, ...]:
    if len(q) != table.m:
        raise DimensionMismatch(f"q has {len(q)} entries, expected {table.m}")
    return tuple(
        Atom(meta.witness, meta.target, Fraction(weight))
        for meta, weight in zip(table.meta, q)
        if weight
    )


def optimal_config(
    automaton: Automaton, table: ColumnTable, rounds: int, seed: int
) -> GameConfig:
    solution = spf_at(automaton, table)
    return GameConfig(table.t, solution.p, atoms_from_table(table, solution.q), rounds, seed)


def uniform_config(automaton: Automaton, table: ColumnTable, rounds: int, seed: int) -> GameConfig:
    p = tuple(Fraction(1, automaton.n) for _ in range(automaton.n))
    q = [Fraction(1, table.m)] * table.m
    return GameConfig(table.t, p, atoms_from_table(table, q), rounds, seed)


def _thresholds(weights: Sequence[Fraction]) -> List[int]:
    """ceil(F_i * 2^64) for the cumulative sums F_i. A raw draw u picks the first i with u < threshold_i"""
    thresholds = []
    total = Fraction(0)
    for weight in weights:
        total += weight
        thresholds.append(math.ceil(total * SCALE))
    return thresholds


def _play_chunk(automaton: Automaton, config: GameConfig, seed_sequence, rounds: int) -> int:
    hidden = _thresholds(config.p)
    guesses = _thresholds([atom.weight for atom in config.q])
    draws = np.random.PCG64(seed_sequence).random_raw(2 * rounds).tolist()
    wins = 0
    for r in range(rounds):
        state = bisect_right(hidden, draws[2 * r]) + 1
        atom = config.q[bisect_right(guesses, draws[2 * r + 1])]
        if apply_word_state(automaton, state, atom.word) == atom.target:
            wins += 1
    return wins


def simulate(automaton: Automaton, config: GameConfig) -> SimulationResult:
    config.validate(automaton)
    chunk = lab_settings.SIM_CHUNK
    sizes = [min(chunk, config.rounds - start) for start in range(0, config.rounds, chunk)]
    children = np.random.SeedSequence(config.seed).spawn(len(sizes))
    with ThreadPoolExecutor(max_workers=lab_settings.THREADS) as executor:
        wins = sum(
            executor.map(
                lambda job: _play_chunk(automaton, config, *job), zip(children, sizes)
            )
        )
    frequency = Fraction(wins, config.rounds)
    f = float(frequency)
    result = SimulationResult(wins, config.rounds, frequency, math.sqrt(f * (1 - f) / config.rounds))
    logger.info(
        "simulated %s rounds in %s chunks: %s wins", config.rounds, len(sizes), wins
    )
    return result
