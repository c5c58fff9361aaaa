import json
import os

from cerny_lab.exceptions import DimensionMismatch
from cerny_lab.gamesim import (
    GameConfig,
    atoms_from_table,
    expected_win,
    optimal_config,
    simulate,
    uniform_config,
)
from cerny_lab.management.base import LabCommand
from cerny_lab.reachability import columns_at
from cerny_lab.serializers import display, parse_rational


class Command(LabCommand):
    """Plays the reset game between two mixed strategies"""

    help = "Play the guessing game by simulation and compare with the exact expected payoff"

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--t", type=int, required=True)
        parser.add_argument("--rounds", type=int, default=100000)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument(
            "--strategy",
            default="optimal",
            help="optimal, uniform, or a JSON file {\"p\": [...], \"q\": [...]} with q indexed by column",
        )
        self.add_json_argument(parser)

    def load_config(self, automaton, table, options) -> GameConfig:
        strategy = options["strategy"]
        if strategy == "optimal":
            return optimal_config(automaton, table, options["rounds"], options["seed"])
        if strategy == "uniform":
            return uniform_config(automaton, table, options["rounds"], options["seed"])
        if not os.path.exists(strategy):
            raise ValueError(f"strategy must be optimal, uniform or a JSON file, got {strategy!r}")
        with open(strategy, encoding="utf-8") as handle:
            document = json.load(handle)
        try:
            p = tuple(parse_rational(value) for value in document["p"])
            q = [parse_rational(value) for value in document["q"]]
        except (KeyError, TypeError) as error:
            raise ValueError(f"strategy file needs 'p' and 'q' lists: {error}")
        if len(q) != table.m:
            raise DimensionMismatch(f"q has {len(q)} entries but A({table.t}) has {table.m} columns")
        return GameConfig(table.t, p, atoms_from_table(table, q), options["rounds"], options["seed"])

    def handle(self, *args, **options):
        """Simulates, then compares the win frequency with the exact payoff"""
        automaton = self.load_automaton(options["input"])
        table = columns_at(automaton, options["t"])
        config = self.load_config(automaton, table, options)
        q = [0] * table.m
        index = {(meta.witness, meta.target): j for j, meta in enumerate(table.meta)}
        for atom in config.q:
            q[index[(atom.word, atom.target)]] += atom.weight
        expected = expected_win(automaton, table, config.p, q)
        result = simulate(automaton, config)
        deviation = float(result.frequency) - float(expected)

        if options["json"]:
            self.write_json(
                "game-sim",
                t=table.t,
                rounds=result.rounds,
                wins=result.wins,
                frequency=result.frequency,
                expected=expected,
                stderr_estimate=result.stderr_estimate,
                deviation=deviation,
            )
            return
        self.stdout.write(
            f"t={table.t} rounds={result.rounds} wins={result.wins} "
            f"frequency={float(result.frequency):.6f} expected={display(expected)} "
            f"stderr={result.stderr_estimate:.6f}"
        )
