"""Reachable columns A(t), the triple rendezvous time and its T_l generalization, and the support graph G(t)

A column is the characteristic vector {q : q.w = i} of the states a word w sends to a target state i. A(0) is the
identity; A(t+1) adds the preimages of the columns first reached at t, deduplicated and sorted lexicographically
within their block.
"""

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple, Union

import networkx as nx

from cerny_lab.automaton import (
    Automaton,
    EMPTY_WORD,
    NotFound,
    StateVector,
    Word,
    is_synchronizing,
    pin_frankl_bound,
)
from cerny_lab.exceptions import InvariantViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColumnMeta:
    """Provenance of a column: the first t it appears at, a shortest word having it, and the target state"""

    first_time: int
    witness: Word
    target: int
    parent: Optional[int] = None
    letter: Optional[int] = None


@dataclass(frozen=True)
class ColumnTable:
    automaton: Automaton
    t: int
    columns: Tuple[StateVector, ...]
    meta: Tuple[ColumnMeta, ...]
    frontier: Tuple[int, ...]
    saturated: bool = False

    @classmethod
    def initial(cls, automaton: Automaton) -> "ColumnTable":
        n = automaton.n
        return cls(
            automaton=automaton,
            t=0,
            columns=tuple(StateVector.basis(n, state) for state in range(1, n + 1)),
            meta=tuple(ColumnMeta(0, EMPTY_WORD, state) for state in range(1, n + 1)),
            frontier=tuple(range(n)),
        )

    @property
    def n(self) -> int:
        return self.automaton.n

    @property
    def m(self) -> int:
        """m(t), the number of distinct columns"""
        return len(self.columns)

    @cached_property
    def index(self) -> Dict[int, int]:
        return {column.bits: position for position, column in enumerate(self.columns)}

    def __contains__(self, column: StateVector) -> bool:
        return column.bits in self.index

    def __len__(self) -> int:
        return self.m

    def block(self, t: int) -> Tuple[int, ...]:
        """Indices of the columns first reached at t"""
        return tuple(i for i, meta in enumerate(self.meta) if meta.first_time == t)

    def max_weight(self) -> int:
        return max(column.weight for column in self.columns)

    def weights(self) -> Tuple[int, ...]:
        return tuple(column.weight for column in self.columns)

    def rows(self) -> List[Tuple[int, ...]]:
        """The 0/1 matrix, one row per state"""
        return [
            tuple(column.bits >> state & 1 for column in self.columns) for state in range(self.n)
        ]


def extend_columns(automaton: Automaton, table: ColumnTable) -> ColumnTable:
    """A(t) to A(t+1), expanding only the frontier since every new column is induced by one first reached at t"""
    if table.saturated:
        return replace(table, t=table.t + 1)

    index = table.index
    found: Dict[int, ColumnMeta] = {}
    for parent in table.frontier:
        column = table.columns[parent]
        parent_meta = table.meta[parent]
        for letter in range(automaton.m):
            bits = automaton.preimage_bits(column.bits, letter)
            if not bits or bits in index or bits in found:
                continue
            found[bits] = ColumnMeta(
                first_time=table.t + 1,
                witness=(letter,) + parent_meta.witness,
                target=parent_meta.target,
                parent=parent,
                letter=letter,
            )

    n = automaton.n
    block = sorted((StateVector(n, bits) for bits in found), key=StateVector.lex_key)
    logger.debug("t=%s: %s new columns", table.t + 1, len(block))
    if not block:
        _check_saturation(automaton, table)
        return replace(table, t=table.t + 1, frontier=(), saturated=True)

    start = table.m
    return ColumnTable(
        automaton=automaton,
        t=table.t + 1,
        columns=table.columns + tuple(block),
        meta=table.meta + tuple(found[column.bits] for column in block),
        frontier=tuple(range(start, start + len(block))),
    )


def _check_saturation(automaton: Automaton, table: ColumnTable) -> None:
    # A synchronizing automaton keeps growing until the full column appears
    if table.max_weight() < automaton.n and is_synchronizing(automaton):
        logger.error("column table saturated at t=%s before reaching weight %s", table.t, automaton.n)
        raise InvariantViolation(
            f"column table of a synchronizing automaton stopped growing at t={table.t}"
        )


def columns_at(automaton: Automaton, t: int) -> ColumnTable:
    if t < 0:
        raise ValueError("t must be non-negative")
    table = ColumnTable.initial(automaton)
    while table.t < t:
        table = extend_columns(automaton, table)
    return table


def iter_tables(automaton: Automaton, t_max: int) -> Iterable[ColumnTable]:
    """Yield A(0) .. A(t_max)"""
    table = ColumnTable.initial(automaton)
    yield table
    while table.t < t_max:
        table = extend_columns(automaton, table)
        yield table


def column_of_word(automaton: Automaton, word: Word, target: int) -> StateVector:
    """{q : q.word = target}, built right to left from e_target"""
    bits = 1 << (target - 1)
    for letter in reversed(word):
        automaton.check_letter(letter)
        bits = automaton.preimage_bits(bits, letter)
    return StateVector(automaton.n, bits)


def column_word_mismatches(automaton: Automaton, table: ColumnTable) -> List[int]:
    """Indices whose stored vector or witness length disagrees with the witness word recomputed from scratch"""
    return [
        index
        for index, (column, meta) in enumerate(zip(table.columns, table.meta))
        if len(meta.witness) != meta.first_time
        or column_of_word(automaton, meta.witness, meta.target) != column
    ]


def census_bound_holds(table: ColumnTable) -> bool:
    """The count behind T_3 <= n(n-1)/2 + 1, for a table at some t <= T_3

    Each step up to t must have added a column, and every column older than the last block must have weight at most
    two, so n + t - 1 <= m(t-1) <= n + n(n-1)/2.
    """
    n, t = table.n, table.t
    if t == 0:
        return True
    older = [column for column, meta in zip(table.columns, table.meta) if meta.first_time < t]
    if any(column.weight > 2 for column in older):
        return False
    steps = {meta.first_time for meta in table.meta}
    if any(step not in steps for step in range(1, t + 1)):
        return False
    return n + t - 1 <= len(older) <= n + n * (n - 1) // 2


@dataclass(frozen=True)
class RendezvousResult:
    """The first t at which a word merges at least l states, with that word and the merged states"""

    l: int
    t: int
    witness: Word
    merged_states: StateVector
    target: int
    column_index: int

    @property
    def t3(self) -> int:
        return self.t


TrtResult = RendezvousResult


def default_t3_cap(n: int) -> int:
    return (n * (n + 4) - n % 2) // 4 + 1


def default_t_ell_cap(n: int) -> int:
    return max(pin_frankl_bound(n), 1)


def rendezvous_search(
    automaton: Automaton, l: int, cap: int
) -> Tuple[Union[RendezvousResult, NotFound], ColumnTable]:
    """Search for the first column of weight >= l, returning the table the search stopped on"""
    if not 2 <= l <= automaton.n:
        raise ValueError(f"l must lie in 2..{automaton.n}, got {l}")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    table = ColumnTable.initial(automaton)
    while table.t < cap:
        table = extend_columns(automaton, table)
        if table.saturated:
            logger.warning("no word merges %s states: columns saturated at t=%s", l, table.t - 1)
            return NotFound(cap, "saturated"), table
        for index in table.frontier:
            column = table.columns[index]
            if column.weight >= l:
                meta = table.meta[index]
                return (
                    RendezvousResult(l, table.t, meta.witness, column, meta.target, index),
                    table,
                )
    return NotFound(cap, "cap"), table


def t_ell(
    automaton: Automaton, l: int, cap: Optional[int] = None
) -> Union[RendezvousResult, NotFound]:
    result, _ = rendezvous_search(
        automaton, l, default_t_ell_cap(automaton.n) if cap is None else cap
    )
    return result


def triple_rendezvous_time(
    automaton: Automaton, cap: Optional[int] = None
) -> Union[RendezvousResult, NotFound]:
    if automaton.n < 3:
        return NotFound(cap or 1, "saturated")
    result, table = rendezvous_search(
        automaton, 3, default_t3_cap(automaton.n) if cap is None else cap
    )
    if isinstance(result, RendezvousResult):
        naive = automaton.n * (automaton.n - 1) // 2 + 1
        if result.t > naive or not census_bound_holds(table):
            logger.error("T_3=%s breaks the weight one and two census, bound %s", result.t, naive)
            raise InvariantViolation(f"T_3={result.t} exceeds n(n-1)/2 + 1 = {naive}")
        logger.info("T_3=%s for n=%s", result.t, automaton.n)
    return result


@dataclass(frozen=True)
class SupportGraph:
    """Graph on the states whose edges are weight-two columns. Column indices are kept alongside each edge"""

    n: int
    edges: Tuple[Tuple[int, int], ...]
    edge_columns: Tuple[int, ...] = ()
    singleton_columns: Tuple[int, ...] = ()

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges)
        return graph

    def degree(self, state: int) -> int:
        return self.graph.degree(state)

    def components(self) -> List[Tuple[int, ...]]:
        """Connected components as sorted state tuples, ordered by smallest state"""
        return sorted(tuple(sorted(c)) for c in nx.connected_components(self.graph))

    def classify(self, component: Iterable[int]) -> str:
        """singleton, pair, odd_cycle, even_cycle, path, tree or other"""
        sub = self.graph.subgraph(component)
        vertices = sub.number_of_nodes()
        edges = sub.number_of_edges()
        if vertices == 1:
            return "singleton"
        if vertices == 2:
            return "pair"
        degrees = [degree for _, degree in sub.degree()]
        if edges == vertices and all(degree == 2 for degree in degrees):
            return "odd_cycle" if vertices % 2 else "even_cycle"
        if edges == vertices - 1:
            return "path" if max(degrees) <= 2 else "tree"
        return "other"


def support_graph(table: ColumnTable, indices: Optional[Iterable[int]] = None) -> SupportGraph:
    """G(t) on the given column indices, every column of the table by default. Heavier columns are ignored"""
    if indices is None:
        indices = range(table.m)
    edges = []
    edge_columns = []
    singletons = []
    for index in indices:
        column = table.columns[index]
        if column.weight == 2:
            edges.append(column.states())
            edge_columns.append(index)
        elif column.weight == 1:
            singletons.append(index)
    return SupportGraph(table.n, tuple(edges), tuple(edge_columns), tuple(singletons))
