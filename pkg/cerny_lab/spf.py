"""The synchronizing probability function k(t) and the structure of its optimal strategies

Player Two hides a state with distribution p, Player One picks a column with distribution q and wins when the hidden
state lies in it. With A the 0/1 matrix of A(t):

    primal: minimize k  subject to  pA <= k, sum(p) = 1, p >= 0
    dual:   maximize k  subject to  Aq >= k, sum(q) = 1, q >= 0

Both are solved exactly with :mod:`cerny_lab.simplex` and their optimal values must agree.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from cerny_lab.automaton import Automaton, NotFound, StateVector, is_synchronizing
from cerny_lab.exceptions import InvalidDecomposition, InvariantViolation, WeightTooHigh
from cerny_lab.reachability import (
    ColumnTable,
    SupportGraph,
    extend_columns,
    support_graph,
    triple_rendezvous_time,
)
from cerny_lab.simplex import solve

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

PRIMAL = "primal"
DUAL = "dual"


def payoffs(p: Sequence[Fraction], columns: Sequence[StateVector]) -> List[Fraction]:
    """p.a_j for every column"""
    return [sum((p[state - 1] for state in column.states()), ZERO) for column in columns]


def coverage(n: int, q: Sequence[Fraction], columns: Sequence[StateVector]) -> List[Fraction]:
    """(Aq)_i for every state"""
    totals = [ZERO] * n
    for weight, column in zip(q, columns):
        if weight:
            for state in column.states():
                totals[state - 1] += weight
    return totals


@dataclass(frozen=True)
class GameSolution:
    t: int
    k: Fraction
    p: Tuple[Fraction, ...]
    q: Tuple[Fraction, ...]
    table: ColumnTable = field(repr=False, compare=False)
    critical_column_indices: Optional[FrozenSet[int]] = None

    def certify(self) -> None:
        """Check feasibility of both strategies and complementary slackness exactly"""
        columns = self.table.columns
        problems = []
        if any(value < 0 for value in self.p) or sum(self.p) != 1:
            problems.append("p is not a distribution")
        if any(value < 0 for value in self.q) or sum(self.q) != 1:
            problems.append("q is not a distribution")
        primal = payoffs(self.p, columns)
        dual = coverage(self.table.n, self.q, columns)
        if any(value > self.k for value in primal):
            problems.append("some column pays more than k against p")
        if any(value < self.k for value in dual):
            problems.append("some state is covered less than k by q")
        if any(weight * (self.k - value) for weight, value in zip(self.q, primal)):
            problems.append("q puts mass on a column that is not tight against p")
        if any(weight * (value - self.k) for weight, value in zip(self.p, dual)):
            problems.append("p puts mass on a state that q over-covers")
        if problems:
            logger.error("certificate failed at t=%s: %s", self.t, "; ".join(problems))
            raise InvariantViolation(f"t={self.t}: " + "; ".join(problems))


def _dual_program(states: Sequence[int], columns: Sequence[StateVector]):
    """Maximize k subject to coverage >= k on ``states`` over distributions on ``columns``"""
    width = len(columns) + 1
    a_ub = []
    for state in states:
        row = [-1 if state in column else 0 for column in columns]
        a_ub.append(row + [1])
    a_eq = [[1] * len(columns) + [0]]
    c = [0] * len(columns) + [1]
    result = solve(c, a_ub, [0] * len(a_ub), a_eq, [1])
    return result.objective, result.x[: width - 1]


def _primal_program(n: int, columns: Sequence[StateVector]):
    a_ub = []
    for column in columns:
        row = [1 if state in column else 0 for state in range(1, n + 1)]
        a_ub.append(row + [-1])
    a_eq = [[1] * n + [0]]
    c = [0] * n + [-1]
    result = solve(c, a_ub, [0] * len(a_ub), a_eq, [1])
    return -result.objective, result.x[:n]


def spf_at(automaton: Automaton, table: ColumnTable) -> GameSolution:
    """k(t) with an optimal pair (p, q), certified"""
    n = automaton.n
    columns = table.columns
    if not columns:
        raise ValueError("the column table is empty")
    k_primal, p = _primal_program(n, columns)
    k_dual, q = _dual_program(range(1, n + 1), columns)
    if k_primal != k_dual:
        logger.error("duality gap at t=%s: %s != %s", table.t, k_primal, k_dual)
        raise InvariantViolation(f"primal value {k_primal} differs from dual value {k_dual}")
    solution = GameSolution(table.t, k_dual, tuple(p), tuple(q), table)
    solution.certify()
    if (k_dual == 1) != (table.max_weight() == n):
        raise InvariantViolation(f"k={k_dual} disagrees with the heaviest column at t={table.t}")
    return solution


@dataclass(frozen=True)
class CurvePoint:
    t: int
    k: Fraction
    m_t: int
    solution: GameSolution = field(repr=False, compare=False)
    dim_p: Optional[int] = None
    dim_q: Optional[int] = None


def spf_curve(
    automaton: Automaton, t_max: int, primal_dimension: bool = False, dual_dimension: bool = False
) -> List[CurvePoint]:
    """k(0) .. k(t_max), growing one table. A saturated table repeats the previous point"""
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    curve = []
    table = ColumnTable.initial(automaton)
    previous = None
    while True:
        if previous is not None and table.m == previous.m_t:
            solution = GameSolution(
                table.t,
                previous.k,
                previous.solution.p,
                previous.solution.q,
                table,
            )
            point = CurvePoint(table.t, previous.k, table.m, solution, previous.dim_p, previous.dim_q)
        else:
            solution = spf_at(automaton, table)
            point = CurvePoint(
                table.t,
                solution.k,
                table.m,
                solution,
                polytope_dimension(automaton, table, PRIMAL, solution) if primal_dimension else None,
                polytope_dimension(automaton, table, DUAL, solution) if dual_dimension else None,
            )
            if previous is not None and point.k < previous.k:
                raise InvariantViolation(f"k decreased from {previous.k} to {point.k} at t={table.t}")
        curve.append(point)
        previous = point
        if table.t >= t_max:
            break
        table = extend_columns(automaton, table)
    logger.info(
        "SPF curve to t=%s: k(%s)=%s with %s columns", t_max, t_max, curve[-1].k, curve[-1].m_t
    )
    return curve


def critical_columns(
    automaton: Automaton,
    table: ColumnTable,
    k: Fraction,
    p: Optional[Sequence[Fraction]] = None,
    q: Optional[Sequence[Fraction]] = None,
) -> FrozenSet[int]:
    """Columns carrying positive mass in some optimal dual strategy

    One LP per undecided column maximizes its mass over the optimal face. Columns paying less than k against an
    optimal p can never carry mass, and every column in the support of a solution found is critical.
    """
    n = automaton.n
    columns = table.columns
    critical = set()
    if q is not None:
        critical.update(j for j, weight in enumerate(q) if weight)
    if p is not None:
        candidates = [j for j, value in enumerate(payoffs(p, columns)) if value == k]
    else:
        candidates = list(range(len(columns)))

    a_ub = [[-1 if state in column else 0 for column in columns] for state in range(1, n + 1)]
    b_ub = [-k] * n
    a_eq = [[1] * len(columns)]
    for j in candidates:
        if j in critical:
            continue
        c = [0] * len(columns)
        c[j] = 1
        result = solve(c, a_ub, b_ub, a_eq, [1])
        if result.objective > 0:
            critical.update(result.support())
    logger.debug("t=%s: %s critical columns out of %s", table.t, len(critical), len(columns))
    return frozenset(critical)


def _face(table: ColumnTable, k: Fraction, side: str):
    n = table.n
    columns = table.columns
    if side == PRIMAL:
        a_ub = [[1 if state in column else 0 for state in range(1, n + 1)] for column in columns]
        return n, a_ub, [k] * len(columns)
    if side == DUAL:
        a_ub = [[-1 if state in column else 0 for column in columns] for state in range(1, n + 1)]
        return len(columns), a_ub, [-k] * n
    raise ValueError(f"side must be {PRIMAL!r} or {DUAL!r}, got {side!r}")


def _to_matrix(vectors: Sequence[Sequence[Fraction]]) -> Matrix:
    return Matrix([[Rational(v.numerator, v.denominator) for v in vector] for vector in vectors])


def polytope_dimension(
    automaton: Automaton, table: ColumnTable, side: str, solution: Optional[GameSolution] = None
) -> int:
    """Affine dimension of the optimal face P_t (primal) or Q_t (dual)

    Keeps a set of directions inside the face and a set of normals along which the face is flat. Each step takes a
    vector orthogonal to the directions and independent of the normals, and optimizes it both ways over the face:
    a spread adds a direction, no spread adds a normal. It stops once both sets together span the space.
    """
    if solution is None:
        solution = spf_at(automaton, table)
    width, a_ub, b_ub = _face(table, solution.k, side)
    a_eq = [[1] * width]
    directions: List[List[Fraction]] = []
    normals: List[List[Fraction]] = [[ONE] * width]

    while len(directions) + len(normals) < width:
        if directions:
            basis = _to_matrix(directions).nullspace()
        else:
            basis = [Matrix.eye(width).col(j) for j in range(width)]
        rank = _to_matrix(normals).rank()
        c = None
        for vector in basis:
            candidate = [Fraction(int(v.p), int(v.q)) for v in vector]
            if _to_matrix(normals + [candidate]).rank() > rank:
                c = candidate
                break
        if c is None:
            raise InvariantViolation("no search direction left while the hull is incomplete")

        high = solve(c, a_ub, b_ub, a_eq, [1])
        low = solve([-v for v in c], a_ub, b_ub, a_eq, [1])
        if high.objective == -low.objective:
            normals.append(c)
        else:
            directions.append([a - b for a, b in zip(high.x, low.x)])
    logger.debug("t=%s: dim of %s face is %s", table.t, side, len(directions))
    return len(directions)


@dataclass(frozen=True)
class SupportElement:
    column: int
    states: Tuple[int, ...]
    kind: str
    cycle: Optional[int] = None


@dataclass(frozen=True)
class CanonicalSupport:
    """A support whose graph is a disjoint union of singletons, pairs and odd cycles"""

    n: int
    elements: Tuple[SupportElement, ...]

    @property
    def columns(self) -> Tuple[int, ...]:
        return tuple(element.column for element in self.elements)

    @property
    def singletons(self) -> Tuple[SupportElement, ...]:
        return tuple(e for e in self.elements if e.kind == "singleton")

    @property
    def pairs(self) -> Tuple[SupportElement, ...]:
        return tuple(e for e in self.elements if e.kind == "pair")

    @property
    def n1(self) -> int:
        return len(self.singletons)

    def cycles(self) -> Dict[int, Tuple[SupportElement, ...]]:
        grouped: Dict[int, List[SupportElement]] = {}
        for element in self.elements:
            if element.kind == "odd_cycle":
                grouped.setdefault(element.cycle, []).append(element)
        return {cycle: tuple(edges) for cycle, edges in grouped.items()}

    def validate(self) -> None:
        """Raise InvalidDecomposition unless the parts cover every state exactly once"""
        seen: Dict[int, str] = {}

        def claim(states: Iterable[int], what: str):
            for state in states:
                if not 1 <= state <= self.n:
                    raise InvalidDecomposition(f"{what} uses state {state} outside 1..{self.n}")
                if state in seen:
                    raise InvalidDecomposition(f"state {state} is in both {seen[state]} and {what}")
                seen[state] = what

        for element in self.elements:
            expected = {"singleton": 1, "pair": 2, "odd_cycle": 2}.get(element.kind)
            if expected is None:
                raise InvalidDecomposition(f"unknown support element kind {element.kind!r}")
            if len(set(element.states)) != expected:
                raise InvalidDecomposition(f"column {element.column} is not a valid {element.kind}")
            if element.kind != "odd_cycle":
                claim(element.states, f"{element.kind} column {element.column}")

        for cycle, edges in self.cycles().items():
            degree: Dict[int, int] = {}
            for edge in edges:
                for state in edge.states:
                    degree[state] = degree.get(state, 0) + 1
            graph = support_graph_of_edges(self.n, [edge.states for edge in edges])
            vertices = tuple(degree)
            if (
                len(vertices) < 3
                or len(vertices) % 2 == 0
                or any(d != 2 for d in degree.values())
                or len(edges) != len(vertices)
                or graph.classify(vertices) != "odd_cycle"
            ):
                raise InvalidDecomposition(f"cycle {cycle} is not an odd cycle")
            claim(vertices, f"cycle {cycle}")

        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - set(seen))
            raise InvalidDecomposition(f"states {missing} are not covered")


def support_graph_of_edges(n: int, edges: Sequence[Tuple[int, ...]]) -> SupportGraph:
    return SupportGraph(n, tuple(tuple(edge) for edge in edges))


@dataclass(frozen=True)
class DecompositionStrategies:
    k: Fraction
    p: Tuple[Fraction, ...]
    q: Dict[int, Fraction]


def k_from_decomposition(n: int, support: CanonicalSupport) -> DecompositionStrategies:
    """k = 2/(n + n1) with the matching closed form strategies

    p puts 2/K on singleton states and 1/K elsewhere, q puts 2/K on singleton and pair columns and 1/K on odd
    cycle edges, where K = n + n1.
    """
    if support.n != n:
        raise InvalidDecomposition(f"support is over {support.n} states, expected {n}")
    support.validate()
    K = n + support.n1
    singleton_states = {element.states[0] for element in support.singletons}
    p = tuple(Fraction(2 if state in singleton_states else 1, K) for state in range(1, n + 1))
    q = {
        element.column: Fraction(1 if element.kind == "odd_cycle" else 2, K)
        for element in support.elements
    }
    k = Fraction(2, K)

    covered = [ZERO] * n
    for element in support.elements:
        if sum(p[state - 1] for state in element.states) != k:
            raise InvariantViolation(f"column {element.column} does not pay exactly k against p")
        for state in element.states:
            covered[state - 1] += q[element.column]
    if sum(p) != 1 or sum(q.values()) != 1 or any(value != k for value in covered):
        raise InvariantViolation("closed form strategies are not optimal for the decomposition")
    return DecompositionStrategies(k, p, q)


class _Canonicalizer:
    """Recursive construction of a canonical optimal dual strategy over the columns of weight at most two"""

    def __init__(self, table: ColumnTable):
        self.table = table
        self.n = table.n
        self.light = [j for j, column in enumerate(table.columns) if column.weight <= 2]
        self.identity = {
            table.columns[j].states()[0]: j for j in self.light if table.columns[j].weight == 1
        }

    def candidates(self, vertices: FrozenSet[int]) -> List[int]:
        mask = sum(1 << (state - 1) for state in vertices)
        return [j for j in self.light if not self.table.columns[j].bits & ~mask]

    def value(self, vertices: FrozenSet[int], indices: Sequence[int]):
        columns = [self.table.columns[j] for j in indices]
        k, q = _dual_program(sorted(vertices), columns)
        return k, {j: weight for j, weight in zip(indices, q) if weight}

    def minimal(self, vertices: FrozenSet[int]):
        """Optimal value on ``vertices`` and an optimal q whose support is minimal"""
        k, q = self.value(vertices, self.candidates(vertices))
        support = sorted(q)
        for j in sorted(q, reverse=True):
            trial = [i for i in support if i != j]
            if trial and self.value(vertices, trial)[0] == k:
                support = trial
        if len(support) != len(q):
            _, q = self.value(vertices, support)
        return k, q

    def edges(self, q: Dict[int, Fraction]) -> List[int]:
        return [j for j in q if self.table.columns[j].weight == 2]

    def components(self, vertices: FrozenSet[int], q: Dict[int, Fraction]) -> List[FrozenSet[int]]:
        graph = support_graph(self.table, q)
        return [
            frozenset(component)
            for component in graph.components()
            if set(component) <= vertices
        ]

    def solve(self, vertices: FrozenSet[int]) -> Dict[int, Fraction]:
        if len(vertices) == 1:
            (state,) = vertices
            return {self.identity[state]: ONE}
        k, q = self.minimal(vertices)
        parts = self.components(vertices, q)
        if len(parts) > 1:
            return self.split(vertices, q, parts)
        if len(vertices) == 2:
            return q

        graph = support_graph(self.table, q)
        degree = {state: graph.degree(state) for state in vertices}
        leaf = next((state for state in sorted(vertices) if degree[state] == 1), None)
        if leaf is not None:
            q = self.detach_leaf(q, graph, leaf)
            logger.debug("detached pair at leaf %s of %s", leaf, sorted(vertices))
            return self.split(vertices, q, self.components(vertices, q))

        cycle = [j for j in self.edges(q)]
        if len(cycle) == len(vertices) and all(d == 2 for d in degree.values()):
            if len(vertices) % 2:
                return q
            q = self.split_even_cycle(q, graph, vertices)
            logger.debug("split even cycle %s into pairs", sorted(vertices))
            return self.split(vertices, q, self.components(vertices, q))
        raise InvariantViolation(
            f"minimal support on {sorted(vertices)} is neither split, a tree with a leaf nor a cycle"
        )

    def split(
        self, vertices: FrozenSet[int], q: Dict[int, Fraction], parts: List[FrozenSet[int]]
    ) -> Dict[int, Fraction]:
        combined: Dict[int, Fraction] = {}
        for part in parts:
            mass = sum(
                (w for j, w in q.items() if set(self.table.columns[j].states()) <= part), ZERO
            )
            for j, weight in self.solve(part).items():
                combined[j] = combined.get(j, ZERO) + mass * weight
        return combined

    def detach_leaf(self, q: Dict[int, Fraction], graph, leaf: int) -> Dict[int, Fraction]:
        """Move all mass near a degree-one vertex onto its edge so that the edge becomes an isolated pair"""
        (hub,) = graph.graph.neighbors(leaf)
        q = dict(q)
        by_edge = {self.table.columns[j].states(): j for j in self.edges(q)}
        pair = by_edge[tuple(sorted((leaf, hub)))]
        total = q.pop(pair)
        for state in (leaf, hub):
            total += q.pop(self.identity[state], ZERO)
        q[pair] = total
        for other in list(graph.graph.neighbors(hub)):
            if other == leaf:
                continue
            edge = by_edge[tuple(sorted((hub, other)))]
            moved = q.pop(edge)
            singleton = self.identity[other]
            q[singleton] = q.get(singleton, ZERO) + moved
        return q

    def split_even_cycle(self, q: Dict[int, Fraction], graph, vertices) -> Dict[int, Fraction]:
        """Fold the mass of every second edge of an even cycle into its neighbour, leaving a perfect matching"""
        start = min(vertices)
        order = [start]
        previous = None
        while len(order) < len(vertices):
            current = order[-1]
            following = min(v for v in graph.graph.neighbors(current) if v != previous)
            previous = current
            order.append(following)
        by_edge = {self.table.columns[j].states(): j for j in self.edges(q)}

        def edge(a, b):
            return by_edge[tuple(sorted((a, b)))]

        size = len(order)
        folded: Dict[int, Fraction] = {}
        for j in range(0, size, 2):
            a, b = order[j], order[j + 1]
            after = order[(j + 2) % size]
            mass = q.get(edge(a, b), ZERO) + q.get(edge(b, after), ZERO)
            for state in (a, b):
                mass += q.get(self.identity[state], ZERO)
            folded[edge(a, b)] = mass
        return folded


def canonicalize_support(
    automaton: Automaton, table: ColumnTable, solution: Optional[GameSolution] = None
) -> Tuple[Tuple[Fraction, ...], CanonicalSupport]:
    """An optimal dual strategy whose support is a disjoint union of singletons, pairs and odd cycles

    Raises WeightTooHigh when a critical column merges three or more states.
    """
    if solution is None:
        solution = spf_at(automaton, table)
    critical = solution.critical_column_indices
    if critical is None:
        critical = critical_columns(automaton, table, solution.k, solution.p, solution.q)
    for j in sorted(critical):
        weight = table.columns[j].weight
        if weight >= 3:
            raise WeightTooHigh(j, weight)

    canonicalizer = _Canonicalizer(table)
    q = canonicalizer.solve(frozenset(range(1, automaton.n + 1)))
    q = {j: weight for j, weight in q.items() if weight}

    vector = tuple(q.get(j, ZERO) for j in range(table.m))
    covered = coverage(automaton.n, vector, table.columns)
    if sum(vector) != 1 or min(covered) != solution.k:
        raise InvariantViolation(
            f"canonical strategy reaches {min(covered)} instead of {solution.k} at t={table.t}"
        )

    graph = support_graph(table, q)
    elements = []
    cycle_id = 0
    for component in graph.components():
        kind = graph.classify(component)
        members = sorted(
            j for j in q if set(table.columns[j].states()) <= set(component)
        )
        if kind == "odd_cycle":
            cycle_id += 1
        elif kind not in ("singleton", "pair") or len(members) != 1:
            raise InvariantViolation(f"component {component} of the canonical support is a {kind}")
        for j in members:
            elements.append(
                SupportElement(
                    j, table.columns[j].states(), kind, cycle_id if kind == "odd_cycle" else None
                )
            )
    support = CanonicalSupport(automaton.n, tuple(elements))
    support.validate()
    return vector, support


@dataclass
class AuditReport:
    """Outcome of a check: holds, vacuous, skipped, inconclusive or violated"""

    name: str
    status: str
    checked: int = 0
    violations: List[str] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "violated"


def stagnation_audit(curve: Sequence[CurvePoint], t3: int) -> AuditReport:
    """For 1 <= t < T_3, k(t) = 2/(n+s) with 0 <= s < n, and each value lasts at most floor((n-s)/2) + 1 steps"""
    report = AuditReport("stagnation", "holds")
    points = [point for point in curve if 1 <= point.t < t3]
    if not points:
        report.status = "vacuous"
        return report
    if curve[0].t == 0:
        logger.warning("k(0)=%s is outside the quantized range and is not audited", curve[0].k)
    n = points[0].solution.table.n
    run_value = None
    run_length = 0
    for point in points:
        report.checked += 1
        s = Fraction(2) / point.k - n
        if s.denominator != 1 or not 0 <= s <= n - 1:
            report.violations.append(f"t={point.t}: k={point.k} is not 2/(n+s) with 0 <= s < n")
            run_value = None
            continue
        s = int(s)
        run_length = run_length + 1 if point.k == run_value else 1
        run_value = point.k
        limit = (n - s) // 2 + 1
        if run_length > limit:
            report.violations.append(
                f"t={point.t}: k={point.k} held for {run_length} steps, more than {limit}"
            )
    if report.violations:
        report.status = "violated"
        logger.error("stagnation audit: %s", "; ".join(report.violations))
    return report


def inclusion_audit(curve: Sequence[CurvePoint], t3: int) -> AuditReport:
    """Where k(t) = k(t+1) below T_3, dim P_{t+1} <= dim P_t"""
    report = AuditReport("inclusion", "holds")
    for before, after in zip(curve, curve[1:]):
        if after.t >= t3 or before.k != after.k:
            continue
        if before.dim_p is None or after.dim_p is None:
            raise ValueError("the curve was computed without primal dimensions")
        report.checked += 1
        if after.dim_p > before.dim_p:
            report.violations.append(
                f"t={after.t}: dim P grew from {before.dim_p} to {after.dim_p} at constant k"
            )
    if not report.checked:
        report.status = "vacuous"
    if report.violations:
        report.status = "violated"
        logger.error("inclusion audit: %s", "; ".join(report.violations))
    return report


def audit_curve(automaton: Automaton, curve: Sequence[CurvePoint]) -> List[AuditReport]:
    """Run both curve audits below T_3. They only apply to synchronizing automata with a triple rendezvous"""
    if automaton.n < 3:
        reason = "fewer than three states"
    elif not is_synchronizing(automaton):
        reason = "the automaton is not synchronizing"
    else:
        t3 = triple_rendezvous_time(automaton)
        if not isinstance(t3, NotFound):
            return [stagnation_audit(curve, t3.t), inclusion_audit(curve, t3.t)]
        reason = f"no word merges three states ({t3.reason})"
    logger.info("curve audits skipped: %s", reason)
    return [
        AuditReport(name, "skipped", details={"reason": reason}) for name in ("stagnation", "inclusion")
    ]
