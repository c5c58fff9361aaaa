"""Two-phase simplex over exact rationals

Maximizes c.x subject to A_ub x <= b_ub, A_eq x = b_eq and x >= 0. Bland's rule picks both the entering and the
leaving variable, so the method terminates on degenerate problems.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from cerny_lab.exceptions import DimensionMismatch, Infeasible, Unbounded

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence]


@dataclass(frozen=True)
class LinearProgramResult:
    objective: Fraction
    x: Tuple[Fraction, ...]
    basis: Tuple[int, ...]
    pivots: int = 0

    def support(self) -> Tuple[int, ...]:
        return tuple(j for j, value in enumerate(self.x) if value)


class Tableau:
    """Dense tableau; column j of every row is variable j and basis[r] is the variable basic in row r"""

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def pivot(self, r: int, k: int) -> None:
        row = self.rows[r]
        pivot = row[k]
        if pivot != 1:
            row = [value / pivot for value in row]
            self.rows[r] = row
            self.rhs[r] /= pivot
        for i, other in enumerate(self.rows):
            factor = other[k]
            if i == r or not factor:
                continue
            self.rows[i] = [a - factor * b if b else a for a, b in zip(other, row)]
            self.rhs[i] -= factor * self.rhs[r]
        self.basis[r] = k
        self.pivots += 1

    def objective(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * value for b, value in zip(self.basis, self.rhs)), Fraction(0))

    def optimize(self, cost: Sequence[Fraction], allowed: int) -> None:
        """Pivot to an optimum of cost.x using only the first ``allowed`` variables as entering candidates"""
        while True:
            entering = None
            for j in range(allowed):
                reduced = cost[j] - sum(
                    (cost[b] * row[j] for b, row in zip(self.basis, self.rows) if row[j]),
                    Fraction(0),
                )
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return

            leaving = None
            best = None
            for r, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = self.rhs[r] / row[entering]
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[r] < self.basis[leaving])
                    ):
                        best = ratio
                        leaving = r
            if leaving is None:
                raise Unbounded(f"objective is unbounded along variable {entering}")
            self.pivot(leaving, entering)

    def values(self, count: int) -> Tuple[Fraction, ...]:
        x = [Fraction(0)] * count
        for b, value in zip(self.basis, self.rhs):
            if b < count:
                x[b] = value
        return tuple(x)


def _as_rows(matrix: Optional[Matrix], width: int, name: str) -> List[List[Fraction]]:
    rows = [[Fraction(value) for value in row] for row in (matrix or [])]
    for row in rows:
        if len(row) != width:
            raise DimensionMismatch(f"{name} row has {len(row)} entries, expected {width}")
    return rows


def solve(
    c: Sequence,
    a_ub: Optional[Matrix] = None,
    b_ub: Optional[Sequence] = None,
    a_eq: Optional[Matrix] = None,
    b_eq: Optional[Sequence] = None,
) -> LinearProgramResult:
    """Maximize c.x over the polyhedron. Raises Infeasible or Unbounded"""
    cost = [Fraction(value) for value in c]
    count = len(cost)
    upper = _as_rows(a_ub, count, "a_ub")
    equal = _as_rows(a_eq, count, "a_eq")
    b_upper = [Fraction(value) for value in (b_ub or [])]
    b_equal = [Fraction(value) for value in (b_eq or [])]
    if len(upper) != len(b_upper) or len(equal) != len(b_equal):
        raise DimensionMismatch("constraint matrix and right hand side lengths differ")

    slacks = len(upper)
    constraints = slacks + len(equal)
    artificial_start = count + slacks
    width = artificial_start + constraints

    rows = []
    rhs = []
    for r, (row, bound) in enumerate(zip(upper + equal, b_upper + b_equal)):
        full = row + [Fraction(0)] * (width - count)
        if r < slacks:
            full[count + r] = Fraction(1)
        if bound < 0:
            full = [-value for value in full]
            bound = -bound
        full[artificial_start + r] = Fraction(1)
        rows.append(full)
        rhs.append(bound)

    tableau = Tableau(rows, rhs, list(range(artificial_start, width)))
    phase_one = [Fraction(0)] * artificial_start + [Fraction(-1)] * constraints
    tableau.optimize(phase_one, width)
    if tableau.objective(phase_one) < 0:
        raise Infeasible("no point satisfies every constraint")

    # Drive artificial variables at level zero out of the basis, dropping rows that are redundant
    r = 0
    while r < len(tableau.rows):
        if tableau.basis[r] >= artificial_start:
            row = tableau.rows[r]
            replacement = next((j for j in range(artificial_start) if row[j]), None)
            if replacement is None:
                del tableau.rows[r]
                del tableau.rhs[r]
                del tableau.basis[r]
                continue
            tableau.pivot(r, replacement)
        r += 1

    phase_two = cost + [Fraction(0)] * (width - count)
    tableau.optimize(phase_two, artificial_start)
    logger.debug(
        "simplex: %s variables, %s constraints, %s pivots", count, constraints, tableau.pivots
    )
    return LinearProgramResult(
        objective=tableau.objective(phase_two),
        x=tableau.values(count),
        basis=tuple(sorted(b for b in tableau.basis if b < count)),
        pivots=tableau.pivots,
    )
