"""Closed form bounds on the triple rendezvous time, conjecture checks and the lemmas behind the bounds

Every comparison is exact. The square root bound is evaluated with integer square roots only.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, Optional, Sequence, Tuple, Union

from cerny_lab.automaton import (
    Automaton,
    NotFound,
    cerny_bound,
    is_strongly_connected,
    is_synchronizing,
    pin_frankl_bound,
    shortest_reset_word,
)
from cerny_lab.conf import lab_settings
from cerny_lab.exceptions import BoundParameterError
from cerny_lab.reachability import RendezvousResult, columns_at, triple_rendezvous_time
from cerny_lab.spf import AuditReport, CurvePoint, spf_at

logger = logging.getLogger(__name__)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_n(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise BoundParameterError(f"n must be at least {minimum}, got {n}")


def t3_bound_naive(n: int) -> int:
    """n(n-1)/2 + 1: one more than the number of distinct columns of weight one or two beyond the identity"""
    _check_n(n)
    return n * (n - 1) // 2 + 1


def t3_bound_quarter(n: int) -> int:
    """n(n+4)/4, less 1/4 for odd n"""
    _check_n(n)
    return (n * (n + 4) - n % 2) // 4


def t3_bound_combined(n: int, s: int) -> int:
    if not 1 <= s or 2 * s > n:
        raise BoundParameterError(f"s must satisfy 1 <= s <= n/2, got s={s} for n={n}")
    first = _ceil_div(n * (s + 2), 2)
    second = _ceil_div(n * (n + 4) - (2 * s - 1) * (2 * s + 3) + 1, 4)
    return max(first, second)


def t3_bound_combined_best(n: int) -> Tuple[int, int]:
    """(s, bound) minimizing t3_bound_combined over s, the smallest such s on ties"""
    _check_n(n, 2)
    return min(((s, t3_bound_combined(n, s)) for s in range(1, n // 2 + 1)), key=lambda pair: pair[1])


def _sqrt_parts(n: int) -> Tuple[int, int, bool]:
    _check_n(n, 4)
    radicand = n * n * (5 * n * n + 4 * n - 12)
    root = isqrt(radicand)
    return root, n * (6 - n), root * root == radicand


def t3_bound_sqrt(n: int) -> int:
    """ceil(n(sqrt(5n^2+4n-12) - n + 6)/8), for strongly connected synchronizing automata"""
    root, shift, exact = _sqrt_parts(n)
    if exact and (root + shift) % 8 == 0:
        return (root + shift) // 8
    return (root + shift) // 8 + 1


def t3_bound_sqrt_floor(n: int) -> int:
    """The floor of the same real bound. Measured T_3 values are compared against this one"""
    root, shift, _ = _sqrt_parts(n)
    return (root + shift) // 8


def sqrt_bound_crossover(limit: int) -> int:
    """Smallest n0 >= 4 with t3_bound_sqrt(n) <= t3_bound_quarter(n) for every n in n0..limit"""
    if limit < 4:
        raise BoundParameterError(f"limit must be at least 4, got {limit}")
    n0 = 4
    for n in range(4, limit + 1):
        if t3_bound_sqrt(n) > t3_bound_quarter(n):
            n0 = n + 1
    return n0


@dataclass
class BoundReport:
    n: int
    bounds: Dict[str, int] = field(default_factory=dict)
    measured: Dict[str, Optional[int]] = field(default_factory=dict)
    conjecture_flags: Dict[str, AuditReport] = field(default_factory=dict)
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def closed_form_bounds(n: int) -> Dict[str, int]:
    bounds = {
        "pin_frankl": pin_frankl_bound(n),
        "cerny": cerny_bound(n),
        "t3_naive": t3_bound_naive(n),
        "t3_quarter": t3_bound_quarter(n),
    }
    if n >= 2:
        s, bound = t3_bound_combined_best(n)
        bounds["t3_combined"] = bound
        bounds["t3_combined_s"] = s
    if n >= 4:
        bounds["t3_sqrt"] = t3_bound_sqrt(n)
        bounds["t3_sqrt_floor"] = t3_bound_sqrt_floor(n)
    return bounds


def bound_report(subject: Union[Automaton, int], measure: bool = False) -> BoundReport:
    """Closed form bounds for n, and with measure the automaton's T_3 and reset threshold checked against them"""
    automaton = subject if isinstance(subject, Automaton) else None
    n = automaton.n if automaton else subject
    _check_n(n)
    report = BoundReport(n, closed_form_bounds(n))
    if n >= 4:
        report.notes.append("T_3 is compared with the floor of the square root bound")
    if not (measure and automaton):
        return report

    synchronizing = is_synchronizing(automaton)
    connected = is_strongly_connected(automaton)
    reset = shortest_reset_word(automaton) if synchronizing else NotFound(0, "saturated")
    t3 = triple_rendezvous_time(automaton) if n >= 3 else NotFound(0, "saturated")
    report.measured = {
        "synchronizing": int(synchronizing),
        "strongly_connected": int(connected),
        "reset_threshold": None if isinstance(reset, NotFound) else reset.length,
        "t3": None if isinstance(t3, NotFound) else t3.t,
    }
    report.conjecture_flags["t3"] = check_conjecture_t3(automaton, t3)

    measured_t3 = report.measured["t3"]
    if synchronizing and measured_t3 is not None:
        applicable = ["t3_naive", "t3_quarter"]
        if connected and n >= 4:
            applicable.append("t3_sqrt_floor")
        for name in applicable:
            if measured_t3 > report.bounds[name]:
                report.violations.append(f"T_3={measured_t3} exceeds {name}={report.bounds[name]}")
    if report.violations:
        logger.error("bound violations for n=%s: %s", n, "; ".join(report.violations))
    return report


def check_conjecture_spf(automaton: Automaton, curve: Sequence[CurvePoint]) -> AuditReport:
    """k(1 + (j-1)(n+1)) >= j/(n-1) for j in 1..n-1, reporting the first j where it fails

    Points beyond the computed curve are only known once the curve has reached 1.
    """
    n = automaton.n
    report = AuditReport("spf", "holds")
    if n < 2:
        report.status = "vacuous"
        return report
    by_t = {point.t: point.k for point in curve}
    last = curve[-1]
    for j in range(1, n):
        t = 1 + (j - 1) * (n + 1)
        if t in by_t:
            k = by_t[t]
        elif t > last.t and last.k == 1:
            k = last.k
        else:
            report.details["unchecked_from_j"] = j
            break
        threshold = Fraction(j, n - 1)
        report.checked += 1
        if k < threshold:
            report.status = "violated"
            report.details.update({"j": j, "t": t, "k": k, "threshold": threshold})
            report.violations.append(f"k({t})={k} < {threshold}")
            logger.info("SPF conjecture fails at j=%s: k(%s)=%s < %s", j, t, k, threshold)
            break
    return report


def check_conjecture_t3(
    automaton: Automaton, t3: Union[RendezvousResult, NotFound]
) -> AuditReport:
    """T_3 <= n + 2"""
    report = AuditReport("t3", "holds")
    if isinstance(t3, NotFound):
        report.status = "skipped"
        report.details["reason"] = f"no word merges three states ({t3.reason})"
        return report
    limit = automaton.n + 2
    report.checked = 1
    report.details.update({"t3": t3.t, "limit": limit})
    if t3.t > limit:
        report.status = "violated"
        report.violations.append(f"T_3={t3.t} > n+2={limit}")
    return report


def spf_value(automaton: Automaton, t: int) -> Fraction:
    return spf_at(automaton, columns_at(automaton, t)).k


def _check_s(n: int, s: int) -> None:
    if not 1 <= s or 2 * s > n:
        raise BoundParameterError(f"s must satisfy 1 <= s <= n/2, got s={s} for n={n}")


def verify_zero_entry_lemma(
    automaton: Automaton, s: int, k_n: Optional[Fraction] = None
) -> AuditReport:
    """When k(n) < 1/(n-s), no word of length at most n leaves s or more states outside its image

    The zero entries of eW are the states outside the image of the whole state set under W, so the search runs
    over distinct images, breadth first to depth n.
    """
    n = automaton.n
    _check_s(n, s)
    if k_n is None:
        k_n = spf_value(automaton, n)
    report = AuditReport("zero_entry", "holds", details={"s": s, "k_n": k_n})
    if k_n >= Fraction(1, n - s):
        report.status = "vacuous"
        logger.warning("zero entry check skipped: k(%s)=%s >= 1/%s", n, k_n, n - s)
        return report

    limit = lab_settings.SUBSET_LIMIT
    start = (1 << n) - 1
    seen = {start}
    layer = [start]
    smallest = n
    for _ in range(n):
        next_layer = []
        for subset in layer:
            for letter in range(automaton.m):
                image = automaton.image_bits(subset, letter)
                if image in seen:
                    continue
                seen.add(image)
                smallest = min(smallest, bin(image).count("1"))
                next_layer.append(image)
                if len(seen) > limit:
                    report.status = "inconclusive"
                    report.checked = len(seen)
                    logger.warning("zero entry check stopped after %s images", len(seen))
                    return report
        layer = next_layer
    report.checked = len(seen)
    report.details["max_zero_entries"] = n - smallest
    if n - smallest >= s:
        report.status = "violated"
        report.violations.append(f"a word of length <= {n} leaves {n - smallest} zero entries")
        logger.error("zero entry lemma violated for s=%s", s)
    return report


def verify_dichotomy_lemma(
    automaton: Automaton,
    s: int,
    k_n: Optional[Fraction] = None,
    t3: Optional[Union[RendezvousResult, NotFound]] = None,
) -> AuditReport:
    """k(n) >= 1/(n-s) or T_3 <= n(s+2)/2, for strongly connected synchronizing automata"""
    n = automaton.n
    _check_s(n, s)
    report = AuditReport("dichotomy", "holds", details={"s": s})
    if not is_strongly_connected(automaton) or not is_synchronizing(automaton):
        report.status = "skipped"
        report.details["reason"] = "the automaton must be strongly connected and synchronizing"
        logger.warning("dichotomy check skipped: %s", report.details["reason"])
        return report
    if k_n is None:
        k_n = spf_value(automaton, n)
    if t3 is None:
        t3 = triple_rendezvous_time(automaton) if n >= 3 else NotFound(0, "saturated")
    report.checked = 1
    report.details["k_n"] = k_n
    report.details["t3"] = None if isinstance(t3, NotFound) else t3.t
    if k_n >= Fraction(1, n - s):
        report.details["branch"] = "k"
    elif not isinstance(t3, NotFound) and 2 * t3.t <= n * (s + 2):
        report.details["branch"] = "t3"
    else:
        report.status = "violated"
        report.violations.append(f"k({n})={k_n} < 1/{n - s} and T_3 > {n}({s}+2)/2")
        logger.error("dichotomy lemma violated for s=%s", s)
    return report
