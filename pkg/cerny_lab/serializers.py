"""JSON and CSV renderings shared by the management commands"""

import csv
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, TextIO, Union

from django.core.serializers.json import DjangoJSONEncoder

from cerny_lab.automaton import Automaton, NotFound, StateVector, Word, format_word
from cerny_lab.conf import JSON_SCHEMA
from cerny_lab.reachability import ColumnTable, RendezvousResult
from cerny_lab.spf import AuditReport, CanonicalSupport, CurvePoint, GameSolution

CSV_HEADER = ["t", "k_num", "k_den", "k_float", "m_t", "dim_P"]


def rational(value: Fraction) -> Dict[str, Union[int, str]]:
    value = Fraction(value)
    return {
        "num": value.numerator,
        "den": value.denominator,
        "display": f"{value.numerator}/{value.denominator}",
    }


def parse_rational(value) -> Fraction:
    """Accept "1/2", an integer, or {"num": 1, "den": 2}"""
    if isinstance(value, dict):
        try:
            return Fraction(int(value["num"]), int(value["den"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError):
            raise ValueError(f"invalid rational {value!r}")
    if isinstance(value, float):
        raise ValueError(f"floats are not exact, write {value!r} as a fraction string")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"invalid rational {value!r}")


def display(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class LabJSONEncoder(DjangoJSONEncoder):
    """DjangoJSONEncoder that also knows rationals, state sets and reports"""

    def default(self, o):
        if isinstance(o, Fraction):
            return rational(o)
        if isinstance(o, StateVector):
            return list(o.states())
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        if isinstance(o, NotFound):
            return {"found": False, "cap": o.cap, "reason": o.reason}
        if isinstance(o, AuditReport):
            return report_payload(o)
        if is_dataclass(o):
            return asdict(o)
        return super().default(o)


def envelope(command: str, **payload) -> Dict:
    return {"schema": JSON_SCHEMA, "command": command, **payload}


def dumps(payload) -> str:
    return json.dumps(payload, cls=LabJSONEncoder, indent=2, ensure_ascii=False)


def report_payload(report: AuditReport) -> Dict:
    return {
        "name": report.name,
        "status": report.status,
        "checked": report.checked,
        "violations": list(report.violations),
        "details": dict(report.details),
    }


def automaton_payload(automaton: Automaton) -> Dict:
    return {
        "n": automaton.n,
        "m": automaton.m,
        "letters": {
            name: list(letter) for name, letter in zip(automaton.letter_names, automaton.letters)
        },
    }


def word_payload(automaton: Automaton, word: Word) -> Dict:
    return {"word": format_word(automaton, word), "length": len(word)}


def rendezvous_payload(automaton: Automaton, result: Union[RendezvousResult, NotFound]) -> Dict:
    if isinstance(result, NotFound):
        return {"found": False, "cap": result.cap, "reason": result.reason}
    return {
        "found": True,
        "l": result.l,
        "t": result.t,
        "witness": format_word(automaton, result.witness),
        "merged_states": list(result.merged_states.states()),
        "target": result.target,
    }


def column_payload(automaton: Automaton, table: ColumnTable, index: int) -> Dict:
    meta = table.meta[index]
    return {
        "index": index,
        "states": list(table.columns[index].states()),
        "first_time": meta.first_time,
        "witness": format_word(automaton, meta.witness),
        "target": meta.target,
    }


def table_payload(automaton: Automaton, table: ColumnTable) -> Dict:
    return {
        "t": table.t,
        "m_t": table.m,
        "saturated": table.saturated,
        "columns": [column_payload(automaton, table, index) for index in range(table.m)],
    }


def canonical_payload(support: CanonicalSupport) -> Dict:
    return {
        "n1": support.n1,
        "pairs": len(support.pairs),
        "cycles": len(support.cycles()),
        "elements": [
            {
                "column": element.column,
                "states": list(element.states),
                "kind": element.kind,
                "cycle": element.cycle,
            }
            for element in support.elements
        ],
    }


def solution_payload(
    automaton: Automaton,
    solution: GameSolution,
    critical: Optional[Iterable[int]] = None,
    canonical: Optional[Sequence[Fraction]] = None,
    support: Optional[CanonicalSupport] = None,
) -> Dict:
    payload = {
        "t": solution.t,
        "k": solution.k,
        "p": list(solution.p),
        "q": list(solution.q),
    }
    if critical is not None:
        payload["critical_columns"] = sorted(critical)
    if canonical is not None:
        payload["q_canonical"] = list(canonical)
    if support is not None:
        payload["canonical_support"] = canonical_payload(support)
    return payload


def curve_payload(curve: Sequence[CurvePoint]) -> list:
    return [
        {"t": point.t, "k": point.k, "m_t": point.m_t, "dim_P": point.dim_p, "dim_Q": point.dim_q}
        for point in curve
    ]


def write_curve_csv(curve: Sequence[CurvePoint], stream: TextIO, dual: bool = False) -> None:
    """k_float is for plotting only: 12 significant digits"""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER + (["dim_Q"] if dual else []))
    for point in curve:
        row = [
            point.t,
            point.k.numerator,
            point.k.denominator,
            format(float(point.k), ".12g"),
            point.m_t,
            "" if point.dim_p is None else point.dim_p,
        ]
        if dual:
            row.append("" if point.dim_q is None else point.dim_q)
        writer.writerow(row)
