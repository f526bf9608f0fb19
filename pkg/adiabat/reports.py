# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

"""
Text renderings of reports and tables. Output carries no timestamps and writes floats with repr, so identical
inputs give byte-identical text.
"""

import csv
import io
import json

from typing import Iterable, Sequence

from .axioms import AxiomReport, ComparisonReport
from .derived import LoopReport
from .entropy import EntropyTable
from .errors import DomainError
from .existence import FeasibilityResult
from .rubbing import TwoBodyState
from .states import SystemSpec
from .types import OutputFormat

__all__ = [
    "ENTROPY_TABLE_VALUE_COLUMN",
    "WATER_TABLE_HEADER",
    "REACHABLE_SET_HEADER",
    "TEMPERATURE_TABLE_HEADER",
    "render_axiom_reports",
    "render_comparison",
    "render_entropy_table",
    "render_water_table",
    "render_reachable_set",
    "render_feasibility",
    "render_loop",
    "render_temperature_table",
]

ENTROPY_TABLE_VALUE_COLUMN = "entropy_units"
WATER_TABLE_HEADER = ("h_J_per_kg", "T_K", "phase", "entropy_J_per_kgK")
REACHABLE_SET_HEADER = ("U1", "U2")
TEMPERATURE_TABLE_HEADER = ("state_id", "U_J", "T_model_K", "T_meter_K")


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Iterable[Sequence], preamble: str = "") -> str:
    buf = io.StringIO()
    buf.write(preamble)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_axiom_reports(reports: Sequence[AxiomReport], fmt: OutputFormat = "json") -> str:
    if fmt == "json":
        return _json([r.to_dict() for r in reports])

    return _csv(
        ("axiom", "instances_tested", "passed", "witnesses"),
        ((r.axiom, r.instances_tested, r.passed, len(r.witnesses)) for r in reports))


def render_comparison(report: ComparisonReport, fmt: OutputFormat = "json") -> str:
    if fmt == "json":
        return _json(report.to_dict())

    return _csv(
        ("class", "pairs_tested", "comparable_fraction", "incomparable_witnesses"),
        [(report.class_key, report.pairs_tested, report.comparable_fraction, len(report.incomparable_witnesses))])


def render_entropy_table(table: EntropyTable, system: SystemSpec, fmt: OutputFormat = "csv") -> str:
    if fmt == "json":
        return _json({
            "meta": table.meta,
            "rows": [
                {"state_id": f"s{i}", "amount": x.parts[0].amount, "coords": list(x.parts[0].coords), "entropy": v}
                for i, (x, v) in enumerate(table.rows)
            ],
        })

    if any(len(x) != 1 or x.parts[0].system != system.id for x, _ in table.rows):
        raise DomainError(f"entropy table CSV needs single-part states of system {system.id}")

    # Meter metadata as a block of "# key: value" lines ahead of the header
    preamble = "".join(f"# {k}: {json.dumps(v)}\n" for k, v in table.meta.items())

    return _csv(
        ("state_id", "amount", *system.column_names, ENTROPY_TABLE_VALUE_COLUMN),
        ((f"s{i}", x.parts[0].amount, *x.parts[0].coords, v) for i, (x, v) in enumerate(table.rows)),
        preamble=preamble)


def render_water_table(rows: Sequence[tuple[float, float, str, float]], fmt: OutputFormat = "csv") -> str:
    if fmt == "json":
        return _json([dict(zip(WATER_TABLE_HEADER, r)) for r in rows])
    return _csv(WATER_TABLE_HEADER, rows)


def render_reachable_set(points: Iterable[TwoBodyState], fmt: OutputFormat = "csv") -> str:
    ordered = sorted((p.U1, p.U2) for p in points)
    if fmt == "json":
        return _json([list(p) for p in ordered])
    return _csv(REACHABLE_SET_HEADER, ordered)


def render_feasibility(result: FeasibilityResult, fmt: OutputFormat = "json") -> str:
    if fmt == "json":
        return _json(result.to_dict())

    if result.feasible:
        return _csv(("atom", "entropy"), sorted(result.assignment.items()))
    if isinstance(result.certificate, list):
        return _csv(("certificate_from", "certificate_to"), result.certificate)
    return _csv(("certificate",), [(result.certificate,)])


def render_loop(report: LoopReport, fmt: OutputFormat = "csv") -> str:
    if fmt == "json":
        return _json(report.model_dump())

    return _csv(
        ("segment", "delta_S_J_per_K"),
        [*enumerate(report.segments), ("total", report.total)])


def render_temperature_table(rows: Sequence[tuple[str, float, float, float]], fmt: OutputFormat = "csv") -> str:
    if fmt == "json":
        return _json([dict(zip(TEMPERATURE_TABLE_HEADER, r)) for r in rows])
    return _csv(TEMPERATURE_TABLE_HEADER, rows)
