from __future__ import annotations

import csv
import io
import json
import os
from typing import Any, Iterable, Sequence

from jinja2 import Environment, FileSystemLoader

from .golden import lookup
from .models import ConvergenceReport, ModelSpec, OracleResult, SpectrumResult
from .tables import TABLE_TITLES, TableRow

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
TEMPLATES_DIR = os.path.join(BASE_DIR, "templates")

_env = Environment(loader=FileSystemLoader(TEMPLATES_DIR), keep_trailing_newline=True)


def to_json(payload: Any) -> str:
    if isinstance(payload, (list, tuple)):
        data = [p.to_dict() for p in payload]
    else:
        data = payload.to_dict()
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if v is None else v for v in r])
    return out.getvalue()


# =========================
# Tables
# =========================
def _flag(r: TableRow) -> str:
    notes = []
    if r.corrected is not None:
        notes.append(f"misprint, compared with {r.corrected}")
    if not r.converged:
        notes.append("not converged")
    return "; ".join(notes)


def table_text(table_id: str, rows: Sequence[TableRow]) -> str:
    view = []
    for r in rows:
        decimals = lookup(r.table, r.row, r.column).decimals
        view.append(
            {
                "row": r.row,
                "column": r.column,
                "computed_text": f"{r.computed:.{decimals}f}",
                "published_text": f"{r.published:.{decimals}f}",
                "abs_diff": r.abs_diff,
                "D_text": "" if r.D is None else str(r.D),
                "flag": _flag(r),
            }
        )
    return _env.get_template("table.txt.j2").render(table_id=table_id, title=TABLE_TITLES[table_id], rows=view)


def table_csv(rows: Sequence[TableRow]) -> str:
    return _csv(
        ["table", "row", "column", "computed", "published", "corrected", "abs_diff", "D", "A", "converged"],
        (
            [r.table, r.row, r.column, repr(r.computed), repr(r.published), r.corrected, repr(r.abs_diff), r.D, r.A, r.converged]
            for r in rows
        ),
    )


def render_table(table_id: str, rows: Sequence[TableRow], fmt: str) -> str:
    if fmt == "json":
        return to_json(list(rows))
    if fmt == "csv":
        return table_csv(rows)
    return table_text(table_id, rows)


# =========================
# Single results
# =========================
def spectrum_text(model: ModelSpec, result: SpectrumResult, digits: int | None = None) -> str:
    shown = result.converged_digits[0] if result.converged_digits else None
    decimals = digits if digits is not None else 7
    levels = [
        {
            "index": k,
            "text": f"{e:.{decimals}f}",
            "A": result.level_A[k] if len(result.level_A) > 1 else None,
            "digits": shown if k == 0 else None,
        }
        for k, e in enumerate(result.eigenvalues)
    ]
    return _env.get_template("spectrum.txt.j2").render(model=model, result=result, levels=levels)


def spectrum_csv(result: SpectrumResult) -> str:
    def level_A(k: int):
        if len(result.level_A) > k:
            return repr(result.level_A[k])
        return repr(result.optimal_A) if result.optimal_A is not None else None

    return _csv(
        ["level", "energy", "A", "D", "converged"],
        ([k, repr(e), level_A(k), result.D_used, result.converged] for k, e in enumerate(result.eigenvalues)),
    )


def render_spectrum(model: ModelSpec, result: SpectrumResult, fmt: str, digits: int | None = None) -> str:
    if fmt == "json":
        return to_json(result)
    if fmt == "csv":
        return spectrum_csv(result)
    return spectrum_text(model, result, digits)


def render_oracle(result: OracleResult, fmt: str) -> str:
    if fmt == "json":
        return to_json(result)
    c = result.config_used
    if fmt == "csv":
        return _csv(
            ["energy", "node_count", "richardson_estimate", "x_min", "x_max", "steps"],
            [[repr(result.energy), result.node_count, repr(result.richardson_estimate), repr(c.x_min), repr(c.x_max), c.steps]],
        )
    return (
        f"E = {result.energy:.10f}  nodes={result.node_count}  "
        f"Richardson={result.richardson_estimate:.10f}  (+/- {result.error_estimate:.1e})\n"
        f"grid: x in [{c.x_min:.4g}, {c.x_max:.4g}], {c.steps} steps\n"
    )


def render_report(report: ConvergenceReport, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    d = report.to_dict()
    if fmt == "csv":
        return _csv(list(d), [[repr(v) if isinstance(v, float) else v for v in d.values()]])
    return "".join(f"{k:16s} {'' if v is None else v}\n" for k, v in d.items())
