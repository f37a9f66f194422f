"""Recompute the published tables cell by cell next to the golden values."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Optional

from . import settings
from .errors import DomainError
from .golden import GOLDEN, lookup
from .models import TABLE_IDS, ModelSpec
from .oracle import shoot_eigenvalue
from .analysis import LAMBDA_CRITICAL
from .solver import converge_to_digits, minimize_over_A, solve_spectrum

logger = logging.getLogger(__name__)

TABLE_TITLES = {
    "I": "Ground state of -d2/dx2 + x^2 + lambda/x^0.5: fixed A=0 against A optimised",
    "II": "Ground state for alpha=1, A optimised, D grown until 7 digits are stable",
    "III": "alpha=4, lambda=1000 in N dimensions (l=0): 30x30 bound and shooting value",
    "IV": "alpha=4, lambda=1000: each level minimised over its own A, D=1..7",
    "V": "Small couplings, alpha=4 and 6: A optimised, D grown up to 200",
    "VI": "alpha=4 and 6 over six decades of lambda",
}


@dataclass(frozen=True)
class TableRow:
    table: str
    row: str
    column: str
    computed: float
    published: float
    abs_diff: float
    D: Optional[int] = None
    A: Optional[float] = None
    converged: bool = True
    corrected: Optional[float] = None  # erratum for the published value

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TableRow":
        return cls(**d)


Cell = Callable[[], list[TableRow]]


def _row(table: str, row: str, column: str, computed: float, D=None, A=None, converged=True) -> TableRow:
    g = lookup(table, row, column)
    return TableRow(
        table=table,
        row=row,
        column=column,
        computed=computed,
        published=g.value,
        abs_diff=abs(computed - g.reference),
        D=D,
        A=A,
        converged=converged,
        corrected=g.corrected,
    )


def _cells_I() -> list[Cell]:
    cells: list[Cell] = []
    for D in (1, 2, 3, 5, 10):
        for lam in (0.1, 1000):
            model = ModelSpec(alpha=0.5, lam=lam)

            def fixed(model=model, D=D, lam=lam) -> list[TableRow]:
                r = solve_spectrum(model, D, optimize_A=False, fixed_A=0.0)
                return [_row("I", f"D={D}", f"lambda={lam:g} A=0", r.eigenvalues[0], D, 0.0)]

            def opt(model=model, D=D, lam=lam) -> list[TableRow]:
                r = minimize_over_A(model, D, 0)
                return [_row("I", f"D={D}", f"lambda={lam:g} A=opt", r.eigenvalues[0], D, r.optimal_A)]

            cells += [fixed, opt]
    return cells


def _converged_cell(table: str, row: str, column: str, model: ModelSpec, digits: int, D_max: int) -> Cell:
    def cell() -> list[TableRow]:
        r = converge_to_digits(model, digits, 0, D_max)
        return [_row(table, row, column, r.eigenvalues[0], r.D_used, r.optimal_A, r.converged)]

    return cell


def _cells_II() -> list[Cell]:
    return [
        _converged_cell("II", f"lambda={lam:g}", "E", ModelSpec(alpha=1.0, lam=lam), 7, 80)
        for lam in (0.001, 0.01, 0.1, 1, 10)
    ]


def _cells_III() -> list[Cell]:
    cells: list[Cell] = []
    for N in range(2, 11):
        model = ModelSpec(alpha=4.0, lam=1000.0, N=N)

        def bound(model=model, N=N) -> list[TableRow]:
            r = minimize_over_A(model, 30, 0)
            return [_row("III", f"N={N}", "E^U", r.eigenvalues[0], 30, r.optimal_A)]

        def shooting(model=model, N=N) -> list[TableRow]:
            r = shoot_eigenvalue(model, 0)
            return [_row("III", f"N={N}", "E", r.energy)]

        cells += [bound, shooting]
    return cells


def _cells_IV(dims: range = range(1, 8)) -> list[Cell]:
    model = ModelSpec(alpha=4.0, lam=1000.0)

    def cell(D: int) -> list[TableRow]:
        r = solve_spectrum(model, D, optimize_A=True, levels=D)
        return [_row("IV", f"E{k}", f"D={D}", r.eigenvalues[k], D, r.level_A[k]) for k in range(D)]

    return [lambda D=D: cell(D) for D in dims]


def _D_max(lam: float) -> int:
    # below the critical coupling E converges slowly in D
    return 200 if lam < LAMBDA_CRITICAL else 100


def _cells_V() -> list[Cell]:
    return [
        _converged_cell("V", f"lambda={lam:g}", f"alpha={alpha}", ModelSpec(alpha=float(alpha), lam=lam), 6, _D_max(lam))
        for lam in (0.0025, 0.005, 0.01)
        for alpha in (4, 6)
    ]


def _cells_VI() -> list[Cell]:
    return [
        _converged_cell("VI", f"lambda={lam:g}", f"alpha={alpha}", ModelSpec(alpha=float(alpha), lam=lam), 7, _D_max(lam))
        for lam in (1000, 100, 10, 1, 0.1, 0.01)
        for alpha in (4, 6)
    ]


_CELLS = {"I": _cells_I, "II": _cells_II, "III": _cells_III, "IV": _cells_IV, "V": _cells_V, "VI": _cells_VI}


def _order_key(table_id: str) -> dict[tuple[str, str], int]:
    return {(g.row, g.column): i for i, g in enumerate(GOLDEN[table_id])}


def build_table(table_id: str, threads: Optional[int] = None) -> list[TableRow]:
    """All rows of one table, computed in parallel and returned in published row-major order."""
    if table_id not in TABLE_IDS:
        raise DomainError(f"unknown table {table_id!r}")
    cells = _CELLS[table_id]()
    workers = max(1, min(threads or settings.THREADS, len(cells)))
    logger.info("table %s: %d cells on %d threads", table_id, len(cells), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = [r for batch in pool.map(lambda c: c(), cells) for r in batch]
    order = _order_key(table_id)
    return sorted(rows, key=lambda r: order[(r.row, r.column)])
