from __future__ import annotations

import logging

from fastapi import APIRouter, Depends, HTTPException, Query
from fastapi.concurrency import run_in_threadpool
from fastapi.responses import Response

from .analysis import convergence_report
from .basis import make_context
from .deps import ConvergeBody, OracleBody, SolveBody, check_dim, dim_query, model_query
from .errors import NotConvergedError
from .matrix import build_hamiltonian
from .models import TABLE_IDS, ModelSpec
from .oracle import default_config, shoot_eigenvalue
from .render import table_csv
from .solver import converge_to_digits, minimize_over_A, solve_spectrum
from .tables import build_table

logger = logging.getLogger(__name__)

router = APIRouter()


@router.get("/health")
def health():
    return {"status": "ok"}


# =========================
# SOLVER
# =========================
@router.post("/solve")
async def solve(body: SolveBody):
    model = body.model.to_spec()
    D = check_dim(body.D)
    result = await run_in_threadpool(
        solve_spectrum, model, D, body.optimize_A, body.fixed_A, body.levels
    )
    return {"model": model.to_dict(), "result": result.to_dict()}


@router.post("/converge")
async def converge(body: SolveBody):
    if body.digits is None:
        raise HTTPException(status_code=422, detail="digits is required")
    model = body.model.to_spec()
    result = await run_in_threadpool(converge_to_digits, model, body.digits, 0, check_dim(body.D))
    if not result.converged:
        raise NotConvergedError(f"not converged to {body.digits} digits by D={result.D_used}")
    return {"model": model.to_dict(), "result": result.to_dict()}


@router.post("/analysis")
async def analysis(body: ConvergeBody):
    model = body.model.to_spec()
    D = check_dim(body.D)

    def _run():
        A = body.A if body.A is not None else float(minimize_over_A(model, 1, 0).optimal_A)
        return convergence_report(model, A, D)

    return (await run_in_threadpool(_run)).to_dict()


@router.post("/oracle")
async def oracle(body: OracleBody):
    model = body.model.to_spec()

    def _run():
        config = default_config(model, body.level)
        if body.steps is not None:
            config = config.with_steps(body.steps)
        return shoot_eigenvalue(model, body.level, config)

    return (await run_in_threadpool(_run)).to_dict()


@router.get("/matrix")
def matrix(
    model: ModelSpec = Depends(model_query),
    D: int = Depends(dim_query),
    A: float = Query(0.0),
):
    return build_hamiltonian(model, make_context(model, A, D)).to_dict()


# =========================
# TABLES (JSON or CSV export)
# =========================
@router.get("/tables/{table_id}")
async def table(table_id: str, format: str = Query("json")):
    if table_id not in TABLE_IDS:
        raise HTTPException(status_code=404, detail="Not found")
    rows = await run_in_threadpool(build_table, table_id)
    if format == "csv":
        data = table_csv(rows).encode("utf-8")
        return Response(
            content=data,
            media_type="text/csv",
            headers={"Content-Disposition": f"attachment; filename=table_{table_id}.csv"},
        )
    return {"table": table_id, "rows": [r.to_dict() for r in rows]}
