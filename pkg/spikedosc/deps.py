from __future__ import annotations

from typing import Optional

from fastapi import HTTPException, Query
from pydantic import BaseModel, Field

from . import settings
from .models import ModelSpec


class ModelBody(BaseModel):
    alpha: float
    lam: float = Field(alias="lambda")
    B: float = 1.0
    N: int = 1
    l: int = 0

    model_config = {"populate_by_name": True}

    def to_spec(self) -> ModelSpec:
        return ModelSpec(alpha=self.alpha, lam=self.lam, B=self.B, N=self.N, l=self.l)


class SolveBody(BaseModel):
    model: ModelBody
    D: int = 10
    optimize_A: bool = True
    fixed_A: Optional[float] = None
    levels: int = 1
    digits: Optional[int] = None


class OracleBody(BaseModel):
    model: ModelBody
    level: int = 0
    steps: Optional[int] = None


class ConvergeBody(BaseModel):
    model: ModelBody
    D: int = 10
    A: Optional[float] = None


def check_dim(D: int) -> int:
    if D < 1 or D > settings.MAX_DIM:
        raise HTTPException(status_code=422, detail=f"D must be in [1, {settings.MAX_DIM}]")
    return D


def model_query(
    alpha: float = Query(...),
    lam: float = Query(..., alias="lambda"),
    B: float = Query(1.0),
    N: int = Query(1),
    l: int = Query(0),
) -> ModelSpec:
    # DomainError is rendered by the app's exception handler
    return ModelSpec(alpha=alpha, lam=lam, B=B, N=N, l=l)


def dim_query(D: int = Query(10)) -> int:
    return check_dim(D)
