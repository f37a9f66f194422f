from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import DomainError


# =========================
# PROBLEM + BASIS
# =========================
@dataclass(frozen=True)
class ModelSpec:
    """H = −d²/dx² + B x² + λ/x^α on (0, ∞); N = 1 is the half-line problem."""

    alpha: float
    lam: float
    B: float = 1.0
    N: int = 1
    l: int = 0  # ignored when N == 1

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not self.lam >= 0:
            raise DomainError(f"lambda must be non-negative, got {self.lam}")
        if not self.B > 0:
            raise DomainError(f"B must be positive, got {self.B}")
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"N must be an integer >= 1, got {self.N}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be a non-negative integer, got {self.l}")

    @property
    def is_radial(self) -> bool:
        return self.N >= 2

    def to_dict(self) -> dict[str, Any]:
        return {"alpha": self.alpha, "lambda": self.lam, "B": self.B, "N": self.N, "l": self.l}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ModelSpec":
        return cls(alpha=d["alpha"], lam=d["lambda"], B=d.get("B", 1.0), N=d.get("N", 1), l=d.get("l", 0))


@dataclass(frozen=True)
class BasisContext:
    A: float
    beta: float
    gamma: float
    D: int

    def __post_init__(self):
        if self.A < 0:
            raise DomainError(f"A must be non-negative, got {self.A}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.D < 1:
            raise DomainError(f"basis size D must be >= 1, got {self.D}")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BasisContext":
        return cls(A=d["A"], beta=d["beta"], gamma=d["gamma"], D=d["D"])


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    dim: int
    entries: np.ndarray
    ctx: BasisContext
    model: ModelSpec

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "entries": [float(v) for v in np.asarray(self.entries).ravel()],
            "ctx": self.ctx.to_dict(),
            "model": self.model.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "HamiltonianMatrix":
        dim = int(d["dim"])
        entries = np.asarray(d["entries"], dtype=float).reshape(dim, dim)
        return cls(dim=dim, entries=entries, ctx=BasisContext.from_dict(d["ctx"]), model=ModelSpec.from_dict(d["model"]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HamiltonianMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.ctx == other.ctx
            and self.model == other.model
            and np.array_equal(self.entries, other.entries)
        )


# =========================
# RESULTS
# =========================
@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: tuple[float, ...]
    optimal_A: Optional[float]
    D_used: int
    converged_digits: tuple[int, ...] = ()
    evaluations: int = 0
    level_A: tuple[float, ...] = ()  # A behind each level; one entry when a single A serves them all
    at_boundary: bool = False
    converged: bool = True

    def __post_init__(self):
        ev = tuple(float(e) for e in self.eigenvalues)
        if any(b < a for a, b in zip(ev, ev[1:])):
            raise DomainError("eigenvalues must be sorted ascending")
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "converged_digits", tuple(int(c) for c in self.converged_digits))
        object.__setattr__(self, "level_A", tuple(float(a) for a in self.level_A))

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for k in ("eigenvalues", "converged_digits", "level_A"):
            d[k] = list(d[k])
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SpectrumResult":
        return cls(**d)


@dataclass(frozen=True)
class OracleConfig:
    x_min: float
    x_max: float
    steps: int = 40000
    energy_bracket: Optional[tuple[float, float]] = None  # None: found by node counting
    tolerance: float = 1e-9

    def __post_init__(self):
        if not self.x_min > 0:
            raise DomainError("x_min must be positive (the potential is singular at 0)")
        if not self.x_max > self.x_min:
            raise DomainError("x_max must exceed x_min")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if self.steps < 10:
            raise DomainError("steps must be at least 10")
        if self.energy_bracket is not None:
            lo, hi = self.energy_bracket
            object.__setattr__(self, "energy_bracket", (float(lo), float(hi)))

    def with_steps(self, steps: int) -> "OracleConfig":
        return OracleConfig(self.x_min, self.x_max, steps, self.energy_bracket, self.tolerance)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        if self.energy_bracket is not None:
            d["energy_bracket"] = list(self.energy_bracket)
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "OracleConfig":
        br = d.get("energy_bracket")
        return cls(
            x_min=d["x_min"],
            x_max=d["x_max"],
            steps=d.get("steps", 40000),
            energy_bracket=tuple(br) if br is not None else None,
            tolerance=d.get("tolerance", 1e-9),
        )


@dataclass(frozen=True)
class OracleResult:
    energy: float
    node_count: int
    config_used: OracleConfig
    richardson_estimate: float

    @property
    def error_estimate(self) -> float:
        return abs(self.energy - self.richardson_estimate)

    def to_dict(self) -> dict[str, Any]:
        return {
            "energy": self.energy,
            "node_count": self.node_count,
            "config_used": self.config_used.to_dict(),
            "richardson_estimate": self.richardson_estimate,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "OracleResult":
        return cls(
            energy=d["energy"],
            node_count=d["node_count"],
            config_used=OracleConfig.from_dict(d["config_used"]),
            richardson_estimate=d["richardson_estimate"],
        )


@dataclass(frozen=True)
class ConvergenceReport:
    perturbation_E: float
    sum_partial: float
    sum_closed: Optional[float]  # only when γ > 3
    lambda_of_gamma: float
    regime: str  # "slow" | "fast"

    def __post_init__(self):
        if self.regime not in ("slow", "fast"):
            raise DomainError(f"unknown regime {self.regime!r}")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ConvergenceReport":
        return cls(**d)


@dataclass(frozen=True)
class StationarityReport:
    derivative: float  # |dE0/dA| at A*
    A_star: float
    gamma_star: float
    lambda_from_gamma: float
    consistent: bool

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


# =========================
# CLI JOBS
# =========================
SUBCOMMANDS = ("solve", "table", "matrix", "oracle", "converge")
TABLE_IDS = ("I", "II", "III", "IV", "V", "VI")
FORMATS = ("text", "csv", "json")


@dataclass(frozen=True)
class JobConfig:
    subcommand: str
    model: Optional[ModelSpec] = None
    D: int = 10
    optimize_A: bool = False
    fixed_A: Optional[float] = None
    levels: int = 1
    level: int = 0
    digits: Optional[int] = None
    output_format: str = "text"
    table_id: Optional[str] = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise DomainError(f"unknown subcommand {self.subcommand!r}")
        if (self.table_id is not None) != (self.subcommand == "table"):
            raise DomainError("table_id is required for, and only for, the table subcommand")
        if self.table_id is not None and self.table_id not in TABLE_IDS:
            raise DomainError(f"unknown table {self.table_id!r}")
        if self.output_format not in FORMATS:
            raise DomainError(f"unknown format {self.output_format!r}")
        if self.subcommand != "table" and self.model is None:
            raise DomainError(f"{self.subcommand} needs a model")
        if self.D < 1 or self.levels < 1 or self.level < 0:
            raise DomainError("dim and levels must be positive, level non-negative")
        if self.fixed_A is not None and (math.isnan(self.fixed_A) or self.fixed_A < 0):
            raise DomainError("fixed A must be a non-negative number")
