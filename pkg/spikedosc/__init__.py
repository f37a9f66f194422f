"""Variational and shooting eigenvalues of the spiked harmonic oscillator -d²/dx² + Bx² + λ/x^α."""
from .errors import (
    AsymmetryError,
    BracketError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    NotConvergedError,
    SpikedOscError,
    StiffnessError,
)
from .models import ModelSpec, OracleConfig, SpectrumResult
from .oracle import shoot_eigenvalue
from .solver import converge_to_digits, minimize_over_A, solve_spectrum

__all__ = [
    "AsymmetryError",
    "BracketError",
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "ModelSpec",
    "NotConvergedError",
    "OracleConfig",
    "SpectrumResult",
    "SpikedOscError",
    "StiffnessError",
    "converge_to_digits",
    "minimize_over_A",
    "shoot_eigenvalue",
    "solve_spectrum",
]
