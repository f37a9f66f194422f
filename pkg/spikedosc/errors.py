from __future__ import annotations


class SpikedOscError(Exception):
    """Base class; `exit_code` is the CLI status, `http_status` the API one."""

    exit_code = 2
    http_status = 422

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail


class DomainError(SpikedOscError, ValueError):
    """Parameters outside the region where a formula is valid (e.g. 2γ ≤ α)."""


class AsymmetryError(SpikedOscError):
    http_status = 500


class ConvergenceError(SpikedOscError):
    exit_code = 3
    http_status = 500


class BracketError(SpikedOscError):
    exit_code = 3
    http_status = 409


class StiffnessError(SpikedOscError):
    exit_code = 3
    http_status = 409


class DivergenceError(SpikedOscError):
    pass


class NotConvergedError(SpikedOscError):
    exit_code = 3
    http_status = 409
