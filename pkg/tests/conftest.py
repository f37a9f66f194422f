from __future__ import annotations

import math

import pytest

from spikedosc.basis import make_context
from spikedosc.models import BasisContext, ModelSpec


def context_for_gamma(gamma: float, beta: float = 1.0, D: int = 10) -> BasisContext:
    """1-D basis context whose A reproduces the given gamma."""
    A = (4.0 * (gamma - 1.0) ** 2 - 1.0) / 4.0
    return BasisContext(A=A, beta=beta, gamma=gamma, D=D)


@pytest.fixture
def harmonic() -> ModelSpec:
    return ModelSpec(alpha=1.0, lam=0.0)


@pytest.fixture
def spike4() -> ModelSpec:
    return ModelSpec(alpha=4.0, lam=1000.0)


@pytest.fixture
def ctx_A2():
    return make_context(ModelSpec(alpha=1.0, lam=0.0), 2.0, 10)


def exact_alpha2_ground(lam: float, beta: float = 1.0) -> float:
    return 2.0 * beta * (1.0 + 0.5 * math.sqrt(1.0 + 4.0 * lam))
