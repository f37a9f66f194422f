from __future__ import annotations

import math

import numpy as np
import pytest

from spikedosc.basis import (
    admissible_A_floor,
    centrifugal_lambda,
    eval_wavefunction,
    gamma_of_A,
    gk_convert_legacy,
    gk_energy,
    gk_energy_legacy,
    gram_matrix,
    lemma_integral,
    lemma_integral_closed,
    make_context,
    norm_constant,
    overlap_integral,
)
from spikedosc.errors import DomainError
from spikedosc.models import ModelSpec
from tests.conftest import context_for_gamma


def test_gamma_on_the_half_line(harmonic):
    assert gamma_of_A(harmonic, 0.0) == pytest.approx(1.5)
    assert gamma_of_A(harmonic, 2.0) == pytest.approx(2.5)
    with pytest.raises(DomainError):
        gamma_of_A(harmonic, -0.1)


def test_gamma_radial():
    three_d = ModelSpec(alpha=1.0, lam=0.0, N=3, l=0)
    for A in (0.0, 0.75, 3.0, 17.5):
        assert gamma_of_A(three_d, A) == pytest.approx(gamma_of_A(ModelSpec(alpha=1.0, lam=0.0), A), rel=1e-15)
    # N = 2, l = 0 has Λ = −1/2 and reaches γ = 1
    assert gamma_of_A(ModelSpec(alpha=1.0, lam=0.0, N=2), 0.0) == pytest.approx(1.0)
    assert centrifugal_lambda(ModelSpec(alpha=1.0, lam=0.0, N=5, l=2)) == pytest.approx(3.0)
    assert centrifugal_lambda(ModelSpec(alpha=1.0, lam=0.0)) is None


@pytest.mark.parametrize(
    "alpha,floor,closed",
    [(4.0, 0.75, False), (1.0, 0.0, True), (6.0, 3.75, False), (2.0, 0.0, True), (3.0, 0.0, False)],
)
def test_admissible_floor(alpha, floor, closed):
    got, got_closed = admissible_A_floor(ModelSpec(alpha=alpha, lam=1.0))
    assert got == pytest.approx(floor, abs=1e-15)
    assert got_closed is closed


def test_floor_is_where_two_gamma_meets_alpha():
    model = ModelSpec(alpha=6.0, lam=1.0)
    floor, _ = admissible_A_floor(model)
    assert 2.0 * gamma_of_A(model, floor) == pytest.approx(6.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"alpha": 0.0, "lam": 1.0},
        {"alpha": -1.0, "lam": 1.0},
        {"alpha": 1.0, "lam": -1e-3},
        {"alpha": 1.0, "lam": 1.0, "B": 0.0},
        {"alpha": 1.0, "lam": 1.0, "N": 0},
        {"alpha": 1.0, "lam": 1.0, "N": 2.5},
        {"alpha": 1.0, "lam": 1.0, "N": 3, "l": -1},
    ],
)
def test_model_spec_rejects(kwargs):
    with pytest.raises(DomainError):
        ModelSpec(**kwargs)


def test_model_spec_dict_uses_lambda_key():
    m = ModelSpec(alpha=4.0, lam=0.25, B=2.0, N=3, l=1)
    d = m.to_dict()
    assert d["lambda"] == 0.25
    assert ModelSpec.from_dict(d) == m


def test_gk_energy():
    ctx = make_context(ModelSpec(alpha=1.0, lam=0.0, B=4.0), 2.0, 5)
    assert [gk_energy(ctx, n) for n in range(3)] == pytest.approx([10.0, 18.0, 26.0])


@pytest.mark.parametrize("A,B", [(0.0, 1.0), (2.0, 1.0), (10.0, 4.0)])
def test_basis_is_orthonormal(A, B):
    ctx = make_context(ModelSpec(alpha=1.0, lam=0.0, B=B), A, 10)
    G = gram_matrix(ctx)
    assert np.allclose(G, np.eye(10), rtol=0, atol=1e-9)


def test_overlap_rejects_divergent_weight():
    ctx = make_context(ModelSpec(alpha=1.0, lam=0.0), 0.0, 3)  # γ = 3/2
    with pytest.raises(DomainError):
        overlap_integral(ctx, 0, 1, alpha=3.0)


@pytest.mark.parametrize("gamma,beta", [(2.5, 1.0), (1.7, 2.3)])
def test_laguerre_orthogonality_integral(gamma, beta):
    ctx = context_for_gamma(gamma, beta)
    for m in range(7):
        for n in range(7):
            val = lemma_integral(ctx, m, n)
            if m == n:
                assert val == pytest.approx(lemma_integral_closed(ctx, n), rel=1e-10)
            else:
                scale = max(lemma_integral_closed(ctx, m), lemma_integral_closed(ctx, n))
                assert abs(val) < 1e-10 * scale


def test_ground_state_value():
    ctx = make_context(ModelSpec(alpha=1.0, lam=0.0), 0.0, 1)
    assert norm_constant(ctx, 0).value == pytest.approx(2.0 * math.pi ** -0.25, rel=1e-14)
    assert eval_wavefunction(ctx, 0, 1.0) == pytest.approx(2.0 * math.pi ** -0.25 * math.exp(-0.5), rel=1e-14)


@pytest.mark.parametrize("n", range(6))
def test_wavefunction_sign_convention(ctx_A2, n):
    assert math.copysign(1.0, eval_wavefunction(ctx_A2, n, 1e-3)) == (-1) ** n
    assert eval_wavefunction(ctx_A2, n, 8.0) > 0


def test_wavefunction_vanishes_at_origin(harmonic):
    ctx = make_context(harmonic, 0.0, 4)
    for n in range(4):
        assert abs(eval_wavefunction(ctx, n, 1e-12)) < 1e-10
    with pytest.raises(DomainError):
        eval_wavefunction(ctx, 0, 0.0)


def test_legacy_parametrisation():
    V0, a = 2.0, 3.0
    A, B = gk_convert_legacy(V0, a)
    assert (A, B) == pytest.approx((18.0, 2.0 / 9.0))
    ctx = make_context(ModelSpec(alpha=1.0, lam=0.0, B=B), A, 4)
    for n in range(4):
        assert gk_energy_legacy(V0, a, n) == pytest.approx(gk_energy(ctx, n) - 2.0 * V0, rel=1e-13)
    with pytest.raises(DomainError):
        gk_convert_legacy(0.0, 1.0)
