from __future__ import annotations

import json
import random

import numpy as np
import pytest

from spikedosc import matrix
from spikedosc.basis import gk_energy, make_context, overlap_integral
from spikedosc.errors import AsymmetryError, DomainError
from spikedosc.matrix import (
    build_hamiltonian,
    interaction_element,
    matelem,
    matelem_alpha4,
    matelem_x_pow,
    matrix_to_json,
    matrix_to_text,
    secular_pair,
)
from spikedosc.models import HamiltonianMatrix, ModelSpec
from spikedosc.solver import eigen_symmetric
from tests.conftest import context_for_gamma


@pytest.mark.parametrize("alpha,A", [(2.0, 0.5), (4.0, 3.0), (6.0, 8.0)])
def test_closed_forms_agree_with_general_series(alpha, A):
    ctx = make_context(ModelSpec(alpha=alpha, lam=1.0, B=1.69), A, 13)
    for m in range(13):
        for n in range(13):
            closed = matelem(ctx, alpha, m, n)
            general = matelem_x_pow(ctx, alpha, m, n)
            assert closed == pytest.approx(general, rel=1e-11, abs=1e-300)


def test_alpha4_small_case():
    ctx = context_for_gamma(3.0)
    assert matelem_alpha4(ctx, 1, 1) == pytest.approx(5.0 / 6.0, rel=1e-14)
    # <0|x^-4|0> = Γ(γ−2)/Γ(γ) β² at γ = 3
    assert matelem_alpha4(ctx, 0, 0) == pytest.approx(0.5, rel=1e-14)


def test_elements_are_symmetric_in_the_indices():
    ctx = context_for_gamma(2.8, beta=0.7)
    for alpha in (0.5, 1.0, 3.3):
        for m in range(8):
            for n in range(m + 1, 8):
                assert matelem(ctx, alpha, m, n) == matelem(ctx, alpha, n, m)


def test_general_elements_against_quadrature():
    rng = random.Random(20240611)
    for _ in range(20):
        alpha = rng.uniform(0.1, 5.0)
        gamma = rng.uniform(max(1.5, 0.5 * alpha + 0.3), 6.0)
        beta = rng.uniform(0.5, 2.0)
        m, n = rng.randrange(8), rng.randrange(8)
        ctx = context_for_gamma(gamma, beta)
        exact = matelem_x_pow(ctx, alpha, m, n)
        quad = overlap_integral(ctx, m, n, alpha)
        assert exact == pytest.approx(quad, rel=1e-8, abs=1e-8), (alpha, gamma, beta, m, n)


def test_vanishing_power_gives_identity():
    ctx = context_for_gamma(2.2)
    for m in range(9):
        for n in range(9):
            expected = 1.0 if m == n else 0.0
            assert abs(matelem_x_pow(ctx, 1e-6, m, n) - expected) < 1e-4


def test_validity_condition():
    ctx = context_for_gamma(1.5)
    with pytest.raises(DomainError):
        matelem_x_pow(ctx, 3.0, 0, 0)
    with pytest.raises(DomainError):
        matelem_alpha4(ctx, 0, 0)
    with pytest.raises(DomainError):
        build_hamiltonian(ModelSpec(alpha=4.0, lam=1.0), make_context(ModelSpec(alpha=4.0, lam=1.0), 0.0, 3))


def test_alpha2_folds_lambda_and_A():
    model = ModelSpec(alpha=2.0, lam=3.0)
    ctx = make_context(model, 3.0, 4)
    for m in range(4):
        for n in range(4):
            assert interaction_element(model, ctx, m, n) == 0.0


def test_free_hamiltonian_is_diagonal():
    model = ModelSpec(alpha=1.0, lam=0.0)
    ctx = make_context(model, 0.0, 6)
    H = build_hamiltonian(model, ctx)
    assert np.array_equal(H.entries, np.diag([gk_energy(ctx, n) for n in range(6)]))


@pytest.mark.parametrize("alpha,A", [(2.0, 0.5), (4.0, 3.0), (6.0, 8.0)])
def test_closed_forms_agree_with_the_series_in_assembly(alpha, A):
    model = ModelSpec(alpha=alpha, lam=7.0, B=1.69)
    ctx = make_context(model, A, 9)
    checked = build_hamiltonian(model, ctx, cross_check=True)
    mirrored = build_hamiltonian(model, ctx)
    assert np.allclose(checked.entries, mirrored.entries, rtol=1e-10, atol=0)


def test_asymmetry_is_detected(monkeypatch):
    model = ModelSpec(alpha=4.0, lam=1.0)
    ctx = make_context(model, 3.0, 4)
    original = matrix.matelem_alpha4

    def skewed(ctx, m, n):
        return original(ctx, m, n) * (1.0 + 1e-4)

    monkeypatch.setitem(matrix._CLOSED_FORMS, 4.0, skewed)
    with pytest.raises(AsymmetryError):
        build_hamiltonian(model, ctx, cross_check=True)
    # without the cross-check the upper triangle is trusted and mirrored
    H = build_hamiltonian(model, ctx)
    assert np.array_equal(H.entries, H.entries.T)


def test_eigensolver_rejects_an_asymmetric_matrix():
    model = ModelSpec(alpha=1.0, lam=1.0)
    ctx = make_context(model, 0.0, 2)
    H = HamiltonianMatrix(dim=2, entries=np.array([[3.0, 0.2], [0.1, 5.0]]), ctx=ctx, model=model)
    with pytest.raises(AsymmetryError):
        eigen_symmetric(H)


def test_hamiltonian_is_symmetric(spike4):
    H = build_hamiltonian(spike4, make_context(spike4, 40.0, 12))
    assert np.array_equal(H.entries, H.entries.T)
    assert H.dim == 12


def test_secular_pair_matches_eigensolver():
    model = ModelSpec(alpha=1.5, lam=2.0)
    H = build_hamiltonian(model, make_context(model, 1.0, 2))
    assert secular_pair(H) == pytest.approx(eigen_symmetric(H), rel=1e-13)
    with pytest.raises(DomainError):
        secular_pair(build_hamiltonian(model, make_context(model, 1.0, 3)))


def test_matrix_dumps(spike4):
    H = build_hamiltonian(spike4, make_context(spike4, 40.0, 3))
    assert HamiltonianMatrix.from_dict(json.loads(matrix_to_json(H))) == H
    lines = matrix_to_text(H).splitlines()
    assert len(lines) == 3
    assert [float(v) for v in lines[0].split()] == list(H.entries[0])
