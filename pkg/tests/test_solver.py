from __future__ import annotations

import math

import numpy as np
import pytest

from spikedosc.basis import make_context
from spikedosc.errors import ConvergenceError, DomainError
from spikedosc.golden import lookup
from spikedosc.matrix import build_hamiltonian
from spikedosc.models import HamiltonianMatrix, ModelSpec
from spikedosc.oracle import shoot_eigenvalue
from spikedosc.solver import (
    converge_to_digits,
    eigen_symmetric,
    is_well_conditioned,
    minimize_over_A,
    rounding_error,
    solve_spectrum,
    spectrum_at,
)
from tests.conftest import exact_alpha2_ground


@pytest.mark.parametrize("lam", [0.1, 1.0, 10.0, 1000.0])
def test_alpha2_is_solved_exactly_at_A_equal_lambda(lam):
    model = ModelSpec(alpha=2.0, lam=lam)
    r = minimize_over_A(model, 1)
    assert r.optimal_A == pytest.approx(lam, rel=1e-6, abs=1e-7)
    assert r.eigenvalues[0] == pytest.approx(exact_alpha2_ground(lam), rel=1e-10)
    assert not r.at_boundary
    assert r.evaluations > 0


def test_alpha2_fixed_A_gives_the_exact_level_sequence():
    model = ModelSpec(alpha=2.0, lam=1.0, B=4.0)
    r = solve_spectrum(model, 4, optimize_A=False, fixed_A=1.0)
    gamma = 1.0 + 0.5 * math.sqrt(5.0)
    assert r.eigenvalues == pytest.approx([4.0 * (2 * n + gamma) for n in range(4)], rel=1e-13)
    assert r.optimal_A is None
    assert r.level_A == (1.0,)


def test_eigenvalues_interlace_as_D_grows():
    model = ModelSpec(alpha=1.0, lam=1.0)
    for D in range(1, 8):
        small = spectrum_at(model, 0.8, D)
        big = spectrum_at(model, 0.8, D + 1)
        for k in range(D):
            assert big[k] <= small[k] + 1e-12
            assert small[k] <= big[k + 1] + 1e-12


def test_level_needs_enough_basis_functions():
    with pytest.raises(DomainError):
        minimize_over_A(ModelSpec(alpha=1.0, lam=1.0), 2, level=2)
    with pytest.raises(DomainError):
        solve_spectrum(ModelSpec(alpha=1.0, lam=1.0), 3, optimize_A=True, levels=4)


def test_eigensolver_rejects_non_finite():
    model = ModelSpec(alpha=1.0, lam=1.0)
    ctx = make_context(model, 0.0, 2)
    H = HamiltonianMatrix(dim=2, entries=np.array([[1.0, np.nan], [np.nan, 1.0]]), ctx=ctx, model=model)
    with pytest.raises(ConvergenceError):
        eigen_symmetric(H)


def test_eigensolver_is_ascending(spike4):
    w = eigen_symmetric(build_hamiltonian(spike4, make_context(spike4, 40.0, 10)))
    assert list(w) == sorted(w)


@pytest.mark.parametrize("lam", [0.1, 1000])
def test_single_function_table_values(lam):
    model = ModelSpec(alpha=0.5, lam=lam)
    fixed = solve_spectrum(model, 1, optimize_A=False, fixed_A=0.0)
    opt = solve_spectrum(model, 1, optimize_A=True)
    assert fixed.eigenvalues[0] == pytest.approx(lookup("I", "D=1", f"lambda={lam:g} A=0").value, abs=1e-6)
    assert opt.eigenvalues[0] == pytest.approx(lookup("I", "D=1", f"lambda={lam:g} A=opt").value, abs=1e-6)
    assert opt.eigenvalues[0] <= fixed.eigenvalues[0]


def test_optimised_bound_is_monotone_in_D():
    model = ModelSpec(alpha=0.5, lam=1000.0)
    energies = [minimize_over_A(model, D).eigenvalues[0] for D in (1, 2, 3, 5)]
    assert all(b <= a + 1e-9 for a, b in zip(energies, energies[1:]))


def test_per_level_minimisation():
    model = ModelSpec(alpha=4.0, lam=1000.0)
    r = solve_spectrum(model, 7, optimize_A=True, levels=7)
    assert len(r.eigenvalues) == 7
    assert len(r.level_A) == 7
    assert r.optimal_A == r.level_A[0]
    assert r.eigenvalues[0] == pytest.approx(lookup("IV", "E0", "D=7").value, abs=5e-5)
    assert r.eigenvalues[1] == pytest.approx(lookup("IV", "E1", "D=7").value, abs=5e-5)


def test_alpha4_ground_state_at_moderate_D(spike4):
    r = minimize_over_A(spike4, 20)
    assert r.eigenvalues[0] == pytest.approx(lookup("VI", "lambda=1000", "alpha=4").value, abs=1e-5)
    assert r.optimal_A > 0.75


def test_converge_to_digits_rejects_out_of_range():
    with pytest.raises(DomainError):
        converge_to_digits(ModelSpec(alpha=1.0, lam=1.0), 13)
    with pytest.raises(DomainError):
        converge_to_digits(ModelSpec(alpha=1.0, lam=1.0), 0)
    with pytest.raises(DomainError):
        converge_to_digits(ModelSpec(alpha=1.0, lam=1.0), 6, level=3, D_max=3)


def test_converge_exact_case_stops_early():
    r = converge_to_digits(ModelSpec(alpha=2.0, lam=5.0), 10)
    assert r.converged
    assert r.D_used == 2
    assert r.converged_digits == (10,)
    assert r.eigenvalues[0] == pytest.approx(exact_alpha2_ground(5.0), rel=1e-10)


def test_converge_reports_failure():
    r = converge_to_digits(ModelSpec(alpha=4.0, lam=0.01), 8, D_max=5)
    assert not r.converged
    assert r.D_used == 5
    assert r.converged_digits[0] < 8


def test_result_dict_round_trip():
    r = solve_spectrum(ModelSpec(alpha=1.0, lam=1.0), 5, optimize_A=True, levels=2)
    d = r.to_dict()
    assert isinstance(d["eigenvalues"], list)
    assert type(r).from_dict(d) == r


def test_single_level_result_carries_its_A(spike4):
    r = solve_spectrum(spike4, 1, optimize_A=True, levels=1)
    assert r.level_A == (r.optimal_A,)


def test_minimum_is_global_over_A(spike4):
    # E_1 at D=7 has a shallow basin near A≈16 and the deeper one near A≈97
    r = minimize_over_A(spike4, 7, level=1)
    lowest = min(spectrum_at(spike4, A, 7)[1] for A in np.geomspace(1.0, 3000.0, 400))
    assert r.eigenvalues[1] <= lowest + 1e-9
    assert r.optimal_A > 50.0
    assert r.eigenvalues[1] == pytest.approx(lookup("IV", "E1", "D=7").value, abs=5e-5)


def test_small_coupling_minimum_leaves_the_floor():
    model = ModelSpec(alpha=6.0, lam=0.01)
    r = minimize_over_A(model, 20)
    assert not r.at_boundary
    assert r.optimal_A > 4.0
    lowest = min(spectrum_at(model, A, 20)[0] for A in np.geomspace(3.7501, 400.0, 200))
    assert r.eigenvalues[0] <= lowest + 1e-9


def test_ill_conditioned_basis_is_flagged():
    model = ModelSpec(alpha=6.0, lam=1000.0)
    near_floor = spectrum_at(model, 3.75174, 100)
    assert not is_well_conditioned(near_floor)
    assert rounding_error(near_floor) > 1e-6
    assert is_well_conditioned(spectrum_at(model, 10.0, 100))


@pytest.mark.slow
def test_variational_energy_stays_above_the_exact_one():
    model = ModelSpec(alpha=6.0, lam=1000.0)
    r = minimize_over_A(model, 100)
    exact = shoot_eigenvalue(model).energy
    assert r.eigenvalues[0] >= exact - 1e-8
    assert r.eigenvalues[0] == pytest.approx(lookup("VI", "lambda=1000", "alpha=6").value, abs=5e-6)
