"""Why small couplings converge slowly: second-order estimates and the λ–γ relation at α = 4."""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Union

from scipy import optimize

from .basis import admissible_A_floor, gamma_of_A, gk_energy, make_context
from .errors import DivergenceError, DomainError
from .matrix import interaction_element
from .models import BasisContext, ConvergenceReport, ModelSpec, StationarityReport
from .solver import minimize_over_A, spectrum_at
from .specfun import hyp_pfq_partial, hyp_pfq_unit_accelerated

logger = logging.getLogger(__name__)

LAMBDA_CRITICAL = Fraction(5, 4)
STATIONARITY_RTOL = 1e-6

Real = Union[float, Fraction]

# three series of the α = 4 second-order sum, each as 2/γ · pFq(...; 1)
_SERIES = (
    ((3.0, 1.0), ()),
    ((3.0, 1.0, 1.0), (2.0,)),
    ((3.0, 1.0, 1.0, 1.0), (2.0, 2.0)),
)


def perturbation_estimate(model: ModelSpec, ctx: BasisContext, D: int) -> float:
    """Ground level to second order in V = λx^{−α} − A x^{−2}, summed over the excited states n = 1..D."""
    if D < 1:
        raise DomainError(f"D must be positive, got {D}")
    if not 2.0 * ctx.gamma > model.alpha:
        raise DomainError(f"2*gamma={2 * ctx.gamma} must exceed alpha={model.alpha}")
    e0 = gk_energy(ctx, 0)
    second = math.fsum(
        interaction_element(model, ctx, 0, n) ** 2 / (gk_energy(ctx, n) - e0) for n in range(1, D + 1)
    )
    return e0 + interaction_element(model, ctx, 0, 0) - second


def convergence_sum_alpha4(ctx: BasisContext, lam: float, D: Union[int, float]) -> float:
    """Second-order sum at α = 4 as three series in (n+1)!/(γ)_n.

    D = math.inf gives the closed hypergeometric value, which exists only for γ > 3.
    """
    g = ctx.gamma
    if not g > 2:
        raise DomainError(f"alpha=4 sums need gamma > 2, got {g}")
    infinite = math.isinf(D)
    if infinite and not g > 3:
        raise DivergenceError(f"2F1(3,1;gamma+1;1) diverges for gamma={g} <= 3")
    if not infinite and (D < 1 or int(D) != D):
        raise DomainError(f"D must be a positive integer or inf, got {D}")
    # β ≠ 1 rescales λ → λβ and the whole sum by β
    lam_b = lam * ctx.beta
    c = lam_b - ctx.A * (g - 2.0)
    coeffs = (lam_b * lam_b, 2.0 * lam_b * c, c * c)
    sums = []
    for (nums, dens), k in zip(_SERIES, coeffs):
        if k == 0:
            sums.append(0.0)
            continue
        dens = dens + (g + 1.0,)
        f = hyp_pfq_unit_accelerated(nums, dens) if infinite else hyp_pfq_partial(nums, dens, int(D))
        sums.append(k * 2.0 / g * f)
    pref = 0.25 / ((g - 1.0) * (g - 2.0)) ** 2
    return ctx.beta * pref * math.fsum(sums)


def lambda_of_gamma(gamma: Real) -> Real:
    """Coupling whose one-function optimum at α = 4 lands on this γ."""
    if not gamma > Fraction(3, 2):
        raise DomainError(f"gamma must exceed 3/2, got {gamma}")
    return (gamma - 2) ** 2 * (4 * (gamma - 1) ** 2 - 1) / (4 * (2 * gamma - 3))


def regime_of(lam: float) -> str:
    return "fast" if lam > LAMBDA_CRITICAL else "slow"


def _slope(model: ModelSpec, A: float, floor: float) -> float:
    # central difference with both points inside the admissible region
    h = min(1e-4 * max(1.0, A), 1e-4 * (A - floor))
    return (spectrum_at(model, A + h, 1)[0] - spectrum_at(model, A - h, 1)[0]) / (2.0 * h)


def stationarity_check_D1(model: ModelSpec) -> StationarityReport:
    """dE₀/dA at the one-function optimum, and λ recovered from the optimal γ.

    The golden-section minimiser is polished to the root of the slope, since
    near the floor E₀(A) is too flat in value to pin A* any closer.
    """
    if model.alpha != 4.0 or model.B != 1.0:
        raise DomainError("the one-function stationarity check is for alpha=4, B=1")
    floor, _ = admissible_A_floor(model)
    r = minimize_over_A(model, 1, 0)
    A_star = float(r.optimal_A)
    d = A_star - floor
    if r.at_boundary or d <= 0:
        raise DomainError(f"E0(A) is minimised on the admissible boundary A={A_star:.6g}; no stationary point")
    try:
        A_star = optimize.brentq(lambda A: _slope(model, A, floor), floor + 0.5 * d, floor + 2.0 * d, xtol=1e-10 * d)
    except ValueError:
        logger.info("slope has no sign change around A*=%.12g; keeping the minimiser's value", A_star)
    derivative = abs(_slope(model, A_star, floor))
    g = gamma_of_A(model, A_star)
    lam_g = float(lambda_of_gamma(g))
    consistent = math.isclose(lam_g, model.lam, rel_tol=STATIONARITY_RTOL, abs_tol=1e-12)
    if not consistent:
        logger.warning("lambda(gamma(A*))=%.10g differs from lambda=%.10g", lam_g, model.lam)
    return StationarityReport(
        derivative=derivative, A_star=A_star, gamma_star=g, lambda_from_gamma=lam_g, consistent=consistent
    )


def convergence_report(model: ModelSpec, A: float, D: int) -> ConvergenceReport:
    if model.alpha != 4.0:
        raise DomainError("the convergence analysis is derived for alpha=4")
    ctx = make_context(model, A, D)
    closed = convergence_sum_alpha4(ctx, model.lam, math.inf) if ctx.gamma > 3 else None
    return ConvergenceReport(
        perturbation_E=perturbation_estimate(model, ctx, D),
        sum_partial=convergence_sum_alpha4(ctx, model.lam, D),
        sum_closed=closed,
        lambda_of_gamma=float(lambda_of_gamma(ctx.gamma)),
        regime=regime_of(model.lam),
    )
