"""Closed-form matrix elements <ψ_m|x^{−α}|ψ_n> and Hamiltonian assembly."""
from __future__ import annotations

import json
import logging
import math

import numpy as np

from .basis import gk_energy
from .errors import AsymmetryError, DomainError
from .models import BasisContext, HamiltonianMatrix, ModelSpec
from .specfun import LogScaledValue, hyp3f2_unit_terminating, log_factorial, log_gamma, pochhammer

logger = logging.getLogger(__name__)

SYMMETRY_RTOL = 1e-10


def _check_validity(ctx: BasisContext, alpha: float) -> None:
    if not 2.0 * ctx.gamma > alpha:
        raise DomainError(
            f"x^-{alpha} matrix elements need 2*gamma > alpha (gamma={ctx.gamma:.6g}, A={ctx.A:.6g})"
        )


def _ladder_ratio(ctx: BasisContext, lo: int, hi: int) -> LogScaledValue:
    # sqrt(hi! (γ)_lo / (lo! (γ)_hi))
    num = LogScaledValue(log_factorial(hi), 1) * pochhammer(ctx.gamma, lo)
    den = LogScaledValue(log_factorial(lo), 1) * pochhammer(ctx.gamma, hi)
    return (num / den).sqrt()


def _parity(m: int, n: int) -> int:
    return -1 if (m + n) % 2 else 1


def matelem_x_pow(ctx: BasisContext, alpha: float, m: int, n: int) -> float:
    """General-α element; the 3F2 takes −min(m,n) so its series has no cancellation."""
    _check_validity(ctx, alpha)
    lo, hi = min(m, n), max(m, n)
    a, g = 0.5 * alpha, ctx.gamma
    pref = (
        LogScaledValue(a * math.log(ctx.beta), 1)
        * log_gamma(g - a)
        / log_gamma(g)
        * pochhammer(a, hi)
        / pochhammer(g, hi)
        * (pochhammer(g, hi) * pochhammer(g, lo) / LogScaledValue(log_factorial(hi) + log_factorial(lo), 1)).sqrt()
    )
    f = hyp3f2_unit_terminating(lo, g - a, 1.0 - a, g, 1.0 - a - hi)
    return _parity(m, n) * pref.value * f


def matelem_alpha2(ctx: BasisContext, m: int, n: int) -> float:
    if not ctx.gamma > 1:
        raise DomainError(f"x^-2 elements need gamma > 1, got {ctx.gamma}")
    lo, hi = min(m, n), max(m, n)
    return _parity(m, n) * ctx.beta / (ctx.gamma - 1.0) * _ladder_ratio(ctx, lo, hi).value


def matelem_alpha4(ctx: BasisContext, m: int, n: int) -> float:
    if not ctx.gamma > 2:
        raise DomainError(f"x^-4 elements need gamma > 2, got {ctx.gamma}")
    g = ctx.gamma
    lo, hi = min(m, n), max(m, n)
    pref = LogScaledValue(2 * math.log(ctx.beta), 1) * log_gamma(g - 2) / log_gamma(g + 1) * _ladder_ratio(ctx, lo, hi)
    bracket = g * (hi - lo + 1) + 2 * lo
    return _parity(m, n) * pref.value * bracket


def matelem_alpha6(ctx: BasisContext, m: int, n: int) -> float:
    if not ctx.gamma > 3:
        raise DomainError(f"x^-6 elements need gamma > 3, got {ctx.gamma}")
    g = ctx.gamma
    lo, hi = min(m, n), max(m, n)
    pref = LogScaledValue(3 * math.log(ctx.beta) - math.log(2.0), 1) * log_gamma(g - 3) / log_gamma(g + 2)
    pref = pref * _ladder_ratio(ctx, lo, hi)
    bracket = (
        (2 + hi) * (1 + hi) * g * (g + 1)
        - 2 * lo * (1 + hi) * (g - 3) * (g + 1)
        - lo * (1 - lo) * (g - 2) * (g - 3)
    )
    return _parity(m, n) * pref.value * bracket


_CLOSED_FORMS = {2.0: matelem_alpha2, 4.0: matelem_alpha4, 6.0: matelem_alpha6}


def matelem(ctx: BasisContext, alpha: float, m: int, n: int) -> float:
    closed = _CLOSED_FORMS.get(float(alpha))
    if closed is not None:
        return closed(ctx, m, n)
    return matelem_x_pow(ctx, alpha, m, n)


def interaction_element(model: ModelSpec, ctx: BasisContext, m: int, n: int) -> float:
    """<m| λx^{−α} − A x^{−2} |n>."""
    if model.alpha == 2.0:
        # λ and A multiply the same operator; fold them before evaluating
        c = model.lam - ctx.A
        return c * matelem_alpha2(ctx, m, n) if c != 0 else 0.0
    v = model.lam * matelem(ctx, model.alpha, m, n) if model.lam != 0 else 0.0
    if ctx.A != 0:
        v -= ctx.A * matelem_alpha2(ctx, m, n)
    return v


def _interaction_general(model: ModelSpec, ctx: BasisContext, m: int, n: int) -> float:
    # same element through the 3F2 series only
    if model.alpha == 2.0:
        return (model.lam - ctx.A) * matelem_x_pow(ctx, 2.0, m, n)
    v = model.lam * matelem_x_pow(ctx, model.alpha, m, n) if model.lam != 0 else 0.0
    if ctx.A != 0:
        v -= ctx.A * matelem_x_pow(ctx, 2.0, m, n)
    return v


def build_hamiltonian(model: ModelSpec, ctx: BasisContext, cross_check: bool = False) -> HamiltonianMatrix:
    """H_mn = 2β(2n+γ)δ_mn + λ<m|x^{−α}|n> − A<m|x^{−2}|n> on the first D basis functions.

    The upper triangle is evaluated once and mirrored. With cross_check, and
    α one of the closed-form cases 2, 4, 6, the lower triangle is evaluated
    again through the general 3F2 series; a mismatch beyond SYMMETRY_RTOL
    raises AsymmetryError, otherwise the two are averaged.
    """
    _check_validity(ctx, model.alpha)
    D = ctx.D
    independent = cross_check and float(model.alpha) in _CLOSED_FORMS
    H = np.zeros((D, D))
    for m in range(D):
        H[m, m] = gk_energy(ctx, m) + interaction_element(model, ctx, m, m)
        for n in range(m + 1, D):
            H[m, n] = interaction_element(model, ctx, m, n)
            H[n, m] = _interaction_general(model, ctx, n, m) if independent else H[m, n]
    if not np.all(np.isfinite(H)):
        raise DomainError(f"non-finite Hamiltonian entries at A={ctx.A}, D={D}")
    if independent:
        scale = max(1.0, float(np.max(np.abs(H))))
        mismatch = float(np.max(np.abs(H - H.T)))
        if mismatch > SYMMETRY_RTOL * scale:
            raise AsymmetryError(
                f"closed form and series disagree by {mismatch:.3e} (limit {SYMMETRY_RTOL:.0e} x {scale:.3e})"
            )
        H = 0.5 * (H + H.T)
    logger.debug("built %dx%d Hamiltonian at A=%.10g", D, D, ctx.A)
    return HamiltonianMatrix(dim=D, entries=H, ctx=ctx, model=model)


def secular_pair(H: HamiltonianMatrix) -> tuple[float, float]:
    """Both eigenvalues of a 2×2 Hamiltonian from the secular equation."""
    if H.dim != 2:
        raise DomainError("secular_pair needs a 2x2 matrix")
    (h00, h01), (_, h11) = H.entries
    root = math.hypot(h00 - h11, 2.0 * h01)
    return 0.5 * (h00 + h11 - root), 0.5 * (h00 + h11 + root)


def matrix_to_text(H: HamiltonianMatrix) -> str:
    return "\n".join(" ".join(f"{v:.16e}" for v in row) for row in H.entries) + "\n"


def matrix_to_json(H: HamiltonianMatrix) -> str:
    return json.dumps(H.to_dict(), ensure_ascii=False, indent=2)
