"""Gol'dman–Krivchenkov basis: eigenfunctions of −d²/dx² + Bx² + A/x²."""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from .errors import DomainError
from .models import BasisContext, ModelSpec
from .specfun import LogScaledValue, hyp1f1_terminating, log_factorial, log_gamma, pochhammer


def centrifugal_lambda(model: ModelSpec) -> float | None:
    """Λ = l + (N−3)/2 for the radial problem; None on the half-line (N = 1)."""
    if not model.is_radial:
        return None
    return model.l + 0.5 * (model.N - 3)


def _gamma_offset(model: ModelSpec) -> float:
    # γ = 1 + √(A + c²) with c = 1/2 on the half-line and c = Λ + 1/2 for N ≥ 2
    lam_c = centrifugal_lambda(model)
    return 0.5 if lam_c is None else lam_c + 0.5


def gamma_of_A(model: ModelSpec, A: float) -> float:
    if A < 0:
        raise DomainError(f"A must be non-negative, got {A}")
    if not model.is_radial:
        return 1.0 + 0.5 * math.sqrt(1.0 + 4.0 * A)
    c = _gamma_offset(model)
    return 1.0 + math.sqrt(A + c * c)


def make_context(model: ModelSpec, A: float, D: int) -> BasisContext:
    return BasisContext(A=float(A), beta=math.sqrt(model.B), gamma=gamma_of_A(model, A), D=int(D))


def admissible_A_floor(model: ModelSpec) -> tuple[float, bool]:
    """Smallest A with 2γ(A) > α, and whether that end point itself is allowed."""
    if 2.0 * gamma_of_A(model, 0.0) > model.alpha:
        return 0.0, True
    c = _gamma_offset(model)
    return max(0.0, (0.5 * model.alpha - 1.0) ** 2 - c * c), False


def gk_energy(ctx: BasisContext, n: int) -> float:
    return 2.0 * ctx.beta * (2 * n + ctx.gamma)


def gk_convert_legacy(V0: float, a: float) -> tuple[float, float]:
    """(V0, a) of V0 (a/x − x/a)² to (A, B) of Bx² + A/x²."""
    if not (V0 > 0 and a > 0):
        raise DomainError("V0 and a must be positive")
    return V0 * a * a, V0 / (a * a)


def gk_energy_legacy(V0: float, a: float, n: int) -> float:
    """Level n of −d²/dx² + V0 (a/x − x/a)²; lies 2·V0 below the (A, B) form."""
    return 4.0 / a * math.sqrt(V0) * (n + 0.5 + 0.25 * (math.sqrt(1 + 4 * V0 * a * a) - 2 * a * math.sqrt(V0)))


def norm_constant(ctx: BasisContext, n: int) -> LogScaledValue:
    """C_n with C_n^{-2} = ½ n! Γ(γ) / (β^γ (γ)_n); the (−1)^n sign is not included."""
    if ctx.gamma <= 0:
        raise DomainError(f"normalisation needs gamma > 0, got {ctx.gamma}")
    num = LogScaledValue(math.log(2.0) + ctx.gamma * math.log(ctx.beta), 1) * pochhammer(ctx.gamma, n)
    den = LogScaledValue(log_factorial(n), 1) * log_gamma(ctx.gamma)
    return (num / den).sqrt()


def _laguerre_weight_log(ctx: BasisContext, n: int) -> float:
    # log sqrt(n!/Γ(γ+n)); C_n n!/(γ)_n = sqrt(2 β^γ) times this
    return 0.5 * (log_factorial(n) - float(special.gammaln(ctx.gamma + n)))


def eval_wavefunction(ctx: BasisContext, n: int, x: float) -> float:
    """ψ_n(x) = (−1)^n C_n x^{γ−1/2} e^{−βx²/2} 1F1(−n; γ; βx²)."""
    if not x > 0:
        raise DomainError(f"wavefunction is evaluated on (0, inf), got x={x}")
    t = ctx.beta * x * x
    lag = float(special.eval_genlaguerre(n, ctx.gamma - 1.0, t))
    if lag == 0.0:
        return 0.0
    log_mag = (
        0.5 * (math.log(2.0) + ctx.gamma * math.log(ctx.beta))
        + _laguerre_weight_log(ctx, n)
        + (ctx.gamma - 0.5) * math.log(x)
        - 0.5 * t
        + math.log(abs(lag))
    )
    sign = (-1) ** n * (1 if lag > 0 else -1)
    return sign * math.exp(log_mag)


# =========================
# Quadrature checks
# =========================
def _t_upper(ctx: BasisContext, m: int, n: int) -> float:
    # e^{-t} t^{γ+m+n} is below 1e-18 of its peak well before this point
    return 2.0 * (ctx.gamma + m + n) + 60.0


def overlap_integral(ctx: BasisContext, m: int, n: int, alpha: float = 0.0) -> float:
    """∫ ψ_m ψ_n x^{−α} dx by Gauss–Kronrod quadrature in t = βx².

    The substitution leaves the weight t^{γ−α/2−1} e^{−t}; the algebraic
    factor is handed to QUADPACK as an end-point weight.
    """
    if not 2.0 * ctx.gamma > alpha:
        raise DomainError(f"integral diverges at the origin: 2*gamma={2 * ctx.gamma} <= alpha={alpha}")
    g = ctx.gamma
    wm, wn = _laguerre_weight_log(ctx, m), _laguerre_weight_log(ctx, n)

    def integrand(t: float) -> float:
        lm = special.eval_genlaguerre(m, g - 1.0, t)
        ln = special.eval_genlaguerre(n, g - 1.0, t)
        return math.exp(wm + wn - t) * lm * ln

    val, _ = integrate.quad(
        integrand,
        0.0,
        _t_upper(ctx, m, n),
        weight="alg",
        wvar=(g - 0.5 * alpha - 1.0, 0.0),
        epsabs=1e-14,
        epsrel=1e-12,
        limit=400,
    )
    return (-1) ** (m + n) * ctx.beta ** (0.5 * alpha) * val


def gram_matrix(ctx: BasisContext, D: int | None = None) -> np.ndarray:
    D = ctx.D if D is None else D
    G = np.empty((D, D))
    for m in range(D):
        for n in range(m, D):
            G[m, n] = G[n, m] = overlap_integral(ctx, m, n)
    return G


def lemma_integral(ctx: BasisContext, m: int, n: int) -> float:
    """∫ x^{2γ−1} e^{−βx²} 1F1(−n;γ;βx²) 1F1(−m;γ;βx²) dx by quadrature."""
    g = ctx.gamma

    def integrand(t: float) -> float:
        return math.exp(-t) * hyp1f1_terminating(n, g, t) * hyp1f1_terminating(m, g, t)

    val, _ = integrate.quad(
        integrand, 0.0, _t_upper(ctx, m, n), weight="alg", wvar=(g - 1.0, 0.0),
        epsabs=1e-14, epsrel=1e-12, limit=400,
    )
    return 0.5 * ctx.beta ** (-g) * val


def lemma_integral_closed(ctx: BasisContext, n: int) -> float:
    """Diagonal value ½ n! Γ(γ) / (β^γ (γ)_n) of `lemma_integral`."""
    num = LogScaledValue(log_factorial(n), 1) * log_gamma(ctx.gamma)
    den = LogScaledValue(math.log(2.0) + ctx.gamma * math.log(ctx.beta), 1) * pochhammer(ctx.gamma, n)
    return (num / den).value
