"""Independent shooting values for the spiked oscillator levels.

The radial equation −ψ'' + V ψ = E ψ is integrated on s = ln x with
φ = x^{−1/2} ψ, which turns it into φ'' = [x²(V − E) + 1/4] φ and spreads
grid points evenly over the singular region near the origin.
"""
from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from numba import njit
from scipy import optimize

from .basis import admissible_A_floor, centrifugal_lambda
from .errors import BracketError, StiffnessError
from .models import ModelSpec, OracleConfig, OracleResult
from .solver import spectrum_at

logger = logging.getLogger(__name__)

DEFAULT_STEPS = 40000
DEFAULT_TOLERANCE = 1e-9
# max h²|Q| at the inner cutoff
STIFFNESS_LIMIT = 1.0
# e-folds of WKB decay between the inner cutoff and the turning point
INNER_DECAY = 40.0
RESCALE_AT = 1e150


def inverse_square_coefficient(model: ModelSpec, A_extra: float = 0.0) -> float:
    lam_c = centrifugal_lambda(model)
    c = A_extra + (lam_c * (lam_c + 1.0) if lam_c is not None else 0.0)
    if model.alpha == 2.0:
        c += model.lam
    return c


def effective_potential(model: ModelSpec, A_extra: float, x):
    x = np.asarray(x, dtype=float)
    lam_c = centrifugal_lambda(model)
    v = model.B * x * x + model.lam * x ** (-model.alpha) + A_extra / (x * x)
    if lam_c is not None:
        v = v + lam_c * (lam_c + 1.0) / (x * x)
    return v


def _energy_guess(model: ModelSpec, level: int) -> float:
    # variational upper bound with level+1 basis functions
    floor, closed = admissible_A_floor(model)
    A0 = max(model.lam ** (2.0 / model.alpha), floor if closed else floor + 1e-3 * max(1.0, floor))
    return spectrum_at(model, A0, level + 1)[level]


def _wkb_inner(model: ModelSpec) -> bool:
    return model.alpha > 2.0 and model.lam > 0


def default_config(model: ModelSpec, level: int = 0) -> OracleConfig:
    """Grid chosen from the small-x behaviour of ψ and the outer turning point."""
    e_guess = _energy_guess(model, level)
    x_max = math.sqrt((e_guess + 40.0) / model.B)
    if _wkb_inner(model):
        p = 1.0 - 0.5 * model.alpha  # negative
        x_t = (model.lam / e_guess) ** (1.0 / model.alpha)
        x_min = (x_t**p + INNER_DECAY * (model.alpha - 2.0) / (2.0 * math.sqrt(model.lam))) ** (1.0 / p)
    else:
        x_min = 1e-4 / math.sqrt(math.sqrt(model.B))
    return OracleConfig(x_min=x_min, x_max=x_max, steps=DEFAULT_STEPS, tolerance=DEFAULT_TOLERANCE)


# =========================
# Numerov kernel
# =========================
@njit(cache=True)
def _numerov_march(q, h2, phi0, phi1):
    """March φ'' = Qφ over q; returns (φ, sign changes). Values are rescaled to stay finite."""
    n = q.shape[0]
    phi = np.empty(n)
    phi[0] = phi0
    phi[1] = phi1
    w_prev = 1.0 - h2 * q[0] / 12.0
    w_cur = 1.0 - h2 * q[1] / 12.0
    nodes = 0
    for i in range(1, n - 1):
        w_next = 1.0 - h2 * q[i + 1] / 12.0
        phi[i + 1] = ((12.0 - 10.0 * w_cur) * phi[i] - w_prev * phi[i - 1]) / w_next
        if phi[i + 1] * phi[i] < 0.0 or (phi[i + 1] == 0.0 and phi[i] != 0.0):
            nodes += 1
        if abs(phi[i + 1]) > 1e150:
            for j in range(i + 2):
                phi[j] *= 1e-150
        w_prev = w_cur
        w_cur = w_next
    return phi, nodes


class _Shooter:
    def __init__(self, model: ModelSpec, config: OracleConfig, A_extra: float):
        self.model, self.config = model, config
        self.s, self.h = np.linspace(math.log(config.x_min), math.log(config.x_max), config.steps + 1, retstep=True)
        self.x = np.exp(self.s)
        self.h2 = self.h * self.h
        self.x2v = self.x * self.x * effective_potential(model, A_extra, self.x)
        self.x2 = self.x * self.x
        self.c2 = inverse_square_coefficient(model, A_extra)

    def q(self, E: float) -> np.ndarray:
        q = self.x2v - E * self.x2 + 0.25
        if self.h2 * abs(q[0]) > STIFFNESS_LIMIT:
            raise StiffnessError(
                f"h^2 Q = {self.h2 * abs(q[0]):.3g} at x_min={self.config.x_min:.3g}; raise steps or x_min"
            )
        return q

    def _start_ratio(self, E: float) -> float:
        x0, x1 = self.x[0], self.x[1]
        if _wkb_inner(self.model):
            a = self.model.alpha
            k = 2.0 * math.sqrt(self.model.lam) / (a - 2.0)
            p = 1.0 - 0.5 * a
            return math.exp((a / 4.0 - 0.5) * self.h - k * (x1**p - x0**p))
        p = 0.5 + math.sqrt(0.25 + self.c2)
        return math.exp((p - 0.5) * self.h)

    def outward(self, E: float, stop: Optional[int] = None) -> tuple[np.ndarray, int]:
        q = self.q(E) if stop is None else self.q(E)[: stop + 1]
        phi, nodes = _numerov_march(q, self.h2, 1.0, self._start_ratio(E))
        if not np.all(np.isfinite(phi)):
            raise StiffnessError(f"non-finite outward solution at E={E}")
        return phi, nodes

    def inward(self, E: float, stop: int) -> np.ndarray:
        """Solution decaying from x_max, returned on indices stop..end."""
        q = np.ascontiguousarray(self.q(E)[stop:][::-1])
        phi, _ = _numerov_march(q, self.h2, 0.0, 1e-20)
        if not np.all(np.isfinite(phi)):
            raise StiffnessError(f"non-finite inward solution at E={E}")
        return phi[::-1]

    def nodes(self, E: float) -> int:
        return self.outward(E)[1]

    def match_index(self, E: float) -> int:
        allowed = np.nonzero(self.x2v < E * self.x2)[0]
        i = int(allowed[-1]) if allowed.size else len(self.x) // 2
        return min(max(i, 2), len(self.x) - 3)

    def mismatch(self, E: float, i: int) -> float:
        """Log-derivative difference of the outward and inward solutions at grid index i."""
        po, _ = self.outward(E, stop=i + 1)
        pi = self.inward(E, stop=i - 1)
        do = (po[i + 1] - po[i - 1]) / (2.0 * self.h * po[i])
        di = (pi[2] - pi[0]) / (2.0 * self.h * pi[1])
        return do - di

    def interior_nodes(self, E: float) -> int:
        return self.outward(E, stop=self.match_index(E))[1]


def _initial_bracket(sh: _Shooter, level: int, e_hint: float) -> tuple[float, float]:
    lo, hi = 0.0, max(e_hint, 1.0)
    for _ in range(60):
        if sh.nodes(hi) > level:
            return lo, hi
        lo, hi = hi, 2.0 * hi
    raise BracketError(f"could not bracket level {level} by node counting")


def _bisect_nodes(sh: _Shooter, level: int, lo: float, hi: float, width: float) -> tuple[float, float]:
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if sh.nodes(mid) > level:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _solve(sh: _Shooter, level: int, bracket: tuple[float, float], tol: float) -> float:
    lo, hi = bracket
    if not (sh.nodes(lo) <= level < sh.nodes(hi)):
        raise BracketError(f"energy bracket {bracket} does not contain level {level}")
    # Sturm bisection until the bracket holds this level alone
    lo, hi = _bisect_nodes(sh, level, lo, hi, 1e-4 * max(1.0, abs(hi)))
    i = sh.match_index(0.5 * (lo + hi))
    try:
        return float(optimize.brentq(sh.mismatch, lo, hi, args=(i,), xtol=tol, rtol=4 * np.finfo(float).eps))
    except ValueError:
        logger.debug("no mismatch sign change on [%g, %g]; finishing by bisection", lo, hi)
    lo, hi = _bisect_nodes(sh, level, lo, hi, tol)
    return 0.5 * (lo + hi)


def shoot_eigenvalue(
    model: ModelSpec,
    level: int = 0,
    config: Optional[OracleConfig] = None,
    A_extra: float = 0.0,
) -> OracleResult:
    """Level `level` by Numerov shooting, with a Richardson value from a halved step."""
    if level < 0:
        raise BracketError("level must be non-negative")
    config = config or default_config(model, level)
    sh = _Shooter(model, config, A_extra)
    bracket = config.energy_bracket or _initial_bracket(sh, level, _energy_guess(model, level))
    e_coarse = _solve(sh, level, bracket, config.tolerance)
    fine = _Shooter(model, config.with_steps(2 * config.steps), A_extra)
    width = max(1e-6, 1e-6 * abs(e_coarse))
    try:
        e_fine = _solve(fine, level, (e_coarse - width, e_coarse + width), config.tolerance)
    except BracketError:
        e_fine = _solve(fine, level, bracket, config.tolerance)
    richardson = e_fine + (e_fine - e_coarse) / 15.0
    logger.info("oracle level %d: E=%.12g (Richardson %.12g, %d steps)", level, e_coarse, richardson, config.steps)
    return OracleResult(
        energy=e_coarse,
        node_count=sh.interior_nodes(e_coarse),
        config_used=config,
        richardson_estimate=richardson,
    )
