"""Rayleigh–Ritz eigenvalues in the GK basis and their minimisation over A."""
from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from scipy import linalg, optimize

from .basis import admissible_A_floor, make_context
from .errors import AsymmetryError, BracketError, ConvergenceError, DomainError
from .matrix import SYMMETRY_RTOL, build_hamiltonian
from .models import HamiltonianMatrix, ModelSpec, SpectrumResult

logger = logging.getLogger(__name__)

D_SCHEDULE = (1, 2, 3, 5, 7, 10, 15, 20, 30, 40, 60, 80, 100, 120, 150, 200)
MAX_DIGITS = 12
MAX_EXPANSIONS = 60
GOLDEN_XTOL = 1e-8
# A scan: u = A − A_lo from 1e-4 up to 1e2 x max(1, A0), doubling
SCAN_SPAN = (1e-4, 1e2)
SCAN_RATIO = 2.0
SCAN_CANDIDATES = 2
# eps·‖H‖₂ may not exceed this fraction of max(1, |E|)
ROUNDING_RTOL = 1e-9


def eigen_symmetric(H: HamiltonianMatrix) -> tuple[float, ...]:
    """Ascending eigenvalues of a real symmetric matrix (LAPACK syevr through scipy)."""
    a = np.asarray(H.entries, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ConvergenceError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    mismatch = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if mismatch > SYMMETRY_RTOL * scale:
        raise AsymmetryError(f"matrix is not symmetric: |H - H^T| = {mismatch:.3e}")
    try:
        w, v = linalg.eigh(a, check_finite=False)
    except linalg.LinAlgError as exc:
        raise ConvergenceError(f"symmetric eigensolver failed: {exc}") from exc
    residual = float(np.max(np.abs(a @ v - v * w))) if a.size else 0.0
    if residual > 1e3 * H.dim * np.finfo(float).eps * scale:
        raise ConvergenceError(f"eigen-decomposition backward error {residual:.3e} too large")
    return tuple(float(x) for x in w)


def spectrum_at(model: ModelSpec, A: float, D: int) -> tuple[float, ...]:
    return eigen_symmetric(build_hamiltonian(model, make_context(model, A, D)))


def rounding_error(eigenvalues: tuple[float, ...]) -> float:
    """eps·‖H‖₂, the size of the rounding error in any computed eigenvalue."""
    return np.finfo(float).eps * max(abs(eigenvalues[0]), abs(eigenvalues[-1]))


def is_well_conditioned(eigenvalues: tuple[float, ...], level: int = 0) -> bool:
    return rounding_error(eigenvalues) <= ROUNDING_RTOL * max(1.0, abs(eigenvalues[level]))


def _lowest_admissible_A(model: ModelSpec) -> tuple[float, bool]:
    floor, closed = admissible_A_floor(model)
    if closed:
        return floor, True
    # open end point: the x^-α elements blow up as 2γ -> α
    return floor + 1e-6 * max(1.0, floor), False


class _LevelEnergy:
    """E_level(A) at fixed D, counting evaluations.

    A where the matrix is too badly conditioned for E to be trusted maps to +inf.
    """

    def __init__(self, model: ModelSpec, D: int, level: int):
        self.model, self.D, self.level = model, D, level
        self.evaluations = 0
        self.rejected = 0

    def __call__(self, A: float) -> float:
        self.evaluations += 1
        eig = spectrum_at(self.model, A, self.D)
        e = eig[self.level]
        if not is_well_conditioned(eig, self.level):
            self.rejected += 1
            logger.debug("A=%.12g rejected at D=%d: rounding %.3e", A, self.D, rounding_error(eig))
            return math.inf
        logger.debug("E_%d(A=%.12g, D=%d) = %.15g", self.level, A, self.D, e)
        return e


def _bracket(f: _LevelEnergy, A_lo: float, A0: float) -> tuple[Optional[tuple[float, float, float]], float]:
    """Geometric expansion in u = A − A_lo until f(b) < f(a), f(c).

    Returns (bracket, A) where bracket is None when the minimum sits on A_lo.
    """
    scale = max(1.0, A0)
    b = max(A0 - A_lo, 1e-3 * scale)
    fb = f(A_lo + b)
    a, c = 0.5 * b, 2.0 * b
    fa, fc = f(A_lo + a), f(A_lo + c)
    for _ in range(MAX_EXPANSIONS):
        if fb < fa and fb < fc:
            return (A_lo + a, A_lo + b, A_lo + c), A_lo + b
        if fa <= fb:
            # downhill towards the floor
            c, fc, b, fb = b, fb, a, fa
            a = 0.5 * a
            if a < 1e-12 * scale:
                f0 = f(A_lo)
                if f0 <= fb:
                    return None, A_lo
                return (A_lo, A_lo + b, A_lo + c), A_lo + b
            fa = f(A_lo + a)
        else:
            a, fa, b, fb = b, fb, c, fc
            c = 2.0 * c
            fc = f(A_lo + c)
    raise BracketError(f"no minimum of E_{f.level}(A) bracketed after {MAX_EXPANSIONS} expansions")


def _scan_grid(A_lo: float, closed: bool, A0: float, A_guess: Optional[float]) -> list[float]:
    lo, hi = SCAN_SPAN[0], SCAN_SPAN[1] * max(1.0, A0)
    count = int(math.ceil(math.log(hi / lo) / math.log(SCAN_RATIO))) + 1
    grid = set((A_lo + np.geomspace(lo, hi, count)).tolist())
    if closed:
        grid.add(A_lo)
    if A_guess is not None and A_guess > A_lo:
        grid.add(float(A_guess))
    return sorted(grid)


def _local_minima(values: list[float]) -> list[int]:
    """Indices of the lowest SCAN_CANDIDATES finite local minima of a sampled curve."""
    found = []
    last = len(values) - 1
    for i, v in enumerate(values):
        if not math.isfinite(v):
            continue
        left = values[i - 1] if i > 0 else math.inf
        right = values[i + 1] if i < last else math.inf
        if v <= left and v < right:
            found.append(i)
    found.sort(key=lambda i: values[i])
    return found[:SCAN_CANDIDATES]


def _refine(f: _LevelEnergy, grid: list[float], values: list[float], i: int, A_lo: float) -> tuple[float, float, bool]:
    """Golden-section search around grid[i]; returns (A*, E*, on the floor)."""
    if 0 < i < len(grid) - 1:
        bracket = (grid[i - 1], grid[i], grid[i + 1])
    else:
        bracket, A_edge = _bracket(f, A_lo, grid[i])
        if bracket is None:
            return A_edge, f(A_edge), True
    try:
        res = optimize.minimize_scalar(f, bracket=bracket, method="golden", options={"xtol": GOLDEN_XTOL})
        A_star, e = float(res.x), float(res.fun)
    except ValueError:
        # plateau: the bracket test failed on exact ties
        A_star, e = bracket[1], f(bracket[1])
    if not math.isfinite(e) or e > values[i]:
        A_star, e = grid[i], values[i]
    return A_star, e, False


def minimize_over_A(model: ModelSpec, D: int, level: int = 0, A_guess: Optional[float] = None) -> SpectrumResult:
    """Global minimum of E_level(A) over the admissible A at fixed D.

    A geometric scan in u = A − A_lo locates the basins; the lowest few are
    refined by golden-section search. A where eps·‖H‖₂ swamps the energy is
    never accepted.
    """
    if level >= D:
        raise DomainError(f"level {level} needs at least {level + 1} basis functions, D={D}")
    A_lo, closed = _lowest_admissible_A(model)
    A0 = max(A_lo, model.lam ** (2.0 / model.alpha))
    f = _LevelEnergy(model, D, level)
    grid = _scan_grid(A_lo, closed, A0, A_guess)
    values = [f(A) for A in grid]
    candidates = _local_minima(values)
    if not candidates:
        raise BracketError(f"E_{level}(A) has no well-conditioned point at D={D}")
    best: Optional[tuple[float, float, bool]] = None
    for i in candidates:
        try:
            trial = _refine(f, grid, values, i, A_lo)
        except BracketError as exc:
            logger.debug("candidate A=%.6g dropped: %s", grid[i], exc)
            continue
        if best is None or trial[1] < best[1]:
            best = trial
    if best is None:
        raise BracketError(f"no minimum of E_{level}(A) could be bracketed at D={D}")
    A_star, _, at_boundary = best
    if at_boundary:
        logger.warning("E_%d minimised on the admissible boundary A=%.6g (D=%d)", level, A_star, D)
    if f.rejected:
        logger.info("%d trial A values rejected as ill-conditioned at D=%d", f.rejected, D)
    eig = spectrum_at(model, A_star, D)
    f.evaluations += 1
    logger.info("D=%d level=%d A*=%.10g E=%.12g (%d evaluations)", D, level, A_star, eig[level], f.evaluations)
    return SpectrumResult(
        eigenvalues=eig,
        optimal_A=A_star,
        D_used=D,
        evaluations=f.evaluations,
        level_A=(A_star,),
        at_boundary=at_boundary,
    )


def solve_spectrum(
    model: ModelSpec,
    D: int,
    optimize_A: bool,
    fixed_A: Optional[float] = None,
    levels: int = 1,
) -> SpectrumResult:
    """Eigenvalues at fixed A, or minimised over A.

    With levels > 1 and optimize_A every level k < levels gets its own
    minimiser; the result then holds one eigenvalue per level.
    """
    if levels < 1 or levels > D:
        raise DomainError(f"levels must be in [1, D={D}], got {levels}")
    if not optimize_A:
        A = 0.0 if fixed_A is None else float(fixed_A)
        eig = spectrum_at(model, A, D)
        return SpectrumResult(eigenvalues=eig, optimal_A=None, D_used=D, evaluations=1, level_A=(A,))
    if levels == 1:
        return minimize_over_A(model, D, 0, A_guess=fixed_A)
    energies: list[float] = []
    level_A: list[float] = []
    evaluations, at_boundary = 0, False
    guess = fixed_A
    for k in range(levels):
        r = minimize_over_A(model, D, k, A_guess=guess)
        energies.append(r.eigenvalues[k])
        level_A.append(float(r.optimal_A))
        evaluations += r.evaluations
        at_boundary = at_boundary or r.at_boundary
        guess = r.optimal_A
    return SpectrumResult(
        eigenvalues=tuple(energies),
        optimal_A=level_A[0],
        D_used=D,
        evaluations=evaluations,
        level_A=tuple(level_A),
        at_boundary=at_boundary,
    )


def _stable_digits(delta: float) -> int:
    if delta == 0:
        return MAX_DIGITS
    return max(0, min(MAX_DIGITS, math.floor(-math.log10(2.0 * abs(delta)))))


def converge_to_digits(model: ModelSpec, digits: int, level: int = 0, D_max: int = 100) -> SpectrumResult:
    """Grow D along D_SCHEDULE until E_level moves by less than ½·10^−digits."""
    if not 1 <= digits <= MAX_DIGITS:
        raise DomainError(f"digits must be in [1, {MAX_DIGITS}], got {digits}")
    schedule = [D for D in D_SCHEDULE if level < D <= D_max]
    if not schedule:
        raise DomainError(f"no basis size in the schedule fits level {level} and D_max {D_max}")
    tol = 0.5 * 10.0 ** (-digits)
    prev: Optional[float] = None
    result: Optional[SpectrumResult] = None
    evaluations = 0
    achieved = 0
    for D in schedule:
        result = minimize_over_A(model, D, level, A_guess=None if result is None else result.optimal_A)
        evaluations += result.evaluations
        e = result.eigenvalues[level]
        if prev is not None:
            achieved = _stable_digits(e - prev)
            if abs(e - prev) < tol:
                logger.info("E_%d converged to %d digits at D=%d", level, digits, D)
                return _with_convergence(result, (digits,), evaluations, True)
        prev = e
    logger.warning("E_%d not converged to %d digits by D=%d", level, digits, schedule[-1])
    return _with_convergence(result, (achieved,), evaluations, False)


def _with_convergence(r: SpectrumResult, digits: tuple[int, ...], evaluations: int, converged: bool) -> SpectrumResult:
    return SpectrumResult(
        eigenvalues=r.eigenvalues,
        optimal_A=r.optimal_A,
        D_used=r.D_used,
        converged_digits=digits,
        evaluations=evaluations,
        level_A=r.level_A,
        at_boundary=r.at_boundary,
        converged=converged,
    )
