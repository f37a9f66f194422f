"""Pochhammer symbols and hypergeometric series at unit or polynomial argument.

Everything here is a pure function of its arguments. Gamma ratios are carried
as `LogScaledValue` so that (γ)_n and n! at n ≈ 100 never overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
from scipy import special

from .errors import DivergenceError, DomainError


@dataclass(frozen=True)
class LogScaledValue:
    log_magnitude: float
    sign: int  # -1, 0, +1; 0 is exact zero and log_magnitude is ignored

    @classmethod
    def zero(cls) -> "LogScaledValue":
        return cls(0.0, 0)

    @classmethod
    def one(cls) -> "LogScaledValue":
        return cls(0.0, 1)

    @classmethod
    def from_float(cls, x: float) -> "LogScaledValue":
        if x == 0:
            return cls.zero()
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __mul__(self, other: "LogScaledValue") -> "LogScaledValue":
        if self.sign == 0 or other.sign == 0:
            return LogScaledValue.zero()
        return LogScaledValue(self.log_magnitude + other.log_magnitude, self.sign * other.sign)

    def __truediv__(self, other: "LogScaledValue") -> "LogScaledValue":
        if other.sign == 0:
            raise DomainError("division by an exact zero")
        if self.sign == 0:
            return LogScaledValue.zero()
        return LogScaledValue(self.log_magnitude - other.log_magnitude, self.sign * other.sign)

    def sqrt(self) -> "LogScaledValue":
        if self.sign < 0:
            raise DomainError("square root of a negative value")
        if self.sign == 0:
            return LogScaledValue.zero()
        return LogScaledValue(0.5 * self.log_magnitude, 1)

    def pow(self, p: float) -> "LogScaledValue":
        if self.sign < 0:
            raise DomainError("real power of a negative value")
        if self.sign == 0:
            return LogScaledValue.zero()
        return LogScaledValue(p * self.log_magnitude, 1)


def _is_nonpositive_integer(a: float) -> bool:
    return a <= 0 and float(a).is_integer()


def log_gamma(a: float) -> LogScaledValue:
    if _is_nonpositive_integer(a):
        raise DomainError(f"Gamma has a pole at {a}")
    return LogScaledValue(float(special.gammaln(a)), int(special.gammasgn(a)))


def log_factorial(n: int) -> float:
    return float(special.gammaln(n + 1))


def pochhammer(a: float, k: int) -> LogScaledValue:
    """Rising factorial (a)_k = a(a+1)...(a+k-1)."""
    if k < 0 or int(k) != k:
        raise DomainError(f"Pochhammer order must be a non-negative integer, got {k}")
    if k == 0:
        return LogScaledValue.one()
    if _is_nonpositive_integer(a):
        j = int(-a)
        if k > j:
            return LogScaledValue.zero()
        # (-j)_k = (-1)^k j!/(j-k)!
        return LogScaledValue(log_factorial(j) - log_factorial(j - k), -1 if k % 2 else 1)
    return LogScaledValue(
        float(special.gammaln(a + k) - special.gammaln(a)),
        int(special.gammasgn(a + k) * special.gammasgn(a)),
    )


def hyp1f1_terminating(n: int, b: float, z: float) -> float:
    """1F1(-n; b; z) as the degree-n polynomial sum (-n)_k z^k / ((b)_k k!)."""
    term = 1.0
    terms = [term]
    for k in range(n):
        if b + k == 0:
            raise DomainError(f"(b)_k vanishes at k={k + 1} for b={b} before the series terminates")
        term *= (k - n) * z / ((b + k) * (k + 1))
        terms.append(term)
    return math.fsum(terms)


def hyp2f1_unit(m: int, b: float, c: float) -> float:
    """2F1(-m, b; c; 1) by Chu–Vandermonde: (c-b)_m / (c)_m."""
    den = pochhammer(c, m)
    if den.sign == 0:
        raise DomainError(f"(c)_m vanishes for c={c}, m={m}")
    return (pochhammer(c - b, m) / den).value


def hyp3f2_unit_terminating(m: int, a2: float, a3: float, b1: float, b2: float) -> float:
    """3F2(-m, a2, a3; b1, b2; 1), stopped at the first exactly-zero numerator."""
    term = 1.0
    terms = [term]
    for k in range(m):
        num = (k - m) * (a2 + k) * (a3 + k)
        if num == 0:
            break
        den = (b1 + k) * (b2 + k) * (k + 1)
        if den == 0:
            raise DomainError(f"denominator vanishes at k={k + 1} with a nonzero numerator")
        term *= num / den
        terms.append(term)
    return math.fsum(terms)


def _pfq_terms(numerators: Sequence[float], denominators: Sequence[float], terms: int):
    term = 1.0
    yield term
    for k in range(terms - 1):
        num = math.prod(a + k for a in numerators)
        if num == 0:
            return
        den = math.prod(b + k for b in denominators) * (k + 1)
        if den == 0:
            raise DomainError(f"denominator vanishes at k={k + 1}")
        term *= num / den
        yield term


def hyp_pfq_partial(numerators: Sequence[float], denominators: Sequence[float], terms: int) -> float:
    """First `terms` terms of pFq(numerators; denominators; 1)."""
    if terms < 1:
        raise DomainError("terms must be positive")
    return math.fsum(_pfq_terms(numerators, denominators, terms))


def hyp_pfq_unit(
    numerators: Sequence[float],
    denominators: Sequence[float],
    rtol: float = 1e-15,
    max_terms: int = 10**6,
) -> tuple[float, bool]:
    """Sum pFq(...;1) until a term drops below rtol of the running sum.

    Returns (value, converged); converged is False when max_terms ran out
    first, which is what a divergent or slowly convergent series looks like.
    """
    acc: list[float] = []
    running = 0.0
    for term in _pfq_terms(numerators, denominators, max_terms):
        acc.append(term)
        running += term
        if len(acc) > 1 and abs(term) < rtol * abs(running):
            return math.fsum(acc), True
    # a numerator hit zero: the series terminated
    return math.fsum(acc), len(acc) < max_terms


def hyp_pfq_unit_accelerated(numerators: Sequence[float], denominators: Sequence[float]) -> float:
    """Convergent pFq(...;1) with p = q + 1, via mpmath's accelerated summation."""
    if len(numerators) != len(denominators) + 1:
        raise DomainError("unit-argument evaluation needs p = q + 1")
    excess = sum(denominators) - sum(numerators)
    if excess <= 0:
        raise DivergenceError(f"pFq at unit argument diverges (parameter excess {excess} <= 0)")
    with mpmath.workdps(30):
        return float(mpmath.hyper(list(numerators), list(denominators), 1))
