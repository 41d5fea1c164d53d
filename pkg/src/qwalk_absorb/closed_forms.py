"""Closed-form absorption results for the balanced coin on the half line.

The probability of ever reaching site 0 from site 1 has the closed form

    2/pi + 2 (1 - 2/pi) Re(conj(alpha) beta)

for a start qubit (alpha, beta); its reciprocal is the conditional mean of
the first-arrival time, and all higher conditional moments diverge.  The
constants come from the Gauss evaluation of a hypergeometric series at the
endpoint, so a small 2F1 evaluator (series on [0, 1), Gamma-function
endpoint formula at 1) is included here rather than pulled from a larger
special-function stack.

Divergent quantities are reported as ``math.inf`` so that parameter sweeps
stay representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coin_algebra import QubitState

__all__ = [
    "AbsorptionConstants",
    "bach_limit_rho",
    "conjecture_p",
    "expected_t0_given_hit",
    "f_prime_at_1",
    "hyp2f1",
    "moment_t0_given_hit",
    "p_inf_1_hadamard",
    "sum_r_squared_infinite",
]

_TERM_CUTOFF = 1e-16
_BLOCK = 1 << 16
_MAX_TERMS = 400_000_000


@dataclass(frozen=True)
class AbsorptionConstants:
    """Coefficients (C1, C2, C3) of the qubit-quadratic absorption formula.

    The probability for a unit qubit (alpha, beta) is
    ``C1 |alpha|^2 + C2 |beta|^2 + 2 Re(C3 conj(alpha) beta)``, which must
    land in [0, 1] for every unit qubit; that is validated on construction
    through the eigenvalue range of the associated Hermitian form.
    """

    c1: float
    c2: float
    c3: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", float(self.c1))
        object.__setattr__(self, "c2", float(self.c2))
        object.__setattr__(self, "c3", complex(self.c3))
        slack = 1e-10
        if not (-slack <= self.c1 <= 1.0 + slack and -slack <= self.c2 <= 1.0 + slack):
            raise ValueError(f"diagonal constants {self.c1}, {self.c2} outside [0, 1]")
        half_gap = math.hypot((self.c1 - self.c2) / 2.0, abs(self.c3))
        mean = (self.c1 + self.c2) / 2.0
        if mean + half_gap > 1.0 + slack or mean - half_gap < -slack:
            raise ValueError(
                "constants produce probabilities outside [0, 1] "
                f"(range {mean - half_gap:.3e}..{mean + half_gap:.3e})"
            )

    def probability(self, phi: QubitState) -> float:
        value = (
            self.c1 * abs(phi.alpha) ** 2
            + self.c2 * abs(phi.beta) ** 2
            + 2.0 * (self.c3 * phi.alpha.conjugate() * phi.beta).real
        )
        return float(value)


def hyp2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss hypergeometric series 2F1(a, b; c; x) for real x in [0, 1].

    For x < 1 the defining series is summed in vectorized blocks until the
    running term drops below 1e-16 relative to the sum.  At x = 1 the
    Gamma-function endpoint formula applies and needs c - a - b > 0.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if c <= 0.0 and float(c).is_integer():
        raise ValueError(f"c = {c} is a nonpositive integer; series undefined")
    if x == 1.0:
        if c - a - b <= 0.0:
            raise ValueError(
                f"series diverges at x = 1 when c - a - b = {c - a - b} <= 0"
            )
        return (
            math.gamma(c)
            * math.gamma(c - a - b)
            / (math.gamma(c - a) * math.gamma(c - b))
        )
    if x == 0.0 or a == 0.0 or b == 0.0:
        return 1.0

    total = 1.0  # term at n = 0
    t_last = 1.0
    n0 = 0
    while n0 < _MAX_TERMS:
        ns = np.arange(n0, n0 + _BLOCK, dtype=float)
        ratios = (a + ns) * (b + ns) / ((c + ns) * (1.0 + ns)) * x
        terms = t_last * np.cumprod(ratios)
        total += float(terms.sum())
        t_last = float(terms[-1])
        n0 += _BLOCK
        if abs(t_last) <= _TERM_CUTOFF * max(1.0, abs(total)):
            return total
    raise ValueError(f"2F1 series did not converge for x = {x}")


def p_inf_1_hadamard(phi: QubitState) -> float:
    """Half-line absorption probability from site 1, balanced coin."""
    cross = (phi.alpha.conjugate() * phi.beta).real
    return 2.0 / math.pi + 2.0 * (1.0 - 2.0 / math.pi) * cross


def expected_t0_given_hit(phi: QubitState) -> float:
    """Conditional mean arrival time at 0 from site 1, given arrival occurs.

    Equals the reciprocal of the absorption probability; finite for every
    unit qubit since that probability is bounded below by (4 - pi)/pi.
    """
    return 1.0 / p_inf_1_hadamard(phi)


def moment_t0_given_hit(m: int, phi: QubitState) -> float:
    """Conditional m-th moment of the arrival time; inf for every m >= 2."""
    if m < 1:
        raise ValueError(f"moment order must be >= 1, got {m}")
    if m == 1:
        return expected_t0_given_hit(phi)
    return math.inf


def f_prime_at_1() -> float:
    """Derivative at z = 1 of the squared-coefficient generating function.

    The function f(z) = sum_n r(n)^2 z^n built from the half-line series
    has f'(z) = (z^4 2F1(1/2,1/2;2;z^4) - 2F1(-1/2,-1/2;1;z^4) + 1) / z^2;
    both endpoint values equal 4/pi, so the result is exactly 1.
    """
    return hyp2f1(0.5, 0.5, 2.0, 1.0) - hyp2f1(-0.5, -0.5, 1.0, 1.0) + 1.0


def sum_r_squared_infinite() -> float:
    """Sum of squared half-line series coefficients: 4/pi - 1."""
    return hyp2f1(-0.5, -0.5, 1.0, 1.0) - 1.0


def conjecture_p(n: int) -> float:
    """Closed form (x^{n-1} - 1) / (sqrt(2) (x^{n-1} + 1)) with x = 3 + 2 sqrt(2).

    Gives the two-boundary absorption probability from site 1 for the
    qubit (0, 1); satisfies P_{n+1} = (2 P_n + 1)/(2 P_n + 2) and tends to
    1/sqrt(2).
    """
    if n < 1:
        raise ValueError(f"lattice size must be >= 1, got {n}")
    x = (3.0 + 2.0 * math.sqrt(2.0)) ** (n - 1)
    return (x - 1.0) / (x + 1.0) / math.sqrt(2.0)


def bach_limit_rho(rho: float, chirality: str) -> float:
    """Large-start-site absorption limits for the rho-family coin.

    ``chirality`` selects the start qubit: "R" is the upper basis vector
    t(1, 0) with limit arccos(1 - 2 rho)/pi, and "L" is the lower basis
    vector t(0, 1) with limit
    rho/(1-rho) (arccos(1 - 2 rho)/pi - 1) + 2/(pi sqrt(1/rho - 1)).
    """
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must lie strictly inside (0, 1), got {rho}")
    acos_frac = math.acos(1.0 - 2.0 * rho) / math.pi
    label = chirality.upper()
    if label == "R":
        return acos_frac
    if label == "L":
        return rho / (1.0 - rho) * (acos_frac - 1.0) + 2.0 / (
            math.pi * math.sqrt(1.0 / rho - 1.0)
        )
    raise ValueError(f"chirality must be 'L' or 'R', got {chirality!r}")
