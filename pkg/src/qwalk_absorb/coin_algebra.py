"""Coin matrices and the step-operator basis for two-state walks.

A walk step is driven by a 2x2 unitary ``U = [[a, b], [c, d]]``.  Its two
rows give the one-step transport operators

    P = [[a, b], [0, 0]]   (amplitude moving one site to the left)
    Q = [[0, 0], [c, d]]   (amplitude moving one site to the right)

and, together with the row-swapped companions R and S, form an orthonormal
basis of the complex 2x2 matrices under the trace inner product
``<X|Y> = tr(X^* Y)``.  Sums of products of P's and Q's over walk paths are
therefore described by four coordinates (p, q, r, s); this module provides
the coordinate arithmetic the rest of the package is built on.

Coordinates are tied to the coin that produced them.  Operations take the
coin explicitly, and mixing coordinates taken in different coins' bases is
a caller error that is not detected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "UNITARITY_TOL",
    "Coin",
    "CoinUnitarityError",
    "PqrsMatrix",
    "QubitState",
    "custom_coin",
    "hadamard_coin",
    "identity_pqrs",
    "make_coin",
    "pqrs_apply",
    "pqrs_decompose",
    "pqrs_multiply",
    "rho_coin",
    "symmetric_coin",
]

# Constructor validation tolerance; internal invariant tests use 1e-12.
UNITARITY_TOL = 1e-10


class CoinUnitarityError(ValueError):
    """Supplied matrix entries violate a unitarity identity."""


@dataclass(frozen=True)
class Coin:
    """A 2x2 unitary ``[[a, b], [c, d]]`` driving one walk step.

    Entries are validated on construction against the row norms, row
    orthogonality and the unimodular determinant, each to ``UNITARITY_TOL``.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        violations = (
            ("|a|^2 + |b|^2 = 1", abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0)),
            ("|c|^2 + |d|^2 = 1", abs(abs(self.c) ** 2 + abs(self.d) ** 2 - 1.0)),
            (
                "a*conj(c) + b*conj(d) = 0",
                abs(self.a * self.c.conjugate() + self.b * self.d.conjugate()),
            ),
            ("|det| = 1", abs(abs(self.delta) - 1.0)),
        )
        for identity, err in violations:
            if err > UNITARITY_TOL:
                raise CoinUnitarityError(
                    f"entries are not unitary: {identity} violated by {err:.3e}"
                )

    @property
    def delta(self) -> complex:
        """Determinant ``a*d - b*c`` (unimodular for a valid coin)."""
        return self.a * self.d - self.b * self.c

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def basis(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """The four basis matrices (P, Q, R, S) built from this coin."""
        a, b, c, d = self.a, self.b, self.c, self.d
        p = np.array([[a, b], [0, 0]], dtype=complex)
        q = np.array([[0, 0], [c, d]], dtype=complex)
        r = np.array([[c, d], [0, 0]], dtype=complex)
        s = np.array([[0, 0], [a, b]], dtype=complex)
        return p, q, r, s

    def is_hadamard(self, tol: float = 1e-12) -> bool:
        h = 1.0 / math.sqrt(2.0)
        return (
            abs(self.a - h) <= tol
            and abs(self.b - h) <= tol
            and abs(self.c - h) <= tol
            and abs(self.d + h) <= tol
        )


def hadamard_coin() -> Coin:
    """The balanced coin with entries (1, 1, 1, -1)/sqrt(2)."""
    h = 1.0 / math.sqrt(2.0)
    return Coin(h, h, h, -h)


def rho_coin(rho: float) -> Coin:
    """One-parameter family [[sqrt(rho), sqrt(1-rho)], [sqrt(1-rho), -sqrt(rho)]].

    ``rho = 1/2`` reproduces :func:`hadamard_coin`.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    sr = math.sqrt(rho)
    sq = math.sqrt(1.0 - rho)
    return Coin(sr, sq, sq, -sr)


def symmetric_coin(eta: float, phi: float, psi: float) -> Coin:
    """Three-phase family exp(i*eta)/sqrt(2) * [[e^{i(phi+psi)}, e^{-i(phi-psi)}],
    [e^{i(phi-psi)}, -e^{-i(phi+psi)}]].  All-zero phases give the balanced coin.
    """
    pref = cmath.exp(1j * eta) / math.sqrt(2.0)
    return Coin(
        pref * cmath.exp(1j * (phi + psi)),
        pref * cmath.exp(-1j * (phi - psi)),
        pref * cmath.exp(1j * (phi - psi)),
        -pref * cmath.exp(-1j * (phi + psi)),
    )


def custom_coin(a: complex, b: complex, c: complex, d: complex) -> Coin:
    """Coin from explicit entries; raises CoinUnitarityError when not unitary."""
    return Coin(a, b, c, d)


def make_coin(kind: str, *args: float, **kwargs: float) -> Coin:
    """Dispatch on a coin kind: 'hadamard', 'rho', 'symmetric' or 'custom'."""
    kind = kind.lower()
    if kind == "hadamard":
        if args or kwargs:
            raise ValueError("hadamard takes no parameters")
        return hadamard_coin()
    if kind == "rho":
        return rho_coin(*args, **kwargs)
    if kind == "symmetric":
        return symmetric_coin(*args, **kwargs)
    if kind == "custom":
        return custom_coin(*args, **kwargs)
    raise ValueError(f"unknown coin kind {kind!r}")


@dataclass(frozen=True)
class QubitState:
    """Normalized two-component chirality state (upper = left mover)."""

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        norm_sq = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm_sq - 1.0) > 1e-12:
            raise ValueError(
                f"|alpha|^2 + |beta|^2 = {norm_sq!r} is not 1; "
                "use QubitState.normalized to rescale"
            )

    @classmethod
    def normalized(cls, alpha: complex, beta: complex) -> "QubitState":
        norm = math.hypot(abs(complex(alpha)), abs(complex(beta)))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(complex(alpha) / norm, complex(beta) / norm)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


@dataclass(frozen=True)
class PqrsMatrix:
    """Coordinates (p, q, r, s) of a 2x2 matrix in some coin's basis."""

    p: complex
    q: complex
    r: complex
    s: complex

    def __post_init__(self) -> None:
        for name in ("p", "q", "r", "s"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def zero(cls) -> "PqrsMatrix":
        return cls(0.0, 0.0, 0.0, 0.0)

    def coords(self) -> np.ndarray:
        return np.array([self.p, self.q, self.r, self.s], dtype=complex)

    def to_matrix(self, coin: Coin) -> np.ndarray:
        """Reconstruct the represented matrix p*P + q*Q + r*R + s*S."""
        a, b, c, d = coin.a, coin.b, coin.c, coin.d
        return np.array(
            [
                [self.p * a + self.r * c, self.p * b + self.r * d],
                [self.q * c + self.s * a, self.q * d + self.s * b],
            ],
            dtype=complex,
        )


def identity_pqrs(coin: Coin) -> PqrsMatrix:
    """Coordinates of the 2x2 identity: (conj a, conj d, conj c, conj b)."""
    return PqrsMatrix(
        coin.a.conjugate(), coin.d.conjugate(), coin.c.conjugate(), coin.b.conjugate()
    )


def pqrs_decompose(m: np.ndarray, coin: Coin) -> PqrsMatrix:
    """Coordinates of an arbitrary 2x2 matrix via trace inner products."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    ac = coin.a.conjugate()
    bc = coin.b.conjugate()
    cc = coin.c.conjugate()
    dc = coin.d.conjugate()
    # tr(X^* m) for X = P, Q, R, S; each X has a single nonzero row.
    p = ac * m[0, 0] + bc * m[0, 1]
    q = cc * m[1, 0] + dc * m[1, 1]
    r = cc * m[0, 0] + dc * m[0, 1]
    s = ac * m[1, 0] + bc * m[1, 1]
    return PqrsMatrix(p, q, r, s)


def pqrs_multiply(x: PqrsMatrix, y: PqrsMatrix, coin: Coin) -> PqrsMatrix:
    """Coordinates of the matrix product x*y, both in the same coin's basis.

    Expands the bilinear product over the sixteen ordered basis pairs; each
    pair lands on a single basis element scaled by one coin entry (e.g.
    P*Q = b*R).
    """
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    p1, q1, r1, s1 = x.p, x.q, x.r, x.s
    p2, q2, r2, s2 = y.p, y.q, y.r, y.s
    p = a * p1 * p2 + b * p1 * s2 + c * r1 * p2 + d * r1 * s2
    q = d * q1 * q2 + c * q1 * r2 + b * s1 * q2 + a * s1 * r2
    r = b * p1 * q2 + a * p1 * r2 + d * r1 * q2 + c * r1 * r2
    s = c * q1 * p2 + d * q1 * s2 + a * s1 * p2 + b * s1 * s2
    return PqrsMatrix(p, q, r, s)


def pqrs_apply(x: PqrsMatrix, phi: QubitState, coin: Coin) -> np.ndarray:
    """Apply the represented matrix to a chirality state; returns a 2-vector."""
    m = x.to_matrix(coin)
    return m @ phi.as_array()
