"""Dynamic programming for the summed first-arrival path products.

Let ``xi_k(n)`` denote the sum, over all paths that start on site k and
first reach site 0 at exactly time n (staying strictly inside the lattice
before that), of the ordered products of step operators.  In the coin's
(P, Q, R, S) basis these matrices satisfy a nearest-neighbour recurrence
obtained by splitting every path on its first move:

    p_k(n) = a p_{k-1}(n-1) + c r_{k-1}(n-1)
    r_k(n) = b p_{k+1}(n-1) + d r_{k+1}(n-1)
    q_k(n) = d q_{k+1}(n-1) + b s_{k+1}(n-1)
    s_k(n) = c q_{k-1}(n-1) + a s_{k-1}(n-1)

seeded with the identity coordinates at (k, n) = (0, 0), zeros elsewhere at
n = 0, and hard zeros on the boundary rows for n >= 1.  Only two path
shapes exist (all-P tails and P...Q tails), so q and s vanish identically
for n >= 1; the (q, s) pair is still propagated so that the vanishing can
be asserted numerically.

The probability of first arrival at time n for a start qubit (alpha, beta)
combines the (p, r) pair:

    C1 |alpha|^2 + C2 |beta|^2 + 2 Re(C3 conj(alpha) beta)

with C1 = |a p + c r|^2, C2 = |b p + d r|^2, C3 = conj(a p + c r)(b p + d r).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coin_algebra import Coin, PqrsMatrix, QubitState
from .evolution import LatticeSpec

__all__ = [
    "AbsorptionEstimate",
    "XiTable",
    "absorption_prob",
    "build_xi_table",
    "hitting_prob_at_time",
]

_NEGATIVE_CLIP = -1e-14


def _window_sites(lattice: LatticeSpec, horizon: int) -> int:
    if lattice.is_finite:
        return lattice.right + 1
    # Exact window: within `horizon` steps the walker cannot travel past
    # start + horizon, so the artificial zero row at the window edge is
    # never felt by entries queried at the start column.
    return lattice.start + horizon + 2


@dataclass(frozen=True)
class XiTable:
    """Filled (p, q, r, s) coordinate tables, indexed [time, site]."""

    p: np.ndarray
    q: np.ndarray
    r: np.ndarray
    s: np.ndarray
    lattice: LatticeSpec
    coin: Coin
    horizon: int

    @property
    def n_sites(self) -> int:
        return self.p.shape[1]

    def _check_indices(self, k: int, n: int) -> None:
        if not 0 <= n <= self.horizon:
            raise ValueError(f"time {n} outside 0..{self.horizon}")
        if not 0 <= k < self.n_sites:
            raise ValueError(f"site {k} outside 0..{self.n_sites - 1}")
        if not self.lattice.is_finite and k + n > 2 * (self.n_sites - 1) - 3:
            # Beyond this the artificial window edge can distort the entry.
            raise ValueError(
                f"entry ({k}, {n}) lies outside the exact half-line window"
            )

    def entry(self, k: int, n: int) -> PqrsMatrix:
        self._check_indices(k, n)
        return PqrsMatrix(self.p[n, k], self.q[n, k], self.r[n, k], self.s[n, k])


def build_xi_table(lattice: LatticeSpec, coin: Coin, horizon: int) -> XiTable:
    """Fill the coordinate tables for 0 <= n <= horizon over all sites."""
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    n_sites = _window_sites(lattice, horizon)
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    shape = (horizon + 1, n_sites)
    p = np.zeros(shape, dtype=complex)
    q = np.zeros(shape, dtype=complex)
    r = np.zeros(shape, dtype=complex)
    s = np.zeros(shape, dtype=complex)
    p[0, 0] = a.conjugate()
    q[0, 0] = d.conjugate()
    r[0, 0] = c.conjugate()
    s[0, 0] = b.conjugate()
    last = n_sites - 1
    for n in range(1, horizon + 1):
        p[n, 1:last] = a * p[n - 1, : last - 1] + c * r[n - 1, : last - 1]
        r[n, 1:last] = b * p[n - 1, 2:] + d * r[n - 1, 2:]
        q[n, 1:last] = d * q[n - 1, 2:] + b * s[n - 1, 2:]
        s[n, 1:last] = c * q[n - 1, : last - 1] + a * s[n - 1, : last - 1]
    return XiTable(p=p, q=q, r=r, s=s, lattice=lattice, coin=coin, horizon=horizon)


def _clip_probability(value: float) -> float:
    if value < 0.0:
        if value < _NEGATIVE_CLIP:
            raise ValueError(
                f"probability {value!r} is negative beyond roundoff; "
                "internal consistency lost"
            )
        return 0.0
    return value


def _lemma_probability(
    coin: Coin, pv: complex, rv: complex, phi: QubitState
) -> float:
    f = coin.a * pv + coin.c * rv
    g = coin.b * pv + coin.d * rv
    value = (
        abs(f) ** 2 * abs(phi.alpha) ** 2
        + abs(g) ** 2 * abs(phi.beta) ** 2
        + 2.0 * (f.conjugate() * g * phi.alpha.conjugate() * phi.beta).real
    )
    return _clip_probability(value)


def hitting_prob_at_time(table: XiTable, k: int, n: int, phi: QubitState) -> float:
    """Probability of first arrival at site 0 at time n, starting from k."""
    table._check_indices(k, n)
    coin = table.coin
    if n == 0:
        if k != 0:
            return 0.0
        # The identity entry at (0, 0) carries nonzero q, s, so the full
        # four-coordinate combination applies here (and only here).
        pv, qv, rv, sv = (
            table.p[0, 0],
            table.q[0, 0],
            table.r[0, 0],
            table.s[0, 0],
        )
        f1 = coin.a * pv + coin.c * rv
        f2 = coin.a * sv + coin.c * qv
        g1 = coin.b * pv + coin.d * rv
        g2 = coin.b * sv + coin.d * qv
        value = (
            (abs(f1) ** 2 + abs(f2) ** 2) * abs(phi.alpha) ** 2
            + (abs(g1) ** 2 + abs(g2) ** 2) * abs(phi.beta) ** 2
            + 2.0
            * (
                (f1.conjugate() * g1 + f2.conjugate() * g2)
                * phi.alpha.conjugate()
                * phi.beta
            ).real
        )
        return _clip_probability(value)
    if k == 0 or k == table.n_sites - 1:
        return 0.0
    return _lemma_probability(coin, table.p[n, k], table.r[n, k], phi)


@dataclass(frozen=True)
class AbsorptionEstimate:
    """Partial sum of arrival probabilities plus a truncation report.

    ``survival`` bounds the truncation error for finite lattices (mass not
    yet absorbed at either boundary by the horizon); it is None on the half
    line, where no such bound is available from this route.
    """

    probability: float
    survival: float | None
    horizon: int
    last_term: float


def _stream_cumulative(
    lattice: LatticeSpec, coin: Coin, phi: QubitState, horizon: int
) -> tuple[float, float]:
    """Sum arrival probabilities at the start site keeping two time slices."""
    n_sites = _window_sites(lattice, horizon)
    k0 = lattice.start
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    p = np.zeros(n_sites, dtype=complex)
    r = np.zeros(n_sites, dtype=complex)
    p[0] = a.conjugate()
    r[0] = c.conjugate()
    pn = np.zeros_like(p)
    rn = np.zeros_like(r)
    last_idx = n_sites - 1
    cum = 0.0
    term = 0.0
    for _ in range(1, horizon + 1):
        pn[1:last_idx] = a * p[: last_idx - 1] + c * r[: last_idx - 1]
        rn[1:last_idx] = b * p[2:] + d * r[2:]
        pn[0] = pn[last_idx] = 0.0
        rn[0] = rn[last_idx] = 0.0
        term = _lemma_probability(coin, pn[k0], rn[k0], phi)
        cum += term
        p, pn = pn, p
        r, rn = rn, r
    return cum, term


def _mirror(lattice: LatticeSpec, coin: Coin, phi: QubitState):
    """Problem with sites relabeled j -> N - j: swapped chirality and coin rows."""
    m_coin = Coin(coin.d, coin.c, coin.b, coin.a)
    m_lattice = LatticeSpec.finite(lattice.right, lattice.right - lattice.start)
    m_phi = QubitState(phi.beta, phi.alpha)
    return m_lattice, m_coin, m_phi


def absorption_prob(
    lattice: LatticeSpec, coin: Coin, phi: QubitState, horizon: int
) -> AbsorptionEstimate:
    """Probability of absorption at site 0, summed through the horizon."""
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if lattice.start == 0:
        return AbsorptionEstimate(1.0, 0.0 if lattice.is_finite else None, horizon, 0.0)
    if lattice.is_finite and lattice.start == lattice.right:
        return AbsorptionEstimate(0.0, 0.0, horizon, 0.0)

    cum, last = _stream_cumulative(lattice, coin, phi, horizon)
    survival: float | None = None
    if lattice.is_finite:
        # Mass absorbed at the right boundary equals the left-boundary mass
        # of the reflected problem; the remainder bounds the truncation.
        m_lattice, m_coin, m_phi = _mirror(lattice, coin, phi)
        cum_right, _ = _stream_cumulative(m_lattice, m_coin, m_phi, horizon)
        survival = max(0.0, 1.0 - cum - cum_right)
    return AbsorptionEstimate(
        probability=cum, survival=survival, horizon=horizon, last_term=last
    )
