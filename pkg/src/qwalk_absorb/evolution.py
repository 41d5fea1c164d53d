"""Direct simulation of the measured walk with absorbing boundaries.

Amplitudes live on the sites of {0, ..., N} (or a finite window of the
half line) as 2-vectors (left mover, right mover).  Each step applies the
one-step transport

    psi_j  <-  P psi_{j+1} + Q psi_{j-1}

followed by a measurement at site 0 (and site N when the lattice is
finite): the arriving probability mass is removed and reported.  For the
half line a window of ``start + horizon + 2`` sites is exact, because the
walker moves one site per step and can never reach the window edge within
the horizon.

Also provided is a brute-force enumeration over P/Q step words that sums
the ordered matrix products of every path first reaching site 0 at a given
time; it serves as an independent oracle for the dynamic-programming
recurrence module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coin_algebra import Coin, PqrsMatrix, QubitState, pqrs_decompose

__all__ = [
    "HittingDistribution",
    "LatticeSpec",
    "WalkState",
    "enumerate_paths_xi",
    "initial_state",
    "run_absorption",
    "step",
]

# Entries more negative than this indicate a bug rather than roundoff.
_NEGATIVE_CLIP = -1e-14

_MAX_ENUMERATION_TIME = 22


@dataclass(frozen=True)
class LatticeSpec:
    """Walk domain: sites {0, ..., right} or the half line when right is None."""

    start: int
    right: int | None = None

    def __post_init__(self) -> None:
        if self.right is not None:
            if self.right < 2:
                raise ValueError(f"finite lattice needs right >= 2, got {self.right}")
            if not 0 <= self.start <= self.right:
                raise ValueError(
                    f"start {self.start} outside sites 0..{self.right}"
                )
        elif self.start < 0:
            raise ValueError(f"start must be >= 0, got {self.start}")

    @classmethod
    def finite(cls, right: int, start: int) -> "LatticeSpec":
        return cls(start=start, right=right)

    @classmethod
    def semi_infinite(cls, start: int) -> "LatticeSpec":
        return cls(start=start, right=None)

    @property
    def is_finite(self) -> bool:
        return self.right is not None


@dataclass(frozen=True)
class WalkState:
    """Site amplitudes (shape (sites, 2), columns = left/right mover) at a time."""

    amplitudes: np.ndarray
    time: int = 0

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.ndim != 2 or amp.shape[1] != 2 or amp.shape[0] < 2:
            raise ValueError(f"amplitudes must have shape (sites >= 2, 2), got {amp.shape}")
        object.__setattr__(self, "amplitudes", amp)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class HittingDistribution:
    """First-hitting probabilities per step plus the accumulated masses.

    ``per_time_at_0[n]`` is the probability of first arriving at site 0 at
    time n; likewise at site N for finite lattices (empty array on the half
    line).  The three cumulative fields account for all probability:
    cumulative_at_0 + cumulative_at_N + survival = 1.
    """

    per_time_at_0: np.ndarray
    per_time_at_N: np.ndarray
    cumulative_at_0: float
    cumulative_at_N: float
    survival: float
    horizon: int

    def __post_init__(self) -> None:
        balance = self.cumulative_at_0 + self.cumulative_at_N + self.survival
        if abs(balance - 1.0) > 1e-10:
            raise ValueError(f"probability mass {balance!r} does not sum to 1")
        for arr in (self.per_time_at_0, self.per_time_at_N):
            if arr.size and float(arr.min()) < _NEGATIVE_CLIP:
                raise ValueError(
                    f"per-time entry {float(arr.min())!r} below roundoff floor"
                )


def initial_state(
    lattice: LatticeSpec, phi: QubitState, horizon: int | None = None
) -> WalkState:
    """State at time 0: the chirality vector placed on the start site.

    For the half line ``horizon`` fixes the (exact) window size.
    """
    if lattice.is_finite:
        n_sites = lattice.right + 1
    else:
        if horizon is None:
            raise ValueError("half-line state needs a horizon to size the window")
        n_sites = lattice.start + horizon + 2
    amp = np.zeros((n_sites, 2), dtype=complex)
    amp[lattice.start, 0] = phi.alpha
    amp[lattice.start, 1] = phi.beta
    return WalkState(amp, time=0)


def _advance(
    amp: np.ndarray, coin: Coin, absorb_right: bool
) -> tuple[np.ndarray, float, float]:
    """One transport step followed by boundary measurements.

    Returns the new amplitudes and the masses removed at the left (and,
    when ``absorb_right``, the right) edge of the array.
    """
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    n = amp.shape[0]
    new = np.zeros_like(amp)
    new[: n - 1, 0] = a * amp[1:, 0] + b * amp[1:, 1]
    new[1:, 1] = c * amp[: n - 1, 0] + d * amp[: n - 1, 1]
    hit0 = float(np.abs(new[0, 0]) ** 2 + np.abs(new[0, 1]) ** 2)
    new[0, :] = 0.0
    hit_n = 0.0
    if absorb_right:
        hit_n = float(np.abs(new[n - 1, 0]) ** 2 + np.abs(new[n - 1, 1]) ** 2)
        new[n - 1, :] = 0.0
    return new, hit0, hit_n


def step(
    state: WalkState,
    coin: Coin,
    lattice: LatticeSpec,
    measure_order: tuple[str, str] = ("left", "right"),
) -> tuple[WalkState, float, float]:
    """Advance one measured step; returns (state, absorbed_at_0, absorbed_at_N).

    The two boundary measurements project onto disjoint sites, so their
    order cannot matter; ``measure_order`` exists to let tests assert that.
    On the half line the rightmost site of the window must be empty (the
    window edge is not a physical boundary).
    """
    if sorted(measure_order) != ["left", "right"]:
        raise ValueError(f"measure_order must permute ('left', 'right'), got {measure_order}")
    amp = state.amplitudes
    if not lattice.is_finite and float(np.abs(amp[-1]).max(initial=0.0)) > 1e-15:
        raise ValueError(
            "amplitude reached the half-line window edge; enlarge the window"
        )
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    n = amp.shape[0]
    new = np.zeros_like(amp)
    new[: n - 1, 0] = a * amp[1:, 0] + b * amp[1:, 1]
    new[1:, 1] = c * amp[: n - 1, 0] + d * amp[: n - 1, 1]

    hit0 = hit_n = 0.0
    for side in measure_order:
        if side == "left":
            hit0 = float(np.abs(new[0, 0]) ** 2 + np.abs(new[0, 1]) ** 2)
            new[0, :] = 0.0
        elif lattice.is_finite:
            hit_n = float(np.abs(new[n - 1, 0]) ** 2 + np.abs(new[n - 1, 1]) ** 2)
            new[n - 1, :] = 0.0
    return WalkState(new, time=state.time + 1), hit0, hit_n


def run_absorption(
    lattice: LatticeSpec, coin: Coin, phi: QubitState, horizon: int
) -> HittingDistribution:
    """First-hitting distribution up to ``horizon`` steps.

    Exact per-time probabilities: the evolution is deterministic and the
    half-line window is sized so no amplitude can reach its edge.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    finite = lattice.is_finite
    per0 = np.zeros(horizon + 1)
    per_n = np.zeros(horizon + 1) if finite else np.zeros(0)

    # A walker initialized on an absorbing site is measured there at time 0.
    if lattice.start == 0:
        per0[0] = 1.0
        return HittingDistribution(per0, per_n, 1.0, 0.0, 0.0, horizon)
    if finite and lattice.start == lattice.right:
        per_n[0] = 1.0
        return HittingDistribution(per0, per_n, 0.0, 1.0, 0.0, horizon)

    state = initial_state(lattice, phi, horizon=horizon)
    amp = state.amplitudes
    n_sites = amp.shape[0]
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    buf = np.zeros_like(amp)

    # Support after t steps is confined to start +- t; restricting the
    # update to that growing window keeps long half-line runs cheap.
    for t in range(1, horizon + 1):
        hi = min(lattice.start + t + 1, n_sites)  # one past the support
        buf[:hi, 0] = 0.0
        buf[:hi, 1] = 0.0
        buf[: hi - 1, 0] = a * amp[1:hi, 0] + b * amp[1:hi, 1]
        buf[1:hi, 1] = c * amp[: hi - 1, 0] + d * amp[: hi - 1, 1]
        per0[t] = np.abs(buf[0, 0]) ** 2 + np.abs(buf[0, 1]) ** 2
        buf[0, :] = 0.0
        if finite and hi == n_sites:
            per_n[t] = np.abs(buf[-1, 0]) ** 2 + np.abs(buf[-1, 1]) ** 2
            buf[-1, :] = 0.0
        amp, buf = buf, amp

    survival = float(np.sum(np.abs(amp) ** 2))
    return HittingDistribution(
        per_time_at_0=per0,
        per_time_at_N=per_n,
        cumulative_at_0=float(per0.sum()),
        cumulative_at_N=float(per_n.sum()) if finite else 0.0,
        survival=survival,
        horizon=horizon,
    )


def enumerate_paths_xi(lattice: LatticeSpec, n: int, coin: Coin) -> PqrsMatrix:
    """Sum of ordered step products over all paths first reaching 0 at time n.

    Walks over every P/Q word of length n whose partial positions stay
    strictly inside the lattice until exactly time n, when they land on 0.
    The step taken first is the rightmost factor of the product.  This is
    exponential in n and refuses n > 22; it exists as an oracle for the
    recurrence module.
    """
    if n > _MAX_ENUMERATION_TIME:
        raise ValueError(
            f"path enumeration is exponential; n = {n} exceeds the cap of "
            f"{_MAX_ENUMERATION_TIME}"
        )
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    start = lattice.start
    right = lattice.right

    if n == 0:
        m = np.eye(2, dtype=complex) if start == 0 else np.zeros((2, 2), dtype=complex)
        return pqrs_decompose(m, coin)
    if start == 0 or (right is not None and start == right):
        return PqrsMatrix.zero()

    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    total = np.zeros((2, 2), dtype=complex)

    def extend(pos: int, depth: int, acc: tuple[complex, complex, complex, complex]) -> None:
        remaining = n - depth
        # Dead branches: too far from 0, or parity cannot land on 0 at time n.
        if pos > remaining or (remaining - pos) % 2 != 0:
            return
        m00, m01, m10, m11 = acc
        # Left move: prepend P, killing the bottom row.
        left = (a * m00 + b * m10, a * m01 + b * m11, 0.0, 0.0)
        if pos - 1 == 0:
            if depth + 1 == n:
                total[0, 0] += left[0]
                total[0, 1] += left[1]
        else:
            extend(pos - 1, depth + 1, left)
        # Right move: prepend Q, killing the top row.
        if right is None or pos + 1 < right:
            extend(
                pos + 1,
                depth + 1,
                (0.0, 0.0, c * m00 + d * m10, c * m01 + d * m11),
            )

    extend(start, 0, (1.0 + 0.0j, 0.0j, 0.0j, 1.0 + 0.0j))
    return pqrs_decompose(total, coin)
