"""Closed-form success probabilities of the ideal algorithm.

These formulas serve as oracles for the Monte Carlo engine and back the
`theory` CLI subcommand.  Everything is a pure function of the remainder
delta (the sub-resolution part of the phase) and the bit count m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

# Below this the 0/0 form of the closed formula is replaced by its limit.
_DELTA_EPS = 1e-12


@dataclass(frozen=True)
class PhaseDecomposition:
    """phi split as phi_tilde + delta * 2^-m with delta in [0, 1)."""

    phi_tilde: float
    delta: float
    m: int


def decompose_phase(phi: float, m: int) -> PhaseDecomposition:
    """Split phi into its m-bit truncation and the remainder."""
    if not 0.0 <= phi < 1.0:
        raise ValueError(f"phi must be in [0, 1), got {phi}")
    if not 1 <= m <= 52:
        raise ValueError(f"m must be in 1..52, got {m}")
    scale = float(2**m)
    scaled = phi * scale
    k = math.floor(scaled)
    if k >= scale:  # phi just below 1 can round up to 2^m
        k = int(scale) - 1
    delta = scaled - k
    if delta >= 1.0:
        delta = math.nextafter(1.0, 0.0)
    return PhaseDecomposition(phi_tilde=k / scale, delta=delta, m=m)


def p_step(delta: float, k: int) -> float:
    """Per-step probability of the correct bit, cos^2(pi*delta/2^k)."""
    return math.cos(math.pi * delta / 2**k) ** 2


def p_total(delta: float, m: int) -> float:
    """Probability of measuring the truncated phase exactly.

    Closed form sin^2(pi*delta) / (2^(2m) * sin^2(pi*delta/2^m)); equals
    the product of p_step over k = 1..m.  The delta -> 0 limit is returned
    as exactly 1.
    """
    if abs(delta) < _DELTA_EPS:
        return 1.0
    num = math.sin(math.pi * delta) ** 2
    den = 2 ** (2 * m) * math.sin(math.pi * delta / 2**m) ** 2
    return num / den


def success_sum(delta: float, m: int) -> float:
    """p_total(delta) + p_total(1 - delta): both accepted outcomes."""
    return p_total(delta, m) + p_total(1.0 - delta, m)


def expected_ideal_success(m: int) -> float:
    """Mean success probability of ideal runs over uniform random phases.

    2 * integral_0^1 p_total(delta, m) d(delta), by adaptive quadrature to
    1e-10 absolute tolerance.  This is the Monte Carlo baseline every
    noise-free sweep must reproduce.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    value, _ = quad(p_total, 0.0, 1.0, args=(m,), epsabs=1e-10, limit=200)
    return 2.0 * value
