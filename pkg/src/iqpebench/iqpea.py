"""Iterative phase estimation engine with measurement feedback.

One run estimates an m-bit eigenphase by applying the single-ancilla circuit
m times: Hadamard on the ancilla, controlled application of the probed
unitary raised to 2^(m-1-i), a feedback Z-rotation, a closing Hadamard, and
a projective ancilla measurement.  Bits arrive least significant first and
steer the Z-rotation angle of every later iteration.

Static imperfections evolve the register in the three gaps between gates;
the disorder triple is drawn once per run and held fixed, which is what
makes its effect coherent rather than noise-like.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gatelib import (
    NoisePolicy,
    StaticDisorder,
    controlled_u_gate,
    hadamard_gate,
    rz_gate,
    sample_delta,
    sample_disorder,
)
from .parec import GapPolicy, apply_gap
from .qcore import HADAMARD, basis_state, measure_ancilla

_GAP_SLOTS = 3  # between the four gates of one iteration


@dataclass(frozen=True)
class RunConfig:
    """Full specification of one algorithm execution.

    gaps_per_iteration activates the first so many of the three gap slots
    (after the opening Hadamard, after the controlled unitary, after the
    feedback rotation); 3 is the physical default, lower values exist for
    sensitivity studies.  The random stream is passed to `run_algorithm`
    separately so one seeded generator can drive many runs.
    """

    m: int
    phi: float
    noise: NoisePolicy = field(default_factory=NoisePolicy)
    epsilon2: float = 0.0
    a: float = 0.37
    gap_policy: GapPolicy = field(default_factory=GapPolicy)
    gaps_per_iteration: int = _GAP_SLOTS

    def __post_init__(self) -> None:
        if not 1 <= self.m <= 62:
            raise ValueError(f"m must be in 1..62, got {self.m}")
        if not 0.0 <= self.phi < 1.0:
            raise ValueError(f"phi must be in [0, 1), got {self.phi}")
        if self.epsilon2 < 0:
            raise ValueError(f"epsilon2 must be >= 0, got {self.epsilon2}")
        if self.a <= 0:
            raise ValueError(f"a must be > 0, got {self.a}")
        if not 0 <= self.gaps_per_iteration <= _GAP_SLOTS:
            raise ValueError(
                f"gaps_per_iteration must be in 0..{_GAP_SLOTS}, got {self.gaps_per_iteration}"
            )


@dataclass(frozen=True)
class IterationRecord:
    step: int
    omega: float
    bit: int


@dataclass(frozen=True)
class RunResult:
    """Outcome of one run: bits in measurement order (LSB first)."""

    bits: tuple[int, ...]
    estimate: int
    success: bool
    trace: tuple[IterationRecord, ...]


def feedback_angle(prev_omega: float, bit: int) -> float:
    """Fold one measured bit into the Z-rotation angle.

    (prev - pi*bit)/2, so after i measurements the angle is
    -2*pi*(0.0 b_{i-1} ... b_0) in binary-fraction notation: each new bit
    is subtracted at weight 1/4 and older bits shift one place down.
    """
    return (prev_omega - math.pi * bit) / 2.0


def _apply_ancilla(g: np.ndarray, s: np.ndarray) -> np.ndarray:
    # kron(g, I) @ s without forming the 4x4 operator.
    return (g @ s.reshape(2, 2)).reshape(4)


def run_iteration(
    s: np.ndarray,
    i: int,
    omega: float,
    cfg: RunConfig,
    dis: StaticDisorder,
    rng: np.random.Generator,
) -> tuple[int, np.ndarray]:
    """Execute circuit step i on state s and measure the ancilla.

    Gate order: H, gap, controlled-U^(2^(m-1-i)), gap, R_Z(omega), gap, H,
    measure.  Gaps are skipped entirely at epsilon2 = 0.  Noise deltas are
    drawn only for gate families enabled in the NoisePolicy, in circuit
    order; the trailing uniform variate decides the measurement.  The
    Z-rotation runs at every step, including i = 0 where its angle 0 makes
    it exactly the identity under multiplicative noise.
    """
    noise = cfg.noise
    eps1 = noise.epsilon1
    use_gaps = cfg.epsilon2 != 0.0

    def gap(state: np.ndarray, slot: int) -> np.ndarray:
        if not use_gaps or slot >= cfg.gaps_per_iteration:
            return state
        return apply_gap(state, dis, cfg.gap_policy, noise, rng)

    if noise.hadamard:
        s = _apply_ancilla(hadamard_gate(sample_delta(eps1, rng)), s)
    else:
        s = _apply_ancilla(HADAMARD, s)
    s = gap(s, 0)

    delta = sample_delta(eps1, rng) if noise.controlled_u else 0.0
    s = controlled_u_gate(cfg.m - 1 - i, cfg.phi, delta) @ s
    s = gap(s, 1)

    delta = sample_delta(eps1, rng) if noise.rz else 0.0
    s = _apply_ancilla(rz_gate(omega, delta), s)
    s = gap(s, 2)

    if noise.hadamard:
        s = _apply_ancilla(hadamard_gate(sample_delta(eps1, rng)), s)
    else:
        s = _apply_ancilla(HADAMARD, s)

    return measure_ancilla(s, rng.random())


def _reset_ancilla(s: np.ndarray, bit: int) -> np.ndarray:
    # Perfect conditional flip back to |0>, keeping the target state.
    if bit == 0:
        return s
    out = np.zeros(4, dtype=complex)
    out[0] = s[2]
    out[1] = s[3]
    return out


def run_algorithm(cfg: RunConfig, rng: np.random.Generator) -> RunResult:
    """Run all m iterations and score the estimate.

    One disorder triple is drawn up front and reused in every gap (the
    imperfection is static within a run).  After each measurement the
    ancilla is reset by a perfect conditional flip and the collapsed
    target state is carried forward.
    """
    dis = sample_disorder(cfg.epsilon2, cfg.a, rng)
    s = basis_state(0)
    omega = 0.0
    bits: list[int] = []
    trace: list[IterationRecord] = []
    for i in range(cfg.m):
        bit, s = run_iteration(s, i, omega, cfg, dis, rng)
        bits.append(bit)
        trace.append(IterationRecord(step=i, omega=omega, bit=bit))
        s = _reset_ancilla(s, bit)
        omega = feedback_angle(omega, bit)
    estimate = sum(b << i for i, b in enumerate(bits))
    return RunResult(
        bits=tuple(bits),
        estimate=estimate,
        success=is_success(estimate, cfg.phi, cfg.m),
        trace=tuple(trace),
    )


def estimate_phase(bits: list[int] | tuple[int, ...], m: int) -> float:
    """Phase value M/2^m of a measurement record (bits LSB first)."""
    if len(bits) != m:
        raise ValueError(f"expected {m} bits, got {len(bits)}")
    return sum(b << i for i, b in enumerate(bits)) / float(2**m)


def is_success(estimate_m: int, phi: float, m: int) -> bool:
    """True when the estimate sits within one least-significant bit of phi.

    Circular distance strictly below 2^-m: for remainder delta in (0, 1)
    this accepts exactly the truncated phase and its upward neighbor.
    """
    if not 0 <= estimate_m < 2**m:
        raise ValueError(f"estimate must be in [0, 2^m), got {estimate_m}")
    d = abs(estimate_m / float(2**m) - phi) % 1.0
    return min(d, 1.0 - d) < 2.0**-m
