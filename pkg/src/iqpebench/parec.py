"""Random Pauli-frame scheduling around the static-imperfection propagator.

Static couplings accumulate coherently when the same propagator acts in every
gate gap.  The suppression protocol slices each gap into 2*n_p segments: each
segment conjugates a 1/(2*n_p)-scaled propagator by a freshly drawn two-qubit
Pauli frame.  Conjugation flips the sign of each Hamiltonian term at random,
so the per-gap error becomes a random walk instead of a coherent sum and the
effective coupling strength falls as 1/sqrt(2*n_p).

Frame pulses are optionally noisy; the restoring pulse always draws its own
angle error, so imperfect frames do not cancel exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gatelib import NoisePolicy, StaticDisorder, _pulse_single, sample_delta, static_propagator
from .qcore import IDENTITY4, PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, kron

FRAME_LETTERS = "IXYZ"

_SINGLE = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


@dataclass(frozen=True)
class PauliFrame:
    """One frame choice: a Pauli letter (or I) per qubit.

    The exact frame operator is self-inverse, F*F = I, since every Pauli
    squares to the identity.
    """

    p1: str
    p2: str

    def __post_init__(self) -> None:
        if self.p1 not in FRAME_LETTERS or self.p2 not in FRAME_LETTERS:
            raise ValueError(f"frame letters must be one of I, X, Y, Z: got ({self.p1}, {self.p2})")


@dataclass(frozen=True)
class GapPolicy:
    """How each gate gap is evolved.

    n_p = 0 disables the protocol (one bare propagator per gap at scale 1);
    n_p >= 1 applies 2*n_p framed segments.  noisy_pulses makes the frame
    pulses draw angle errors from the run's NoisePolicy.
    """

    n_p: int = 0
    noisy_pulses: bool = False

    def __post_init__(self) -> None:
        if self.n_p < 0:
            raise ValueError(f"n_p must be >= 0, got {self.n_p}")


ALL_FRAMES: tuple[PauliFrame, ...] = tuple(
    PauliFrame(p1, p2) for p1 in FRAME_LETTERS for p2 in FRAME_LETTERS
)
_FRAME_INDEX = {frame: i for i, frame in enumerate(ALL_FRAMES)}

# Exact (noise-free) frame operators, indexed like ALL_FRAMES.
_EXACT_FRAME_OPS = np.stack([kron(_SINGLE[f.p1], _SINGLE[f.p2]) for f in ALL_FRAMES])
_EXACT_FRAME_OPS.flags.writeable = False


def sample_frame(rng: np.random.Generator) -> PauliFrame:
    """Draw a frame uniformly over all 16 (p1, p2) pairs; one variate."""
    return ALL_FRAMES[int(rng.integers(16))]


def frame_operator(frame: PauliFrame, noise: NoisePolicy, rng: np.random.Generator) -> np.ndarray:
    """Operator for one frame application.

    Product of one pulse per non-identity letter, qubit 1 first.  When
    noise.pauli is set, each pulse draws a fresh delta via sample_delta;
    identity letters cost nothing and are always exact.
    """
    if frame.p1 == "I" and frame.p2 == "I":
        return IDENTITY4.copy()
    if not noise.pauli:
        return _EXACT_FRAME_OPS[_FRAME_INDEX[frame]].copy()
    g1 = PAULI_I
    g2 = PAULI_I
    if frame.p1 != "I":
        g1 = _pulse_single(frame.p1, sample_delta(noise.epsilon1, rng))
    if frame.p2 != "I":
        g2 = _pulse_single(frame.p2, sample_delta(noise.epsilon1, rng))
    return kron(g1, g2)


def _apply_noisy_frame(
    frame: PauliFrame,
    noise: NoisePolicy,
    rng: np.random.Generator,
    s: np.ndarray,
) -> np.ndarray:
    # frame_operator(frame, noise, rng) @ s without forming the 4x4:
    # (g1 (x) g2) s = g1 @ S @ g2^T on the (ancilla, target) reshape.
    # Same pulses, same delta draw order.
    if frame.p1 == "I" and frame.p2 == "I":
        return s
    grid = s.reshape(2, 2)
    if frame.p1 != "I":
        grid = _pulse_single(frame.p1, sample_delta(noise.epsilon1, rng)) @ grid
    if frame.p2 != "I":
        grid = grid @ _pulse_single(frame.p2, sample_delta(noise.epsilon1, rng)).T
    return grid.reshape(4)


def apply_gap(
    s: np.ndarray,
    dis: StaticDisorder,
    policy: GapPolicy,
    noise: NoisePolicy,
    rng: np.random.Generator,
) -> np.ndarray:
    """Evolve a state through one gate gap.

    With n_p = 0 this is the bare propagator at scale 1.  Otherwise 2*n_p
    segments run in sequence; segment draws, in order: one frame index,
    then (noisy pulses only) the entry pulse deltas, then the exit pulse
    deltas.  The frame returns to the computational basis after every
    segment.
    """
    if policy.n_p == 0:
        return _cached_propagator(dis.d1, dis.d2, dis.j, 1.0) @ s
    n_seg = 2 * policy.n_p
    scale = 1.0 / n_seg
    noisy = policy.noisy_pulses and noise.pauli
    if not noisy:
        table = _conjugated_propagators(dis.d1, dis.d2, dis.j, scale)
        for _ in range(n_seg):
            s = table[int(rng.integers(16))] @ s
        return s
    prop = _cached_propagator(dis.d1, dis.d2, dis.j, scale)
    for _ in range(n_seg):
        frame = sample_frame(rng)
        s = _apply_noisy_frame(frame, noise, rng, s)
        s = prop @ s
        s = _apply_noisy_frame(frame, noise, rng, s)
    return s


def effective_epsilon(epsilon2: float, n_p: int) -> float:
    """Predicted equivalent bare static strength, epsilon2/sqrt(2*n_p).

    Cross-check quantity only; the simulation never uses it.
    """
    if n_p < 1:
        raise ValueError(f"n_p must be >= 1, got {n_p}")
    return epsilon2 / np.sqrt(2.0 * n_p)


@lru_cache(maxsize=64)
def _cached_propagator(d1: float, d2: float, j: float, scale: float) -> np.ndarray:
    u = static_propagator(StaticDisorder(d1, d2, j), scale)
    u.flags.writeable = False
    return u


@lru_cache(maxsize=32)
def _conjugated_propagators(d1: float, d2: float, j: float, scale: float) -> np.ndarray:
    """F @ U @ F for all 16 exact frames; one matrix per perfect segment."""
    u = _cached_propagator(d1, d2, j, scale)
    table = np.stack([f @ u @ f for f in _EXACT_FRAME_OPS])
    table.flags.writeable = False
    return table
