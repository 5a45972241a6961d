"""Exact complex linear algebra for a two-qubit register.

The register is permanently 4-dimensional.  Basis ordering is |a t> with
index = 2*a + t over |00>, |01>, |10>, |11>, where a is the ancilla (the
measured, "left" qubit) and t is the target qubit.  States are length-4
complex ndarrays, operators are 4x4 (or 2x2 for single-qubit) complex
ndarrays; all values are immutable by convention and every operation here
is a pure function.
"""

from __future__ import annotations

import math

import numpy as np

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)

IDENTITY4 = np.eye(4, dtype=complex)

# Norm of the smaller measurement branch below which collapse is refused.
_COLLAPSE_EPS = 1e-15


def basis_state(index: int) -> np.ndarray:
    """Computational basis state |a t> with index = 2*a + t."""
    if not 0 <= index < 4:
        raise ValueError(f"basis index must be in 0..3, got {index}")
    s = np.zeros(4, dtype=complex)
    s[index] = 1.0
    return s


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the ancilla (qubit 1) as the left factor."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def apply(u: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Apply a unitary to a state vector, rejecting non-finite input."""
    u = np.asarray(u, dtype=complex)
    s = np.asarray(s, dtype=complex)
    if not np.isfinite(u).all() or not np.isfinite(s).all():
        raise ValueError("apply: non-finite operator or state")
    return u @ s


def _block_exp(a: float, b: float) -> np.ndarray:
    """exp(i*(a*sigma_z + b*sigma_x)) on one invariant 2x2 block.

    Closed form: cos(r)*I + i*sin(r)*(a*sigma_z + b*sigma_x)/r with
    r = sqrt(a^2 + b^2); r = 0 gives the identity block exactly.
    """
    r = math.hypot(a, b)
    if r == 0.0:
        return np.eye(2, dtype=complex)
    c = math.cos(r)
    s = math.sin(r) / r
    return np.array(
        [[c + 1j * s * a, 1j * s * b],
         [1j * s * b, c - 1j * s * a]],
        dtype=complex,
    )


def expm_static(d1: float, d2: float, j: float) -> np.ndarray:
    """Propagator exp(i*dH) of the static-imperfection Hamiltonian.

    dH = d1*sigma_z(x)I + d2*I(x)sigma_z + 2j*sigma_x(x)sigma_x couples only
    the index pairs (0,3) and (1,2), so the exponential is assembled from
    two independent 2x2 blocks: span{|00>,|11>} carries a = d1+d2, and
    span{|01>,|10>} carries a = d1-d2, both with b = 2j.
    """
    b = 2.0 * j
    outer = _block_exp(d1 + d2, b)  # acts on (|00>, |11>)
    inner = _block_exp(d1 - d2, b)  # acts on (|01>, |10>)
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0], u[0, 3] = outer[0, 0], outer[0, 1]
    u[3, 0], u[3, 3] = outer[1, 0], outer[1, 1]
    u[1, 1], u[1, 2] = inner[0, 0], inner[0, 1]
    u[2, 1], u[2, 2] = inner[1, 0], inner[1, 1]
    return u


def expm_series(h: np.ndarray) -> np.ndarray:
    """exp(i*H) by scaling-and-squaring Taylor series (test oracle).

    H must be Hermitian within 1e-12.  The argument is halved until its
    max norm is at most 0.5, the series is summed until the next term
    falls below 1e-20 (the analytic remainder at that point is far under
    1e-13 even after the repeated squarings), then squared back up.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {h.shape}")
    if np.abs(h - h.conj().T).max() > 1e-12:
        raise ValueError("expm_series requires a Hermitian matrix")

    norm = np.abs(h).max()
    squarings = 0
    if norm > 0.5:
        squarings = max(0, math.ceil(math.log2(norm / 0.5)))
    x = 1j * h / (2**squarings)

    result = np.eye(4, dtype=complex)
    term = np.eye(4, dtype=complex)
    for n in range(1, 40):
        term = term @ x / n
        result = result + term
        if np.abs(term).max() < 1e-20:
            break
    for _ in range(squarings):
        result = result @ result
    return result


def measure_ancilla(s: np.ndarray, u: float) -> tuple[int, np.ndarray]:
    """Projective measurement of the ancilla using an external uniform draw.

    p0 = |amp(|00>)|^2 + |amp(|01>)|^2.  Returns bit 0 with the collapsed,
    renormalized state when u < p0, else bit 1 with its branch.  The caller
    owns the random stream; this function consumes exactly the one variate
    it is given, which keeps every run reproducible from a single seed.

    Raises ValueError when the selected branch has norm below 1e-15 and
    cannot be renormalized.
    """
    s = np.asarray(s, dtype=complex)
    p0 = abs(s[0]) ** 2 + abs(s[1]) ** 2
    bit = 0 if u < p0 else 1
    collapsed = np.zeros(4, dtype=complex)
    if bit == 0:
        branch_norm = math.sqrt(p0)
        if branch_norm < _COLLAPSE_EPS:
            raise ValueError("measurement branch has vanishing norm, cannot renormalize")
        collapsed[0] = s[0] / branch_norm
        collapsed[1] = s[1] / branch_norm
    else:
        p1 = abs(s[2]) ** 2 + abs(s[3]) ** 2
        branch_norm = math.sqrt(p1)
        if branch_norm < _COLLAPSE_EPS:
            raise ValueError("measurement branch has vanishing norm, cannot renormalize")
        collapsed[2] = s[2] / branch_norm
        collapsed[3] = s[3] / branch_norm
    return bit, collapsed
