"""Two-qubit iterative phase estimation benchmark.

Exact state-vector simulation of the single-ancilla phase estimation
circuit under multiplicative gate noise and static residual couplings,
with random Pauli-frame error suppression, closed-form theory oracles,
and a reproducible Monte Carlo sweep harness.
"""

from .gatelib import (
    CalibrationConvention,
    NoisePolicy,
    StaticDisorder,
    calibrate_a,
    controlled_u_gate,
    hadamard_gate,
    pauli_pulse,
    rotation,
    rz_gate,
    sample_delta,
    sample_disorder,
    static_propagator,
)
from .harness import (
    Scenario,
    SweepRecord,
    SweepSpec,
    coupled_strengths,
    derive_substream,
    read_csv,
    run_sweep,
    write_csv,
)
from .iqpea import (
    IterationRecord,
    RunConfig,
    RunResult,
    estimate_phase,
    feedback_angle,
    is_success,
    run_algorithm,
    run_iteration,
)
from .parec import (
    GapPolicy,
    PauliFrame,
    apply_gap,
    effective_epsilon,
    frame_operator,
    sample_frame,
)
from .qcore import (
    apply,
    basis_state,
    expm_series,
    expm_static,
    kron,
    measure_ancilla,
)
from .theory import (
    PhaseDecomposition,
    decompose_phase,
    expected_ideal_success,
    p_step,
    p_total,
    success_sum,
)

__version__ = "0.1.0"
