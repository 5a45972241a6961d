"""Monte Carlo experiment driver: scenarios, sweeps, seeding, CSV.

A sweep runs `n_samples` independent algorithm executions at every point of
an error-strength grid.  Sample j at grid point g draws everything (phase,
disorder, gate noise, frames, measurements) from one substream derived
deterministically from (master seed, g, j), so results are bit-identical
across reruns and across worker counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .gatelib import CalibrationConvention, NoisePolicy, calibrate_a
from .iqpea import RunConfig, run_algorithm
from .parec import GapPolicy

SCENARIO_KINDS = (
    "ideal",
    "rnd_h",
    "rnd_rz",
    "rnd_cu",
    "rnd_all",
    "static",
    "static_rnd",
    "parec",
    "parec_noisy",
)

COUPLINGS = ("equal", "fifth", "static-only")

CSV_HEADER = "scenario,epsilon1,epsilon2,n_p,m,n_samples,success_rate,std_err,seed"


@dataclass(frozen=True)
class Scenario:
    """One benchmark configuration family.

    Non-PAREC kinds ignore n_p.  Each kind maps to exactly one combination
    of gate-noise flags, static-coupling enablement, and gap policy; the
    error-strength grid supplies the magnitudes.
    """

    kind: str
    n_p: int = 0

    def __post_init__(self) -> None:
        if self.kind not in SCENARIO_KINDS:
            raise ValueError(f"unknown scenario {self.kind!r}; choose from {SCENARIO_KINDS}")
        if self.n_p < 0:
            raise ValueError(f"n_p must be >= 0, got {self.n_p}")

    @property
    def noisy_pulses(self) -> bool:
        return self.kind == "parec_noisy"

    @classmethod
    def parec(cls, n_p: int, noisy_pulses: bool = False) -> "Scenario":
        return cls(kind="parec_noisy" if noisy_pulses else "parec", n_p=n_p)

    def policies(self, eps1: float, eps2: float) -> tuple[NoisePolicy, float, GapPolicy]:
        """Resolve to (gate-noise policy, static strength used, gap policy)."""
        kind = self.kind
        if kind == "ideal":
            return NoisePolicy.none(), 0.0, GapPolicy(0)
        if kind == "rnd_h":
            return NoisePolicy(epsilon1=eps1, hadamard=True), 0.0, GapPolicy(0)
        if kind == "rnd_rz":
            return NoisePolicy(epsilon1=eps1, rz=True), 0.0, GapPolicy(0)
        if kind == "rnd_cu":
            return NoisePolicy(epsilon1=eps1, controlled_u=True), 0.0, GapPolicy(0)
        if kind == "rnd_all":
            return NoisePolicy.all_gates(eps1), 0.0, GapPolicy(0)
        if kind == "static":
            return NoisePolicy.none(), eps2, GapPolicy(0)
        if kind == "static_rnd":
            return NoisePolicy.all_gates(eps1), eps2, GapPolicy(0)
        if kind == "parec":
            return NoisePolicy.none(), eps2, GapPolicy(self.n_p, noisy_pulses=False)
        # parec_noisy: gate noise everywhere, including the frame pulses
        return (
            NoisePolicy.all_gates(eps1, pauli=True),
            eps2,
            GapPolicy(self.n_p, noisy_pulses=True),
        )


def coupled_strengths(eps: float, coupling: str) -> tuple[float, float]:
    """Map one grid value to (epsilon1, epsilon2) per the coupling rule."""
    if coupling == "equal":
        return eps, eps
    if coupling == "fifth":
        return eps / 5.0, eps
    if coupling == "static-only":
        return 0.0, eps
    raise ValueError(f"unknown coupling {coupling!r}; choose from {COUPLINGS}")


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one sweep bit-for-bit."""

    scenario: Scenario
    eps_grid: tuple[float, ...]
    coupling: str = "equal"
    m: int = 10
    n_samples: int = 2000
    seed: int = 42
    a_convention: CalibrationConvention = CalibrationConvention.PAPER_VALUE
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        if len(self.eps_grid) == 0:
            raise ValueError("eps_grid must not be empty")
        if any(b <= a for a, b in zip(self.eps_grid, self.eps_grid[1:])):
            raise ValueError(f"eps_grid must be strictly increasing, got {self.eps_grid}")
        if any(e < 0 for e in self.eps_grid):
            raise ValueError(f"eps_grid values must be >= 0, got {self.eps_grid}")
        if self.coupling not in COUPLINGS:
            raise ValueError(f"unknown coupling {self.coupling!r}; choose from {COUPLINGS}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class SweepRecord:
    """One CSV row: the success rate at one grid point."""

    scenario: str
    epsilon1: float
    epsilon2: float
    n_p: int
    m: int
    n_samples: int
    success_rate: float
    std_err: float
    seed: int


def derive_substream(master: int, indices: Sequence[int]) -> np.random.Generator:
    """Deterministic, statistically independent stream per index tuple.

    PCG64 seeded by numpy's SeedSequence(master, spawn_key=tuple(indices)):
    the same (master, indices) always reproduces the same draws, distinct
    tuples give independent streams.
    """
    seq = np.random.SeedSequence(entropy=master, spawn_key=tuple(indices))
    return np.random.default_rng(seq)


def _run_point(spec: SweepSpec, grid_index: int, eps: float) -> SweepRecord:
    a = calibrate_a(spec.a_convention)
    eps1, eps2 = coupled_strengths(eps, spec.coupling)
    noise, eps2_used, gap_policy = spec.scenario.policies(eps1, eps2)
    base_cfg = RunConfig(
        m=spec.m,
        phi=0.0,
        noise=noise,
        epsilon2=eps2_used,
        a=a,
        gap_policy=gap_policy,
    )
    successes = 0
    for j in range(spec.n_samples):
        rng = derive_substream(spec.seed, (grid_index, j))
        phi = float(rng.random())
        result = run_algorithm(replace(base_cfg, phi=phi), rng)
        successes += result.success
    rate = successes / spec.n_samples
    return SweepRecord(
        scenario=spec.scenario.kind,
        epsilon1=noise.epsilon1,
        epsilon2=eps2_used,
        n_p=gap_policy.n_p,
        m=spec.m,
        n_samples=spec.n_samples,
        success_rate=rate,
        std_err=math.sqrt(rate * (1.0 - rate) / spec.n_samples),
        seed=spec.seed,
    )


def run_sweep(spec: SweepSpec) -> list[SweepRecord]:
    """Run every grid point; output order is grid order regardless of workers."""
    points = list(enumerate(spec.eps_grid))
    if spec.workers == 1:
        return [_run_point(spec, g, eps) for g, eps in points]
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        futures = [pool.submit(_run_point, spec, g, eps) for g, eps in points]
        return [f.result() for f in futures]


def _fmt(x: float) -> str:
    return format(x, ".6g")


def write_csv(records: Iterable[SweepRecord], destination: str | Path) -> None:
    """Write records under the fixed header, one row per record, LF endings."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.scenario},{_fmt(r.epsilon1)},{_fmt(r.epsilon2)},{r.n_p},{r.m},"
            f"{r.n_samples},{_fmt(r.success_rate)},{_fmt(r.std_err)},{r.seed}"
        )
    path = Path(destination)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def read_csv(source: str | Path) -> list[SweepRecord]:
    """Read back a sweep CSV written by write_csv."""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read CSV from {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: not a sweep CSV (bad header)")
    records = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 9:
            raise ValueError(f"{path}: malformed row {ln!r}")
        records.append(
            SweepRecord(
                scenario=parts[0],
                epsilon1=float(parts[1]),
                epsilon2=float(parts[2]),
                n_p=int(parts[3]),
                m=int(parts[4]),
                n_samples=int(parts[5]),
                success_rate=float(parts[6]),
                std_err=float(parts[7]),
                seed=int(parts[8]),
            )
        )
    return records
