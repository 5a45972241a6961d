"""Command line interface.

Subcommands:
  sweep   Monte Carlo sweep over an error-strength grid, written as CSV
          (optionally with a rendered figure next to it).
  theory  Tabulate the closed-form success probabilities for one m.
  run     Execute a single verbose run and print the per-iteration trace.
  plot    Render existing sweep CSVs into a figure file.

Exit codes: 0 on success, 2 on configuration errors, 1 on runtime errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .gatelib import CalibrationConvention, calibrate_a
from .harness import (
    COUPLINGS,
    Scenario,
    SweepSpec,
    coupled_strengths,
    derive_substream,
    run_sweep,
    write_csv,
)
from .iqpea import RunConfig, run_algorithm
from .theory import expected_ideal_success, p_total, success_sum

_SCENARIO_CHOICES = (
    "ideal",
    "rnd-h",
    "rnd-rz",
    "rnd-cu",
    "rnd-all",
    "static",
    "static-rnd",
    "parec",
    "parec-noisy",
)

_A_CONVENTIONS = {
    "paper": CalibrationConvention.PAPER_VALUE,
    "strict": CalibrationConvention.STRICT_EQ8,
    "half-width": CalibrationConvention.HALF_WIDTH_EPS1,
}

# Hard defaults for sweep settings; a config file overrides these and
# explicit flags override the config file.
_SWEEP_DEFAULTS = {
    "scenario": "static",
    "eps_min": 0.0,
    "eps_max": 0.4,
    "eps_steps": 9,
    "coupling": "equal",
    "m": 10,
    "samples": 2000,
    "np": 1,
    "seed": 42,
    "a_convention": "paper",
    "workers": 1,
    "out": None,
    "plot": False,
}

_CONFIG_PARSERS = {
    "scenario": str,
    "eps_min": float,
    "eps_max": float,
    "eps_steps": int,
    "coupling": str,
    "m": int,
    "samples": int,
    "np": int,
    "seed": int,
    "a_convention": str,
    "workers": int,
    "out": str,
    "plot": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
}


class _ConfigError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iqpebench",
        description="Two-qubit iterative phase estimation benchmark under "
        "gate noise, static couplings, and Pauli-frame error suppression.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="run a Monte Carlo sweep and write CSV")
    sw.add_argument("--scenario", choices=_SCENARIO_CHOICES, default=None)
    sw.add_argument("--eps-min", type=float, default=None)
    sw.add_argument("--eps-max", type=float, default=None)
    sw.add_argument("--eps-steps", type=int, default=None, help="number of grid points")
    sw.add_argument("--coupling", choices=COUPLINGS, default=None)
    sw.add_argument("--m", type=int, default=None, help="bits of precision")
    sw.add_argument("--samples", type=int, default=None, help="runs per grid point")
    sw.add_argument("--np", type=int, default=None, dest="np_blocks",
                    help="PAREC blocks per gap (parec scenarios)")
    sw.add_argument("--seed", type=int, default=None, help="master seed")
    sw.add_argument("--a-convention", choices=sorted(_A_CONVENTIONS), default=None)
    sw.add_argument("--workers", type=int, default=None, help="parallel workers")
    sw.add_argument("--out", type=str, default=None, help="CSV destination")
    sw.add_argument("--config", type=str, default=None,
                    help="key = value file supplying defaults for any flag")
    sw.add_argument("--plot", action="store_true", default=None,
                    help="also render <out>.png")

    th = sub.add_parser("theory", help="tabulate closed-form success probabilities")
    th.add_argument("--m", type=int, default=10)
    th.add_argument("--delta-steps", type=int, default=20,
                    help="tabulate delta = i/steps for i = 0..steps-1")

    rn = sub.add_parser("run", help="single verbose run with per-iteration trace")
    rn.add_argument("--phi", type=float, required=True)
    rn.add_argument("--m", type=int, default=10)
    rn.add_argument("--scenario", choices=_SCENARIO_CHOICES, default="ideal")
    rn.add_argument("--eps", type=float, default=0.0, help="error-strength grid value")
    rn.add_argument("--coupling", choices=COUPLINGS, default="equal")
    rn.add_argument("--np", type=int, default=1, dest="np_blocks")
    rn.add_argument("--seed", type=int, default=0)
    rn.add_argument("--a-convention", choices=sorted(_A_CONVENTIONS), default="paper")

    pl = sub.add_parser("plot", help="render sweep CSVs into a figure")
    pl.add_argument("--csv", type=str, nargs="+", required=True)
    pl.add_argument("--out", type=str, required=True)
    pl.add_argument("--title", type=str, default=None)

    return parser


def _load_config(path: str) -> dict:
    """Parse a `key = value` file with # comments."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _ConfigError(f"cannot read config file {path}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        if key not in _CONFIG_PARSERS:
            raise _ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](value.strip())
        except ValueError as exc:
            raise _ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _scenario_from_name(name: str, n_p: int) -> Scenario:
    kind = name.replace("-", "_")
    return Scenario(kind=kind, n_p=n_p if kind in ("parec", "parec_noisy") else 0)


def _cmd_sweep(args: argparse.Namespace) -> int:
    settings = dict(_SWEEP_DEFAULTS)
    if args.config:
        settings.update(_load_config(args.config))
    flag_values = {
        "scenario": args.scenario,
        "eps_min": args.eps_min,
        "eps_max": args.eps_max,
        "eps_steps": args.eps_steps,
        "coupling": args.coupling,
        "m": args.m,
        "samples": args.samples,
        "np": args.np_blocks,
        "seed": args.seed,
        "a_convention": args.a_convention,
        "workers": args.workers,
        "out": args.out,
        "plot": args.plot,
    }
    settings.update({k: v for k, v in flag_values.items() if v is not None})

    if settings["out"] is None:
        raise _ConfigError("no output file: pass --out or set 'out' in the config file")
    if settings["eps_steps"] < 1:
        raise _ConfigError(f"eps-steps must be >= 1, got {settings['eps_steps']}")
    scenario_name = settings["scenario"].replace("_", "-")
    if scenario_name not in _SCENARIO_CHOICES:
        raise _ConfigError(f"unknown scenario {settings['scenario']!r}")
    if settings["a_convention"] not in _A_CONVENTIONS:
        raise _ConfigError(f"unknown a-convention {settings['a_convention']!r}")

    grid = np.linspace(settings["eps_min"], settings["eps_max"], settings["eps_steps"])
    spec = SweepSpec(
        scenario=_scenario_from_name(scenario_name, settings["np"]),
        eps_grid=tuple(float(e) for e in grid),
        coupling=settings["coupling"],
        m=settings["m"],
        n_samples=settings["samples"],
        seed=settings["seed"],
        a_convention=_A_CONVENTIONS[settings["a_convention"]],
        workers=settings["workers"],
    )
    records = run_sweep(spec)
    write_csv(records, settings["out"])
    print(f"wrote {len(records)} rows to {settings['out']}")
    if settings["plot"]:
        from .plotting import plot_records

        fig_path = Path(settings["out"]).with_suffix(".png")
        plot_records(records, fig_path, title=scenario_name)
        print(f"wrote figure to {fig_path}")
    return 0


def _cmd_theory(args: argparse.Namespace) -> int:
    if args.m < 1:
        raise _ConfigError(f"m must be >= 1, got {args.m}")
    if args.delta_steps < 2:
        raise _ConfigError(f"delta-steps must be >= 2, got {args.delta_steps}")
    m = args.m
    print(f"# m = {m}")
    print(f"# expected_ideal_success({m}) = {expected_ideal_success(m):.10f}")
    print("delta,p_total,success_sum")
    for i in range(args.delta_steps):
        delta = i / args.delta_steps
        pt = p_total(delta, m)
        ss = success_sum(delta, m) if delta > 0 else float("nan")
        ss_text = f"{ss:.6g}" if delta > 0 else "-"
        print(f"{delta:.6g},{pt:.6g},{ss_text}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    if not 0.0 <= args.phi < 1.0:
        raise _ConfigError(f"phi must be in [0, 1), got {args.phi}")
    scenario = _scenario_from_name(args.scenario, args.np_blocks)
    eps1, eps2 = coupled_strengths(args.eps, args.coupling)
    noise, eps2_used, gap_policy = scenario.policies(eps1, eps2)
    a = calibrate_a(_A_CONVENTIONS[args.a_convention])
    cfg = RunConfig(
        m=args.m,
        phi=args.phi,
        noise=noise,
        epsilon2=eps2_used,
        a=a,
        gap_policy=gap_policy,
    )
    rng = derive_substream(args.seed, (0, 0))
    result = run_algorithm(cfg, rng)
    print(f"phi = {args.phi}  m = {args.m}  scenario = {args.scenario}  seed = {args.seed}")
    for rec in result.trace:
        print(f"step {rec.step}: omega = {rec.omega:+.6f}  bit = {rec.bit}")
    print(f"bits (LSB first): {''.join(str(b) for b in result.bits)}")
    print(f"estimate: M = {result.estimate}  phi_hat = {result.estimate / 2**args.m}")
    print(f"success: {result.success}")
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    from .plotting import plot_csv

    out = plot_csv(args.csv, args.out, title=args.title)
    print(f"wrote figure to {out}")
    return 0


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "theory":
            return _cmd_theory(args)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "plot":
            return _cmd_plot(args)
        parser.error(f"unknown command {args.command!r}")
        return 2
    except (_ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
