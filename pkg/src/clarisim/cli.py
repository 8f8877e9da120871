"""Command-line harness: ``characterize``, ``simulate``, ``sweep``.

Exit codes: 0 success, 2 configuration/validation error, 3 simulation
completed with the robot stuck.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from pydantic import ValidationError

from . import bench
from .config import builtin_scenarios, load_scenario
from .errors import ClariError, ConfigError
from .sim import DEFAULT_CONFIG

log = logging.getLogger("clarisim")

EXIT_OK, EXIT_CONFIG, EXIT_STUCK = 0, 2, 3


def _common(p: argparse.ArgumentParser, config_required: bool = True) -> None:
    p.add_argument("--config", required=config_required,
                   help="scenario JSON path, or the name of a built-in scenario")
    p.add_argument("--out", type=Path, default=Path("out"), help="output directory (default: ./out)")
    p.add_argument("--dt", type=float, default=None, help="simulation time step in s (default: scenario dt_s)")
    p.add_argument("--gnuplot-script", action="store_true", help="also write plot.gp for the CSV outputs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clarisim", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("characterize", help="actuator and leg curves versus drive voltage")
    _common(p, config_required=False)
    p.add_argument("--v-start", type=float, default=None)
    p.add_argument("--v-end", type=float, default=None)
    p.add_argument("--v-step", type=float, default=None)

    p = sub.add_parser("simulate", help="run a locomotion scenario")
    _common(p)

    p = sub.add_parser("sweep", help="sweep one scenario parameter")
    _common(p)
    p.add_argument("--param", required=True, help=f"one of: {', '.join(bench.SWEEP_PARAMETERS)}")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")

    sub.add_parser("scenarios", help="list built-in scenarios")
    return parser


def _mkdir(out: Path) -> None:
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigError(f"cannot create output directory {out}: {e}") from None


def _characterize(args) -> int:
    scenario = load_scenario(args.config) if args.config else None
    config = scenario.robot_config() if scenario else DEFAULT_CONFIG
    sw = scenario.characterize if scenario and scenario.characterize else None
    v_start = args.v_start if args.v_start is not None else (sw.v_start_v if sw else 0.0)
    v_end = args.v_end if args.v_end is not None else (sw.v_end_v if sw else config.actuator.v_max)
    v_step = args.v_step if args.v_step is not None else (sw.v_step_v if sw else 25.0)
    volts = bench.voltage_steps(v_start, v_end, v_step, config.actuator.v_max)
    _mkdir(args.out)
    for path in bench.write_curves(args.out, bench.characterize(config, volts)):
        print(path)
    if args.gnuplot_script:
        (args.out / "plot.gp").write_text(bench.gnuplot_script("characterize", args.out))
    return EXIT_OK


def _simulate(args) -> int:
    scenario = load_scenario(args.config)
    trace, summary = bench.simulate(scenario, args.dt)
    _mkdir(args.out)
    bench.write_trace(args.out / "trace.csv", trace)
    bench.write_summary(args.out / "summary.csv", summary)
    if args.gnuplot_script:
        (args.out / "plot.gp").write_text(bench.gnuplot_script("simulate", args.out))
    for key, value in zip(bench.SUMMARY_HEADER, summary.row()):
        print(f"{key} = {value}")
    return EXIT_STUCK if summary.stuck else EXIT_OK


def _sweep(args) -> int:
    if args.param not in bench.SWEEP_PARAMETERS:
        raise ConfigError(f"unknown sweep parameter {args.param!r}; known: {', '.join(bench.SWEEP_PARAMETERS)}")
    scenario = load_scenario(args.config)
    values = bench.sweep_values(args.start, args.stop, args.step)
    rows = bench.sweep(scenario, args.param, values, args.dt, args.jobs)
    _mkdir(args.out)
    bench.write_csv(args.out / "sweep.csv", (args.param,) + bench.SUMMARY_HEADER, rows)
    if args.gnuplot_script:
        (args.out / "plot.gp").write_text(bench.gnuplot_script("sweep", args.out, args.param))
    print(args.out / "sweep.csv")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    seed = os.environ.get("CLARI_SIM_SEED")
    if seed is not None:
        log.debug("CLARI_SIM_SEED=%s ignored: the simulator is deterministic", seed)
    if args.command == "scenarios":
        print("\n".join(builtin_scenarios()))
        return EXIT_OK
    handler = {"characterize": _characterize, "simulate": _simulate, "sweep": _sweep}[args.command]
    try:
        return handler(args)
    except (ClariError, ValidationError, OSError) as e:
        print(f"clarisim: error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
