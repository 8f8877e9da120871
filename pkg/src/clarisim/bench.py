"""Characterization sweeps, scenario runs, summaries and CSV writers."""
from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .actuator import blocked_force, free_deflection
from .config import Scenario
from .environment import CorridorEnvironment
from .errors import ConfigError, RangeError
from .sim import BODY_LENGTH, RobotConfig, SimTrace, min_clearance, run
from .transmission import tip_lift_block_force, tip_lift_deflection, tip_swing_deflection

CURVE_HEADER = ("voltage_vpp", "value", "unit")
TRACE_HEADER = ("t", "x", "y", "yaw", "L", "W", "theta", "side", "stuck", "segment")
SWEEP_PARAMETERS = ("frequency_hz", "amplitude_vpp", "eta_gait", "gap_mm", "lift_swing_phase_rad",
                    "wall_drag_factor")

# file name -> (function(config, v), unit)
CURVES = {
    "actuator_deflection.csv": (lambda c, v: free_deflection(c.actuator, v), "um"),
    "actuator_force.csv": (lambda c, v: blocked_force(c.actuator, v), "mN"),
    "leg_deflection.csv": (lambda c, v: tip_swing_deflection(c.legs, c.actuator, v), "mm"),
    "leg_deflection_lift.csv": (lambda c, v: tip_lift_deflection(c.legs, c.actuator, v), "mm"),
    "leg_force.csv": (lambda c, v: tip_lift_block_force(c.legs, c.actuator, v), "mN"),
}


def voltage_steps(v_start: float, v_end: float, v_step: float, v_max: float = 225.0) -> list[float]:
    if not 0 <= v_start <= v_end <= v_max:
        raise RangeError(f"voltage sweep needs 0 <= v_start <= v_end <= {v_max} V, got {v_start}..{v_end}")
    if v_start == v_end:
        return [float(v_start)]
    if not v_step > 0:
        raise RangeError(f"voltage step must be positive, got {v_step}")
    n = math.floor((v_end - v_start) / v_step + 1e-9)
    return [round(v_start + k * v_step, 10) for k in range(n + 1)]


def characterize(config: RobotConfig, voltages) -> dict[str, list[tuple[float, float, str]]]:
    return {name: [(v, float(fn(config, v)), unit) for v in voltages] for name, (fn, unit) in CURVES.items()}


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_curves(out_dir: Path, curves) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, rows in curves.items():
        write_csv(out_dir / name, CURVE_HEADER, rows)
        paths.append(out_dir / name)
    return paths


@dataclass(frozen=True)
class SummaryMetrics:
    name: str
    duration: float  # s
    mean_speed: float  # mm/s
    speed_bl_per_s: float
    transit_time: float  # s spent compressed
    n_transits: int
    max_compression_width: float  # narrowest body dimension reached, mm
    min_clearance: float  # mm; inf without walls
    stuck: bool
    final_L: float
    final_W: float

    def row(self) -> tuple:
        return tuple(asdict(self).values())


SUMMARY_HEADER = tuple(SummaryMetrics.__dataclass_fields__)


def compression_intervals(trace: SimTrace) -> list[float]:
    """Durations of contiguous runs of samples where the body is compressed below neutral."""
    neutral = min(trace.params.dims_neutral)
    squeezed = trace.dims().min(axis=1) < neutral - 1e-9
    out, run_len = [], 0
    for flag in squeezed:
        if flag:
            run_len += 1
        elif run_len:
            out.append(run_len * trace.dt)
            run_len = 0
    if run_len:
        out.append(run_len * trace.dt)
    return out


def summarize(trace: SimTrace, env: CorridorEnvironment, name: str = "") -> SummaryMetrics:
    xy = trace.positions()
    path = float(np.hypot(*np.diff(xy, axis=0).T).sum()) if len(xy) > 1 else 0.0
    duration = trace.final.t
    speed = path / duration if duration > 0 else 0.0
    dims = trace.dims()
    transits = compression_intervals(trace)
    L, W = dims[-1]
    return SummaryMetrics(
        name=name,
        duration=duration,
        mean_speed=speed,
        speed_bl_per_s=speed / BODY_LENGTH,
        transit_time=float(sum(transits)),
        n_transits=len(transits),
        max_compression_width=float(dims.min()),
        min_clearance=min_clearance(trace, env),
        stuck=trace.final.stuck,
        final_L=float(L),
        final_W=float(W),
    )


def simulate(scenario: Scenario, dt: float | None = None) -> tuple[SimTrace, SummaryMetrics]:
    env = scenario.environment_obj()
    trace = run(scenario.gait_schedule(), env, scenario.robot_config(), dt or scenario.dt_s, scenario.start_pose())
    return trace, summarize(trace, env, scenario.name)


def write_trace(path: Path, trace: SimTrace) -> None:
    write_csv(path, TRACE_HEADER, trace.rows())


def write_summary(path: Path, summary: SummaryMetrics) -> None:
    write_csv(path, SUMMARY_HEADER, [summary.row()])


def with_parameter(scenario: Scenario, name: str, value: float) -> Scenario:
    """Copy of ``scenario`` with one sweepable parameter replaced."""
    if name in ("frequency_hz", "amplitude_vpp", "lift_swing_phase_rad"):
        segs = [s.model_copy(update={name: value}) for s in scenario.schedule]
        return scenario.model_copy(update={"schedule": segs})
    if name in ("eta_gait", "wall_drag_factor"):
        return scenario.model_copy(update={"robot": scenario.robot.model_copy(update={name: value})})
    if name == "gap_mm":
        env = scenario.environment
        cors = [c.model_copy(update={"gap_mm": value}) for c in env.corridors]
        return scenario.model_copy(update={"environment": env.model_copy(update={"corridors": cors})})
    raise ConfigError(f"unknown sweep parameter {name!r}; known: {', '.join(SWEEP_PARAMETERS)}")


def _sweep_one(args):
    scenario, name, value, dt = args
    s = with_parameter(scenario, name, value)
    # re-validate so model_copy cannot smuggle in bad values
    s = Scenario.model_validate(s.model_dump())
    _, summary = simulate(s, dt)
    return (value,) + summary.row()


def sweep(scenario: Scenario, name: str, values, dt: float | None = None, jobs: int = 1) -> list[tuple]:
    """Run one independent simulation per parameter value; rows keep sweep order."""
    if name not in SWEEP_PARAMETERS:
        raise ConfigError(f"unknown sweep parameter {name!r}; known: {', '.join(SWEEP_PARAMETERS)}")
    tasks = [(scenario, name, float(v), dt) for v in values]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_one, tasks))
    return [_sweep_one(t) for t in tasks]


def sweep_values(start: float, stop: float, step: float) -> list[float]:
    if start == stop:
        return [float(start)]
    if not step > 0 or stop < start:
        raise ConfigError(f"sweep range needs start <= stop and step > 0, got {start}:{stop}:{step}")
    n = math.floor((stop - start) / step + 1e-9)
    return [round(start + k * step, 10) for k in range(n + 1)]


def gnuplot_script(kind: str, out_dir: Path, sweep_param: str | None = None) -> str:
    """A small gnuplot script that plots the CSV files written to ``out_dir``."""
    lines = ["set datafile separator ','", "set key autotitle columnhead", "set grid"]
    if kind == "characterize":
        lines.append("set xlabel 'Voltage [Vpp]'")
        for name, (_, unit) in CURVES.items():
            stem = name[:-4]
            lines += [f"set term pngcairo; set output '{out_dir / stem}.png'",
                      f"set ylabel '{stem} [{unit}]'",
                      f"plot '{out_dir / name}' using 1:2 with linespoints title '{stem}'"]
    elif kind == "simulate":
        lines += [f"set term pngcairo; set output '{out_dir / 'path.png'}'", "set size ratio -1",
                  "set xlabel 'x [mm]'; set ylabel 'y [mm]'",
                  f"plot '{out_dir / 'trace.csv'}' using 2:3 with lines title 'body centre'",
                  f"set term pngcairo; set output '{out_dir / 'shape.png'}'", "set size noratio",
                  "set xlabel 't [s]'; set ylabel 'dimension [mm]'",
                  f"plot '{out_dir / 'trace.csv'}' using 1:5 with lines title 'L', '' using 1:6 with lines title 'W'"]
    else:
        lines += [f"set term pngcairo; set output '{out_dir / 'sweep.png'}'",
                  f"set xlabel '{sweep_param}'; set ylabel 'mean speed [mm/s]'",
                  f"plot '{out_dir / 'sweep.csv'}' using 1:4 with linespoints title 'mean_speed'"]
    return "\n".join(lines) + "\n"


