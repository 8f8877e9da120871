"""Gait signal engine: trot phase tables and per-actuator drive commands.

Legs sit at the corners of a square body with swing axes tangent to the
body outline, so the robot is symmetric under 90 degree rotations.
Walking direction is selected purely by remapping phases and swing
polarities between legs; the body never turns.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .actuator import DEFAULT_ACTUATOR, ActuatorParams, DriveCommand
from .errors import ClariError, RangeError

# ring order, clockwise seen from above (x forward, y left)
LEGS = ("FL", "FR", "RR", "RL")
DIRECTIONS = ("+X", "-X", "+Y", "-Y")
PATTERNS = ("trot",)
FREQUENCY_BAND = (1.0, 10.0)  # Hz
AMPLIFIER_GAIN = 100.0

_S = math.sqrt(0.5)
SWING_AXES = {
    "FL": (-_S, _S),
    "FR": (_S, _S),
    "RR": (_S, -_S),
    "RL": (-_S, -_S),
}

DIRECTION_VECTORS = {"+X": (1.0, 0.0), "-X": (-1.0, 0.0), "+Y": (0.0, 1.0), "-Y": (0.0, -1.0)}


@dataclass(frozen=True)
class GaitSpec:
    pattern: str = "trot"
    frequency: float = 10.0  # Hz
    amplitude_vpp: float = 225.0
    direction: str = "+X"
    lift_swing_phase: float = math.pi / 2  # rad, lift leads swing
    bias_fraction: float = 0.0

    def __post_init__(self):
        if self.pattern not in PATTERNS:
            raise ClariError(f"unsupported gait pattern {self.pattern!r}; known: {PATTERNS}")
        if self.direction not in DIRECTIONS:
            raise ClariError(f"unsupported direction {self.direction!r}; known: {DIRECTIONS}")
        lo, hi = FREQUENCY_BAND
        if not lo <= self.frequency <= hi:
            raise RangeError(f"frequency {self.frequency} Hz outside the supported band [{lo}, {hi}] Hz")
        if self.amplitude_vpp < 0:
            raise RangeError(f"amplitude_vpp must be >= 0, got {self.amplitude_vpp}")

    @property
    def period(self) -> float:
        return 1.0 / self.frequency


@dataclass(frozen=True)
class LegPhase:
    swing_phase: float
    lift_phase: float
    swing_sign: int


PhaseTable = Mapping[str, LegPhase]


@dataclass(frozen=True)
class GaitSchedule:
    segments: tuple[tuple[float, GaitSpec], ...]

    def __post_init__(self):
        segs = tuple((float(d), s) for d, s in self.segments)
        if not segs:
            raise ClariError("gait schedule must contain at least one segment")
        for d, _ in segs:
            if not d > 0:
                raise ClariError(f"segment durations must be positive, got {d}")
        object.__setattr__(self, "segments", segs)

    @property
    def boundaries(self) -> list[float]:
        """Cumulative segment end times."""
        out, acc = [], 0.0
        for d, _ in self.segments:
            acc += d
            out.append(acc)
        return out

    @property
    def total_duration(self) -> float:
        return self.boundaries[-1]

    def segment_at(self, t: float, eps: float = 1e-9) -> tuple[int, float, GaitSpec]:
        """Return ``(index, segment start time, spec)`` for time ``t``.

        Times within ``eps`` of a boundary belong to the later segment; the
        final instant belongs to the last segment.
        """
        ends = self.boundaries
        if t < -eps or t > ends[-1] + eps:
            raise RangeError(f"t={t} s outside schedule [0, {ends[-1]}] s")
        i = min(bisect.bisect_right(ends, t + eps), len(ends) - 1)
        start = ends[i - 1] if i else 0.0
        return i, start, self.segments[i][1]


def _trot_plus_x(lift_swing_phase: float) -> dict[str, LegPhase]:
    swing = {"FL": 0.0, "RR": 0.0, "FR": math.pi, "RL": math.pi}
    sign = {"FL": -1, "FR": 1, "RR": 1, "RL": -1}
    return {leg: LegPhase(swing[leg], (swing[leg] + lift_swing_phase) % (2 * math.pi), sign[leg]) for leg in LEGS}


def _negate(table: PhaseTable) -> dict[str, LegPhase]:
    return {leg: LegPhase(p.swing_phase, p.lift_phase, -p.swing_sign) for leg, p in table.items()}


def rotate_table(table: PhaseTable) -> dict[str, LegPhase]:
    """Relabel legs so the gait's motion turns +90 degrees about the body center.

    Each leg takes the entry of its clockwise neighbour: FL <- FR <- RR <- RL <- FL.
    """
    return {leg: table[LEGS[(i + 1) % 4]] for i, leg in enumerate(LEGS)}


def phase_table(spec: GaitSpec) -> dict[str, LegPhase]:
    if spec.pattern != "trot":
        raise ClariError(f"unsupported gait pattern {spec.pattern!r}")
    base = _trot_plus_x(spec.lift_swing_phase)
    if spec.direction == "+X":
        return base
    if spec.direction == "-X":
        return _negate(base)
    if spec.direction == "+Y":
        return rotate_table(base)
    return _negate(rotate_table(base))


def stroke_direction(table: PhaseTable, leg_scales: Mapping[str, float] | None = None) -> np.ndarray:
    """Unit body-frame direction of the net stance stroke implied by a phase table."""
    v = np.zeros(2)
    for leg, p in table.items():
        k = 1.0 if leg_scales is None else leg_scales.get(leg, 1.0)
        v += p.swing_sign * k * np.asarray(SWING_AXES[leg])
    n = np.hypot(*v)
    if n == 0:
        return v
    return v / n


def drive_commands(spec: GaitSpec, actuator: ActuatorParams = DEFAULT_ACTUATOR,
                   leg_scales: Mapping[str, float] | None = None) -> dict[str, tuple[DriveCommand, DriveCommand]]:
    """Per-leg ``(lift, swing)`` commands for one gait segment.

    A negative swing sign is applied as a half-period shift of the swing
    drive, which reverses that leg's stance stroke.
    """
    if spec.amplitude_vpp > actuator.v_max:
        raise RangeError(f"gait amplitude {spec.amplitude_vpp} Vpp exceeds actuator limit v_max={actuator.v_max} V")
    out = {}
    for leg, p in phase_table(spec).items():
        amp = spec.amplitude_vpp * (1.0 if leg_scales is None else leg_scales.get(leg, 1.0))
        swing_phase = (p.swing_phase + (math.pi if p.swing_sign < 0 else 0.0)) % (2 * math.pi)
        lift = DriveCommand(amp, spec.frequency, p.lift_phase, spec.bias_fraction)
        swing = DriveCommand(amp, spec.frequency, swing_phase, spec.bias_fraction)
        out[leg] = (lift, swing)
    return out


CHANNELS = tuple(f"{leg}_{axis}" for leg in LEGS for axis in ("lift", "swing"))


def sample_voltages(schedule: GaitSchedule, t: float, actuator: ActuatorParams = DEFAULT_ACTUATOR,
                    leg_scales: Mapping[str, float] | None = None) -> np.ndarray:
    """Amplifier-output voltages of the 8 channels (order :data:`CHANNELS`) at time ``t``.

    Oscillator phase restarts at every segment boundary.
    """
    if not 0.0 <= t < schedule.total_duration:
        raise RangeError(f"t={t} s outside schedule [0, {schedule.total_duration}) s")
    _, start, spec = schedule.segment_at(t, eps=0.0)
    tau = t - start
    cmds = drive_commands(spec, actuator, leg_scales)
    return np.array([c.value(tau) for leg in LEGS for c in cmds[leg]])


def preamp_samples(schedule: GaitSchedule, t: float, actuator: ActuatorParams = DEFAULT_ACTUATOR,
                   leg_scales: Mapping[str, float] | None = None) -> np.ndarray:
    """Low-voltage reference signals that the amplifier boosts to drive levels."""
    return sample_voltages(schedule, t, actuator, leg_scales) / AMPLIFIER_GAIN
