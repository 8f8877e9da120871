"""Leg transmission: lever-ratio linearization of the spherical five-bar.

Lift and swing are treated as decoupled channels. Each channel multiplies
actuator displacement by its transmission ratio and a calibrated efficiency,
and divides actuator force by the ratio.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .actuator import DEFAULT_ACTUATOR, ActuatorParams, DriveCommand, blocked_force, free_deflection
from .errors import ClariError

# leg-tip endpoints at 225 Vpp
SWING_TIP_MM = 2.85
LIFT_TIP_MM = 2.3
LIFT_BLOCK_MN = 14.3

_RATIO_RTOL = 1e-6


@dataclass(frozen=True)
class LegModuleParams:
    t_ratio_lift: float = 12.5
    t_ratio_swing: float = 10.0
    l_i: float = 500.0  # um
    s_i: float = 450.0  # um
    tip_drop: float = 6.25  # mm
    leg_length: float = 4.5  # mm
    eta_disp_lift: float = LIFT_TIP_MM / (12.5 * DEFAULT_ACTUATOR.c_defl * DEFAULT_ACTUATOR.v_max * 1e-3)
    eta_disp_swing: float = SWING_TIP_MM / (10.0 * DEFAULT_ACTUATOR.c_defl * DEFAULT_ACTUATOR.v_max * 1e-3)
    eta_force_lift: float = LIFT_BLOCK_MN * 12.5 / (DEFAULT_ACTUATOR.c_force * DEFAULT_ACTUATOR.v_max)

    def __post_init__(self):
        if not math.isclose(self.t_ratio_lift, self.tip_drop / (self.l_i * 1e-3), rel_tol=_RATIO_RTOL):
            raise ClariError(
                f"lift ratio {self.t_ratio_lift} inconsistent with tip_drop/l_i = "
                f"{self.tip_drop / (self.l_i * 1e-3)}"
            )
        if not math.isclose(self.t_ratio_swing, self.leg_length / (self.s_i * 1e-3), rel_tol=_RATIO_RTOL):
            raise ClariError(
                f"swing ratio {self.t_ratio_swing} inconsistent with leg_length/s_i = "
                f"{self.leg_length / (self.s_i * 1e-3)}"
            )
        for name in ("eta_disp_lift", "eta_disp_swing", "eta_force_lift"):
            eta = getattr(self, name)
            if not 0.0 < eta <= 1.0:
                raise ClariError(f"{name} must be in (0, 1], got {eta}")


@dataclass(frozen=True)
class LegTipState:
    swing: float  # mm
    lift: float  # mm


DEFAULT_LEG = LegModuleParams()


def tip_swing_deflection(leg: LegModuleParams, act: ActuatorParams, v: float) -> float:
    """Peak-to-peak leg-tip swing range in mm."""
    return leg.eta_disp_swing * leg.t_ratio_swing * free_deflection(act, v) * 1e-3


def tip_lift_deflection(leg: LegModuleParams, act: ActuatorParams, v: float) -> float:
    return leg.eta_disp_lift * leg.t_ratio_lift * free_deflection(act, v) * 1e-3


def tip_lift_block_force(leg: LegModuleParams, act: ActuatorParams, v: float) -> float:
    """Vertical force (mN) the leg tip holds with lift output blocked."""
    return leg.eta_force_lift * blocked_force(act, v) / leg.t_ratio_lift


def tip_trajectory(leg: LegModuleParams, act: ActuatorParams, lift_cmd: DriveCommand,
                   swing_cmd: DriveCommand, n_samples: int) -> list[LegTipState]:
    """Sample the quasi-static tip path over one drive period.

    Samples sit at ``t_k = k T / n``. Each axis oscillates with half its
    peak-to-peak tip range.
    """
    if lift_cmd.frequency != swing_cmd.frequency:
        raise ClariError(
            f"lift and swing commands must share a frequency ({lift_cmd.frequency} Hz vs "
            f"{swing_cmd.frequency} Hz)"
        )
    if n_samples < 4:
        raise ClariError(f"n_samples must be >= 4, got {n_samples}")
    half_swing = 0.5 * tip_swing_deflection(leg, act, swing_cmd.amplitude_vpp)
    half_lift = 0.5 * tip_lift_deflection(leg, act, lift_cmd.amplitude_vpp)
    phase = 2.0 * np.pi * np.arange(n_samples) / n_samples
    swing = half_swing * np.sin(phase + swing_cmd.phase)
    lift = half_lift * np.sin(phase + lift_cmd.phase)
    return [LegTipState(float(s), float(lf)) for s, lf in zip(swing, lift)]
