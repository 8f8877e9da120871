"""Linear quasi-static model of a bimorph piezoelectric actuator.

Free deflection and blocked force both scale linearly with peak-to-peak
drive voltage. Loaded deflection follows the straight load line between
the two endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ClariError, RangeError

GRAVITY = 9.81  # m/s^2
ROBOT_MASS_G = 0.976
ACTUATOR_MASS_MG = 544.0 / 8

# calibration points at full drive
V_MAX = 225.0
FREE_DEFLECTION_UM = 405.0
BLOCKED_FORCE_MN = 287.2  # 30 x body weight, rounded


@dataclass(frozen=True)
class ActuatorParams:
    c_defl: float  # um / V
    c_force: float  # mN / V
    v_max: float = V_MAX
    mass: float = ACTUATOR_MASS_MG  # mg

    def __post_init__(self):
        if self.c_defl <= 0 or self.c_force <= 0 or self.v_max <= 0:
            raise ClariError(
                f"actuator coefficients must be positive, got c_defl={self.c_defl}, "
                f"c_force={self.c_force}, v_max={self.v_max}"
            )

    @property
    def output_stiffness(self) -> float:
        """Load-line stiffness in mN/um."""
        return self.c_force / self.c_defl


@dataclass(frozen=True)
class DriveCommand:
    """Sinusoidal drive for one actuator channel.

    ``amplitude_vpp`` is peak-to-peak. The instantaneous voltage is
    ``bias_fraction * Vpp + Vpp/2 * sin(2*pi*f*t + phase)``.
    """

    amplitude_vpp: float
    frequency: float
    phase: float = 0.0
    bias_fraction: float = 0.0

    def __post_init__(self):
        if self.amplitude_vpp < 0:
            raise RangeError(f"amplitude_vpp must be >= 0, got {self.amplitude_vpp}")
        if self.frequency <= 0:
            raise RangeError(f"frequency must be > 0, got {self.frequency}")
        if not 0.0 <= self.bias_fraction <= 1.0:
            raise RangeError(f"bias_fraction must be in [0, 1], got {self.bias_fraction}")

    def value(self, t):
        return self.bias_fraction * self.amplitude_vpp + 0.5 * self.amplitude_vpp * np.sin(
            2.0 * np.pi * self.frequency * t + self.phase
        )

    def check_voltage(self, params: ActuatorParams) -> None:
        if self.amplitude_vpp > params.v_max:
            raise RangeError(
                f"drive amplitude {self.amplitude_vpp} Vpp exceeds actuator limit v_max={params.v_max} V"
            )


def _check_voltage(params: ActuatorParams, v: float) -> None:
    if not 0.0 <= v <= params.v_max:
        raise RangeError(f"voltage {v} V outside [0, v_max={params.v_max}] V")


def free_deflection(params: ActuatorParams, v: float) -> float:
    """Unloaded tip deflection in um at peak-to-peak voltage ``v``."""
    _check_voltage(params, v)
    return params.c_defl * v


def blocked_force(params: ActuatorParams, v: float) -> float:
    """Tip force in mN with the output held at zero displacement."""
    _check_voltage(params, v)
    return params.c_force * v


def deflection_under_load(params: ActuatorParams, v: float, f_ext: float) -> float:
    if f_ext < 0:
        raise RangeError(f"opposing force must be >= 0, got {f_ext}")
    free = free_deflection(params, v)
    if f_ext == 0:
        return free
    if f_ext >= blocked_force(params, v):
        return 0.0
    return max(0.0, free - f_ext / params.output_stiffness)


def calibrate(free_point, block_point, v_max: float, mass: float) -> ActuatorParams:
    """Fit the two linear coefficients to one free-deflection and one blocked-force point.

    Each point is ``(voltage, measurement)``.
    """
    (v_f, d), (v_b, f) = free_point, block_point
    for name, val in (("free-point voltage", v_f), ("free deflection", d),
                      ("block-point voltage", v_b), ("blocked force", f),
                      ("v_max", v_max), ("mass", mass)):
        if not val > 0:
            raise ClariError(f"{name} must be positive, got {val}")
    return ActuatorParams(c_defl=d / v_f, c_force=f / v_b, v_max=v_max, mass=mass)


DEFAULT_ACTUATOR = calibrate((V_MAX, FREE_DEFLECTION_UM), (V_MAX, BLOCKED_FORCE_MN), V_MAX, ACTUATOR_MASS_MG)
