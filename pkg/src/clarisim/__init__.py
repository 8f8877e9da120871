"""Quasi-static simulator and characterization bench for a body-compliant
piezo-driven quadrupedal microrobot."""
from .actuator import (DEFAULT_ACTUATOR, ActuatorParams, DriveCommand, blocked_force, calibrate,
                       deflection_under_load, free_deflection)
from .body import (DEFAULT_BODY, BodyShape, BodyShapeParams, Pose, dims_from_shape, equilibrium_shape,
                   footprint, neutral_shape, shape_energy, shape_from_dims)
from .environment import CorridorEnvironment, Wall, bend_90, open_floor, straight_gap
from .errors import (ClariError, ConfigError, InfeasiblePassageError, InfeasibleShapeError,
                     RangeError)
from .gait import GaitSchedule, GaitSpec, drive_commands, phase_table, sample_voltages
from .sim import DEFAULT_CONFIG, RobotConfig, SimState, SimTrace, payload_ratio, run, step, stride_velocity
from .transmission import (DEFAULT_LEG, LegModuleParams, LegTipState, tip_lift_block_force,
                           tip_lift_deflection, tip_swing_deflection, tip_trajectory)

__version__ = "0.1.0"
