"""Quasi-static locomotion simulator.

Each step advances the pose by the cycle-averaged stride velocity, then
finds the body shape that fits the walls around the new pose. The body
dimension across the direction of travel complies with the walls; if no
reachable shape fits, the advance is cancelled and the state is marked
stuck. Yaw never changes.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .actuator import DEFAULT_ACTUATOR, ROBOT_MASS_G, ActuatorParams
from .body import DEFAULT_BODY, BodyShape, BodyShapeParams, Pose, dims_from_shape, equilibrium_shape
from .environment import CorridorEnvironment, box_clearances, lateral_limit, signed_clearances
from .errors import ClariError, InfeasiblePassageError
from .gait import LEGS, GaitSchedule, GaitSpec, phase_table, stroke_direction
from .transmission import DEFAULT_LEG, LegModuleParams, tip_lift_block_force, tip_swing_deflection

TOP_SPEED = 60.0  # mm/s, 10 Hz trot at 225 Vpp
PAYLOAD_MG = 380.0
BODY_LENGTH = 20.0  # mm
GRAVITY = 9.81

CONTACT_TOL = 1e-6  # mm
_MAX_FIXED_POINT = 20


def _default_eta_gait() -> float:
    return TOP_SPEED / (2 * tip_swing_deflection(DEFAULT_LEG, DEFAULT_ACTUATOR, DEFAULT_ACTUATOR.v_max) * 10.0)


@dataclass(frozen=True)
class RobotConfig:
    actuator: ActuatorParams = DEFAULT_ACTUATOR
    legs: LegModuleParams = DEFAULT_LEG
    body: BodyShapeParams = DEFAULT_BODY
    mass_total: float = ROBOT_MASS_G + PAYLOAD_MG * 1e-3  # g
    eta_gait: float = field(default_factory=_default_eta_gait)
    leg_scales: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)  # FL, FR, RR, RL
    wall_drag: float = 1.0  # speed multiplier while touching a wall

    def __post_init__(self):
        if not 0 < self.eta_gait <= 1.2:
            raise ClariError(f"eta_gait must be in (0, 1.2], got {self.eta_gait}")
        if self.mass_total <= 0:
            raise ClariError(f"mass_total must be positive, got {self.mass_total}")
        if len(self.leg_scales) != 4 or any(not 0 < k <= 1 for k in self.leg_scales):
            raise ClariError(f"leg_scales must be four factors in (0, 1], got {self.leg_scales}")
        if not 0 < self.wall_drag <= 1:
            raise ClariError(f"wall_drag must be in (0, 1], got {self.wall_drag}")

    @property
    def scale_map(self) -> dict[str, float]:
        return dict(zip(LEGS, self.leg_scales))


DEFAULT_CONFIG = RobotConfig()


@dataclass(frozen=True)
class SimState:
    t: float
    pose: Pose
    shape: BodyShape
    contacts: tuple[bool, ...] = ()
    segment: int = 0
    stuck: bool = False


@dataclass
class SimTrace:
    states: list[SimState]
    dt: float
    params: BodyShapeParams = DEFAULT_BODY

    def __len__(self):
        return len(self.states)

    @property
    def final(self) -> SimState:
        return self.states[-1]

    def dims(self) -> np.ndarray:
        return np.array([dims_from_shape(s.shape, self.params) for s in self.states])

    def positions(self) -> np.ndarray:
        return np.array([(s.pose.x, s.pose.y) for s in self.states])

    def rows(self):
        """Rows for ``t,x,y,yaw,L,W,theta,side,stuck,segment``."""
        for s in self.states:
            L, W = dims_from_shape(s.shape, self.params)
            yield (s.t, s.pose.x, s.pose.y, s.pose.yaw, L, W, s.shape.theta, s.shape.side,
                   int(s.stuck), s.segment)


def stride_velocity(spec: GaitSpec, config: RobotConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Cycle-averaged body-frame velocity (mm/s).

    Speed is ``eta_gait * 2 * A * f`` with ``A`` the peak-to-peak tip swing
    (scaled by the mean per-leg amplitude factor); direction comes from the
    phase table's net stance stroke.
    """
    amp = tip_swing_deflection(config.legs, config.actuator, spec.amplitude_vpp)
    scales = config.scale_map
    speed = config.eta_gait * 2.0 * amp * spec.frequency * float(np.mean(config.leg_scales))
    return speed * stroke_direction(phase_table(spec), scales)


def _axial_axis(spec: GaitSpec) -> int:
    return 0 if spec.direction in ("+X", "-X") else 1


@functools.lru_cache(maxsize=4096)
def _equilibrium(limit: float, axial: int, params: BodyShapeParams) -> BodyShape:
    if axial == 0:
        return equilibrium_shape(limit, params)
    return equilibrium_shape(None, params, length_limit=limit)


def shape_at(pose: Pose, env: CorridorEnvironment, axial: int,
             params: BodyShapeParams = DEFAULT_BODY) -> BodyShape:
    """Equilibrium shape at ``pose``, with the body axis ``axial`` along the direction of travel.

    Raises :class:`InfeasiblePassageError` if the walls cannot be cleared.
    """
    boxes = env.boxes(pose)
    shape = _equilibrium(math.inf, axial, params)
    for _ in range(_MAX_FIXED_POINT):
        half = 0.5 * dims_from_shape(shape, params)[axial]
        nxt = _equilibrium(lateral_limit(boxes, half, axial), axial, params)
        if nxt == shape:
            break
        shape = nxt
    else:
        raise ClariError("wall constraint iteration did not settle")
    clear = box_clearances(boxes, *dims_from_shape(shape, params))
    if len(clear) and clear.min() < -CONTACT_TOL:
        raise InfeasiblePassageError(f"body overlaps a wall by {-clear.min():.3g} mm at {pose}")
    return shape


def _contacts(env, shape, pose, params) -> tuple[bool, ...]:
    return tuple(bool(c <= CONTACT_TOL) for c in signed_clearances(env, shape, pose, params))


def initial_state(schedule: GaitSchedule, env: CorridorEnvironment, config: RobotConfig = DEFAULT_CONFIG,
                  start: Pose = Pose()) -> SimState:
    _, _, spec = schedule.segment_at(0.0)
    shape = shape_at(start, env, _axial_axis(spec), config.body)
    return SimState(0.0, start, shape, _contacts(env, shape, start, config.body), 0, False)


def step(state: SimState, env: CorridorEnvironment, schedule: GaitSchedule, dt: float,
         config: RobotConfig = DEFAULT_CONFIG) -> SimState:
    if not dt > 0:
        raise ClariError(f"dt must be positive, got {dt}")
    _, _, spec = schedule.segment_at(state.t)
    axial = _axial_axis(spec)
    v = stride_velocity(spec, config)
    if config.wall_drag != 1.0 and any(state.contacts):
        v = v * config.wall_drag
    c, s = math.cos(state.pose.yaw), math.sin(state.pose.yaw)
    vx, vy = c * v[0] - s * v[1], s * v[0] + c * v[1]
    t_new = (round(state.t / dt) + 1) * dt
    pose = Pose(state.pose.x + vx * dt, state.pose.y + vy * dt, state.pose.yaw)
    stuck = False
    try:
        shape = shape_at(pose, env, axial, config.body)
    except InfeasiblePassageError:
        stuck = True
        pose = state.pose
        try:
            shape = shape_at(pose, env, axial, config.body)
        except InfeasiblePassageError:
            shape = state.shape
    seg, _, _ = schedule.segment_at(min(t_new, schedule.total_duration))
    return SimState(t_new, pose, shape, _contacts(env, shape, pose, config.body), seg, stuck)


def run(schedule: GaitSchedule, env: CorridorEnvironment, config: RobotConfig = DEFAULT_CONFIG,
        dt: float = 1e-3, start: Pose = Pose()) -> SimTrace:
    """Integrate the whole schedule at fixed step ``dt``; the trace holds every sample including t=0."""
    if not dt > 0:
        raise ClariError(f"dt must be positive, got {dt}")
    f_max = max(spec.frequency for _, spec in schedule.segments)
    if dt > 0.25 / f_max + 1e-15:
        raise ClariError(f"dt={dt} s exceeds a quarter of the shortest gait period ({0.25 / f_max} s)")
    total = schedule.total_duration
    n = round(total / dt)
    if abs(n * dt - total) > 1e-9:
        raise ClariError(f"schedule duration {total} s is not a whole number of dt={dt} s steps")
    state = initial_state(schedule, env, config, start)
    states = [state]
    for _ in range(n):
        state = step(state, env, schedule, dt, config)
        states.append(state)
    return SimTrace(states, dt, config.body)


def min_clearance(trace: SimTrace, env: CorridorEnvironment) -> float:
    """Smallest signed body-to-wall clearance over the trace (inf without walls)."""
    if not env.walls:
        return math.inf
    return float(min(signed_clearances(env, s.shape, s.pose, trace.params).min() for s in trace.states))


def payload_ratio(config: RobotConfig = DEFAULT_CONFIG, n_support: int = 4, margin: float = 1.0,
                  voltage: float | None = None) -> float:
    """Payload-to-body-mass ratio from static lift block force.

    ``n_support`` legs share the load, each holding ``margin`` times its lift
    block force at ``voltage`` (default: the actuator's maximum). The robot
    mass excludes the experiment payload.
    """
    v = config.actuator.v_max if voltage is None else voltage
    force = tip_lift_block_force(config.legs, config.actuator, v)
    holdable_g = n_support * margin * force / GRAVITY
    return (holdable_g - ROBOT_MASS_G) / ROBOT_MASS_G


__all__ = [
    "RobotConfig", "SimState", "SimTrace", "DEFAULT_CONFIG", "stride_velocity", "shape_at", "step", "run",
    "initial_state", "min_clearance", "payload_ratio",
]
