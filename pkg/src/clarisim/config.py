"""Scenario file schema (JSON) and conversion to simulator objects.

Keys carry their units as suffixes. Unknown keys are rejected.
"""
from __future__ import annotations

import json
import math
from dataclasses import replace
from importlib import resources
from pathlib import Path
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from . import actuator as act
from .body import BodyShapeParams, Pose
from .environment import CorridorEnvironment, Wall, bend_90, straight_gap
from .errors import ConfigError
from .gait import GaitSchedule, GaitSpec
from .sim import DEFAULT_CONFIG, RobotConfig

SCHEMA_VERSION = 1


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class RobotOverrides(_Model):
    eta_gait: float | None = None
    mass_total_g: float | None = None
    leg_amplitude_scales: tuple[float, float, float, float] | None = None
    wall_drag_factor: float | None = None
    v_max_v: float | None = None
    free_deflection_um: float | None = None  # at v_max
    blocked_force_mN: float | None = None  # at v_max
    k_theta_uNm_per_rad: float | None = None
    k_axial_mN_per_mm: float | None = None
    corner_offset_mm: float | None = None


class GapCorridor(_Model):
    kind: Literal["gap"]
    x_start_mm: float
    x_end_mm: float
    gap_mm: float
    center_mm: float = 0.0
    axis: Literal["x", "y"] = "x"


class BendCorridor(_Model):
    kind: Literal["bend90"]
    gap_mm: float
    corner_x_mm: float = 0.0
    corner_y_mm: float = 0.0
    pocket_mm: float = 24.0
    in_length_mm: float = 48.0
    out_length_mm: float = 48.0


Corridor = Annotated[Union[GapCorridor, BendCorridor], Field(discriminator="kind")]


class EnvironmentModel(_Model):
    walls: list[tuple[float, float, float, float]] = []
    corridors: list[Corridor] = []


class StartModel(_Model):
    x_mm: float = 0.0
    y_mm: float = 0.0
    yaw_rad: float = 0.0


class SegmentModel(_Model):
    duration_s: float
    pattern: Literal["trot"] = "trot"
    frequency_hz: float
    amplitude_vpp: float
    direction: Literal["+X", "-X", "+Y", "-Y"]
    lift_swing_phase_rad: float = math.pi / 2
    bias_fraction: float = 0.0


class CharacterizeModel(_Model):
    v_start_v: float = 0.0
    v_end_v: float = 225.0
    v_step_v: float = 225.0


class Scenario(_Model):
    schema_version: Literal[1]
    name: str
    description: str = ""
    robot: RobotOverrides = RobotOverrides()
    environment: EnvironmentModel = EnvironmentModel()
    start: StartModel = StartModel()
    schedule: list[SegmentModel] = []
    dt_s: float = 1e-3
    outputs: list[Literal["trace", "summary", "sweep", "curves"]] = ["trace", "summary"]
    characterize: CharacterizeModel | None = None

    def robot_config(self) -> RobotConfig:
        return build_robot_config(self.robot)

    def environment_obj(self) -> CorridorEnvironment:
        env = CorridorEnvironment(tuple(Wall(*w) for w in self.environment.walls), self.name)
        for c in self.environment.corridors:
            if isinstance(c, GapCorridor):
                env = env + straight_gap(c.x_start_mm, c.x_end_mm, c.gap_mm, c.center_mm, c.axis)
            else:
                env = env + bend_90((c.corner_x_mm, c.corner_y_mm), c.gap_mm, c.pocket_mm,
                                    c.in_length_mm, c.out_length_mm)
        return env

    def gait_schedule(self) -> GaitSchedule:
        if not self.schedule:
            raise ConfigError(f"scenario {self.name!r} has no gait schedule")
        return GaitSchedule(tuple(
            (s.duration_s, GaitSpec(s.pattern, s.frequency_hz, s.amplitude_vpp, s.direction,
                                    s.lift_swing_phase_rad, s.bias_fraction))
            for s in self.schedule))

    def start_pose(self) -> Pose:
        return Pose(self.start.x_mm, self.start.y_mm, self.start.yaw_rad)


def build_robot_config(o: RobotOverrides) -> RobotConfig:
    cfg = DEFAULT_CONFIG
    if any(v is not None for v in (o.v_max_v, o.free_deflection_um, o.blocked_force_mN)):
        v_max = o.v_max_v if o.v_max_v is not None else act.V_MAX
        d = o.free_deflection_um if o.free_deflection_um is not None else act.DEFAULT_ACTUATOR.c_defl * v_max
        f = o.blocked_force_mN if o.blocked_force_mN is not None else act.DEFAULT_ACTUATOR.c_force * v_max
        cfg = replace(cfg, actuator=act.calibrate((v_max, d), (v_max, f), v_max, act.ACTUATOR_MASS_MG))
    body = {}
    if o.k_theta_uNm_per_rad is not None:
        body["k_theta"] = o.k_theta_uNm_per_rad
    if o.k_axial_mN_per_mm is not None:
        body["k_axial"] = o.k_axial_mN_per_mm
    if o.corner_offset_mm is not None:
        body["corner_offset"] = o.corner_offset_mm
    if body:
        cfg = replace(cfg, body=BodyShapeParams(**body))
    simple = {"eta_gait": o.eta_gait, "mass_total": o.mass_total_g,
              "leg_scales": o.leg_amplitude_scales, "wall_drag": o.wall_drag_factor}
    simple = {k: v for k, v in simple.items() if v is not None}
    return replace(cfg, **simple) if simple else cfg


def parse_scenario(data: dict) -> Scenario:
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid scenario: {e}") from None


def builtin_scenarios() -> list[str]:
    root = resources.files("clarisim") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_scenario(ref: str | Path) -> Scenario:
    """Load a scenario from a JSON path, or a packaged scenario by name."""
    path = Path(ref)
    if not path.exists():
        name = str(ref).removeprefix("builtin:")
        if name.endswith(".json"):
            name = name[:-5]
        if name not in builtin_scenarios():
            raise ConfigError(f"scenario file {ref} not found (and no built-in scenario of that name)")
        text = (resources.files("clarisim") / "scenarios" / f"{name}.json").read_text()
    else:
        try:
            text = path.read_text()
        except OSError as e:
            raise ConfigError(f"cannot read {path}: {e}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON in {ref}: {e}") from None
    return parse_scenario(data)


__all__ = ["Scenario", "RobotOverrides", "load_scenario", "parse_scenario", "builtin_scenarios",
           "build_robot_config", "SCHEMA_VERSION"]
