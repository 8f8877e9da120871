"""Corridor environments built from axis-aligned wall segments."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .body import BodyShape, BodyShapeParams, Pose, dims_from_shape
from .errors import ClariError

_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class Wall:
    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self):
        dx, dy = self.x2 - self.x1, self.y2 - self.y1
        n = math.hypot(dx, dy)
        if n == 0:
            raise ClariError(f"degenerate wall segment {self}")
        if min(abs(dx), abs(dy)) > _ALIGN_TOL * n:
            raise ClariError(f"wall {self} is not axis-aligned")

    def rotated(self, quarter_turns: int, about=(0.0, 0.0)) -> "Wall":
        (a, b), (c, d) = (_rot90((self.x1, self.y1), quarter_turns, about),
                          _rot90((self.x2, self.y2), quarter_turns, about))
        return Wall(a, b, c, d)


def _rot90(p, k, about):
    x, y = p[0] - about[0], p[1] - about[1]
    for _ in range(k % 4):
        x, y = -y, x
    return x + about[0], y + about[1]


@dataclass(frozen=True)
class CorridorEnvironment:
    walls: tuple[Wall, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "walls", tuple(self.walls))

    def __add__(self, other: "CorridorEnvironment") -> "CorridorEnvironment":
        return CorridorEnvironment(self.walls + other.walls, self.name or other.name)

    def rotated(self, quarter_turns: int, about=(0.0, 0.0)) -> "CorridorEnvironment":
        return CorridorEnvironment(tuple(w.rotated(quarter_turns, about) for w in self.walls), self.name)

    @cached_property
    def _points(self) -> np.ndarray:
        return np.array([[w.x1, w.y1, w.x2, w.y2] for w in self.walls], dtype=float).reshape(-1, 4)

    def boxes(self, pose: Pose) -> np.ndarray:
        """Walls as body-frame boxes ``[xmin, xmax, ymin, ymax]`` (n x 4).

        Walls must remain axis-aligned in the body frame, i.e. the yaw is a
        multiple of 90 degrees.
        """
        if not self.walls:
            return np.zeros((0, 4))
        c, s = math.cos(pose.yaw), math.sin(pose.yaw)
        rel = self._points - np.array([pose.x, pose.y, pose.x, pose.y])
        bx1 = c * rel[:, 0] + s * rel[:, 1]
        by1 = -s * rel[:, 0] + c * rel[:, 1]
        bx2 = c * rel[:, 2] + s * rel[:, 3]
        by2 = -s * rel[:, 2] + c * rel[:, 3]
        dx, dy = np.abs(bx2 - bx1), np.abs(by2 - by1)
        if np.any(np.minimum(dx, dy) > _ALIGN_TOL * np.hypot(dx, dy)):
            raise ClariError(f"walls are not axis-aligned in the body frame at yaw={pose.yaw}")
        out = np.column_stack([np.minimum(bx1, bx2), np.maximum(bx1, bx2),
                               np.minimum(by1, by2), np.maximum(by1, by2)])
        # snap the collapsed coordinate so rotations cannot leave slivers
        flat_x = dx <= dy
        out[flat_x, 0:2] = 0.5 * (out[flat_x, 0] + out[flat_x, 1])[:, None]
        out[~flat_x, 2:4] = 0.5 * (out[~flat_x, 2] + out[~flat_x, 3])[:, None]
        return out


def signed_clearances(env: CorridorEnvironment, shape: BodyShape, pose: Pose,
                      params: BodyShapeParams) -> np.ndarray:
    """Signed distance (mm) from the body footprint to each wall; negative means overlap."""
    L, W = dims_from_shape(shape, params)
    return box_clearances(env.boxes(pose), L, W)


def box_clearances(boxes: np.ndarray, L: float, W: float) -> np.ndarray:
    """Signed distances from a centred ``L`` x ``W`` rectangle to body-frame wall boxes."""
    if len(boxes) == 0:
        return np.zeros(0)
    gx = np.maximum(boxes[:, 0] - 0.5 * L, -0.5 * L - boxes[:, 1])
    gy = np.maximum(boxes[:, 2] - 0.5 * W, -0.5 * W - boxes[:, 3])
    outside = (gx > 0) | (gy > 0)
    return np.where(outside, np.hypot(np.maximum(gx, 0), np.maximum(gy, 0)), np.maximum(gx, gy))


def lateral_limit(boxes: np.ndarray, axial_half: float, axial: int, tol: float = 1e-9) -> float:
    """Largest lateral body extent that clears every wall overlapping the axial span.

    ``axial`` is 0 when the body moves along its x axis, 1 along y.
    """
    if len(boxes) == 0:
        return math.inf
    if axial == 0:
        alo, ahi, llo, lhi = boxes[:, 0], boxes[:, 1], boxes[:, 2], boxes[:, 3]
    else:
        alo, ahi, llo, lhi = boxes[:, 2], boxes[:, 3], boxes[:, 0], boxes[:, 1]
    hit = (alo < axial_half - tol) & (ahi > -axial_half + tol)
    if not np.any(hit):
        return math.inf
    dist = np.where((llo <= 0) & (lhi >= 0), 0.0, np.minimum(np.abs(llo), np.abs(lhi)))
    return float(2 * dist[hit].min())


def open_floor() -> CorridorEnvironment:
    return CorridorEnvironment((), "open_floor")


def straight_gap(x_start: float, x_end: float, gap: float, center: float = 0.0,
                 axis: str = "x") -> CorridorEnvironment:
    """Two parallel walls ``gap`` apart, running along ``axis`` from ``x_start`` to ``x_end``."""
    if gap <= 0:
        raise ClariError(f"gap must be positive, got {gap}")
    if x_end <= x_start:
        raise ClariError("corridor end must lie beyond its start")
    h = 0.5 * gap
    walls = (Wall(x_start, center + h, x_end, center + h), Wall(x_start, center - h, x_end, center - h))
    if axis == "y":
        walls = tuple(Wall(w.y1, w.x1, w.y2, w.x2) for w in walls)
    elif axis != "x":
        raise ClariError(f"axis must be 'x' or 'y', got {axis!r}")
    return CorridorEnvironment(walls, "straight_gap")


def bend_90(corner=(0.0, 0.0), gap: float = 16.5, pocket: float = 24.0,
            in_length: float = 48.0, out_length: float = 48.0) -> CorridorEnvironment:
    """Corridor entering from +x, turning 90 degrees and leaving towards -y.

    The arms are ``gap`` wide and meet in a square pocket of side ``pocket``
    centred on ``corner``; the pocket lets the body switch between the
    long and wide configurations.
    """
    if gap <= 0 or pocket < gap:
        raise ClariError(f"need 0 < gap <= pocket, got gap={gap}, pocket={pocket}")
    cx, cy = corner
    h, p = 0.5 * gap, 0.5 * pocket
    walls = [
        Wall(cx - p, cy + p, cx + p, cy + p),
        Wall(cx - p, cy - p, cx - p, cy + p),
        Wall(cx + p, cy + h, cx + p + in_length, cy + h),
        Wall(cx + p, cy - h, cx + p + in_length, cy - h),
        Wall(cx - h, cy - p - out_length, cx - h, cy - p),
        Wall(cx + h, cy - p - out_length, cx + h, cy - p),
    ]
    if p > h:
        walls += [
            Wall(cx + p, cy + h, cx + p, cy + p),
            Wall(cx + p, cy - p, cx + p, cy - h),
            Wall(cx - p, cy - p, cx - h, cy - p),
            Wall(cx + h, cy - p, cx + p, cy - p),
        ]
    return CorridorEnvironment(tuple(walls), "bend_90")
