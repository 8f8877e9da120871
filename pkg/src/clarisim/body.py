"""Planar pseudo-rigid-body model of the compliant body.

The four leg modules form a closed chain modeled as a rhombus of
connector sides of length ``a`` meeting at angle ``theta``, with a rigid
corner block of half-extent ``b`` at each vertex. Body length and width
are::

    L = 2 a sin(theta/2) + 2 b
    W = 2 a cos(theta/2) + 2 b

Joint rotation and side stretch are resisted by linear springs. Shapes
under wall contact are energy minima subject to upper bounds on L and/or W.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import ClariError, InfeasiblePassageError, InfeasibleShapeError

_TOL = 1e-9
_SCAN = 64


@dataclass(frozen=True)
class Pose:
    x: float = 0.0  # mm
    y: float = 0.0  # mm
    yaw: float = 0.0  # rad

    def __post_init__(self):
        for name in ("x", "y", "yaw"):
            object.__setattr__(self, name, float(getattr(self, name)))


@dataclass(frozen=True)
class BodyShape:
    theta: float  # rad
    side: float  # mm

    def __post_init__(self):
        if self.side < 0:
            raise ClariError(f"side length must be non-negative, got {self.side}")


@dataclass(frozen=True)
class BodyShapeParams:
    """Geometry, stiffness and reachable-set limits of the body.

    ``side_rest``, ``theta_limits`` and ``side_limits`` default to values
    derived from ``dims_neutral``, ``dims_extreme`` and ``corner_offset``:
    the extreme shape fixes the maximum joint angle and the side strain
    needed to reach it; the side-length band is symmetric about rest.
    Body dimensions are also bounded by mechanical stops spanning the
    extreme dimensions.
    """

    corner_offset: float = 4.0  # mm
    k_theta: float = 1.0  # uN*m/rad
    k_axial: float = 10.0  # mN/mm
    dims_neutral: tuple[float, float] = (20.0, 20.0)
    dims_extreme: tuple[float, float] = (24.0, 16.0)
    side_rest: float | None = None
    theta_limits: tuple[float, float] | None = None
    side_limits: tuple[float, float] | None = field(default=None)

    def __post_init__(self):
        b = self.corner_offset
        L0, W0 = self.dims_neutral
        Lx, Wx = self.dims_extreme
        if self.k_theta <= 0 or self.k_axial <= 0:
            raise ClariError("stiffnesses must be positive")
        if not math.isclose(L0, W0):
            raise ClariError(f"neutral shape must be square, got {self.dims_neutral}")
        if min(L0, Lx, Wx) <= 2 * b:
            raise ClariError(f"body dimensions must exceed twice the corner offset ({2 * b} mm)")
        if self.side_rest is None:
            object.__setattr__(self, "side_rest", math.hypot(L0 - 2 * b, W0 - 2 * b) / 2)
        if self.theta_limits is None:
            t_max = 2 * math.atan2(max(Lx, Wx) - 2 * b, min(Lx, Wx) - 2 * b)
            object.__setattr__(self, "theta_limits", (math.pi - t_max, t_max))
        if self.side_limits is None:
            a_ext = math.hypot(Lx - 2 * b, Wx - 2 * b) / 2
            da = abs(a_ext - self.side_rest)
            object.__setattr__(self, "side_limits", (self.side_rest - da, self.side_rest + da))
        lo, hi = self.theta_limits
        if not math.isclose(lo + hi, math.pi, abs_tol=1e-12):
            raise ClariError("theta limits must be symmetric about 90 degrees")
        if not lo < self.theta_rest < hi:
            raise ClariError("rest angle lies outside theta limits")
        if not 0 < self.side_limits[0] <= self.side_rest <= self.side_limits[1]:
            raise ClariError(f"invalid side limits {self.side_limits}")

    @property
    def theta_rest(self) -> float:
        L0, W0 = self.dims_neutral
        b = self.corner_offset
        return 2 * math.atan2(L0 - 2 * b, W0 - 2 * b)

    @property
    def dim_stops(self) -> tuple[float, float]:
        return min(self.dims_extreme), max(self.dims_extreme)

    @property
    def min_width(self) -> float:
        return self.dim_stops[0]


DEFAULT_BODY = BodyShapeParams()


def neutral_shape(params: BodyShapeParams = DEFAULT_BODY) -> BodyShape:
    return BodyShape(params.theta_rest, params.side_rest)


def dims_from_shape(shape: BodyShape, params: BodyShapeParams = DEFAULT_BODY) -> tuple[float, float]:
    """Return ``(L, W)`` in mm."""
    b = params.corner_offset
    half = 0.5 * shape.theta
    return (2 * shape.side * math.sin(half) + 2 * b,
            2 * shape.side * math.cos(half) + 2 * b)


def is_reachable(shape: BodyShape, params: BodyShapeParams = DEFAULT_BODY, tol: float = _TOL) -> bool:
    t_lo, t_hi = params.theta_limits
    a_lo, a_hi = params.side_limits
    d_lo, d_hi = params.dim_stops
    if not (t_lo - tol <= shape.theta <= t_hi + tol and a_lo - tol <= shape.side <= a_hi + tol):
        return False
    L, W = dims_from_shape(shape, params)
    return all(d_lo - tol <= d <= d_hi + tol for d in (L, W))


def shape_from_dims(L: float, W: float, params: BodyShapeParams = DEFAULT_BODY) -> BodyShape:
    """Inverse of :func:`dims_from_shape`; rejects shapes outside the reachable set."""
    b = params.corner_offset
    if L <= 2 * b or W <= 2 * b:
        raise InfeasibleShapeError(f"dimensions ({L}, {W}) mm must both exceed 2b = {2 * b} mm")
    shape = BodyShape(2 * math.atan2(L - 2 * b, W - 2 * b), 0.5 * math.hypot(L - 2 * b, W - 2 * b))
    if not is_reachable(shape, params):
        raise InfeasibleShapeError(
            f"dimensions ({L}, {W}) mm need theta={math.degrees(shape.theta):.3f} deg, "
            f"side={shape.side:.4f} mm, outside theta limits "
            f"{tuple(round(math.degrees(t), 3) for t in params.theta_limits)} deg / side limits "
            f"{params.side_limits} / dimension stops {params.dim_stops}"
        )
    return shape


def shape_energy(shape: BodyShape, params: BodyShapeParams = DEFAULT_BODY) -> float:
    """Elastic energy in uJ stored in the four joints and four sides."""
    dt = shape.theta - params.theta_rest
    da = shape.side - params.side_rest
    return 2 * params.k_theta * dt * dt + 2 * params.k_axial * da * da


def _width_active(w: float, length_cap: float, params: BodyShapeParams) -> BodyShape | None:
    """Minimum-energy reachable shape with W == w and L <= length_cap, or None."""
    b = params.corner_offset
    d_lo, d_hi = params.dim_stops
    if w < d_lo - _TOL:
        return None
    r = 0.5 * (w - 2 * b)
    a_lo, a_hi = params.side_limits
    t0 = params.theta_rest
    lo = max(t0, params.theta_limits[0])
    hi = params.theta_limits[1]
    # side(theta) = r / cos(theta/2) is increasing on (0, pi)
    if r / a_lo < 1:
        lo = max(lo, 2 * math.acos(r / a_lo))
    if r / a_hi >= 1:
        return None
    hi = min(hi, 2 * math.acos(r / a_hi))
    # L(theta) = 2 r tan(theta/2) + 2b is increasing as well
    l_cap = min(d_hi, length_cap)
    hi = min(hi, 2 * math.atan((l_cap - 2 * b) / (2 * r)))
    lo = max(lo, 2 * math.atan((d_lo - 2 * b) / (2 * r)))
    if lo > hi:
        if lo - hi > 1e-12:
            return None
        hi = lo

    def energy(theta):
        return 2 * params.k_theta * (theta - t0) ** 2 + 2 * params.k_axial * (r / math.cos(0.5 * theta) - params.side_rest) ** 2

    def slope(theta):
        a = r / math.cos(0.5 * theta)
        return 4 * params.k_theta * (theta - t0) + 2 * params.k_axial * (a - params.side_rest) * a * math.tan(0.5 * theta)

    candidates = [lo, hi]
    if hi > lo:
        grid = np.linspace(lo, hi, _SCAN + 1)
        s = [slope(g) for g in grid]
        for i in range(_SCAN):
            if s[i] < 0 <= s[i + 1]:
                candidates.append(brentq(slope, grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15))
    theta = min(candidates, key=energy)
    return BodyShape(theta, r / math.cos(0.5 * theta))


def _mirror(shape: BodyShape) -> BodyShape:
    return BodyShape(math.pi - shape.theta, shape.side)


def equilibrium_shape(width_limit: float | None = None, params: BodyShapeParams = DEFAULT_BODY,
                      *, length_limit: float | None = None) -> BodyShape:
    """Minimum-energy shape with ``W <= width_limit`` and ``L <= length_limit``.

    With no limits (or limits the neutral shape already satisfies) the
    neutral shape is returned exactly. Otherwise candidates with the width
    bound active, the length bound active, or both active are compared.
    Raises :class:`InfeasiblePassageError` if no reachable shape fits.
    """
    wl = math.inf if width_limit is None else width_limit
    ll = math.inf if length_limit is None else length_limit
    L0, W0 = params.dims_neutral
    if W0 <= wl and L0 <= ll:
        return neutral_shape(params)
    for name, lim in (("width", wl), ("length", ll)):
        if lim < params.min_width - _TOL:
            raise InfeasiblePassageError(
                f"{name} limit {lim:.4f} mm is below the minimum reachable body {name} "
                f"{params.min_width:.4f} mm"
            )

    candidates = []
    if wl < W0:
        s = _width_active(wl, ll, params)
        if s is not None:
            candidates.append(s)
    if ll < L0:
        s = _width_active(ll, wl, params)
        if s is not None:
            candidates.append(_mirror(s))
    if wl < math.inf and ll < math.inf:
        try:
            candidates.append(shape_from_dims(ll, wl, params))
        except InfeasibleShapeError:
            pass
    feasible = []
    for s in candidates:
        L, W = dims_from_shape(s, params)
        if L <= ll + _TOL and W <= wl + _TOL and is_reachable(s, params):
            feasible.append(s)
    if not feasible:
        raise InfeasiblePassageError(
            f"no reachable body shape satisfies W <= {wl:.4f} mm and L <= {ll:.4f} mm"
        )
    return min(feasible, key=lambda s: shape_energy(s, params))


def footprint(shape: BodyShape, pose: Pose, params: BodyShapeParams = DEFAULT_BODY) -> np.ndarray:
    """Body rectangle corners (4x2, mm, world frame), counter-clockwise."""
    L, W = dims_from_shape(shape, params)
    local = np.array([[L, W], [-L, W], [-L, -W], [L, -W]]) * 0.5
    c, s = math.cos(pose.yaw), math.sin(pose.yaw)
    rot = np.array([[c, -s], [s, c]])
    return local @ rot.T + np.array([pose.x, pose.y])
