"""Acceptance criteria, one reported line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS/FAIL lines
inline; they are also collected into the terminal summary.
"""
import csv
import time

import numpy as np

from clarisim.actuator import DEFAULT_ACTUATOR, blocked_force, deflection_under_load, free_deflection
from clarisim.bench import simulate, with_parameter
from clarisim.body import BodyShape, DEFAULT_BODY, dims_from_shape, equilibrium_shape, is_reachable, \
    shape_energy, shape_from_dims
from clarisim.cli import main
from clarisim.config import load_scenario
from clarisim.sim import DEFAULT_CONFIG, payload_ratio
from clarisim.transmission import DEFAULT_LEG, tip_lift_block_force, tip_lift_deflection, tip_swing_deflection

import oracles
from conftest import report


def rel_err(got, want):
    return abs(got - want) / abs(want)


def last_value(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return float(rows[-1][0]), float(rows[-1][1])


def test_ac1_actuator_endpoints(tmp_path):
    t0 = time.perf_counter()
    code = main(["characterize", "--out", str(tmp_path), "--v-start", "225", "--v-end", "225"])
    elapsed = time.perf_counter() - t0
    v, d = last_value(tmp_path / "actuator_deflection.csv")
    _, f = last_value(tmp_path / "actuator_force.csv")
    ok = code == 0 and v == 225 and rel_err(d, 405.0) <= 1e-6 and rel_err(f, 287.2) <= 1e-6 and elapsed < 1.0
    report("AC1 actuator endpoints at 225 V", ok,
           f"deflection {d:.9g} um, blocked force {f:.9g} mN, {elapsed * 1e3:.0f} ms")


def test_ac2_leg_endpoints():
    got = (tip_swing_deflection(DEFAULT_LEG, DEFAULT_ACTUATOR, 225.0),
           tip_lift_deflection(DEFAULT_LEG, DEFAULT_ACTUATOR, 225.0),
           tip_lift_block_force(DEFAULT_LEG, DEFAULT_ACTUATOR, 225.0))
    want = (2.85, 2.3, 14.3)
    ok = all(rel_err(g, w) <= 1e-6 for g, w in zip(got, want))
    report("AC2 leg endpoints at 225 V", ok,
           "swing {:.9g} mm, lift {:.9g} mm, lift block force {:.9g} mN".format(*got))


def test_ac3_top_speed():
    t0 = time.perf_counter()
    trace, summary = simulate(load_scenario("open_floor_trot10"))
    elapsed = time.perf_counter() - t0
    kinematic = 2 * 2.85 * 10.0  # 2 A f with peak-to-peak swing A
    ok = (rel_err(summary.mean_speed, 60.0) <= 1e-3
          and abs(summary.speed_bl_per_s - 3.0) <= 3.0 * 1e-3
          and rel_err(kinematic, summary.mean_speed) <= 0.10
          and elapsed < 5.0)
    report("AC3 open_floor_trot10 top speed", ok,
           f"{summary.mean_speed:.6f} mm/s = {summary.speed_bl_per_s:.4f} BL/s, oracle {kinematic:.1f} mm/s "
           f"({rel_err(kinematic, summary.mean_speed):.1%} off), {elapsed:.2f} s")


def test_ac4_confined_transit():
    trace, summary = simulate(load_scenario("gap_16p5"))
    dims = trace.dims()
    squeezed = dims[:, 1] < 20.0 - 1e-9
    L_inside = dims[squeezed, 0]
    final = dims[-1]
    _, stuck = simulate(load_scenario("gap_15_stuck"))
    ok = (not summary.stuck
          and abs(summary.max_compression_width - 16.5) <= 1e-3
          and squeezed.any() and bool((L_inside > 20.0).all())
          and np.abs(final - 20.0).max() <= 1e-6
          and stuck.stuck)
    report("AC4 gap_16p5 transit and gap_15 stuck", ok,
           f"min width {summary.max_compression_width:.6f} mm, min L inside {L_inside.min():.4f} mm, "
           f"final {final[0]:.9f} x {final[1]:.9f}, gap_15 stuck={stuck.stuck}")


def test_ac5_bend():
    scenario = load_scenario("bend_90")
    trace, summary = simulate(scenario)
    yaws = {s.pose.yaw for s in trace.states}
    end = trace.final.pose
    exited = not summary.stuck and end.y < -60.0 and abs(end.x) < 1e-9
    ok = yaws == {0.0} and exited and summary.min_clearance >= -1e-9
    report("AC5 bend_90 traversal without turning", ok,
           f"yaw values {sorted(yaws)}, exit at ({end.x:.3f}, {end.y:.3f}), "
           f"min clearance {summary.min_clearance:.2e} mm")


def test_ac6_omni_equivariance():
    scenario = load_scenario("omni_square")
    trace, _ = simulate(scenario)
    xy = trace.positions()
    marks = [0] + [int(round(b / trace.dt)) for b in scenario.gait_schedule().boundaries]
    disp = [xy[j] - xy[i] for i, j in zip(marks, marks[1:])]
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    err = max(np.abs(rot @ disp[0] - disp[1]).max(), np.abs(rot @ disp[1] - disp[2]).max())
    yaws = {s.pose.yaw for s in trace.states}
    ok = err <= 1e-9 and yaws == {0.0} and np.linalg.norm(disp[0]) > 0
    report("AC6 omni_square 90 deg equivariance", ok,
           "displacements " + ", ".join(f"({d[0]:.4f}, {d[1]:.4f})" for d in disp) + f", max error {err:.1e}")


def test_ac7_grid_oracle():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for w in rng.uniform(16.0, 20.0, 20):
        e = shape_energy(equilibrium_shape(float(w)))
        _, _, e_grid = oracles.brute_force_equilibrium(float(w))
        worst = max(worst, abs(e - e_grid) / max(e_grid, 1e-300))
    report("AC7 body grid-search oracle, 20 width limits", worst <= 1e-3, f"worst relative energy gap {worst:.2e}")


def test_ac7_round_trip():
    rng = np.random.default_rng(99)
    worst, n = 0.0, 0
    while n < 1000:
        s = BodyShape(rng.uniform(*DEFAULT_BODY.theta_limits), rng.uniform(*DEFAULT_BODY.side_limits))
        if not is_reachable(s):
            continue
        L, W = dims_from_shape(s)
        back = shape_from_dims(L, W)
        L2, W2 = dims_from_shape(back)
        worst = max(worst, abs(L2 - L), abs(W2 - W), abs(back.side - s.side))
        n += 1
    report("AC7 shape round trip, 1000 cases", worst <= 1e-9, f"worst error {worst:.1e} mm")


def test_ac7_load_line():
    a = DEFAULT_ACTUATOR
    checks = []
    for v in np.linspace(0.0, 225.0, 10):
        checks.append(deflection_under_load(a, v, 0.0) == free_deflection(a, v))
        checks.append(abs(deflection_under_load(a, v, blocked_force(a, v))) <= 1e-12)
    report("AC7 actuator load-line endpoints", all(checks), f"{len(checks)} identities")


def test_ac7_speed_frequency_linearity():
    base = load_scenario("open_floor_trot10")
    speeds = [simulate(with_parameter(base, "frequency_hz", float(f)), dt=0.005)[1].mean_speed
              for f in range(1, 11)]
    worst = max(rel_err(s, 6.0 * f) for s, f in zip(speeds, range(1, 11)))
    report("AC7 speed proportional to frequency, 1-10 Hz", worst <= 1e-9, f"worst deviation {worst:.1e}")


def test_ac7_determinism(tmp_path):
    blobs = []
    for i in range(2):
        out = tmp_path / str(i)
        main(["simulate", "--config", "bend_90", "--out", str(out)])
        blobs.append((out / "trace.csv").read_bytes() + (out / "summary.csv").read_bytes())
    report("AC7 byte-identical CSV on repeated runs", blobs[0] == blobs[1], f"{len(blobs[0])} bytes")


def test_ac8_payload_ratio():
    r = payload_ratio(DEFAULT_CONFIG)
    report("AC8 payload ratio arithmetic", round(r, 2) == 4.97,
           f"{r:.4f} (4-leg static estimate; published value 4.51 not reproducible)")
