from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from ftaroots import (
    DerivativeVanished,
    NewtonStalled,
    PathPlan,
    Polynomial,
    StepUnderflow,
    TrackerConfig,
    choose_start,
    clearance_radius,
    critical_structure,
    evaluate,
    evaluate_with_derivative,
    newton_refine,
    plan_path,
    random_monic,
    solve_callback_adapter,
    track_path,
    track_segment,
)
from ftaroots.tracker import euler_predict, gamma, residual_tolerance

CFG = TrackerConfig()


def test_config_validation():
    with pytest.raises(ValueError):
        TrackerConfig(h_init=2.0)
    with pytest.raises(ValueError):
        TrackerConfig(accept_iters=10, newton_max=5)
    with pytest.raises(ValueError):
        TrackerConfig(grow=1.0)


def test_newton_examples():
    # frozen: the Newton sequence 1.5, 1.41667, 1.414216, ... meets the tolerance after 4 updates
    z, k = newton_refine(Polynomial([-2, 0, 1]), 0, 1.5)
    assert z == pytest.approx(1.4142135623730951, abs=1e-15) and k <= 4
    z, k = newton_refine(Polynomial([5, 1]), 0, 123.0 - 7j)
    assert z == -5 and k == 1
    z, _ = newton_refine(Polynomial([1, 0, 1]), 0, 0.9j)
    assert abs(z - 1j) <= 1e-12


def test_newton_errors():
    with pytest.raises(DerivativeVanished):
        newton_refine(Polynomial([1, 0, 1]), 0, 0)
    with pytest.raises(NewtonStalled):
        newton_refine(Polynomial([1, 0, 1]), 0, 0.5, TrackerConfig(newton_max=1, accept_iters=1))


def test_residual_tolerance_floor():
    P = Polynomial([1, 0, 0, 1])
    assert residual_tolerance(P, 0.5, CFG) == pytest.approx(1e-12)
    # far out the Horner rounding level dominates
    assert residual_tolerance(P, 1e4, CFG) > 1e-12 * 1e12 * 1e-3


def test_segment_examples():
    z, frag = track_segment(Polynomial([-2, 0, 1]), 2, 0, 2)
    assert abs(z - math.sqrt(2)) <= 1e-10
    assert frag[-1].t == 1.0 and all(0 < r.t <= 1 for r in frag)

    P = Polynomial([5, 1])
    z, _ = track_segment(P, 1 + 1j, -3 + 0.5j, 1 + 1j - 5)
    assert z == -3 + 0.5j - 5

    z, frag = track_segment(P, 2j, 2j, 7.0)
    assert z == 7.0 and frag == []


def test_path_examples():
    P = Polynomial([1, 0, 1])
    cs = critical_structure(P, solve_callback_adapter(0))
    a = 1 + 1j
    c0 = evaluate(P, a)
    plan = plan_path(c0, cs, clearance_radius(cs, c0))
    z, trace = track_path(P, plan, a)
    assert min(abs(z - 1j), abs(z + 1j)) <= 1e-10
    assert abs(evaluate(P, z)) <= 1e-10
    assert trace.records[0].t == 0 and trace.records[-1].t == 1.0

    z, _ = track_path(Polynomial([-3, 1]), PathPlan((4, 0), 1.0), 7)
    assert z == pytest.approx(3)

    # P = z^3 - 1 from a = 2: critical value -1 is far from [7, 0]
    P = Polynomial([-1, 0, 0, 1])
    z, _ = track_path(P, PathPlan((7, 0), 0.25), 2)
    assert abs(z - 1) <= 1e-10


def test_zero_length_plan_is_identity():
    z0 = 0.123456789 - 1.5j
    z, trace = track_path(Polynomial([1, 2, 3, 1]), PathPlan((0.5j,), 1.0), z0)
    assert z == z0 and len(trace) == 1


def test_trace_invariants_on_random_tracks():
    rng = np.random.default_rng(21)
    for seed in range(40):
        P = random_monic(int(rng.integers(2, 10)), rng)
        cs = critical_structure(P, solve_callback_adapter(seed))
        if cs.distance_to_values(0) <= cs.merge_tol:
            continue
        a = choose_start(P, cs, seed)
        c0 = evaluate(P, a)
        plan = plan_path(c0, cs, clearance_radius(cs, c0))
        try:
            _, trace = track_path(P, plan, a)
        except StepUnderflow:
            continue
        recs = trace.records
        ts = [r.t for r in recs]
        assert ts == sorted(ts)
        for prev, rec in zip(recs, recs[1:]):
            p, dp = evaluate_with_derivative(P, rec.z)
            # newton_tol * scale * 10, except where |c| is so large that rounding sets the floor
            assert abs(p - rec.c) <= residual_tolerance(P, rec.z, CFG) * 10
            assert abs(dp) >= CFG.dp_min
            assert rec.newton_iters <= CFG.accept_iters
            assert abs(rec.z - prev.z) <= abs(rec.c - prev.c) / CFG.dp_min * 10


def test_segment_reports_underflow_through_critical_value():
    # the segment runs straight through the critical value 0 of z^2, where the root doubles
    with pytest.raises((StepUnderflow, DerivativeVanished)):
        track_segment(Polynomial([0, 0, 1]), 1, -1, 1)


def test_gamma_of_quadratic():
    # for z^2 - c, gamma(z) = 1 / |2 z|
    assert gamma(Polynomial([-2, 0, 1]), 0.25) == pytest.approx(2.0)


def test_euler_predictor_is_first_order():
    rng = np.random.default_rng(4)
    for _ in range(20):
        P = random_monic(5, rng)
        z = complex(*rng.uniform(-1, 1, 2))
        _, dp = evaluate_with_derivative(P, z)
        if abs(dp) < 0.1:
            continue
        c = evaluate(P, z)
        dc = 1e-4 * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        truth, _ = newton_refine(P, c + dc, euler_predict(P, z, dc), TrackerConfig(newton_max=30, accept_iters=30))
        K = 10 * gamma(P, z) / abs(dp) ** 2
        assert abs(euler_predict(P, z, dc) - truth) <= K * abs(dc) ** 2


def test_python_fallback_matches_compiled_kernels():
    from ftaroots import _kernels as K

    if not hasattr(K.newton, "py_func"):
        pytest.skip("numba not installed; the Python versions are already in use")
    P = Polynomial([1 - 1j, 0.5, 2j, 1])
    args = (P.array, P.abs_array, 0.3 + 0.1j, 1.0 + 0.5j, 1e-12, 8, 1e-10)
    jit, py = K.newton(*args), K.newton.py_func(*args)
    assert jit[0] == py[0] and jit[2] == py[2] and abs(jit[1] - py[1]) <= 1e-14
    params = np.array([1e-9, 0.25, 1e-12, 8, 4, 1.5, 1e-10, 0.1])

    def run(fn):
        bufs = [np.empty(64), np.empty(64, complex), np.empty(64, complex), np.empty(64), np.empty(64, np.int64)]
        z0 = newton_refine(P, 2.0, 1.0)[0]
        head = fn(P.array, P.abs_array, np.empty_like(P.array), 2.0, 0.0, z0, 0.0, 0.05, params, *bufs)
        return head, [b[: head[-1]].tolist() for b in bufs]

    (head_j, bufs_j), (head_p, bufs_p) = run(K.advance), run(K.advance.py_func)
    # same step decisions; values agree to rounding (compiled complex arithmetic may differ in the last bit)
    assert head_j[0] == head_p[0] and head_j[-1] == head_p[-1]
    assert bufs_j[4] == bufs_p[4]
    for a, b in zip(bufs_j[:4], bufs_p[:4]):
        assert np.allclose(a, b, rtol=1e-12, atol=1e-14)
