from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from ftaroots import (
    DegreeZero,
    Polynomial,
    Provenance,
    TargetCritical,
    evaluate,
    from_roots,
    match_multisets,
    monicize,
    random_monic,
    root_bound,
    solve_all,
    solve_callback_adapter,
    solve_one,
)
from ftaroots.critical import critical_structure
from ftaroots.planner import point_segment_distance
from ftaroots.solver import encircling_loop, multiple_roots, trace_one

# random_monic(6, default_rng(20261016)); roots frozen from a 40-digit polynomial root finder
DEG6_COEFFS = [
    -1.1011638540595152 - 0.40989958806696897j,
    -1.5819337873534431 + 0.024376152984841724j,
    -0.07207290369941462 + 1.6986672275263783j,
    -0.8493373303012329 - 0.2757169850883499j,
    0.7608734023061032 - 1.4734998180455159j,
    -0.036998526951462225 - 0.6767225872390816j,
    1,
]
DEG6_ROOTS = [
    -0.7580394945700655 - 1.2155924273818557j,
    -0.7250505284787438 + 0.7360092126807982j,
    -0.5490841686526343 + 0.011085687457221249j,
    0.2743845643493333 - 0.6661623666832542j,
    0.6737765006480594 + 1.6344754278762992j,
    1.1210116536555133 + 0.17690705328987313j,
]


def test_solve_one_examples():
    r = solve_one(Polynomial([5, 1]))
    assert (r.value, r.multiplicity, r.provenance) == (-5, 1, Provenance.LINEAR_CLOSED_FORM)

    r = solve_one(Polynomial([1, -2, 1]))
    assert r.multiplicity == 2 and r.provenance is Provenance.CRITICAL_BRANCH
    assert abs(r.value - 1) <= 1e-8

    for seed in range(5):
        r = solve_one(Polynomial([1, 0, 1]), seed=seed)
        assert min(abs(r.value - 1j), abs(r.value + 1j)) <= 1e-10
        assert r.multiplicity == 1 and r.provenance is Provenance.REGULAR_TRACK
        assert r.residual <= 1e-10

    with pytest.raises(DegreeZero):
        solve_one(Polynomial([3]))


def test_solve_one_handles_non_monic_input():
    r = solve_one(Polynomial([4, 0, 2j]))
    assert abs(evaluate(Polynomial([4, 0, 2j]), r.value)) <= 1e-10


def test_solve_all_examples():
    result = solve_all(Polynomial([-1, 0, 0, 1]))
    exact = [cmath.exp(2j * math.pi * k / 3) for k in range(3)]
    assert match_multisets(result.flat(), exact, 1e-9)[0]
    assert all(r.multiplicity == 1 for r in result.roots)

    result = solve_all(from_roots([1, 1, 1, -2]))
    by_mult = sorted((r.multiplicity, r.value) for r in result.roots)
    assert [m for m, _ in by_mult] == [1, 3]
    assert abs(by_mult[0][1] + 2) <= 1e-9 and abs(by_mult[1][1] - 1) <= 1e-4

    ok, dist = match_multisets(solve_all(Polynomial(DEG6_COEFFS), seed=6).flat(), DEG6_ROOTS, 1e-6)
    assert ok, dist


def test_adapter_examples():
    find = solve_callback_adapter(0)
    assert find(Polynomial([0, 2])) == [0]
    assert sorted(z.real for z in find(Polynomial([-1, 0, 1]))) == pytest.approx([-1, 1])
    assert find(Polynomial([3, 2])) == [-1.5]


def test_solve_all_invariants():
    rng = np.random.default_rng(31)
    for seed in range(60):
        P = random_monic(int(rng.integers(1, 11)), rng)
        result = solve_all(P, seed=seed)
        assert sum(r.multiplicity for r in result.roots) == P.degree
        B = root_bound(P)
        for r in result.roots:
            assert abs(r.value) <= B
            assert r.residual == abs(evaluate(P, r.value))
        recon = from_roots(result.flat())
        assert max(abs(a - b) for a, b in zip(recon.coeffs, P.coeffs)) <= 1e-6


def test_conjugate_symmetry_for_real_coefficients():
    rng = np.random.default_rng(32)
    for seed in range(20):
        coeffs = list(rng.uniform(-2, 2, int(rng.integers(2, 9)))) + [1.0]
        roots = solve_all(Polynomial(coeffs), seed=seed).flat()
        assert match_multisets(roots, [z.conjugate() for z in roots], 1e-8)[0]


def test_determinism():
    P = random_monic(7, np.random.default_rng(9))
    assert solve_all(P, seed=3) == solve_all(P, seed=3)


def test_result_metadata():
    P = Polynomial([0, -3, 0, 1])
    result = solve_all(P, seed=2)
    assert result.degree == 3 and result.seed == 2
    assert sorted(d.real for d in result.critical_values) == pytest.approx([-2, 2])
    assert result.tracker_steps > 0


def test_multiple_roots_found_at_critical_points():
    P = from_roots([0.5j, 0.5j, -1, 2])
    cs = critical_structure(P, solve_callback_adapter(0))
    found = multiple_roots(P, cs)
    assert len(found) == 1
    z, m = found[0]
    assert m == 2 and abs(z - 0.5j) <= 1e-6


def test_several_multiple_roots():
    P = from_roots([1, 1, -1, -1, -1, 0.5j])
    result = solve_all(P)
    got = sorted((r.multiplicity, round(r.value.real, 4), round(r.value.imag, 4)) for r in result.roots)
    assert got == [(1, 0.0, 0.5), (2, 1.0, 0.0), (3, -1.0, 0.0)]


def test_trace_one_rejects_critical_target():
    P = monicize(from_roots([1, 1, 2]))
    with pytest.raises(TargetCritical):
        trace_one(P)


def test_encircling_loop_is_closed_and_certified():
    P = random_monic(6, np.random.default_rng(77))
    cs = critical_structure(P, solve_callback_adapter(0))
    loop = encircling_loop(cs)
    assert loop.waypoints[0] == 0 and loop.waypoints[-1] == 0
    for d in cs.values:
        for a, b in loop.segments:
            assert point_segment_distance(d, a, b) >= loop.clearance * (1 - 1e-9)
        # winding number of the loop around d is +1
        turn = sum(cmath.phase((b - d) / (a - d)) for a, b in loop.segments)
        assert round(turn / (2 * math.pi)) == 1
