"""Start-point selection and obstacle-avoiding polylines in the value plane.

Obstacles are the critical values of P. A returned :class:`PathPlan` keeps
every point of every segment at least ``clearance`` away from all of them,
which is what lets the tracker follow a simple root the whole way.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .critical import CriticalStructure, is_regular_value
from .errors import PlanExhausted, StartExhausted, TargetCritical
from .poly import Polynomial, evaluate_with_derivative, root_bound

__all__ = [
    "PathPlan",
    "choose_start",
    "is_admissible_start",
    "clearance_radius",
    "plan_path",
    "plan_with_retries",
    "point_segment_distance",
    "polyline_length",
    "MAX_INSERTIONS",
    "MAX_START_REJECTIONS",
]

MAX_INSERTIONS = 64
MAX_START_REJECTIONS = 10_000
_MAX_DOUBLINGS = 40


@dataclass(frozen=True)
class PathPlan:
    waypoints: tuple[complex, ...]
    clearance: float
    # sum of 2*k*rho over inserted detours; bounds how much longer than |c0| the plan may be
    detour_allowance: float = field(default=0.0, compare=False)

    @property
    def segments(self) -> list[tuple[complex, complex]]:
        w = self.waypoints
        return list(zip(w[:-1], w[1:]))

    @property
    def length(self) -> float:
        return polyline_length(self.waypoints)


def polyline_length(points: Sequence[complex]) -> float:
    return sum(abs(b - a) for a, b in zip(points[:-1], points[1:]))


def point_segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    L2 = ab.real * ab.real + ab.imag * ab.imag
    if L2 == 0.0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / L2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def is_admissible_start(P: Polynomial, cs: CriticalStructure, a: complex) -> bool:
    """The three acceptance tests applied to each sampled start point."""
    c0, dp = evaluate_with_derivative(P, a)
    if abs(dp) <= 1e-8 * P.scale:
        return False
    if abs(a) > root_bound(P, 0.0) + 1.0:
        return False
    if not cs.values:
        return True
    if cs.distance_to_values(c0) <= cs.merge_tol:
        return False
    rho0 = clearance_radius(cs, c0)
    return rho0 > 0 and is_regular_value(cs, c0, rho0)


def choose_start(P: Polynomial, cs: CriticalStructure, rng_seed: int) -> complex:
    """Rejection-sample a start point ``a`` so that ``P(a)`` is a usable regular value."""
    radius = root_bound(P, 0.0) + 1.0
    rng = np.random.default_rng(rng_seed)
    for _ in range(MAX_START_REJECTIONS):
        u, v = rng.random(2)
        a = cmath.rect(radius * math.sqrt(float(u)), 2.0 * math.pi * float(v))
        if is_admissible_start(P, cs, a):
            return a
    raise StartExhausted(f"no admissible start after {MAX_START_REJECTIONS} samples (seed {rng_seed})")


def clearance_radius(cs: CriticalStructure, c0: complex) -> float:
    if not cs.values:
        return max(abs(c0) / 4.0, 1.0)
    g_target = cs.distance_to_values(0j)
    if g_target <= cs.merge_tol:
        raise TargetCritical("0 is a critical value")
    g_start = cs.distance_to_values(c0)
    return min(cs.min_value_gap, g_start, g_target) / 4.0


def _unit_normal(a: complex, b: complex, d: complex) -> complex:
    """Perpendicular to [a, b] pointing away from d; on-line ties go counterclockwise."""
    u = (b - a) / abs(b - a)
    n = 1j * u
    side = ((d - a) * n.conjugate()).real
    if abs(side) <= 1e-15 * (abs(a) + abs(b) + abs(d) + 1.0):
        if n.imag < 0 or (n.imag == 0 and n.real < 0):
            n = -n
        return n
    return -n if side > 0 else n


def _clears(a: complex, b: complex, values: Sequence[complex], rho: float) -> bool:
    return all(point_segment_distance(d, a, b) >= rho for d in values)


def plan_path(c0: complex, cs: CriticalStructure, rho: float) -> PathPlan:
    """Polyline from ``c0`` to 0 keeping distance ``rho`` from every critical value."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    values = cs.values
    for d in values:
        if abs(c0 - d) < rho or abs(d) < rho:
            raise ValueError("endpoints must be at least rho from every critical value")
    points = [complex(c0), 0j]
    if c0 == 0:
        return PathPlan((0j,), rho)
    allowance = 0.0
    insertions = 0
    while True:
        hit = None
        for i in range(len(points) - 1):
            a, b = points[i], points[i + 1]
            for d in values:
                if point_segment_distance(d, a, b) < rho:
                    hit = (i, d)
                    break
            if hit:
                break
        if hit is None:
            return PathPlan(tuple(points), rho, allowance)
        if insertions == MAX_INSERTIONS:
            raise PlanExhausted(f"{MAX_INSERTIONS} detours were not enough at clearance {rho:.3e}")
        i, d = hit
        a, b = points[i], points[i + 1]
        ab = b - a
        t = ((d - a) * ab.conjugate()).real / (abs(ab) ** 2)
        proj = a + min(1.0, max(0.0, t)) * ab
        n = _unit_normal(a, b, d)
        k = 2.0
        w = proj + k * rho * n
        for _ in range(_MAX_DOUBLINGS):
            w = proj + k * rho * n
            if _clears(a, w, values, rho) and _clears(w, b, values, rho):
                break
            k *= 2.0
        else:
            # no k clears everything; keep the first offset that clears d and let later passes fix the rest
            k = 2.0
            w = proj + k * rho * n
        points.insert(i + 1, w)
        allowance += 2.0 * k * rho
        insertions += 1


def plan_with_retries(c0: complex, cs: CriticalStructure, rho: float) -> PathPlan:
    """``plan_path``, halving ``rho`` on exhaustion down to ``1e-6 * (1 + |c0|)``."""
    floor = 1e-6 * (1.0 + abs(c0))
    while True:
        try:
            return plan_path(c0, cs, rho)
        except PlanExhausted:
            rho /= 2.0
            if rho < floor:
                raise
