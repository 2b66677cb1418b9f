"""Root finding by continuation through the regular values of P.

For monic P of degree n:

* the critical points are the roots of P', found by calling the solver on
  P' (degree n - 1), so the recursion bottoms out at degree 1;
* if some critical point is also a root, that root is multiple; it is
  refined, its multiplicity measured, and it is deflated out;
* otherwise 0 is a regular value. A start ``a`` with ``P(a)`` regular is
  sampled, and the root ``z = a`` of ``P(z) - P(a)`` is tracked along a
  planned path from ``P(a)`` to 0 that avoids every critical value.

The remaining simple roots come from tracking the first one around a loop
in the value plane that starts and ends at 0 and encloses every critical
value. Around such a loop ``P`` behaves like ``z**n`` near infinity, so each
circuit moves the tracked root to a different root. ``n - 1`` circuits visit
all of them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .critical import CriticalStructure, critical_structure, multiplicity
from .errors import (
    DegreeZero,
    NoSignificantDerivative,
    RootFindingError,
    SolveFailed,
    TargetCritical,
)
from .planner import PathPlan, choose_start, clearance_radius, plan_with_retries
from .poly import Polynomial, deflate, derivative, evaluate, monicize
from .tracker import Trace, TrackerConfig, newton_refine, residual_tolerance, track_path

__all__ = [
    "Provenance",
    "RootRecord",
    "RootResult",
    "TrackedRoot",
    "TraceObserver",
    "TAU_ROOT",
    "MAX_ATTEMPTS",
    "solve_one",
    "solve_all",
    "solve_callback_adapter",
    "track_one_root",
    "trace_one",
    "encircling_loop",
    "multiple_roots",
]

TAU_ROOT = 1e-8
MAX_ATTEMPTS = 5
_CLUSTER_TOL = 1e-6
_MULT_TOL = 1e-8


class Provenance(str, Enum):
    REGULAR_TRACK = "RegularTrack"
    CRITICAL_BRANCH = "CriticalBranch"
    LINEAR_CLOSED_FORM = "LinearClosedForm"


@dataclass(frozen=True)
class RootRecord:
    value: complex
    multiplicity: int
    residual: float
    provenance: Provenance


@dataclass
class RootResult:
    roots: list[RootRecord]
    degree: int
    seed: int
    retries: int = 0
    tracker_steps: int = 0
    critical_values: tuple[complex, ...] = ()

    def flat(self) -> list[complex]:
        """Roots repeated according to multiplicity."""
        return [r.value for r in self.roots for _ in range(r.multiplicity)]


TraceObserver = Callable[[Polynomial, Trace], None]


@dataclass
class _Stats:
    retries: int = 0
    steps: int = 0
    observer: TraceObserver | None = None

    def record(self, P: Polynomial, trace: Trace) -> None:
        self.steps += len(trace) - 1
        if self.observer is not None:
            self.observer(P, trace)


@dataclass
class TrackedRoot:
    """One regular-branch track: start, plan, trace and the root it lands on."""

    root: complex
    start: complex
    plan: PathPlan
    trace: Trace
    cs: CriticalStructure = field(repr=False)


def _attempt_factor(attempt: int) -> float:
    # clearance halves from the third attempt on
    return 0.5 ** max(0, attempt - 1)


def solve_callback_adapter(seed: int = 0, cfg: TrackerConfig = TrackerConfig()) -> Callable[[Polynomial], list[complex]]:
    """Root finder for :func:`critical_structure`: all roots, repeated by multiplicity."""
    return _adapter(seed, cfg, _Stats())


def _adapter(seed: int, cfg: TrackerConfig, stats: _Stats) -> Callable[[Polynomial], list[complex]]:
    def find(Q: Polynomial) -> list[complex]:
        found = _solve_monic(monicize(Q), seed, cfg, stats)
        return [z for z, m, _ in found for _ in range(m)]

    return find


def _refine_on_derivative(P: Polynomial, z0: complex, m: int) -> complex:
    """Newton on ``P^(m-1)``, where an m-fold root of P is a simple root."""
    Q = P
    for _ in range(m - 1):
        Q = derivative(Q)
    try:
        z, _ = newton_refine(Q, 0j, z0, TrackerConfig(newton_max=30, accept_iters=30, dp_min=1e-14))
    except RootFindingError:
        return z0
    return z


def multiple_roots(P: Polynomial, cs: CriticalStructure, tau: float = TAU_ROOT) -> list[tuple[complex, int]]:
    """Critical points that are also roots, with their multiplicities, smallest modulus first."""
    thr = tau * P.scale
    pts = list(cs.points)
    used = [False] * len(pts)
    out: list[tuple[complex, int]] = []
    for i, z in enumerate(pts):
        if used[i] or abs(evaluate(P, z)) > thr:
            continue
        members = [j for j, w in enumerate(pts) if not used[j] and abs(w - z) <= _CLUSTER_TOL * (1 + abs(z))]
        for j in members:
            used[j] = True
        z0 = sum(pts[j] for j in members) / len(members)
        m_guess = min(len(members) + 1, P.degree)
        z0 = _refine_on_derivative(P, z0, m_guess)
        try:
            m = multiplicity(P, z0, _MULT_TOL)
        except NoSignificantDerivative:
            continue
        if m != m_guess and m >= 2:
            z0 = _refine_on_derivative(P, z0, m)
        if m >= 2:
            out.append((z0, m))
    out.sort(key=lambda zm: abs(zm[0]))
    return out


def _critical_branch(
    P: Polynomial, found: list[tuple[complex, int]], seed: int, cfg: TrackerConfig, stats: _Stats
) -> list[tuple[complex, int, Provenance]]:
    out = [(z0, m, Provenance.CRITICAL_BRANCH) for z0, m in found]
    Q = P
    for z0, m in found:  # already smallest modulus first
        for _ in range(m):
            if Q.degree == 0:
                break
            Q, _ = deflate(Q, z0)
    if Q.degree >= 1:
        out.extend(_solve_monic(monicize(Q), seed, cfg, stats))
    return out


def track_one_root(
    P: Polynomial,
    cs: CriticalStructure,
    seed: int,
    cfg: TrackerConfig = TrackerConfig(),
    clearance_factor: float = 1.0,
) -> TrackedRoot:
    """Regular branch for monic P with 0 not a critical value: one tracked root."""
    a = choose_start(P, cs, seed)
    c0 = evaluate(P, a)
    rho = clearance_radius(cs, c0) * clearance_factor
    plan = plan_with_retries(c0, cs, rho)
    z, trace = track_path(P, plan, a, cfg)
    _check_root(P, z, cfg)
    return TrackedRoot(z, a, plan, trace, cs)


def _loop_pieces(cs: CriticalStructure, clearance_factor: float) -> tuple[PathPlan, PathPlan, PathPlan]:
    """Outward leg 0 -> W, a triangle W -> W around every critical value, and the leg back."""
    reach = max((abs(d) for d in cs.values), default=0.0)
    # the triangle's inscribed circle (radius L/2) clears every critical value by reach/4 + 1/2
    L = 2.5 * reach + 1.0
    W = complex(L, 0.0)
    rho = clearance_radius(cs, W) * clearance_factor
    back = plan_with_retries(W, cs, rho)
    out = PathPlan(back.waypoints[::-1], back.clearance, back.detour_allowance)
    turn = cmath.exp(2j * math.pi / 3)
    ring = PathPlan((W, W * turn, W * turn * turn, W), back.clearance)
    return out, ring, back


def encircling_loop(cs: CriticalStructure, clearance_factor: float = 1.0) -> PathPlan:
    """Closed polyline based at 0 that winds once counterclockwise around every critical value."""
    out, ring, back = _loop_pieces(cs, clearance_factor)
    pts = out.waypoints + ring.waypoints[1:] + back.waypoints[1:]
    return PathPlan(pts, back.clearance, 2 * back.detour_allowance)


def _check_root(P: Polynomial, z: complex, cfg: TrackerConfig) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SolveFailed(f"tracked endpoint is not finite: {z}")
    if abs(evaluate(P, z)) > 10 * residual_tolerance(P, z, cfg):
        raise SolveFailed(f"tracked endpoint {z} has residual {abs(evaluate(P, z)):.3e}")


def _all_by_circling(
    P: Polynomial, cs: CriticalStructure, seed: int, cfg: TrackerConfig, factor: float, stats: _Stats
) -> list[tuple[complex, int, Provenance]]:
    first = track_one_root(P, cs, seed, cfg, factor)
    stats.record(P, first.trace)
    roots = [first.root]
    if P.degree > 1:
        out, ring, back = _loop_pieces(cs, factor)
        w, trace = track_path(P, out, first.root, cfg)
        stats.record(P, trace)
        for _ in range(P.degree - 1):
            w, trace = track_path(P, ring, w, cfg)
            stats.record(P, trace)
            z, trace = track_path(P, back, w, cfg)
            stats.record(P, trace)
            _check_root(P, z, cfg)
            if any(abs(z - r) <= 1e-9 * (1 + abs(r)) for r in roots):
                raise SolveFailed(f"circuit returned to an already known root {z}")
            roots.append(z)
    return [(z, 1, Provenance.REGULAR_TRACK) for z in roots]


def _solve_monic(P: Polynomial, seed: int, cfg: TrackerConfig, stats: _Stats) -> list[tuple[complex, int, Provenance]]:
    if P.degree == 0:
        raise DegreeZero("degree must be >= 1")
    if P.degree == 1:
        return [(-P.coeffs[0], 1, Provenance.LINEAR_CLOSED_FORM)]
    cs = critical_structure(P, _adapter(seed, cfg, stats))
    return _solve_with_structure(P, cs, seed, cfg, stats)


def _solve_with_structure(
    P: Polynomial, cs: CriticalStructure, seed: int, cfg: TrackerConfig, stats: _Stats
) -> list[tuple[complex, int, Provenance]]:
    found = multiple_roots(P, cs)
    if found:
        return _critical_branch(P, found, seed, cfg, stats)
    errors: list[str] = []
    for attempt in range(MAX_ATTEMPTS):
        try:
            return _all_by_circling(P, cs, seed + attempt, cfg, _attempt_factor(attempt), stats)
        except RootFindingError as exc:
            stats.retries += 1
            errors.append(f"attempt {attempt}: {type(exc).__name__}: {exc}")
    found = multiple_roots(P, cs, TAU_ROOT * 100)
    if found:
        return _critical_branch(P, found, seed, cfg, stats)
    raise SolveFailed("all attempts failed:\n  " + "\n  ".join(errors))


def _residual(P: Polynomial, z: complex) -> float:
    return abs(evaluate(P, z))


def trace_one(P: Polynomial, seed: int = 0, cfg: TrackerConfig = TrackerConfig(), cs: CriticalStructure | None = None) -> TrackedRoot:
    """Regular-branch track of one root of monic P, with the solver's retry policy.

    Works for degree 1 too (no critical values, straight plan). Raises
    :class:`TargetCritical` when 0 is a critical value.
    """
    if cs is None:
        cs = critical_structure(P, solve_callback_adapter(seed, cfg))
    if cs.values and cs.distance_to_values(0j) <= cs.merge_tol:
        raise TargetCritical("0 is a critical value; the root there is multiple")
    errors: list[str] = []
    for attempt in range(MAX_ATTEMPTS):
        try:
            return track_one_root(P, cs, seed + attempt, cfg, _attempt_factor(attempt))
        except RootFindingError as exc:
            errors.append(f"attempt {attempt}: {type(exc).__name__}: {exc}")
    raise SolveFailed("all attempts failed:\n  " + "\n  ".join(errors))


def solve_one(P: Polynomial, seed: int = 0, cfg: TrackerConfig = TrackerConfig()) -> RootRecord:
    """One root of P, following the two branches of the existence argument."""
    if P.degree < 1:
        raise DegreeZero("degree must be >= 1")
    M = monicize(P)
    if M.degree == 1:
        z = -M.coeffs[0]
        return RootRecord(z, 1, _residual(P, z), Provenance.LINEAR_CLOSED_FORM)
    cs = critical_structure(M, solve_callback_adapter(seed, cfg))
    found = multiple_roots(M, cs)
    if found:
        z0, m = found[0]
        return RootRecord(z0, m, _residual(P, z0), Provenance.CRITICAL_BRANCH)
    try:
        tr = trace_one(M, seed, cfg, cs)
        return RootRecord(tr.root, 1, _residual(P, tr.root), Provenance.REGULAR_TRACK)
    except (SolveFailed, TargetCritical) as exc:
        # borderline: recheck the critical branch with a looser trigger before giving up
        found = multiple_roots(M, cs, TAU_ROOT * 100)
        if found:
            z0, m = found[0]
            return RootRecord(z0, m, _residual(P, z0), Provenance.CRITICAL_BRANCH)
        raise SolveFailed(str(exc)) from exc


def solve_all(
    P: Polynomial,
    seed: int = 0,
    cfg: TrackerConfig = TrackerConfig(),
    observer: TraceObserver | None = None,
) -> RootResult:
    """All roots of P with multiplicities; simple roots are polished against P itself.

    ``observer(Q, trace)`` is called for every completed path track, including
    those on the derivatives solved for critical points.
    """
    if P.degree < 1:
        raise DegreeZero("degree must be >= 1")
    M = monicize(P)
    stats = _Stats(observer=observer)
    if M.degree == 1:
        cs = None
        found = _solve_monic(M, seed, cfg, stats)
    else:
        cs = critical_structure(M, _adapter(seed, cfg, stats))
        found = _solve_with_structure(M, cs, seed, cfg, stats)
    records = []
    for z, m, prov in found:
        if m == 1:
            try:
                z, _ = newton_refine(P, 0j, z, cfg)
            except RootFindingError:
                pass
        records.append(RootRecord(z, m, _residual(P, z), prov))
    cvals = cs.values if cs is not None else ()
    return RootResult(records, P.degree, seed, stats.retries, stats.steps, cvals)
