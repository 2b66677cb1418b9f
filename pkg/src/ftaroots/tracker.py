"""Predictor-corrector continuation of a root of ``P(z) - c`` as ``c`` moves.

Along ``c(s)`` the root obeys ``dz/ds = c'(s) / P'(z)``. Each step takes an
Euler prediction along that direction and pulls it back onto the curve with
Newton's method in ``z``. Steps shrink when the corrector struggles and grow
when it converges quickly. The hot loops live in :mod:`ftaroots._kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels as K
from .errors import DerivativeVanished, NewtonStalled, StepUnderflow
from .planner import PathPlan
from .poly import Polynomial, evaluate_with_derivative, local_scale

__all__ = [
    "TrackerConfig",
    "TraceRecord",
    "Trace",
    "newton_refine",
    "euler_predict",
    "gamma",
    "track_segment",
    "track_path",
    "residual_tolerance",
    "STEP_RADIUS",
]

# predicted moves stay within STEP_RADIUS / gamma(z), well inside the basin of the tracked root
STEP_RADIUS = 0.1
_BUFFER = 512


@dataclass(frozen=True)
class TrackerConfig:
    h_init: float = 0.05
    h_min: float = 1e-9
    h_max: float = 0.25
    newton_tol: float = 1e-12
    newton_max: int = 8
    accept_iters: int = 4
    grow: float = 1.5
    dp_min: float = 1e-10

    def __post_init__(self):
        if not (0 < self.h_min <= self.h_init <= self.h_max <= 1):
            raise ValueError("need 0 < h_min <= h_init <= h_max <= 1")
        if not (self.newton_max >= self.accept_iters >= 1):
            raise ValueError("need newton_max >= accept_iters >= 1")
        if not self.grow > 1:
            raise ValueError("grow must exceed 1")


class TraceRecord(NamedTuple):
    t: float
    c: complex
    z: complex
    h: float
    newton_iters: int


@dataclass
class Trace:
    records: list[TraceRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)


def residual_tolerance(P: Polynomial, z: complex, cfg: TrackerConfig) -> float:
    """Newton's stopping residual: ``newton_tol * scale``, floored at Horner rounding so large |c| stays attainable."""
    return max(cfg.newton_tol * P.scale, K.ROUNDING * local_scale(P, z))


def newton_refine(P: Polynomial, c: complex, z: complex, cfg: TrackerConfig = TrackerConfig()) -> tuple[complex, int]:
    """Newton on ``P(z) - c`` in ``z``. Returns the refined point and the number of updates."""
    status, z_out, k = K.newton(
        P.array, P.abs_array, complex(c), complex(z), cfg.newton_tol, cfg.newton_max, cfg.dp_min * P.scale
    )
    if status == K.VANISHED:
        raise DerivativeVanished(f"|P'(z)| fell below {cfg.dp_min * P.scale:.3e} near z = {complex(z_out)}")
    if status == K.STALLED:
        raise NewtonStalled(f"no convergence in {cfg.newton_max} iterations at c = {c}")
    return complex(z_out), int(k)


def euler_predict(P: Polynomial, z: complex, dc: complex) -> complex:
    _, dp = evaluate_with_derivative(P, z)
    return z + dc / dp


def gamma(P: Polynomial, z: complex) -> float:
    """Smale's gamma: max over k >= 2 of ``|P^(k)(z) / (k! P'(z))|^(1/(k-1))``."""
    g, _ = K.gamma(P.array, complex(z), np.empty_like(P.array))
    return float(g)


def _params(P: Polynomial, cfg: TrackerConfig) -> np.ndarray:
    return np.array(
        [cfg.h_min, cfg.h_max, cfg.newton_tol, cfg.newton_max, cfg.accept_iters, cfg.grow, cfg.dp_min * P.scale, STEP_RADIUS]
    )


def track_segment(
    P: Polynomial,
    c_from: complex,
    c_to: complex,
    z_from: complex,
    cfg: TrackerConfig = TrackerConfig(),
) -> tuple[complex, list[TraceRecord]]:
    """Follow the root from ``c_from`` to ``c_to`` along the straight segment.

    The returned fragment holds accepted steps only, with ``t`` set to the
    local parameter ``s`` in ``(0, 1]``; the start point is not repeated.
    """
    if c_from == c_to:
        return z_from, []
    params = _params(P, cfg)
    work = np.empty_like(P.array)
    out_s = np.empty(_BUFFER)
    out_c = np.empty(_BUFFER, dtype=np.complex128)
    out_z = np.empty(_BUFFER, dtype=np.complex128)
    out_h = np.empty(_BUFFER)
    out_it = np.empty(_BUFFER, dtype=np.int64)
    s, h, z = 0.0, cfg.h_init, complex(z_from)
    fragment: list[TraceRecord] = []
    while True:
        status, s, h, z, n = K.advance(
            P.array, P.abs_array, work, complex(c_from), complex(c_to), z, s, h, params,
            out_s, out_c, out_z, out_h, out_it,
        )
        fragment.extend(
            TraceRecord(float(a), complex(b), complex(c), float(d), int(e))
            for a, b, c, d, e in zip(out_s[:n], out_c[:n], out_z[:n], out_h[:n], out_it[:n])
        )
        if status == K.OK:
            return complex(z), fragment
        if status == K.FULL:
            continue
        if status == K.VANISHED:
            raise DerivativeVanished(f"|P'(z)| below floor at s = {s:.6f}, z = {complex(z)}")
        if status == K.BASIN:
            raise StepUnderflow(f"basin radius forces step {h:.3e} below h_min at s = {s:.6f}")
        raise StepUnderflow(f"step {h:.3e} below h_min at s = {s:.6f}")


def track_path(
    P: Polynomial,
    plan: PathPlan,
    z0: complex,
    cfg: TrackerConfig = TrackerConfig(),
) -> tuple[complex, Trace]:
    """Fold :func:`track_segment` over the plan; ``t`` is normalised arc length."""
    w = plan.waypoints
    seg_lengths = [abs(b - a) for a, b in zip(w[:-1], w[1:])]
    total = sum(seg_lengths)
    trace = Trace([TraceRecord(0.0, w[0], z0, 0.0, 0)])
    z = z0
    done = 0.0
    for i, (a, b) in enumerate(zip(w[:-1], w[1:])):
        try:
            z, frag = track_segment(P, a, b, z, cfg)
        except (StepUnderflow, DerivativeVanished) as exc:
            raise type(exc)(f"segment {i}: {exc}") from exc
        for rec in frag:
            t = (done + rec.t * seg_lengths[i]) / total
            trace.records.append(rec._replace(t=min(t, 1.0)))
        done += seg_lengths[i]
    if len(trace.records) > 1:
        trace.records[-1] = trace.records[-1]._replace(t=1.0)
    return z, trace
