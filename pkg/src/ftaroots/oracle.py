"""Independent reference roots for tests: Weierstrass (Durand-Kerner) iteration.

Nothing in the solving pipeline imports this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotMonic, OracleDiverged, SizeMismatch
from .poly import Polynomial, root_bound

__all__ = ["OracleConfig", "weierstrass_roots", "match_multisets"]


@dataclass(frozen=True)
class OracleConfig:
    tol: float = 1e-12
    max_iters: int = 1000
    init_radius_factor: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


def weierstrass_roots(P: Polynomial, cfg: OracleConfig = OracleConfig()) -> list[complex]:
    if not P.is_monic:
        raise NotMonic("weierstrass_roots needs a monic polynomial")
    n = P.degree
    if n < 1:
        raise ValueError("degree must be >= 1")
    coeffs = np.array(P.coeffs[::-1], dtype=np.complex128)  # descending for np.polyval
    radius = root_bound(P, 0.0) * cfg.init_radius_factor
    w = radius * np.exp(1j * (2.0 * np.pi * np.arange(n) / n + 0.4))
    scale = P.scale
    update = math.inf
    for _ in range(cfg.max_iters):
        diff = w[:, None] - w[None, :]
        np.fill_diagonal(diff, 1.0)
        step = np.polyval(coeffs, w) / diff.prod(axis=1)
        w = w - step
        update = float(np.max(np.abs(step)))
        if update <= cfg.tol * scale:
            break
    else:
        if update > 1e-6 * scale:
            raise OracleDiverged(f"no convergence after {cfg.max_iters} iterations (last update {update:.3e})")
    return [complex(v) for v in w]


def _bottleneck_exact(dist: np.ndarray) -> float:
    """Smallest achievable max-distance over perfect matchings, via augmenting paths."""
    n = dist.shape[0]
    thresholds = np.unique(dist)

    def feasible(limit: float) -> bool:
        allowed = dist <= limit
        match_b = [-1] * n

        def augment(i: int, seen: list[bool]) -> bool:
            for j in range(n):
                if allowed[i, j] and not seen[j]:
                    seen[j] = True
                    if match_b[j] < 0 or augment(match_b[j], seen):
                        match_b[j] = i
                        return True
            return False

        return all(augment(i, [False] * n) for i in range(n))

    lo, hi = 0, len(thresholds) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(thresholds[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(thresholds[lo])


def _greedy(dist: np.ndarray) -> float:
    n = dist.shape[0]
    order = np.argsort(dist, axis=None, kind="stable")
    used_a, used_b = set(), set()
    worst = 0.0
    for flat in order:
        i, j = divmod(int(flat), n)
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        worst = max(worst, float(dist[i, j]))
        if len(used_a) == n:
            break
    return worst


def match_multisets(A: Sequence[complex], B: Sequence[complex], tol: float) -> tuple[bool, float]:
    """Pair up two root multisets; returns ``(max pair distance <= tol, max pair distance)``."""
    if len(A) != len(B):
        raise SizeMismatch(f"multisets differ in size: {len(A)} vs {len(B)}")
    n = len(A)
    if n == 0:
        return True, 0.0
    if n > 32:
        raise SizeMismatch("match_multisets supports at most 32 elements")
    a = np.asarray(A, dtype=np.complex128)
    b = np.asarray(B, dtype=np.complex128)
    dist = np.abs(a[:, None] - b[None, :])
    if n <= 8:
        worst = _bottleneck_exact(dist)
    else:
        worst = _greedy(dist)
        if worst > tol:
            if n > 12:
                return False, worst
            worst = _bottleneck_exact(dist)
    return worst <= tol, worst

