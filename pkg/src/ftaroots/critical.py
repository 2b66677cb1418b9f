"""Critical points, critical values, regularity and multiplicity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DegreeZero, NoSignificantDerivative
from .poly import Polynomial, derivative, evaluate, monicize

__all__ = [
    "CriticalStructure",
    "RootFinder",
    "critical_structure",
    "merge_tolerance",
    "is_regular_value",
    "multiplicity",
    "taylor_coefficient",
]

RootFinder = Callable[[Polynomial], "list[complex]"]


@dataclass(frozen=True)
class CriticalStructure:
    points: tuple[complex, ...]
    values: tuple[complex, ...]
    min_value_gap: float
    merge_tol: float

    def distance_to_values(self, c: complex) -> float:
        return min((abs(c - d) for d in self.values), default=math.inf)


def merge_tolerance(values: Sequence[complex]) -> float:
    return 1e-8 * (1.0 + max((abs(d) for d in values), default=0.0))


def _dedupe(raw: Sequence[complex], tol: float) -> list[complex]:
    """Single-linkage merge: values closer than ``tol`` (transitively) collapse to one."""
    parent = list(range(len(raw)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(raw)):
        for j in range(i):
            if abs(raw[i] - raw[j]) < tol:
                parent[find(i)] = find(j)
    # representative = first member of each cluster, in input order
    seen: dict[int, complex] = {}
    for i, v in enumerate(raw):
        seen.setdefault(find(i), v)
    return list(seen.values())


def critical_structure(P: Polynomial, root_finder: RootFinder) -> CriticalStructure:
    """Critical points of P (via ``root_finder`` on P') and its deduplicated critical values."""
    if P.degree <= 1:
        return CriticalStructure((), (), math.inf, merge_tolerance(()))
    points = tuple(complex(z) for z in root_finder(monicize(derivative(P))))
    raw = [evaluate(P, z) for z in points]
    tol = merge_tolerance(raw)
    values = _dedupe(raw, tol)
    gap = math.inf
    for i in range(len(values)):
        for j in range(i):
            gap = min(gap, abs(values[i] - values[j]))
    return CriticalStructure(points, tuple(values), gap, tol)


def is_regular_value(cs: CriticalStructure, c: complex, margin: float) -> bool:
    if not margin > 0:
        raise ValueError("margin must be positive")
    return cs.distance_to_values(c) >= margin


def taylor_coefficient(P: Polynomial, z0: complex, m: int) -> complex:
    """``P^(m)(z0) / m!`` by repeated differentiation."""
    Q = P
    for _ in range(m):
        Q = derivative(Q)
    return evaluate(Q, z0) / math.factorial(m)


def multiplicity(P: Polynomial, z0: complex, tol: float) -> int:
    """Order of the first derivative at z0 whose scaled magnitude exceeds ``tol * scale``."""
    if P.degree < 1:
        raise DegreeZero("multiplicity needs degree >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    threshold = tol * P.scale
    Q = P
    for m in range(1, P.degree + 1):
        Q = derivative(Q)
        if abs(evaluate(Q, z0)) / math.factorial(m) > threshold:
            return m
    raise NoSignificantDerivative(f"all derivatives at {z0} are below {threshold:.3e}")
