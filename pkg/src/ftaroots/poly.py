"""Dense complex polynomials in ascending coefficient order.

``Polynomial((a0, a1, ..., an))`` represents ``a0 + a1 z + ... + an z^n``.
Instances are immutable; the zero polynomial cannot be constructed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeZero, NotMonic

__all__ = [
    "Polynomial",
    "evaluate",
    "evaluate_with_derivative",
    "derivative",
    "monicize",
    "root_bound",
    "deflate",
    "from_roots",
    "local_scale",
    "taylor_coefficients",
    "random_monic",
]


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable[complex]):
        cs = tuple(complex(c) for c in coeffs)
        if not cs:
            raise ValueError("a polynomial needs at least one coefficient")
        for c in cs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient {c!r}")
        if cs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return self.coeffs[-1]

    @cached_property
    def scale(self) -> float:
        """Largest coefficient modulus; the reference size for tolerances."""
        return max(abs(c) for c in self.coeffs)

    @cached_property
    def abs_coeffs(self) -> tuple[float, ...]:
        return tuple(abs(c) for c in self.coeffs)

    @cached_property
    def array(self) -> np.ndarray:
        """Coefficients as a read-only complex128 array (ascending)."""
        a = np.array(self.coeffs, dtype=np.complex128)
        a.flags.writeable = False
        return a

    @cached_property
    def abs_array(self) -> np.ndarray:
        a = np.abs(self.array)
        a.flags.writeable = False
        return a

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


def evaluate(P: Polynomial, z: complex) -> complex:
    acc = 0j
    for a in reversed(P.coeffs):
        acc = acc * z + a
    return acc


def evaluate_with_derivative(P: Polynomial, z: complex) -> tuple[complex, complex]:
    """Fused Horner pass returning ``(P(z), P'(z))``."""
    cs = P.coeffs
    p = cs[-1]
    dp = 0j
    for k in range(len(cs) - 2, -1, -1):
        dp = dp * z + p
        p = p * z + cs[k]
    return p, dp


def derivative(P: Polynomial) -> Polynomial:
    if P.degree == 0:
        raise DegreeZero("the derivative of a constant is the zero polynomial")
    cs = P.coeffs
    return Polynomial(k * cs[k] for k in range(1, len(cs)))


def monicize(P: Polynomial) -> Polynomial:
    lead = P.leading
    if lead == 1:
        return P
    cs = [c / lead for c in P.coeffs[:-1]]
    cs.append(1 + 0j)
    return Polynomial(cs)


def root_bound(P: Polynomial, shift: float = 0.0) -> float:
    """Cauchy bound for the roots of ``P - c`` over all ``|c| <= shift``."""
    if not P.is_monic:
        raise NotMonic(f"root_bound needs a monic polynomial, leading coefficient is {P.leading}")
    if P.degree < 1:
        raise DegreeZero("root_bound needs degree >= 1")
    lower = [abs(c) for c in P.coeffs[:-1]]
    lower[0] += shift
    return 1.0 + max(lower)


def deflate(P: Polynomial, r: complex) -> tuple[Polynomial, complex]:
    """Synthetic division: ``P(z) = (z - r) Q(z) + rem``."""
    if P.degree < 1:
        raise DegreeZero("cannot deflate a constant")
    cs = P.coeffs
    n = P.degree
    q = [0j] * n
    acc = cs[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = acc * r + cs[k]
    return Polynomial(q), acc


def from_roots(roots: Sequence[complex]) -> Polynomial:
    if len(roots) == 0:
        raise ValueError("from_roots needs at least one root")
    cs = [1 + 0j]
    for r in roots:
        r = complex(r)
        nxt = [0j] * (len(cs) + 1)
        for k, a in enumerate(cs):
            nxt[k + 1] += a
            nxt[k] -= r * a
        cs = nxt
    return Polynomial(cs)


def taylor_coefficients(P: Polynomial, z: complex) -> list[complex]:
    """``[P(z), P'(z), P''(z)/2!, ...]`` by repeated synthetic division."""
    b = list(P.coeffs)
    n = len(b) - 1
    for k in range(n):
        for j in range(n - 1, k - 1, -1):
            b[j] += z * b[j + 1]
    return b


def local_scale(P: Polynomial, z: complex) -> float:
    """``sum |a_k| max(1, |z|)^k``: the size of the terms summed when evaluating at z."""
    m = abs(z)
    if m < 1.0:
        return sum(P.abs_coeffs)
    acc = 0.0
    for a in reversed(P.abs_coeffs):
        acc = acc * m + a
    return acc


def random_monic(degree: int, rng: np.random.Generator, radius: float = 2.0) -> Polynomial:
    """Monic polynomial whose lower coefficients are uniform in the disk of ``radius``."""
    if degree < 1:
        raise DegreeZero("degree must be >= 1")
    u = rng.random((degree, 2))
    mods = radius * np.sqrt(u[:, 0])
    args = 2.0 * np.pi * u[:, 1]
    lower = [cmath.rect(float(m), float(a)) for m, a in zip(mods, args)]
    return Polynomial(lower + [1 + 0j])
