"""Compiled inner loops for Newton correction and segment continuation.

Every function here is plain Python over numpy arrays and scalars; numba
compiles them when it is importable and the Python versions run otherwise.
Coefficient arrays are complex128 in ascending order, ``acs`` holds their
moduli.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


def _jit(fn):
    if njit is None:  # pragma: no cover
        return fn
    return njit(cache=True, nogil=True)(fn)


# status codes shared with tracker.py
OK = 0
STALLED = 1
VANISHED = 2
UNDERFLOW = 3
FULL = 4
BASIN = 5


@_jit
def horner2(cs, z):
    n = cs.shape[0]
    p = cs[n - 1]
    dp = 0j
    for k in range(n - 2, -1, -1):
        dp = dp * z + p
        p = p * z + cs[k]
    return p, dp


@_jit
def local_scale(acs, z):
    m = abs(z)
    n = acs.shape[0]
    if m < 1.0:
        total = 0.0
        for k in range(n):
            total += acs[k]
        return total
    acc = 0.0
    for k in range(n - 1, -1, -1):
        acc = acc * m + acs[k]
    return acc


@_jit
def gamma(cs, z, work):
    """Smale's gamma at z, and P'(z). ``work`` is scratch of the same length as cs."""
    n = cs.shape[0] - 1
    for k in range(n + 1):
        work[k] = cs[k]
    for k in range(n):
        for j in range(n - 1, k - 1, -1):
            work[j] += z * work[j + 1]
    dp = work[1] if n >= 1 else 0j
    adp = abs(dp)
    if adp == 0.0:
        return np.inf, dp
    g = 0.0
    for k in range(2, n + 1):
        v = (abs(work[k]) / adp) ** (1.0 / (k - 1))
        if v > g:
            g = v
    return g, dp


# residuals below ROUNDING * local_scale are indistinguishable from zero in double precision
ROUNDING = 64 * 2.220446049250313e-16


@_jit
def residual_threshold(acs, z, tol):
    """``tol * max|a_k|``, floored at the rounding level of a Horner pass at z."""
    scale = 0.0
    for k in range(acs.shape[0]):
        if acs[k] > scale:
            scale = acs[k]
    return max(tol * scale, ROUNDING * local_scale(acs, z))


@_jit
def newton(cs, acs, c, z, tol, nmax, dp_floor):
    """Returns (status, z, updates)."""
    for k in range(nmax + 1):
        p, dp = horner2(cs, z)
        f = p - c
        if abs(f) <= residual_threshold(acs, z, tol):
            return OK, z, k
        if k == nmax:
            break
        if abs(dp) < dp_floor:
            return VANISHED, z, k
        z = z - f / dp
    return STALLED, z, nmax


@_jit
def advance(cs, acs, work, c_from, c_to, z, s, h, params, out_s, out_c, out_z, out_h, out_it):
    """Continue along c(s) = c_from + s (c_to - c_from) until s = 1 or the buffers fill.

    ``params`` = (h_min, h_max, newton_tol, newton_max, accept_iters, grow, dp_floor, step_radius).
    Returns (status, s, h, z, records_written).
    """
    h_min = params[0]
    h_max = params[1]
    tol = params[2]
    nmax = int(params[3])
    accept = int(params[4])
    grow = params[5]
    dp_floor = params[6]
    radius = params[7]
    dc = c_to - c_from
    adc = abs(dc)
    cap = out_s.shape[0]
    count = 0
    while s < 1.0:
        if count == cap:
            return FULL, s, h, z, count
        g, dp = gamma(cs, z, work)
        if abs(dp) < dp_floor:
            return VANISHED, s, h, z, count
        if g > 0.0:
            lim = radius * abs(dp) / (g * adc)
            if lim < h:
                h = lim
            if h < h_min:
                return BASIN, s, h, z, count
        rest = 1.0 - s
        if h >= rest:
            step = rest
            s_next = 1.0
            c_next = c_to
        else:
            step = h
            s_next = s + step
            c_next = c_from + s_next * dc
        z_pred = z + (step * dc) / dp
        status, z_new, iters = newton(cs, acs, c_next, z_pred, tol, nmax, dp_floor)
        ok = status == OK and iters <= accept
        # a corrector that travels further than the predictor has likely jumped to another sheet
        if ok and abs(z_new - z_pred) > 0.5 * abs(z_pred - z) + 1e-12 * (1.0 + abs(z)):
            ok = False
        if not ok:
            h = step / 2.0
            if h < h_min:
                return UNDERFLOW, s, h, z, count
            continue
        s = s_next
        z = z_new
        out_s[count] = s
        out_c[count] = c_next
        out_z[count] = z
        out_h[count] = step
        out_it[count] = iters
        count += 1
        if iters <= 2:
            h = min(step * grow, h_max)
        else:
            h = step
    return OK, s, h, z, count
