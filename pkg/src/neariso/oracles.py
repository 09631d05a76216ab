"""Independent brute-force cross-checks.

Each function here recomputes a quantity by a route deliberately different
from the main implementation (dense grids, exhaustive enumeration, finite
differences, implicit equations), so agreement between the two is evidence
rather than tautology.
"""

from __future__ import annotations

import math

import numpy as np

from .spaces import SpaceSpec, pnorm, pnorm_rows


def tau_section_bruteforce(s: float, p: float, coarse: int = 180, rounds: int = 8,
                           shrink: float = 3.0) -> float:
    """Midpoint-depth infimum by raw grid search over unit-circle pairs.

    Minimizes 1 - ||x + y|| / 2 over pairs on the plane p-circle subject to
    ||x - y|| >= s, by a full 2-D angle grid refined around the best cell.
    Accuracy is limited by the final grid spacing (about 1e-5 here).
    """
    if not 0.0 <= s <= 2.0:
        raise ValueError("s must lie in [0, 2]")
    if s == 0.0:
        return 0.0
    e = 2.0 / p

    def circle(thetas):
        c, sn = np.cos(thetas), np.sin(thetas)
        return np.column_stack([np.sign(c) * np.abs(c) ** e, np.sign(sn) * np.abs(sn) ** e])

    lo1 = lo2 = 0.0
    hi1 = hi2 = 2.0 * math.pi
    best_pair = (0.0, math.pi)
    best_val = -1.0
    for _ in range(rounds):
        t1 = np.linspace(lo1, hi1, coarse)
        t2 = np.linspace(lo2, hi2, coarse)
        P1 = circle(t1)
        P2 = circle(t2)
        diff = pnorm_rows(P1[:, None, :] - P2[None, :, :], p)
        mids = pnorm_rows(P1[:, None, :] + P2[None, :, :], p) / 2.0
        mids[diff < s] = -np.inf
        k = int(np.argmax(mids))
        i, j = divmod(k, coarse)
        if not np.isfinite(mids[i, j]):
            return 1.0  # no feasible pair at this resolution: antipodal regime
        best_val = float(mids[i, j])
        best_pair = (float(t1[i]), float(t2[j]))
        h1 = (hi1 - lo1) / shrink
        h2 = (hi2 - lo2) / shrink
        lo1, hi1 = best_pair[0] - h1 / 2.0, best_pair[0] + h1 / 2.0
        lo2, hi2 = best_pair[1] - h2 / 2.0, best_pair[1] + h2 / 2.0
    return 1.0 - best_val


def tau_hanner_implicit(s: float, p: float, iters: int = 80) -> float:
    """Modulus for 1 < p <= 2 from the implicit relation
    (v + s/2)^p + |v - s/2|^p = 2 with v = 1 - tau, solved by bisection."""
    if not 1.0 < p <= 2.0:
        raise ValueError("implicit form applies to 1 < p <= 2")

    def g(v):
        return (v + s / 2.0) ** p + abs(v - s / 2.0) ** p - 2.0

    lo, hi = 0.0, 1.0
    if g(hi) <= 0.0:
        return 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if g(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 1.0 - 0.5 * (lo + hi)


def pair_defect_exhaustive(X: np.ndarray, FX: np.ndarray, p_in: float, p_out: float):
    """Plain double loop over all pairs; the reference for the kernels."""
    n = len(X)
    best, bi, bj = -1.0, 0, 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            v = abs(pnorm(FX[i] - FX[j], p_out) - pnorm(X[i] - X[j], p_in))
            if v > best:
                best, bi, bj = v, i, j
    return best, bi, bj


def max_min_exhaustive(Y: np.ndarray, FX: np.ndarray, p: float):
    """Plain double loop max-min; the reference for the covering kernel."""
    best, biy, bix = -1.0, 0, 0
    for i, y in enumerate(Y):
        inner, arg = math.inf, 0
        for j, v in enumerate(FX):
            d = pnorm(v - y, p)
            if d < inner:
                inner, arg = d, j
        if inner > best:
            best, biy, bix = inner, i, arg
    return best, biy, bix


def norm_gradient_fd(z: np.ndarray, space: SpaceSpec, h: float = 1e-5) -> np.ndarray:
    """Central finite-difference gradient of the norm at z."""
    z = np.asarray(z, dtype=float)
    g = np.zeros_like(z)
    for k in range(z.size):
        step = np.zeros_like(z)
        step[k] = h
        g[k] = (pnorm(z + step, space.p) - pnorm(z - step, space.p)) / (2.0 * h)
    return g


def golden_section_scalar(fn, lo: float, hi: float, iters: int = 120) -> float:
    """Scalar golden-section minimizer (independent of the vectorized one)."""
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    for _ in range(iters):
        c = b - golden * (b - a)
        d = a + golden * (b - a)
        if fn(c) < fn(d):
            b = d
        else:
            a = c
    return 0.5 * (a + b)
