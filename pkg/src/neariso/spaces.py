"""Finite-dimensional real vector spaces with p-norms.

Vectors and dual vectors are plain numpy arrays; a :class:`SpaceSpec` carries
the dimension and the exponent p (``math.inf`` encodes the max norm).  The
module provides the norm, the duality map (supporting functional), the
modulus of uniform convexity ``tau`` and its inverse-like companion ``gamma``
defined by gamma(t) = sup{s in [0,2] : tau(s) <= t}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# Refinement settings for the small-p modulus search; chosen so the computed
# modulus is a smooth, monotone function of s to well below 1e-9.
_SECTION_SCAN = 40
_SECTION_GOLDEN_ITERS = 30
_CONSTRAINT_SCAN = 24
_CONSTRAINT_BISECT_ITERS = 42

_GAMMA_BISECT_ITERS = 60


@dataclass(frozen=True)
class SpaceSpec:
    """A real vector space R^dim normed by the p-norm."""

    dim: int
    p: float

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        if not (self.p >= 1.0):
            raise ValueError(f"p must satisfy p >= 1, got {self.p!r}")

    @property
    def uniformly_convex(self) -> bool:
        return 1.0 < self.p < math.inf

    @property
    def smooth(self) -> bool:
        return 1.0 < self.p < math.inf

    @property
    def conjugate_exponent(self) -> float:
        if self.p == 1.0:
            return math.inf
        if self.p == math.inf:
            return 1.0
        return self.p / (self.p - 1.0)


def as_vector(x, space: SpaceSpec) -> np.ndarray:
    """Coerce x to a float vector of the space, validating shape and finiteness."""
    v = np.asarray(x, dtype=float)
    if v.shape != (space.dim,):
        raise ValueError(f"vector of shape {v.shape} does not fit dim {space.dim}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def pnorm(v: np.ndarray, p: float) -> float:
    """p-norm of a 1-D array, p in [1, inf]."""
    a = np.abs(v)
    if p == math.inf:
        return float(a.max()) if a.size else 0.0
    if p == 1.0:
        return float(a.sum())
    if p == 2.0:
        return float(math.sqrt(np.dot(a, a)))
    return float(np.sum(a**p) ** (1.0 / p))


def pnorm_rows(arr: np.ndarray, p: float) -> np.ndarray:
    """p-norm along the last axis of an array."""
    a = np.abs(arr)
    if p == math.inf:
        return a.max(axis=-1)
    if p == 1.0:
        return a.sum(axis=-1)
    if p == 2.0:
        return np.sqrt((a * a).sum(axis=-1))
    return a.__pow__(p).sum(axis=-1) ** (1.0 / p)


def norm(x, space: SpaceSpec) -> float:
    """Norm of x in the given space."""
    return pnorm(as_vector(x, space), space.p)


def dual_norm(g, space: SpaceSpec) -> float:
    """Norm of a functional g in the dual of the given space (conjugate exponent)."""
    v = as_vector(g, space)
    return pnorm(v, space.conjugate_exponent)


def support_functional(z, space: SpaceSpec) -> np.ndarray:
    """The unique norm-one functional attaining the norm at z.

    Requires 1 < p < inf (smoothness makes the functional unique) and z != 0.
    Coincides with the gradient of the norm at z:
    j(z)_i = sign(z_i) |z_i|^(p-1) / ||z||^(p-1).
    """
    z = as_vector(z, space)
    if not space.smooth:
        raise ValueError("supporting functional requires 1 < p < inf")
    nz = pnorm(z, space.p)
    if nz == 0.0:
        raise ValueError("zero vector has no supporting functional")
    if space.p == 2.0:
        return z / nz
    return np.sign(z) * np.abs(z) ** (space.p - 1.0) / nz ** (space.p - 1.0)


def dual_orthogonalize(w, z, space: SpaceSpec) -> np.ndarray:
    """Remove from w its component along z as seen by the duality map.

    Returns w' = w - (j(z)@w / ||z||) z, so that j(z) @ w' = 0 up to rounding.
    """
    w = as_vector(w, space)
    z = as_vector(z, space)
    j = support_functional(z, space)
    return w - (float(j @ w) / pnorm(z, space.p)) * z


def _sphere_point(theta: float, p: float) -> tuple[float, float]:
    # Parametrization of the unit circle of the plane with exponent p:
    # |x|^p + |y|^p = |cos t|^2 + |sin t|^2 = 1.
    c, s = math.cos(theta), math.sin(theta)
    e = 2.0 / p
    return (math.copysign(abs(c) ** e, c), math.copysign(abs(s) ** e, s))


def _pair_distance(a: tuple[float, float], b: tuple[float, float], p: float) -> float:
    return (abs(a[0] - b[0]) ** p + abs(a[1] - b[1]) ** p) ** (1.0 / p)


def _midpoint_norm(a: tuple[float, float], b: tuple[float, float], p: float) -> float:
    return 0.5 * (abs(a[0] + b[0]) ** p + abs(a[1] + b[1]) ** p) ** (1.0 / p)


def _partner_on_constraint(theta1: float, s: float, p: float) -> float:
    """Smallest t2 >= theta1 with ||u(theta1) - u(t2)|| = s (first crossing)."""
    a = _sphere_point(theta1, p)
    lo, hi = theta1, theta1 + math.pi
    step = (hi - lo) / _CONSTRAINT_SCAN
    t_prev = lo
    for k in range(1, _CONSTRAINT_SCAN + 1):
        t = lo + k * step
        if _pair_distance(a, _sphere_point(t, p), p) >= s:
            lo, hi = t_prev, t
            break
        t_prev = t
    else:
        return hi
    for _ in range(_CONSTRAINT_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if _pair_distance(a, _sphere_point(mid, p), p) >= s:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _section_objective(theta1: float, s: float, p: float) -> float:
    a = _sphere_point(theta1, p)
    b = _sphere_point(_partner_on_constraint(theta1, s, p), p)
    return _midpoint_norm(a, b, p)


@lru_cache(maxsize=65536)
def _modulus_small_p(s: float, p: float) -> float:
    """Modulus for 1 < p < 2 by minimizing the midpoint depth over a plane section.

    The extremal pair of unit vectors at distance s lies in a two-dimensional
    coordinate section, so the infimum over the plane equals the full modulus.
    The pair is parametrized on the unit circle; the distance constraint is
    solved by bisection and the free angle by scan plus golden-section.
    """
    if s <= 0.0:
        return 0.0
    if s >= 2.0:
        return 1.0  # strict convexity forces antipodal pairs at distance 2
    best_val = -1.0
    best_theta = 0.0
    for k in range(_SECTION_SCAN):
        theta = 2.0 * math.pi * k / _SECTION_SCAN
        val = _section_objective(theta, s, p)
        if val > best_val:
            best_val, best_theta = val, theta
    h = 2.0 * math.pi / _SECTION_SCAN
    lo, hi = best_theta - h, best_theta + h
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc = _section_objective(c, s, p)
    fd = _section_objective(d, s, p)
    for _ in range(_SECTION_GOLDEN_ITERS):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = _section_objective(c, s, p)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = _section_objective(d, s, p)
    return 1.0 - max(best_val, fc, fd)


def modulus_of_convexity(s, space: SpaceSpec):
    """Guaranteed midpoint depth tau(s) for unit vectors at distance >= s.

    For p >= 2 the closed form 1 - (1 - (s/2)^p)^(1/p) is exact; for
    1 < p < 2 the value is computed by numerical minimization over a plane
    section (refined well beyond 1e-6).  Accepts scalars or arrays.
    """
    if not space.uniformly_convex:
        raise ValueError("modulus of convexity requires 1 < p < inf")
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0.0) or np.any(s_arr > 2.0):
        raise ValueError("s must lie in [0, 2]")
    p = space.p
    if p >= 2.0:
        # -expm1(log1p(-(s/2)^p)/p) keeps full precision for tiny s.
        with np.errstate(divide="ignore"):
            out = -np.expm1(np.log1p(-((s_arr / 2.0) ** p)) / p)
        out = np.where(s_arr >= 2.0, 1.0, out)
    else:
        out = np.vectorize(lambda v: _modulus_small_p(float(v), p))(s_arr)
    return float(out) if np.isscalar(s) or s_arr.ndim == 0 else out


def gamma(t, space: SpaceSpec):
    """gamma(t) = sup{s in [0,2] : tau(s) <= t}, by bisection on the monotone tau.

    Accepts scalars or arrays of t in [0, 1].  The returned value never
    exceeds the true supremum by construction (the lower bisection endpoint
    is returned), so inequalities of the form ||x - y|| <= R gamma(...) stay
    faithful.
    """
    if not space.uniformly_convex:
        raise ValueError("gamma requires 1 < p < inf")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0) or np.any(t_arr > 1.0):
        raise ValueError("t must lie in [0, 1]")
    scalar = np.isscalar(t) or t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    lo = np.zeros_like(t_arr)
    hi = np.full_like(t_arr, 2.0)
    done = t_arr >= 1.0  # tau(2) = 1, so the supremum is 2
    lo[done] = 2.0
    for _ in range(_GAMMA_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        le = np.asarray(modulus_of_convexity(mid, space)) <= t_arr
        lo = np.where(~done & le, mid, lo)
        hi = np.where(~done & ~le, mid, hi)
    return float(lo[0]) if scalar else lo
