"""Constructive machinery: directional limits, ray functionals, norm-one
projections, and norm-one left inverses.

The central object is the directional limit phi(x) = lim f(sx)/s, which
exists whenever the codomain is uniformly convex and recovers the unique
linear isometry a nearisometry shadows.  Stopping is certified: the returned
point is within the requested tolerance of the true limit by the explicit
rate bound (1 + eps/s) * gamma(3 eps / (s + eps)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, UnsupportedConstructionError
from .maps import MapInstance, Subspace
from .operators import (
    ROLE_ISOMETRY,
    ROLE_LEFT_INVERSE,
    ROLE_PROJECTION,
    LinearOperator,
    isometry_defect,
    operator_norm_estimate,
)
from .spaces import SpaceSpec, as_vector, gamma, pnorm, support_functional

_S_CAP = 2.0**60
_SUPPORT_CUTOFF = 1e-6  # relative threshold separating structural zeros
_LEFT_INVERSE_NORM_TOL = 1e-6
_LEFT_INVERSE_IDENTITY_TOL = 1e-9


@dataclass(frozen=True)
class LimitCertificate:
    """Stopping certificate for a directional limit evaluation."""

    s_used: float
    rate_bound: float
    tolerance_requested: float


@dataclass(frozen=True)
class RayFunctionalResult:
    """A norm-one functional built at a single large ray parameter.

    slack_per_unit quantifies how far the finite-parameter surrogate may sit
    from the ideal limiting functional: at scale t the sandwich lower bound
    weakens by at most slack_per_unit * t.
    """

    functional: np.ndarray
    n_used: float
    slack_per_unit: float


def convergence_rate_bound(s: float, eps: float, codomain: SpaceSpec) -> float:
    """Tail bound for || f(sx)/s - f(tx)/t || over all t > s > 2*eps."""
    return (1.0 + eps / s) * gamma(3.0 * eps / (s + eps), codomain)


def directional_limit(f: MapInstance, x, tol: float):
    """Approximate phi(x) = lim f(sx)/s within tol * ||x||.

    Uses a doubling schedule starting at max(2*eps + 1, 1) and stops at the
    first s whose rate bound drops below tol.  Requires a uniformly convex
    codomain and a claimed distortion budget on f.
    """
    if not f.codomain.uniformly_convex:
        raise UnsupportedConstructionError(
            "directional limits require a uniformly convex codomain (1 < p < inf)")
    if f.claimed_eps is None:
        raise ValueError("map has no claimed distortion budget")
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = as_vector(x, f.domain)
    nx = pnorm(x, f.domain.p)
    if nx == 0.0:
        return np.zeros(f.codomain.dim), LimitCertificate(0.0, 0.0, tol)
    eps = float(f.claimed_eps)
    xhat = x / nx
    s = max(2.0 * eps + 1.0, 1.0)
    while True:
        bound = convergence_rate_bound(s, eps, f.codomain)
        if bound <= tol:
            break
        s *= 2.0
        if s > _S_CAP:
            raise ConvergenceError(
                f"rate bound did not reach tol={tol:g} before the parameter cap")
    point = f.evaluate(s * xhat) / s * nx
    return point, LimitCertificate(s_used=s, rate_bound=float(bound), tolerance_requested=tol)


def build_linear_isometry(f: MapInstance, tol: float) -> LinearOperator:
    """Assemble the shadowed linear isometry column by column.

    Columns are directional limits along the coordinate directions; the
    result must pass the sampled isometry check within 2*tol, and (in
    dimension >= 2) a linearity cross-check along e1 + e2 within 3*tol.
    """
    n = f.domain.dim
    cols = []
    for k in range(n):
        e = np.zeros(n)
        e[k] = 1.0
        point, _ = directional_limit(f, e, tol)
        cols.append(point)
    phi = LinearOperator(np.column_stack(cols), f.domain, f.codomain, ROLE_ISOMETRY)
    defect = isometry_defect(phi)
    if defect > 2.0 * tol:
        raise ConvergenceError(
            f"isometry check failed (sampled defect {defect:.3e} > {2.0 * tol:.1e}); "
            "the map may not be a nearisometry or tol is too loose")
    if n >= 2:
        diag = np.zeros(n)
        diag[0] = diag[1] = 1.0
        cross, _ = directional_limit(f, diag, tol)
        if pnorm(cross - (cols[0] + cols[1]), f.codomain.p) > 3.0 * tol:
            raise ConvergenceError("linearity cross-check failed along e1 + e2")
    return phi


def ray_functional(f: MapInstance, eps: float, n: float) -> RayFunctionalResult:
    """Norm-one functional F with t - 2*eps <= F f(t) <= t + eps on [0, n].

    F is the supporting functional at f(n); the codomain must be smooth so
    that the functional is unique.  n must exceed eps so that f(n) is
    guaranteed away from zero.
    """
    if f.domain.dim != 1:
        raise ValueError("ray functionals are defined for maps of the line")
    if not f.codomain.smooth:
        raise ValueError("ray functional requires a smooth codomain (1 < p < inf)")
    if not n > eps:
        raise ValueError("n must exceed eps")
    z = f.evaluate(np.array([float(n)]))
    if pnorm(z, f.codomain.p) == 0.0:
        raise ValueError("f(n) = 0, no supporting functional")
    F = support_functional(z, f.codomain)
    return RayFunctionalResult(functional=F, n_used=float(n),
                               slack_per_unit=2.0 * eps / float(n))


def norm_one_projection(space: SpaceSpec, K: Subspace) -> LinearOperator:
    """Idempotent linear map onto K with operator norm one.

    Supported cases: p = 2 (orthogonal projection onto any K), and general p
    when K is a coordinate subspace, each basis vector occupying its own
    single axis (signed coordinate truncation).  Anything else raises
    UnsupportedConstructionError: outside these cases no certifiable
    construction is attempted.
    """
    if K.ambient != space:
        raise ValueError("subspace does not live in the given space")
    basis = K.basis
    if space.p == 2.0:
        gram = basis @ basis.T
        proj = basis.T @ np.linalg.solve(gram, basis)
    else:
        cleaned = basis.copy()
        cleaned[np.abs(cleaned) <= _SUPPORT_CUTOFF * np.abs(cleaned).max(axis=1, keepdims=True)] = 0.0
        supports = [np.nonzero(row)[0].tolist() for row in cleaned]
        axes = [s[0] for s in supports if len(s) == 1]
        if any(len(s) != 1 for s in supports) or len(set(axes)) != len(supports):
            raise UnsupportedConstructionError(
                "no norm-one projection construction available: for p != 2 the "
                "subspace must be spanned by disjoint single-axis vectors")
        proj = np.zeros((space.dim, space.dim))
        for axis in axes:
            proj[axis, axis] = 1.0
    op = LinearOperator(proj, space, space, ROLE_PROJECTION)
    idem = float(np.abs(proj @ proj - proj).max())
    if idem > 1e-12:
        raise ConvergenceError(f"projection failed the idempotency check ({idem:.3e})")
    est = operator_norm_estimate(op, extra_points=basis)
    if est > 1.0 + 1e-9:
        raise ConvergenceError(f"projection norm estimate {est:.12f} exceeds one")
    return op


def _subspace_probe_points(basis: np.ndarray, p: float, count: int = 512, seed: int = 907) -> np.ndarray:
    rng = np.random.default_rng(seed)
    combos = rng.standard_normal((count, basis.shape[0])) @ basis
    return np.vstack([basis, combos])


def build_left_inverse_T(f: MapInstance, tol: float) -> LinearOperator:
    """Norm-one left inverse of the shadowed isometry: T = phi^(-1) P.

    phi comes from build_linear_isometry; P is the norm-one projection onto
    its image (orthogonal for p = 2, signed coordinate truncation when the
    image columns each occupy a single axis after discarding entries below
    the structural-zero cutoff).  The result satisfies T phi = identity
    within 1e-9 and has sampled operator norm 1 within 1e-6.
    """
    phi = build_linear_isometry(f, tol)
    cols = phi.matrix.T
    if f.codomain.p != 2.0:
        cleaned = cols.copy()
        cleaned[np.abs(cleaned) <= _SUPPORT_CUTOFF * np.abs(cleaned).max(axis=1, keepdims=True)] = 0.0
        K = Subspace(f.codomain, cleaned)
    else:
        K = Subspace(f.codomain, cols)
    P = norm_one_projection(f.codomain, K)
    T = np.linalg.pinv(phi.matrix) @ P.matrix
    op = LinearOperator(T, f.codomain, f.domain, ROLE_LEFT_INVERSE)
    ident = float(np.abs(T @ phi.matrix - np.eye(f.domain.dim)).max())
    if ident > _LEFT_INVERSE_IDENTITY_TOL:
        raise ConvergenceError(f"left inverse fails T phi = identity ({ident:.3e})")
    probes = _subspace_probe_points(K.basis, f.codomain.p)
    est = operator_norm_estimate(op, extra_points=probes)
    if abs(est - 1.0) > _LEFT_INVERSE_NORM_TOL:
        raise ConvergenceError(f"left inverse norm estimate {est:.9f} is not 1")
    return op
