"""Sampling-based estimators for distortion and covering defects.

Suprema are estimated over finite deterministic sample sets and reported
with the attaining sample, so every number can be recomputed independently.
The pair-defect estimate is a certified lower bound of the true supremum and
never decreases under sample refinement.  The covering estimate is monotone
per half (more subspace samples can only raise the onto half, more domain
samples can only raise the nearness half); see estimate_delta for the edge
behavior of the onto half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .maps import MapInstance, Subspace
from .spaces import SpaceSpec, as_vector, pnorm, pnorm_rows

DEFAULT_SEED = 1729

_CLAIM_TOL = 1e-9
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_COEFF_TOL = 1e-10
_GOLDEN_ITERS = 110
_MAX_SWEEPS = 300


@dataclass(frozen=True)
class Sampler:
    """Deterministic sample-set builder.

    kind "grid" lays integer-scaled symmetric grids along each axis, "random"
    draws seeded points in the ball, "hybrid" uses the grid on the line and
    random points in higher dimension.  Every sample set contains the origin
    and the signed axis points at the sampling radius.
    """

    kind: str = "hybrid"
    radius: float = 5.0
    step: Optional[float] = None
    count: int = 10000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.kind not in ("grid", "random", "hybrid"):
            raise ValueError(f"unknown sampler kind {self.kind!r}")
        if not self.radius > 0:
            raise ValueError("sampler radius must be positive")

    def _axis_points(self, space: SpaceSpec) -> np.ndarray:
        eye = np.eye(space.dim)
        return np.vstack([np.zeros((1, space.dim)), self.radius * eye, -self.radius * eye])

    def _grid_1d(self) -> np.ndarray:
        step = self.step if self.step is not None else self.radius / 1000.0
        m = int(round(self.radius / step))
        return step * np.arange(-m, m + 1, dtype=float)

    def sample(self, space: SpaceSpec) -> np.ndarray:
        use_grid = self.kind == "grid" or (self.kind == "hybrid" and space.dim == 1)
        parts = [self._axis_points(space)]
        if use_grid:
            line = self._grid_1d()
            for k in range(space.dim):
                block = np.zeros((line.size, space.dim))
                block[:, k] = line
                parts.append(block)
        else:
            rng = np.random.default_rng(self.seed)
            raw = rng.standard_normal((self.count, space.dim))
            norms = pnorm_rows(raw, space.p)
            keep = norms > 1e-12
            radii = self.radius * rng.uniform(0.0, 1.0, size=self.count) ** (1.0 / space.dim)
            parts.append(raw[keep] / norms[keep, None] * radii[keep, None])
        return np.unique(np.vstack(parts), axis=0)


@dataclass(frozen=True)
class DefectReport:
    """Result of a sup-estimation: always a lower bound for the true supremum."""

    kind: str
    estimate: float
    argmax: tuple
    samples_used: int
    is_lower_bound: bool = True
    consistent_with_claim: Optional[bool] = None
    half_onto: Optional[float] = None
    half_near: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "measured": self.estimate,
            "bound": None,
            "margin": None,
            "passed": self.consistent_with_claim,
            "argmax": [np.asarray(a).tolist() for a in self.argmax],
            "samples": self.samples_used,
            "half_onto": self.half_onto,
            "half_near": self.half_near,
        }


def estimate_epsilon(f: MapInstance, sampler: Sampler) -> DefectReport:
    """Largest sampled pairwise distortion | ||f(x)-f(y)|| - ||x-y|| |."""
    X = sampler.sample(f.domain)
    if X.shape[0] < 2:
        raise ValueError("sample set too small for pair enumeration")
    FX = f.evaluate_batch(X)
    best, i, j = kernels.max_pair_defect(X, FX, f.domain.p, f.codomain.p)
    consistent = None
    if f.claimed_eps is not None:
        consistent = bool(best <= f.claimed_eps + _CLAIM_TOL)
    return DefectReport(kind="epsilon", estimate=best, argmax=(X[i].copy(), X[j].copy()),
                        samples_used=int(X.shape[0]), consistent_with_claim=consistent)


def sample_subspace_ball(Y1: Subspace, radius: float, step: Optional[float] = None,
                         count: int = 2000, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Deterministic sample of the subspace intersected with the radius ball."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    basis = Y1.basis
    norms = pnorm_rows(basis, Y1.ambient.p)
    scaled = radius * basis / norms[:, None]
    parts = [np.zeros((1, Y1.ambient.dim)), scaled, -scaled]
    if Y1.dim == 1:
        h = step if step is not None else radius / 500.0
        cstep = h / norms[0]
        m = int(round(radius / h))
        cs = cstep * np.arange(-m, m + 1, dtype=float)
        parts.append(cs[:, None] * basis)
    else:
        rng = np.random.default_rng(seed)
        coeffs = rng.standard_normal((count, Y1.dim))
        pts = coeffs @ basis
        ptn = pnorm_rows(pts, Y1.ambient.p)
        keep = ptn > 1e-12
        radii = radius * rng.uniform(0.0, 1.0, size=count) ** (1.0 / Y1.dim)
        parts.append(pts[keep] / ptn[keep, None] * radii[keep, None])
    return np.unique(np.vstack(parts), axis=0)


def _golden_line_min(residual, lo: np.ndarray, hi: np.ndarray, iters: int = _GOLDEN_ITERS):
    """Vectorized golden-section minimum of a per-row convex line objective.

    residual(c) must return the objective for the coefficient array c (one
    coefficient per row).  Returns (c_min, value_at_c_min).
    """
    a, b = lo.astype(float).copy(), hi.astype(float).copy()
    for _ in range(iters):
        c = b - _GOLDEN * (b - a)
        d = a + _GOLDEN * (b - a)
        left = residual(c) < residual(d)
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    mid = 0.5 * (a + b)
    return mid, residual(mid)


def distances_to_line_span(Y: np.ndarray, b: np.ndarray, p: float):
    """Distances from each row of Y to span{b} in the p-norm (vectorized).

    Returns (dists, coeffs) with the minimizing coefficients.
    """
    Y = np.asarray(Y, dtype=float)
    nb = pnorm(b, p)
    M = 2.0 * pnorm_rows(Y, p) / nb + 1.0

    def residual(c):
        return pnorm_rows(Y - c[:, None] * b[None, :], p)

    c, val = _golden_line_min(residual, -M, M)
    return val, c


def distance_to_subspace(y, Y1: Subspace, space: SpaceSpec):
    """Exact distance from y to the subspace, with an attaining point.

    p = 2 uses the orthogonal projection; other p run golden-section per
    basis coefficient in cyclic sweeps (the objective is convex, and strictly
    so for 1 < p < inf), terminating when no coefficient moves by more than
    1e-10.
    """
    if Y1.ambient != space:
        raise ValueError("subspace does not live in the given space")
    y = as_vector(y, space)
    basis = Y1.basis
    coeffs, *_ = np.linalg.lstsq(basis.T, y, rcond=None)
    if space.p == 2.0:
        v = coeffs @ basis
        return pnorm(y - v, 2.0), v
    sv = np.linalg.svd(basis, compute_uv=False)
    reach = 2.0 * math.sqrt(space.dim) * float(np.linalg.norm(y)) / float(sv.min()) + 1.0
    c = coeffs.astype(float)
    for _ in range(_MAX_SWEEPS):
        biggest_move = 0.0
        for k in range(Y1.dim):
            rest = y - c @ basis + c[k] * basis[k]

            def residual(ck, rest=rest, bk=basis[k]):
                return pnorm_rows(rest[None, :] - ck[:, None] * bk[None, :], space.p)

            lo = np.array([c[k] - reach])
            hi = np.array([c[k] + reach])
            new_ck, _ = _golden_line_min(residual, lo, hi)
            biggest_move = max(biggest_move, abs(float(new_ck[0]) - c[k]))
            c[k] = float(new_ck[0])
        if biggest_move < _COEFF_TOL:
            break
    v = c @ basis
    return pnorm(y - v, space.p), v


def _batch_distances_to_subspace(Y: np.ndarray, Y1: Subspace) -> np.ndarray:
    p = Y1.ambient.p
    if p == 2.0:
        coeffs, *_ = np.linalg.lstsq(Y1.basis.T, Y.T, rcond=None)
        return pnorm_rows(Y - coeffs.T @ Y1.basis, 2.0)
    if Y1.dim == 1:
        d, _ = distances_to_line_span(Y, Y1.basis[0], p)
        return d
    return np.array([distance_to_subspace(y, Y1, Y1.ambient)[0] for y in Y])


def estimate_delta(f: MapInstance, Y1: Subspace, sampler: Sampler) -> DefectReport:
    """Covering defect estimate: the larger of the two one-sided suprema.

    half_onto = sup over sampled y in the subspace ball of the distance to
    the sampled image; half_near = sup over sampled x of the distance of
    f(x) to the subspace.  The subspace is truncated to the sampling ball.

    Unlike the pair-defect estimator, the onto half takes a minimum over the
    sampled image only, which can overshoot near the edge of the ball when
    the sampled domain does not over-cover it; no claim-consistency verdict
    is attached for that reason.
    """
    if Y1.ambient != f.codomain:
        raise ValueError("subspace must live in the codomain of the map")
    X = sampler.sample(f.domain)
    if X.shape[0] == 0:
        raise ValueError("empty sample set")
    FX = f.evaluate_batch(X)
    Ys = sample_subspace_ball(Y1, sampler.radius, step=sampler.step,
                              count=min(sampler.count, 2000), seed=sampler.seed)
    half_onto, iy, ix = kernels.max_min_distance(Ys, FX, f.codomain.p)
    near = _batch_distances_to_subspace(FX, Y1)
    k_near = int(np.argmax(near))
    half_near = float(near[k_near])
    if half_onto >= half_near:
        estimate = half_onto
        argmax = (Ys[iy].copy(), X[ix].copy())
    else:
        estimate = half_near
        argmax = (X[k_near].copy(),)
    return DefectReport(kind="delta", estimate=float(estimate), argmax=argmax,
                        samples_used=int(X.shape[0]) + int(Ys.shape[0]),
                        half_onto=float(half_onto), half_near=half_near)
