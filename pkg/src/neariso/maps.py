"""Catalog of nearisometry instances.

Three classical counterexample maps plus seeded randomly perturbed isometries.
A :class:`MapInstance` bundles an evaluable map with its claimed distortion
budget eps, an optional covering defect delta, and the target subspace it
nearly maps onto.  Evaluation is pure; all randomness is fixed at
construction time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .operators import LinearOperator, check_isometry
from .spaces import SpaceSpec, as_vector, pnorm

CATALOG_NAMES = ("hyers-ulam", "sharp-l1", "ramp-hilbert", "perturbed")


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of a p-normed space, given by an ordered basis (rows)."""

    ambient: SpaceSpec
    basis: np.ndarray

    def __post_init__(self):
        b = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if b.shape[1] != self.ambient.dim:
            raise ValueError(f"basis vectors of length {b.shape[1]} do not fit dim {self.ambient.dim}")
        if b.shape[0] > self.ambient.dim:
            raise ValueError("more basis vectors than ambient dimensions")
        sv = np.linalg.svd(b, compute_uv=False)
        if sv.min() <= 1e-10 * max(1.0, sv.max()):
            raise ValueError("basis vectors are not linearly independent")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def coefficients_to_point(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs, dtype=float) @ self.basis

    def contains(self, y, tol: float = 1e-9) -> bool:
        y = as_vector(y, self.ambient)
        coeffs, *_ = np.linalg.lstsq(self.basis.T, y, rcond=None)
        resid = y - coeffs @ self.basis
        return bool(np.abs(resid).max() <= tol * max(1.0, np.abs(y).max()))


@dataclass(frozen=True)
class MapInstance:
    """An evaluable map between two spaces, with nearisometry metadata."""

    domain: SpaceSpec
    codomain: SpaceSpec
    func: Callable[[np.ndarray], np.ndarray]
    claimed_eps: Optional[float] = None
    claimed_delta: Optional[float] = None
    target_subspace: Optional[Subspace] = None
    name: str = "map"
    batch_func: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    def evaluate(self, x) -> np.ndarray:
        y = np.asarray(self.func(as_vector(x, self.domain)), dtype=float)
        return as_vector(y, self.codomain)

    def evaluate_batch(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.domain.dim:
            raise ValueError(f"batch of shape {X.shape} does not fit dim {self.domain.dim}")
        if self.batch_func is not None:
            out = np.asarray(self.batch_func(X), dtype=float)
        else:
            out = np.stack([np.asarray(self.func(x), dtype=float) for x in X])
        if out.shape != (X.shape[0], self.codomain.dim):
            raise ValueError("batch evaluation produced a wrong shape")
        return out


def first_axis_subspace(space: SpaceSpec) -> Subspace:
    e1 = np.zeros(space.dim)
    e1[0] = 1.0
    return Subspace(space, e1[None, :])


def make_hyers_ulam(eps: float) -> MapInstance:
    """The classical line-to-plane map f(x) = (x, sqrt(2 eps |x|)).

    An eps-nearisometry whose deviation from either linear isometry into the
    first axis grows without bound.  eps = 0 degenerates to the exact
    embedding (x, 0).
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    domain = SpaceSpec(1, 2.0)
    codomain = SpaceSpec(2, 2.0)

    def f(x):
        t = x[0]
        return np.array([t, math.sqrt(2.0 * eps * abs(t))])

    def f_batch(X):
        t = X[:, 0]
        return np.column_stack([t, np.sqrt(2.0 * eps * np.abs(t))])

    return MapInstance(domain, codomain, f, claimed_eps=float(eps),
                       target_subspace=first_axis_subspace(codomain),
                       name="hyers-ulam", batch_func=f_batch)


def make_sharp_l1(eps: float, delta: float) -> MapInstance:
    """Piecewise map of the line into the sum-norm plane attaining 2*eps + 2*delta.

    f(0) = (0,0) and f(delta+eps) = (-eps, delta); elsewhere
    f(t) = (t - eps, 0) for t < 0, (-eps, t) for 0 < t <= delta, and
    (t - delta - eps, delta) for t >= delta.  It is an eps-nearisometry
    mapping the line delta-onto the first axis.
    """
    if eps < 0 or delta < 0:
        raise ValueError("eps and delta must be nonnegative")
    domain = SpaceSpec(1, 2.0)
    codomain = SpaceSpec(2, 1.0)
    special = delta + eps

    def f(x):
        t = x[0]
        if t == 0.0:
            return np.array([0.0, 0.0])
        if t == special:
            return np.array([-eps, delta])
        if t < 0.0:
            return np.array([t - eps, 0.0])
        if t <= delta:
            return np.array([-eps, t])
        return np.array([t - delta - eps, delta])

    def f_batch(X):
        t = X[:, 0]
        first = np.select(
            [t == 0.0, t == special, t < 0.0, t <= delta],
            [0.0, -eps, t - eps, -eps],
            default=t - delta - eps,
        )
        second = np.select(
            [t == 0.0, t == special, t < 0.0, t <= delta],
            [0.0, delta, 0.0, t],
            default=delta,
        )
        return np.column_stack([first, second])

    return MapInstance(domain, codomain, f, claimed_eps=float(eps), claimed_delta=float(delta),
                       target_subspace=first_axis_subspace(codomain),
                       name="sharp-l1", batch_func=f_batch)


def make_ramp_hilbert(eps: float, delta: float) -> MapInstance:
    """Line-to-Euclidean-plane ramp f(t) = (t, g(t)) with g = 0, delta*t/r, delta.

    The ramp width is r = delta^2 / (2 eps), which makes the distortion budget
    exactly eps (the worst excess across the ramp is delta^2 / (2 r)), while
    the deviation from t -> (t, 0) equals delta for every t >= r.
    """
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    domain = SpaceSpec(1, 2.0)
    codomain = SpaceSpec(2, 2.0)
    r = delta * delta / (2.0 * eps)

    def f(x):
        t = x[0]
        return np.array([t, delta * min(max(t / r, 0.0), 1.0)])

    def f_batch(X):
        t = X[:, 0]
        return np.column_stack([t, delta * np.clip(t / r, 0.0, 1.0)])

    return MapInstance(domain, codomain, f, claimed_eps=float(eps), claimed_delta=float(delta),
                       target_subspace=first_axis_subspace(codomain),
                       name="ramp-hilbert", batch_func=f_batch)


def make_perturbed_isometry(space_in: SpaceSpec, space_out: SpaceSpec,
                            U: LinearOperator, eps: float, seed: int) -> MapInstance:
    """f(x) = Ux + eta(x) with a seeded smooth perturbation, ||eta(x)|| <= eps/2.

    eta is coordinatewise bounded sinusoidal noise with eta(0) = 0, so the
    triangle inequality caps the distortion at eps and the deviation from U
    at eps/2.  U must pass the sampled isometry check.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if U.domain != space_in or U.codomain != space_out:
        raise ValueError("U does not map the given spaces")
    check_isometry(U)
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((space_out.dim, space_in.dim))
    freqs = rng.uniform(0.5, 2.0, size=space_out.dim)
    weights = rng.uniform(0.5, 1.0, size=space_out.dim)
    coeffs = weights / pnorm(weights, space_out.p)
    amp = 0.5 * eps

    def f(x):
        return U.matrix @ x + amp * coeffs * np.sin(freqs * (dirs @ x))

    def f_batch(X):
        return X @ U.matrix.T + amp * coeffs * np.sin(freqs * (X @ dirs.T))

    image = Subspace(space_out, U.matrix.T) if U.domain.dim <= U.codomain.dim else None
    return MapInstance(space_in, space_out, f, claimed_eps=float(eps),
                       claimed_delta=0.5 * float(eps), target_subspace=image,
                       name="perturbed", batch_func=f_batch)


def normalize_origin(f: MapInstance) -> MapInstance:
    """Shift a map so that it fixes the origin; the distortion budget is unchanged."""
    offset = f.evaluate(np.zeros(f.domain.dim))
    if not np.any(offset):
        return f
    base_func, base_batch = f.func, f.batch_func
    shifted_batch = None
    if base_batch is not None:
        shifted_batch = lambda X: base_batch(X) - offset
    return MapInstance(f.domain, f.codomain, lambda x: base_func(x) - offset,
                       claimed_eps=f.claimed_eps, claimed_delta=f.claimed_delta,
                       target_subspace=f.target_subspace,
                       name=f.name, batch_func=shifted_batch)
