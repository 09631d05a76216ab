"""Matrix-represented linear maps between p-normed spaces.

Operators carry a role tag (isometry, projection, left-inverse, functional)
and the sampling-based checks that certify the role.  Operator norms are
reported as sampled lower bounds; the samplers mix seeded sphere points with
any caller-supplied structured directions so that suprema attained on a
subspace are actually met by the sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spaces import SpaceSpec, as_vector, pnorm_rows

ROLE_ISOMETRY = "isometry"
ROLE_PROJECTION = "projection"
ROLE_LEFT_INVERSE = "left-inverse"
ROLE_FUNCTIONAL = "functional"

_CHECK_SAMPLES = 256
_CHECK_SEED = 1201


@dataclass(frozen=True)
class LinearOperator:
    matrix: np.ndarray
    domain: SpaceSpec
    codomain: SpaceSpec
    role: str

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise ValueError(
                f"matrix shape {m.shape} does not map dim {self.domain.dim} "
                f"to dim {self.codomain.dim}"
            )
        object.__setattr__(self, "matrix", m)

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ as_vector(x, self.domain)

    def apply_batch(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.matrix.T

    def compose(self, other: "LinearOperator", role: str) -> "LinearOperator":
        """self after other: x -> self(other(x))."""
        if other.codomain != self.domain:
            raise ValueError("composition spaces do not match")
        return LinearOperator(self.matrix @ other.matrix, other.domain, self.codomain, role)

    def to_dict(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "role": self.role,
            "domain": {"dim": self.domain.dim, "p": self.domain.p},
            "codomain": {"dim": self.codomain.dim, "p": self.codomain.p},
        }


def sphere_sample(space: SpaceSpec, count: int = _CHECK_SAMPLES, seed: int = _CHECK_SEED) -> np.ndarray:
    """Seeded sample of unit-norm vectors, always containing the signed axes."""
    rng = np.random.default_rng(seed)
    pts = [np.eye(space.dim), -np.eye(space.dim)]
    if count > 0:
        raw = rng.standard_normal((count, space.dim))
        raw = raw[np.abs(raw).sum(axis=1) > 1e-12]
        pts.append(raw / pnorm_rows(raw, space.p)[:, None])
    return np.vstack(pts)


def operator_norm_estimate(op: LinearOperator, count: int = _CHECK_SAMPLES,
                           seed: int = _CHECK_SEED,
                           extra_points: np.ndarray | None = None) -> float:
    """Sampled lower bound for the operator norm (sup ||Ax|| over unit x)."""
    X = sphere_sample(op.domain, count, seed)
    if extra_points is not None and len(extra_points):
        extra = np.asarray(extra_points, dtype=float)
        norms = pnorm_rows(extra, op.domain.p)
        keep = norms > 1e-12
        X = np.vstack([X, extra[keep] / norms[keep][:, None]])
    return float(pnorm_rows(op.apply_batch(X), op.codomain.p).max())


def isometry_defect(op: LinearOperator, count: int = _CHECK_SAMPLES, seed: int = _CHECK_SEED) -> float:
    """max | ||Ax|| - 1 | over a seeded unit-sphere sample."""
    X = sphere_sample(op.domain, count, seed)
    return float(np.abs(pnorm_rows(op.apply_batch(X), op.codomain.p) - 1.0).max())


def check_isometry(op: LinearOperator, tol: float = 1e-9) -> None:
    defect = isometry_defect(op)
    if defect > tol:
        raise ValueError(f"operator fails the isometry check: sampled defect {defect:.3e} > {tol:.1e}")


def check_projection(op: LinearOperator, tol_idem: float = 1e-12, tol_norm: float = 1e-9) -> None:
    if op.domain != op.codomain:
        raise ValueError("a projection must map a space to itself")
    m = op.matrix
    idem = float(np.abs(m @ m - m).max())
    if idem > tol_idem:
        raise ValueError(f"projection is not idempotent: max |PP - P| = {idem:.3e}")
    est = operator_norm_estimate(op)
    if est > 1.0 + tol_norm:
        raise ValueError(f"projection norm estimate {est:.12f} exceeds 1")


def coordinate_embedding(domain: SpaceSpec, codomain: SpaceSpec,
                         positions=None, signs=None) -> LinearOperator:
    """Isometry sending e_k to sign_k * e_{positions[k]}; valid for every p."""
    if codomain.dim < domain.dim:
        raise ValueError("codomain too small for an embedding")
    if positions is None:
        positions = list(range(domain.dim))
    if signs is None:
        signs = [1.0] * domain.dim
    if len(set(positions)) != domain.dim:
        raise ValueError("positions must be distinct")
    m = np.zeros((codomain.dim, domain.dim))
    for k, (pos, sg) in enumerate(zip(positions, signs)):
        m[pos, k] = float(sg)
    return LinearOperator(m, domain, codomain, ROLE_ISOMETRY)


def axis_embedding(domain: SpaceSpec, codomain: SpaceSpec, sign: float = 1.0) -> LinearOperator:
    """The line-to-first-axis embedding t -> (sign * t, 0, ..., 0)."""
    if domain.dim != 1:
        raise ValueError("axis embedding expects a one-dimensional domain")
    return coordinate_embedding(domain, codomain, positions=[0], signs=[sign])


def signed_permutation_embedding(domain: SpaceSpec, codomain: SpaceSpec, seed: int) -> LinearOperator:
    """Seeded choice of target coordinates and signs; an isometry for every p."""
    rng = np.random.default_rng(seed)
    positions = rng.permutation(codomain.dim)[: domain.dim].tolist()
    signs = rng.choice([-1.0, 1.0], size=domain.dim).tolist()
    return coordinate_embedding(domain, codomain, positions, signs)
