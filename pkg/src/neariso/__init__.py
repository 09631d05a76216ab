"""Numerical laboratory for nearisometries of finite-dimensional p-normed spaces.

Builds approximating linear isometries from nearisometric data, estimates
distortion and covering defects, and verifies the sharp approximation
constants on explicit counterexample maps and randomized instances.
"""

from .construct import (
    LimitCertificate,
    RayFunctionalResult,
    build_left_inverse_T,
    build_linear_isometry,
    convergence_rate_bound,
    directional_limit,
    norm_one_projection,
    ray_functional,
)
from .defect import (
    DEFAULT_SEED,
    DefectReport,
    Sampler,
    distance_to_subspace,
    estimate_delta,
    estimate_epsilon,
)
from .errors import ConvergenceError, NearisoError, UnsupportedConstructionError
from .kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .maps import (
    MapInstance,
    Subspace,
    make_hyers_ulam,
    make_perturbed_isometry,
    make_ramp_hilbert,
    make_sharp_l1,
    normalize_origin,
)
from .operators import LinearOperator, axis_embedding, coordinate_embedding, signed_permutation_embedding
from .spaces import (
    SpaceSpec,
    dual_norm,
    dual_orthogonalize,
    gamma,
    modulus_of_convexity,
    norm,
    support_functional,
)
from .verify import (
    BOUND_KINDS,
    BoundReport,
    check_bound,
    check_bound_at_points,
    frechet_limit_check,
    inner_product_bound_check,
    sharpness_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_KINDS",
    "BoundReport",
    "ConvergenceError",
    "DEFAULT_SEED",
    "DefectReport",
    "KERNEL_IMPLEMENTATION",
    "LimitCertificate",
    "LinearOperator",
    "MapInstance",
    "NearisoError",
    "RayFunctionalResult",
    "Sampler",
    "SpaceSpec",
    "Subspace",
    "UnsupportedConstructionError",
    "axis_embedding",
    "build_left_inverse_T",
    "build_linear_isometry",
    "check_bound",
    "check_bound_at_points",
    "convergence_rate_bound",
    "coordinate_embedding",
    "directional_limit",
    "distance_to_subspace",
    "dual_norm",
    "dual_orthogonalize",
    "estimate_delta",
    "estimate_epsilon",
    "frechet_limit_check",
    "gamma",
    "inner_product_bound_check",
    "make_hyers_ulam",
    "make_perturbed_isometry",
    "make_ramp_hilbert",
    "make_sharp_l1",
    "modulus_of_convexity",
    "norm",
    "norm_one_projection",
    "normalize_origin",
    "ray_functional",
    "sharpness_suite",
    "signed_permutation_embedding",
    "support_functional",
]
