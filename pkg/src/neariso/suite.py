"""Acceptance suite: one callable per criterion, shared by tests and the CLI.

Every criterion pins its own tolerances and sample layouts; results carry
only deterministic values (no wall-clock numbers) so that serialized reports
are byte-identical across runs with the same seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import oracles
from .construct import build_left_inverse_T, build_linear_isometry, directional_limit, ray_functional
from .defect import DEFAULT_SEED, Sampler, estimate_delta, estimate_epsilon
from .maps import (
    MapInstance,
    first_axis_subspace,
    make_hyers_ulam,
    make_perturbed_isometry,
    make_ramp_hilbert,
    make_sharp_l1,
)
from .operators import axis_embedding, signed_permutation_embedding
from .spaces import SpaceSpec, dual_orthogonalize, gamma, modulus_of_convexity, pnorm, pnorm_rows, support_functional
from .verify import check_bound_at_points, frechet_limit_check

_RUNTIME_LIMIT = 1.0


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    measured: Optional[float]
    bound: Optional[float]
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        margin = None
        if self.measured is not None and self.bound is not None:
            margin = self.bound - self.measured
        return {
            "kind": self.name,
            "measured": self.measured,
            "bound": self.bound,
            "margin": margin,
            "passed": self.passed,
            "argmax": [],
            "samples": self.details.get("samples", 0),
            "details": self.details,
        }


def _exact_ray_map() -> MapInstance:
    dom, cod = SpaceSpec(1, 2.0), SpaceSpec(2, 2.0)
    U = axis_embedding(dom, cod)
    return MapInstance(dom, cod, lambda x: U.matrix @ x, claimed_eps=0.0,
                       claimed_delta=None, target_subspace=first_axis_subspace(cod),
                       name="exact-ray", batch_func=lambda X: X @ U.matrix.T)


def criterion_sharp_l1_attainment(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Sum-norm plane sharpness: sup deviation is exactly 1.5, at x = 0.75."""
    eps, delta = 0.5, 0.25
    start = time.perf_counter()
    f = make_sharp_l1(eps, delta)
    U_plus = axis_embedding(f.domain, f.codomain, +1.0)
    grid = Sampler(kind="grid", radius=3.0, step=1e-3).sample(f.domain)
    pts = np.vstack([grid, [[delta + eps]]])
    rep = check_bound_at_points(f, U_plus, "delta-onto-2e2d", pts)
    elapsed = time.perf_counter() - start
    U_minus = axis_embedding(f.domain, f.codomain, -1.0)
    far = np.array([1e3])
    minus_dev = float(pnorm(f.evaluate(far) - U_minus(far), f.codomain.p))
    attained = abs(rep.measured - (2 * eps + 2 * delta)) <= 1e-12
    at_point = abs(float(rep.argmax[0][0]) - (delta + eps)) <= 1e-12
    passed = bool(attained and at_point and rep.passed and minus_dev > 1e3
                  and elapsed < _RUNTIME_LIMIT)
    return CriterionResult(
        "sharp-l1-attainment", passed, rep.measured, rep.bound_value,
        details={"samples": rep.samples_used, "attained_at": float(rep.argmax[0][0]),
                 "opposite_isometry_deviation_at_1e3": minus_dev,
                 "runtime_under_1s": bool(elapsed < _RUNTIME_LIMIT)})


def criterion_ramp_hilbert_example(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Hilbert ramp: distortion within budget, plateau exactly delta, bounds hold."""
    eps, delta = 0.5, 0.25
    r = delta * delta / (2.0 * eps)
    f = make_ramp_hilbert(eps, delta)
    sampler = Sampler(kind="grid", radius=5.0, step=1e-3, seed=seed)
    eps_rep = estimate_epsilon(f, sampler)
    X = sampler.sample(f.domain)
    U = axis_embedding(f.domain, f.codomain, +1.0)
    dev = pnorm_rows(f.evaluate_batch(X) - U.apply_batch(X), 2.0)
    plateau_err = float(np.abs(dev[X[:, 0] >= r] - delta).max())
    rep_lin = check_bound_at_points(f, U, "hilbert-2e-d", X)
    rep_pyt = check_bound_at_points(f, U, "hilbert-pythag", X)
    delta_rep = estimate_delta(f, f.target_subspace, sampler)
    passed = bool(eps_rep.estimate <= eps + 1e-9
                  and plateau_err <= 1e-12
                  and rep_lin.margin > 0 and rep_pyt.margin > 0
                  and abs(delta_rep.estimate - delta) <= 1e-9)
    return CriterionResult(
        "ramp-hilbert-example", passed, eps_rep.estimate, eps,
        details={"samples": eps_rep.samples_used, "plateau_deviation_error": plateau_err,
                 "linear_bound_margin": rep_lin.margin, "pythag_bound_margin": rep_pyt.margin,
                 "delta_estimate": delta_rep.estimate})


def criterion_unbounded_growth(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Square-root map: deviation sqrt(2 eps x) exact at powers of ten, growing."""
    eps = 0.5
    f = make_hyers_ulam(eps)
    U = axis_embedding(f.domain, f.codomain, +1.0)
    xs = np.array([10.0, 100.0, 1000.0, 10000.0])
    devs = pnorm_rows(f.evaluate_batch(xs[:, None]) - U.apply_batch(xs[:, None]), 2.0)
    expected = np.sqrt(2.0 * eps * xs)
    exact = bool(np.abs(devs - expected).max() <= 1e-12)
    at_100 = bool(abs(devs[1] - 10.0) <= 1e-12)
    growing = bool(np.all(np.diff(devs) > 0.0))
    return CriterionResult(
        "unbounded-growth", exact and at_100 and growing, float(devs[1]), 10.0,
        details={"samples": len(xs), "x": xs.tolist(), "deviation": devs.tolist()})


def criterion_directional_limit(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Directional limit lands within 1e-3 of (1, 0) and the rate bound is honest."""
    tol = 1e-3
    start = time.perf_counter()
    f = make_hyers_ulam(0.5)
    point, cert = directional_limit(f, np.array([1.0]), tol)
    elapsed = time.perf_counter() - start
    dist = pnorm(point - np.array([1.0, 0.0]), 2.0)
    ts = cert.s_used * 1.5 ** np.arange(1, 21)
    tails = np.array([pnorm(point - f.evaluate(np.array([t])) / t, 2.0) for t in ts])
    rate_honest = bool(np.all(tails <= cert.rate_bound))
    passed = bool(dist <= tol and rate_honest and cert.rate_bound <= tol
                  and elapsed < _RUNTIME_LIMIT)
    return CriterionResult(
        "directional-limit-convergence", passed, float(dist), tol,
        details={"samples": len(ts), "s_used": cert.s_used, "rate_bound": cert.rate_bound,
                 "worst_tail": float(tails.max()),
                 "runtime_under_1s": bool(elapsed < _RUNTIME_LIMIT)})


def criterion_ray_sandwich(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Ray functionals sandwich t - 2 eps - 1e-3 <= F f(t) <= t + eps on [0, 1e3]."""
    n = 1e6
    ts = np.linspace(0.0, 1e3, 100)
    per_map = {}
    ok = True
    for f in (_exact_ray_map(), make_hyers_ulam(0.5), make_ramp_hilbert(0.5, 0.25)):
        eps = float(f.claimed_eps)
        res = ray_functional(f, eps, n)
        vals = f.evaluate_batch(ts[:, None]) @ res.functional
        lower_ok = bool(np.all(vals >= ts - 2.0 * eps - 1e-3))
        upper_ok = bool(np.all(vals <= ts + eps))
        per_map[f.name] = {"lower_ok": lower_ok, "upper_ok": upper_ok,
                           "worst_lower_margin": float((vals - (ts - 2.0 * eps)).min()),
                           "slack_per_unit": res.slack_per_unit}
        ok = ok and lower_ok and upper_ok
    return CriterionResult("ray-sandwich", ok, None, None,
                           details={"samples": 3 * len(ts), **per_map})


def _perturbed_family(seed: int):
    family = []
    for p in (2.0, 3.0):
        for eps in (0.1, 0.5):
            for k in range(5):
                dom = SpaceSpec(2 if k % 2 == 0 else 3, p)
                cod = SpaceSpec(4, p)
                s = seed + 100000 * int(p) + int(1000 * eps) + 17 * k
                U = signed_permutation_embedding(dom, cod, seed=s)
                f = make_perturbed_isometry(dom, cod, U, eps, seed=s + 7)
                family.append((f, U))
    return family


def criterion_left_inverse_bound(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Twenty perturbed embeddings: ||T f(x) - x|| <= 2 eps on 1e4 samples each."""
    failures = 0
    worst_ratio = 0.0
    total = 0
    for f, _ in _perturbed_family(seed):
        T = build_left_inverse_T(f, tol=1e-4)
        X = Sampler(kind="random", radius=10.0, count=10000, seed=seed + 13).sample(f.domain)
        rep = check_bound_at_points(f, T, "figiel-2eps", X)
        total += rep.samples_used
        worst_ratio = max(worst_ratio, rep.measured / rep.bound_value)
        if not rep.passed:
            failures += 1
    return CriterionResult(
        "left-inverse-bound", failures == 0, worst_ratio, 1.0,
        details={"samples": total, "instances": 20, "failures": failures})


def criterion_nearsurjective_bound(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Same family as nearsurjective maps: ||f(x) - U x|| <= 2 eps with built U."""
    failures = 0
    worst_ratio = 0.0
    total = 0
    for f, _ in _perturbed_family(seed):
        phi = build_linear_isometry(f, tol=1e-4)
        X = Sampler(kind="random", radius=10.0, count=10000, seed=seed + 29).sample(f.domain)
        rep = check_bound_at_points(f, phi, "nearsurj-2eps", X)
        total += rep.samples_used
        worst_ratio = max(worst_ratio, rep.measured / rep.bound_value)
        if not rep.passed:
            failures += 1
    return CriterionResult(
        "nearsurjective-bound", failures == 0, worst_ratio, 1.0,
        details={"samples": total, "instances": 20, "failures": failures})


def criterion_duality_gradient(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Supporting functionals match finite-difference norm gradients to 1e-6."""
    worst = 0.0
    count = 0
    for p in (1.5, 2.0, 3.0, 4.0):
        rng = np.random.default_rng(seed + int(10 * p))
        for i in range(100):
            dim = 2 + (i % 7)
            space = SpaceSpec(dim, p)
            z = rng.uniform(0.2, 1.2, dim) * rng.choice([-1.0, 1.0], dim)
            j = support_functional(z, space)
            g = oracles.norm_gradient_fd(z, space)
            worst = max(worst, float(np.linalg.norm(j - g) / np.linalg.norm(j)))
            count += 1
    return CriterionResult("duality-gradient", worst <= 1e-6, worst, 1e-6,
                           details={"samples": count})


def criterion_moduli_consistency(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Brute-force modulus vs closed form; round trips; midpoint-depth inequality."""
    worst_oracle = 0.0
    for p in (2.0, 3.0, 4.0):
        space = SpaceSpec(2, p)
        for s in np.linspace(0.1, 1.9, 10):
            diff = abs(oracles.tau_section_bruteforce(float(s), p)
                       - modulus_of_convexity(float(s), space))
            worst_oracle = max(worst_oracle, diff)

    worst_rt = 0.0
    grids = {1.5: 5, 2.0: 10, 3.0: 10}
    for p, npts in grids.items():
        space = SpaceSpec(2, p)
        for t in np.linspace(0.05, 0.95, npts):
            g = gamma(float(t), space)
            worst_rt = max(worst_rt, modulus_of_convexity(g, space) - float(t))
        for s in np.linspace(0.1, 1.9, npts):
            tau = modulus_of_convexity(float(s), space)
            worst_rt = max(worst_rt, float(s) - gamma(tau, space))

    violations = 0
    configs = 0
    for p, dim, count in ((2.0, 4, 10000), (3.0, 3, 500), (1.5, 2, 20)):
        space = SpaceSpec(dim, p)
        rng = np.random.default_rng(seed + dim + int(10 * p))
        R = rng.uniform(0.5, 2.0, count)

        def ball(n):
            raw = rng.standard_normal((n, dim))
            raw /= pnorm_rows(raw, p)[:, None]
            return raw * (R * rng.uniform(0.0, 1.0, n) ** (1.0 / dim))[:, None]

        x, y = ball(count), ball(count)
        r = pnorm_rows((x + y) / 2.0, p)
        valid = (r > 0.0) & (r < R * (1.0 - 1e-15))
        t = 1.0 - r[valid] / R[valid]
        if p >= 2.0:
            gam = gamma(t, space)
        else:
            gam = np.array([gamma(float(tv), space) for tv in t])
        lhs = pnorm_rows(x - y, p)[valid]
        violations += int(np.sum(lhs > R[valid] * gam + 1e-9))
        configs += int(valid.sum())

    passed = bool(worst_oracle <= 1e-4 and worst_rt <= 1e-9 and violations == 0)
    return CriterionResult(
        "moduli-consistency", passed, worst_oracle, 1e-4,
        details={"samples": configs, "worst_roundtrip": worst_rt,
                 "inequality_violations": violations})


def criterion_frechet_decay(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Orthogonalized perturbations decay below 1e-4 ||w|| by t = 2^20."""
    count = 0
    all_ok = True
    worst_final = 0.0
    for p in (1.5, 3.0):
        space = SpaceSpec(4, p)
        rng = np.random.default_rng(seed + int(10 * p) + 99)
        for _ in range(50):
            z = rng.uniform(0.3, 1.2, 4) * rng.choice([-1.0, 1.0], 4)
            w = dual_orthogonalize(rng.standard_normal(4), z, space)
            if abs(float(support_functional(z, space) @ w)) > 1e-12:
                w = dual_orthogonalize(w, z, space)
            rec = frechet_limit_check(z, w, space)
            all_ok = all_ok and rec.passed
            if rec.w_norm > 0:
                worst_final = max(worst_final, float(rec.values[-1]) / rec.w_norm)
            count += 1
    return CriterionResult("frechet-decay", all_ok, worst_final, 1e-4,
                           details={"samples": count})


def criterion_degenerate_zero(seed: int = DEFAULT_SEED) -> CriterionResult:
    """eps = delta = 0 instances measure zero for every bound kind and the
    constructions come out exact."""
    zero_tol = 1e-12
    measured = []
    construction_err = 0.0

    f_l1 = make_sharp_l1(0.0, 0.0)
    U = axis_embedding(f_l1.domain, f_l1.codomain, +1.0)
    X1 = Sampler(kind="grid", radius=3.0, step=0.01).sample(f_l1.domain)
    measured.append(check_bound_at_points(f_l1, U, "delta-onto-2e2d", X1).measured)

    f_hu = make_hyers_ulam(0.0)
    Uh = axis_embedding(f_hu.domain, f_hu.codomain, +1.0)
    measured.append(check_bound_at_points(f_hu, Uh, "nearsurj-2eps", X1).measured)
    T_hu = build_left_inverse_T(f_hu, tol=1e-6)
    measured.append(check_bound_at_points(f_hu, T_hu, "figiel-2eps", X1).measured)

    for p, kinds in ((2.0, ("figiel-2eps", "nearsurj-2eps", "delta-onto-2e2d",
                            "hilbert-2e-d", "hilbert-pythag")),
                     (3.0, ("figiel-2eps", "nearsurj-2eps", "delta-onto-2e2d"))):
        dom, cod = SpaceSpec(2, p), SpaceSpec(4, p)
        U0 = signed_permutation_embedding(dom, cod, seed=seed + int(p))
        f0 = make_perturbed_isometry(dom, cod, U0, 0.0, seed=seed + 5)
        phi = build_linear_isometry(f0, tol=1e-6)
        T = build_left_inverse_T(f0, tol=1e-6)
        construction_err = max(construction_err,
                               float(np.abs(phi.matrix - U0.matrix).max()),
                               float(np.abs(T.matrix @ phi.matrix - np.eye(dom.dim)).max()))
        X = Sampler(kind="random", radius=5.0, count=2000, seed=seed + 3).sample(dom)
        for kind in kinds:
            A = T if kind == "figiel-2eps" else phi
            measured.append(check_bound_at_points(f0, A, kind, X).measured)

    worst = max(measured)
    passed = bool(worst <= zero_tol and construction_err <= zero_tol)
    return CriterionResult("degenerate-zero", passed, worst, zero_tol,
                           details={"samples": len(measured),
                                    "construction_error": construction_err})


CRITERIA: dict[str, Callable[[int], CriterionResult]] = {
    "sharp-l1-attainment": criterion_sharp_l1_attainment,
    "ramp-hilbert-example": criterion_ramp_hilbert_example,
    "unbounded-growth": criterion_unbounded_growth,
    "directional-limit-convergence": criterion_directional_limit,
    "ray-sandwich": criterion_ray_sandwich,
    "left-inverse-bound": criterion_left_inverse_bound,
    "nearsurjective-bound": criterion_nearsurjective_bound,
    "duality-gradient": criterion_duality_gradient,
    "moduli-consistency": criterion_moduli_consistency,
    "frechet-decay": criterion_frechet_decay,
    "degenerate-zero": criterion_degenerate_zero,
}


def run_criterion(name: str, seed: int = DEFAULT_SEED) -> CriterionResult:
    return CRITERIA[name](seed)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [fn(seed) for fn in CRITERIA.values()]
