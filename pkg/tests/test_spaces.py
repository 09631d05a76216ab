"""Norms, duality maps, moduli of convexity, and the gamma inverse."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from neariso.oracles import norm_gradient_fd, tau_hanner_implicit, tau_section_bruteforce
from neariso.spaces import (
    SpaceSpec,
    dual_norm,
    dual_orthogonalize,
    gamma,
    modulus_of_convexity,
    norm,
    support_functional,
)

P_VALUES = (1.0, 1.5, 2.0, 3.0, math.inf)


def test_norm_examples():
    assert norm([3, 4], SpaceSpec(2, 2.0)) == 5.0
    assert norm([1, -1], SpaceSpec(2, 1.0)) == 2.0
    assert norm([1, 1, 1], SpaceSpec(3, 3.0)) == pytest.approx(3 ** (1 / 3), abs=1e-15)
    assert norm([1, -7, 3], SpaceSpec(3, math.inf)) == 7.0


def test_norm_rejects_bad_vectors():
    with pytest.raises(ValueError):
        norm([1, 2, 3], SpaceSpec(2, 2.0))
    with pytest.raises(ValueError):
        norm([1, np.nan], SpaceSpec(2, 2.0))


def test_space_spec_validation():
    with pytest.raises(ValueError):
        SpaceSpec(0, 2.0)
    with pytest.raises(ValueError):
        SpaceSpec(2, 0.5)
    assert SpaceSpec(2, 2.0).uniformly_convex
    assert not SpaceSpec(2, 1.0).uniformly_convex
    assert not SpaceSpec(2, math.inf).uniformly_convex
    assert SpaceSpec(2, 1.5).conjugate_exponent == 3.0
    assert SpaceSpec(2, 1.0).conjugate_exponent == math.inf
    assert SpaceSpec(2, math.inf).conjugate_exponent == 1.0


@pytest.mark.parametrize("p", P_VALUES)
@given(data=st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=3),
       other=st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=3),
       scale=st.floats(-100, 100))
def test_norm_triangle_and_homogeneity(p, data, other, scale):
    space = SpaceSpec(3, p)
    x, y = np.array(data), np.array(other)
    assert norm(x + y, space) <= norm(x, space) + norm(y, space) + 1e-9 * (
        1 + norm(x, space) + norm(y, space))
    assert norm(scale * x, space) == pytest.approx(abs(scale) * norm(x, space), rel=1e-12)


@pytest.mark.parametrize("p", (1.5, 2.0, 3.0, 4.0))
def test_support_functional_identities(p):
    space = SpaceSpec(4, p)
    rng = np.random.default_rng(7)
    for _ in range(20):
        z = rng.uniform(0.2, 1.2, 4) * rng.choice([-1.0, 1.0], 4)
        j = support_functional(z, space)
        assert float(j @ z) == pytest.approx(norm(z, space), rel=1e-12)
        assert dual_norm(j, space) == pytest.approx(1.0, abs=1e-12)


def test_support_functional_examples():
    assert np.allclose(support_functional([3, 4], SpaceSpec(2, 2.0)), [0.6, 0.8])
    j = support_functional([1, 1], SpaceSpec(2, 4.0))
    assert np.allclose(j, [2 ** -0.75, 2 ** -0.75], atol=1e-15)
    assert float(j @ [1, 1]) == pytest.approx(2 ** 0.25, rel=1e-14)


@pytest.mark.parametrize("p", (1.5, 2.0, 3.0, 4.0))
def test_support_functional_matches_fd_gradient(p):
    rng = np.random.default_rng(42)
    for i in range(25):
        dim = 2 + (i % 7)
        space = SpaceSpec(dim, p)
        z = rng.uniform(0.2, 1.2, dim) * rng.choice([-1.0, 1.0], dim)
        j = support_functional(z, space)
        g = norm_gradient_fd(z, space)
        assert np.linalg.norm(j - g) / np.linalg.norm(j) <= 1e-6


def test_support_functional_rejections():
    with pytest.raises(ValueError):
        support_functional([0, 0], SpaceSpec(2, 2.0))
    with pytest.raises(ValueError):
        support_functional([1, 1], SpaceSpec(2, 1.0))
    with pytest.raises(ValueError):
        support_functional([1, 1], SpaceSpec(2, math.inf))


def test_dual_orthogonalize():
    space = SpaceSpec(3, 3.0)
    z = np.array([1.0, -0.7, 0.4])
    w = dual_orthogonalize(np.array([0.3, 2.0, -1.0]), z, space)
    assert abs(float(support_functional(z, space) @ w)) <= 1e-12


def test_modulus_closed_form_values():
    s2 = SpaceSpec(2, 2.0)
    assert modulus_of_convexity(2.0, s2) == 1.0
    assert modulus_of_convexity(1.0, s2) == pytest.approx(1 - math.sqrt(3) / 2, abs=1e-15)
    assert modulus_of_convexity(0.0, s2) == 0.0


def test_modulus_rejections():
    with pytest.raises(ValueError):
        modulus_of_convexity(2.5, SpaceSpec(2, 2.0))
    with pytest.raises(ValueError):
        modulus_of_convexity(-0.1, SpaceSpec(2, 2.0))
    with pytest.raises(ValueError):
        modulus_of_convexity(1.0, SpaceSpec(2, 1.0))
    with pytest.raises(ValueError):
        gamma(1.1, SpaceSpec(2, 2.0))


@pytest.mark.parametrize("p", (1.3, 1.5, 1.8))
def test_modulus_small_p_matches_hanner_form(p):
    # Independent cross-check: the implicit two-point relation for 1 < p <= 2.
    space = SpaceSpec(2, p)
    for s in np.linspace(0.1, 1.9, 7):
        assert modulus_of_convexity(float(s), space) == pytest.approx(
            tau_hanner_implicit(float(s), p), abs=1e-9)


@pytest.mark.parametrize("p", (1.5, 2.0, 3.0))
def test_modulus_against_bruteforce_oracle(p):
    space = SpaceSpec(2, p)
    for s in (0.5, 1.0, 1.5):
        assert modulus_of_convexity(s, space) == pytest.approx(
            tau_section_bruteforce(s, p), abs=1e-4)


@pytest.mark.parametrize("p", (1.5, 2.0, 3.0))
def test_modulus_monotone(p):
    space = SpaceSpec(2, p)
    grid = np.linspace(0.0, 2.0, 21)
    vals = [modulus_of_convexity(float(s), space) for s in grid]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert vals[0] == 0.0
    assert vals[-1] == pytest.approx(1.0, abs=1e-12)


def test_gamma_examples():
    s2 = SpaceSpec(2, 2.0)
    assert gamma(1.0, s2) == 2.0
    assert gamma(1 - math.sqrt(3) / 2, s2) == pytest.approx(1.0, abs=1e-9)
    assert gamma(0.0, s2) <= 1e-6
    assert gamma(0.0, SpaceSpec(2, 1.5)) <= 1e-6
    # gamma(t) -> 0 as t -> 0
    assert gamma(1e-6, s2) <= 3e-3


@pytest.mark.parametrize("p", (1.5, 2.0, 3.0))
def test_gamma_tau_round_trips(p):
    space = SpaceSpec(2, p)
    for t in np.linspace(0.05, 0.95, 5):
        g = gamma(float(t), space)
        assert modulus_of_convexity(g, space) <= t + 1e-9
    for s in np.linspace(0.1, 1.9, 5):
        tau = modulus_of_convexity(float(s), space)
        assert gamma(tau, space) >= s - 1e-9


@given(t1=st.floats(0.0, 1.0), t2=st.floats(0.0, 1.0))
def test_gamma_monotone(t1, t2):
    space = SpaceSpec(2, 2.0)
    lo, hi = sorted((t1, t2))
    assert gamma(lo, space) <= gamma(hi, space) + 1e-12


def test_gamma_vectorized_matches_scalar():
    space = SpaceSpec(2, 3.0)
    ts = np.linspace(0.0, 1.0, 9)
    vec = gamma(ts, space)
    for t, g in zip(ts, vec):
        assert g == gamma(float(t), space)


@pytest.mark.parametrize("p,dim,count", ((2.0, 4, 2000), (3.0, 3, 300), (1.5, 2, 8)))
def test_midpoint_depth_inequality(p, dim, count):
    # ||x - y|| <= R * gamma(1 - r/R) whenever x, y are in the R-ball with
    # midpoint norm at least r.
    space = SpaceSpec(dim, p)
    rng = np.random.default_rng(1234 + dim)
    violations = 0
    for _ in range(count):
        R = rng.uniform(0.5, 2.0)
        x = rng.standard_normal(dim)
        x *= R * rng.uniform(0, 1) ** (1 / dim) / norm(x, space)
        y = rng.standard_normal(dim)
        y *= R * rng.uniform(0, 1) ** (1 / dim) / norm(y, space)
        r = norm((x + y) / 2, space)
        if not 0.0 < r < R * (1 - 1e-15):
            continue
        if norm(x - y, space) > R * gamma(1 - r / R, space) + 1e-9:
            violations += 1
    assert violations == 0
