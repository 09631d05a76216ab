"""Agreement between the compiled kernels, the numpy fallback, and a plain
pure-Python reference."""

import math

import numpy as np
import pytest

from neariso import _kernels_numpy
from neariso.oracles import max_min_exhaustive, pair_defect_exhaustive

compiled = pytest.importorskip("neariso._kernels")

P_COMBOS = [(2.0, 2.0), (2.0, 1.0), (1.0, math.inf), (1.5, 3.0), (math.inf, 2.0)]


def _data(n=60, dx=3, dy=2, seed=0):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, dx)), rng.standard_normal((n, dy))


@pytest.mark.parametrize("p_in,p_out", P_COMBOS)
def test_fallback_matches_pure_python(p_in, p_out):
    X, FX = _data()
    ref = pair_defect_exhaustive(X, FX, p_in, p_out)
    got = _kernels_numpy.max_pair_defect(X, FX, p_in, p_out)
    assert got[0] == pytest.approx(ref[0], rel=1e-12)
    assert (got[1], got[2]) == (ref[1], ref[2])


@pytest.mark.parametrize("p_in,p_out", P_COMBOS)
def test_compiled_matches_fallback(p_in, p_out):
    X, FX = _data(seed=7)
    a = compiled.max_pair_defect(X, FX, p_in, p_out)
    b = _kernels_numpy.max_pair_defect(X, FX, p_in, p_out)
    assert a[0] == pytest.approx(b[0], rel=1e-12)
    assert (a[1], a[2]) == (b[1], b[2])


@pytest.mark.parametrize("p", (1.0, 1.5, 2.0, 3.0, math.inf))
def test_max_min_distance_all_implementations(p):
    rng = np.random.default_rng(3)
    Y = rng.standard_normal((40, 3))
    FX = rng.standard_normal((70, 3))
    ref = max_min_exhaustive(Y, FX, p)
    for impl in (compiled, _kernels_numpy):
        got = impl.max_min_distance(Y, FX, p)
        assert got[0] == pytest.approx(ref[0], rel=1e-12)
        assert (got[1], got[2]) == (ref[1], ref[2])


def test_lexicographic_tie_breaking():
    # four identical points: every pair has defect 0; the first pair wins
    X = np.zeros((4, 2))
    FX = np.zeros((4, 2))
    for impl in (compiled, _kernels_numpy):
        val, i, j = impl.max_pair_defect(X, FX, 2.0, 2.0)
        assert val == 0.0 and (i, j) == (0, 1)
        val, iy, ix = impl.max_min_distance(X, FX, 2.0)
        assert val == 0.0 and (iy, ix) == (0, 0)


def test_kernel_input_validation():
    for impl in (compiled, _kernels_numpy):
        with pytest.raises(ValueError):
            impl.max_pair_defect(np.zeros((1, 2)), np.zeros((1, 2)), 2.0, 2.0)
        with pytest.raises(ValueError):
            impl.max_min_distance(np.zeros((0, 2)), np.zeros((3, 2)), 2.0)


def test_blocked_reduction_crosses_block_boundaries():
    # put the extreme pair far apart so it spans numpy fallback blocks
    rng = np.random.default_rng(11)
    n = 600
    X = rng.standard_normal((n, 1)) * 0.01
    FX = rng.standard_normal((n, 2)) * 0.01
    X[5] = 100.0
    FX[577] = (250.0, 0.0)
    ref = pair_defect_exhaustive(X, FX, 2.0, 2.0)
    for impl in (compiled, _kernels_numpy):
        got = impl.max_pair_defect(X, FX, 2.0, 2.0)
        assert got[0] == pytest.approx(ref[0], rel=1e-12)
        assert (got[1], got[2]) == (ref[1], ref[2])
