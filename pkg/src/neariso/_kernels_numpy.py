"""Blocked numpy implementations of the pairwise reduction kernels.

These are the fallback for the compiled extension; both expose the same
signatures and the same deterministic argmax tie-breaking (first index pair
in lexicographic order).
"""

from __future__ import annotations

import math

import numpy as np

_BLOCK = 256


def _pnorm_last(a: np.ndarray, p: float) -> np.ndarray:
    a = np.abs(a)
    if p == math.inf:
        return a.max(axis=-1)
    if p == 1.0:
        return a.sum(axis=-1)
    if p == 2.0:
        return np.sqrt((a * a).sum(axis=-1))
    return (a**p).sum(axis=-1) ** (1.0 / p)


def max_pair_defect(X: np.ndarray, FX: np.ndarray, p_in: float, p_out: float):
    """max over pairs i < j of | ||FX_i - FX_j||_p_out - ||X_i - X_j||_p_in |.

    Returns (value, i, j) with the lexicographically first attaining pair.
    """
    X = np.ascontiguousarray(X, dtype=float)
    FX = np.ascontiguousarray(FX, dtype=float)
    n = X.shape[0]
    if n < 2:
        raise ValueError("need at least two samples")
    best = -1.0
    bi = bj = 0
    for i0 in range(0, n - 1, _BLOCK):
        i1 = min(i0 + _BLOCK, n - 1)
        dx = _pnorm_last(X[i0:i1, None, :] - X[None, :, :], p_in)
        dy = _pnorm_last(FX[i0:i1, None, :] - FX[None, :, :], p_out)
        d = np.abs(dy - dx)
        rows = np.arange(i0, i1)[:, None]
        d[np.arange(n)[None, :] <= rows] = -np.inf
        flat = int(np.argmax(d))
        val = float(d.flat[flat])
        if val > best:
            best = val
            bi = i0 + flat // n
            bj = flat % n
    return best, bi, bj


def max_min_distance(Y: np.ndarray, FX: np.ndarray, p: float):
    """max over rows y of Y of (min over rows v of FX of ||v - y||_p).

    Returns (value, iy, ix) where ix attains the inner minimum for the
    outer argmax row iy; ties resolve to the first index.
    """
    Y = np.ascontiguousarray(Y, dtype=float)
    FX = np.ascontiguousarray(FX, dtype=float)
    if Y.shape[0] == 0 or FX.shape[0] == 0:
        raise ValueError("need nonempty sample sets")
    best = -1.0
    biy = bix = 0
    for i0 in range(0, Y.shape[0], _BLOCK):
        i1 = min(i0 + _BLOCK, Y.shape[0])
        d = _pnorm_last(Y[i0:i1, None, :] - FX[None, :, :], p)
        inner_ix = np.argmin(d, axis=1)
        inner = d[np.arange(i1 - i0), inner_ix]
        k = int(np.argmax(inner))
        val = float(inner[k])
        if val > best:
            best = val
            biy = i0 + k
            bix = int(inner_ix[k])
    return best, biy, bix
