"""Numpy implementations of the enumeration kernels.

Used when the compiled extension is unavailable.  Results must match
:mod:`quatcusps._ckernels` exactly; the benchmark and test suite compare them.
"""
from __future__ import annotations

import numpy as np


def primitive_conic_solvable(a: int, b: int, p: int, depth: int) -> bool:
    m = p**depth
    x = np.arange(m, dtype=np.int64)
    # x^2 mod m determines whether p | x, so searching over distinct square
    # residues covers every (x, y) pair
    squares = np.unique(x * x % m)
    is_sq = np.zeros(m, dtype=bool)
    is_sq[squares] = True
    unit = squares % p != 0
    am, bm = a % m, b % m
    for s, s_unit in zip(squares.tolist(), unit.tolist()):
        w = (am * s + bm * squares) % m
        ok = is_sq[w]
        if not s_unit:
            ok &= unit | (w % p != 0)
        if ok.any():
            return True
    return False


def _digits(n_items: int, width: int, q: int) -> np.ndarray:
    idx = np.arange(n_items, dtype=np.int64)
    out = np.empty((n_items, width), dtype=np.int64)
    for k in range(width):
        out[:, k] = idx % q
        idx //= q
    return out


def _det3(a, b, c):
    return (
        a[:, 0] * (b[:, 1] * c[:, 2] - b[:, 2] * c[:, 1])
        - a[:, 1] * (b[:, 0] * c[:, 2] - b[:, 2] * c[:, 0])
        + a[:, 2] * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
    )


def sl4_det_one_count(q: int, start: int = 0, stop: int = -1) -> int:
    nrow = q**4
    if stop < 0 or stop > nrow:
        stop = nrow
    start = max(start, 0)
    lower = _digits(nrow**3, 12, q)
    r1, r2, r3 = lower[:, 0:4], lower[:, 4:8], lower[:, 8:12]
    cof = np.empty((lower.shape[0], 4), dtype=np.int64)
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        minor = _det3(r1[:, cols], r2[:, cols], r3[:, cols])
        cof[:, j] = minor if j % 2 == 0 else -minor
    cof %= q
    del lower, r1, r2, r3
    first_rows = _digits(nrow, 4, q)[start:stop]
    count = 0
    for row in first_rows:
        det = (cof @ row) % q
        count += int(np.count_nonzero(det == 1))
    return count
