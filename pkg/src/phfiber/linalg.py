"""Dense linear algebra over prime fields, on top of numpy integer arrays.

Everything here is exact: matrices hold representatives in [0, p) and all
eliminations reduce mod p, so there is no floating point anywhere.
"""
from __future__ import annotations

import numpy as np


def _echelon(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a copy of mat over F_p, returning (echelon form, pivot cols)."""
    a = np.mod(np.asarray(mat, dtype=np.int64), p).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        for rr in range(rows):
            if rr != r and a[rr, c]:
                a[rr] = (a[rr] - a[rr, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(_echelon(mat, p)[1])


def nullspace_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """A basis of the kernel of mat over F_p, as columns of the result."""
    mat = np.asarray(mat, dtype=np.int64)
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    a, pivots = _echelon(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-a[r, fc]) % p
    return basis
