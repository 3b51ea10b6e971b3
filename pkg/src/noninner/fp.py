"""Tiny dense linear algebra over the prime field F_p.

Matrices are numpy integer arrays (or nested sequences); all systems
in this package are at most a handful of rows, so plain Gaussian
elimination is used throughout.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np


def _as_matrix(mat: Sequence, p: int) -> np.ndarray:
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


def row_echelon(mat: Sequence, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of `mat` over F_p and its pivot columns."""
    a = _as_matrix(mat, p)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for rr in range(r, rows):
            if a[rr, c] % p:
                pivot_row = rr
                break
        if pivot_row is None:
            continue
        a[[r, pivot_row]] = a[[pivot_row, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        for rr in range(rows):
            if rr != r and a[rr, c]:
                a[rr] = (a[rr] - a[rr, c] * a[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(mat: Sequence, p: int) -> int:
    return len(row_echelon(mat, p)[1])


def solve(mat: Sequence, rhs: Sequence, p: int) -> Optional[np.ndarray]:
    """One solution x of mat @ x = rhs over F_p (free variables 0),
    or None when the system is inconsistent."""
    a = _as_matrix(mat, p)
    b = np.array(rhs, dtype=np.int64).reshape(-1) % p
    if a.shape[0] != b.shape[0]:
        raise ValueError("matrix and right-hand side have mismatched rows")
    aug = np.hstack([a, b.reshape(-1, 1)])
    ech, pivots = row_echelon(aug, p)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = ech[r, n]
    return x
