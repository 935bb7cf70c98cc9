"""Row reduction over small finite fields (element codes, table lookups)."""
from __future__ import annotations

import numpy as np

from .algebra import FieldSpec


def rref(F: FieldSpec, M: np.ndarray, col_order=None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    ``col_order`` gives the order in which columns are tried as pivots
    (default left to right); the first usable column wins. Zero rows are
    dropped from the result.
    """
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = A.shape
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    order = range(cols) if col_order is None else col_order
    pivots = []
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = mul[inv[A[r, c]], A[r]]
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if len(others):
            factors = neg[A[others, c]]
            A[others] = add[A[others], mul[factors[:, None], A[r][None, :]]]
        pivots.append(int(c))
        r += 1
    return A[:r], pivots


def rank(F: FieldSpec, M: np.ndarray) -> int:
    return len(rref(F, M)[1])


def nullspace(F: FieldSpec, M: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : M x^T = 0}."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(piv):
            out[t, pc] = F.neg_table[R[i, f]]
    return out


def in_rowspace(F: FieldSpec, R: np.ndarray, pivots: list[int], v: np.ndarray) -> bool:
    """Membership of v in the row space of an RREF matrix with given pivots."""
    v = np.array(v, dtype=np.int64, copy=True)
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    for i, c in enumerate(pivots):
        if v[c]:
            v = add[v, mul[neg[v[c]], R[i]]]
    return not v.any()


def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """A @ B over GF(q)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.m == 1:
        return (A @ B) % F.p
    prods = F.mul_table[A[:, :, None], B[None, :, :]]  # (r, k, c)
    return F.vsum(prods, axis=1)
