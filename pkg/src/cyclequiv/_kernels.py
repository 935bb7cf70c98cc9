"""Compiled inner loops. Field elements are small ints; all arithmetic goes
through the add/mul/neg/inv tables passed in."""
from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange


if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    # the system TBB is often too old for numba; avoid probing it first
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


def configure_threads() -> int:
    """Cap numba's worker count from CYCLEQUIV_THREADS (default: all)."""
    limit = numba.config.NUMBA_NUM_THREADS
    env = os.environ.get("CYCLEQUIV_THREADS")
    if env:
        try:
            limit = max(1, min(limit, int(env)))
        except ValueError:
            pass
    numba.set_num_threads(limit)
    return limit


configure_threads()


@njit(parallel=True, cache=True)
def enum_weight(SA, add, w, limit):
    """Enumerate messages of Hamming weight ``w`` on an information set.

    SA[c, i, :] is c times the redundancy part of systematic row i. The
    first nonzero message coefficient is fixed to 1. Looks for codewords of
    total weight < ``limit``. Work is split by the first support position;
    each slice keeps its own running bound, so the result does not depend on
    the thread count.

    Returns per-slice best weights, positions, coefficients and counts.
    """
    q = SA.shape[0]
    k = SA.shape[1]
    r = SA.shape[2]
    nfirst = k - w + 1
    best = np.full(nfirst, limit, np.int64)
    bpos = np.zeros((nfirst, w), np.int64)
    bcoef = np.zeros((nfirst, w), np.int64)
    counts = np.zeros(nfirst, np.int64)
    for i0 in prange(nfirst):
        lim = limit
        acc = np.zeros((w + 1, r), np.int8)
        pos = np.zeros(w, np.int64)
        coef = np.zeros(w, np.int64)
        pos[0] = i0
        coef[0] = 1
        cnt = 0
        if w == 1:
            wt = 0
            for j in range(r):
                if SA[1, i0, j] != 0:
                    wt += 1
            cnt = 1
            if 1 + wt < lim:
                lim = 1 + wt
                bpos[i0, 0] = i0
                bcoef[i0, 0] = 1
        else:
            for j in range(r):
                acc[1, j] = SA[1, i0, j]
            d = 1
            pos[1] = i0
            coef[1] = q - 1
            while d >= 1:
                if lim <= w:
                    break
                if coef[d] < q - 1:
                    coef[d] += 1
                else:
                    pos[d] += 1
                    coef[d] = 1
                    if pos[d] > k - (w - d):
                        d -= 1
                        continue
                c = coef[d]
                pd = pos[d]
                if d == w - 1:
                    thr = lim - w
                    wt = 0
                    for j in range(r):
                        if add[acc[d, j], SA[c, pd, j]] != 0:
                            wt += 1
                            if wt >= thr:
                                break
                    cnt += 1
                    if wt < thr:
                        lim = w + wt
                        for t in range(w):
                            bpos[i0, t] = pos[t]
                            bcoef[i0, t] = coef[t]
                else:
                    for j in range(r):
                        acc[d + 1, j] = add[acc[d, j], SA[c, pd, j]]
                    d += 1
                    pos[d] = pos[d - 1]
                    coef[d] = q - 1
        best[i0] = lim
        counts[i0] = cnt
    return best, bpos, bcoef, counts


@njit(cache=True)
def gray_weight_distribution(R, add, p):
    """Weight distribution of the GF(p)-span of the rows of R.

    Walks all p^L combinations in modular Gray order: step N adds row
    v_p(N) once more. Returns (distribution, min positive weight, step of
    the first codeword reaching it).
    """
    L = R.shape[0]
    n = R.shape[1]
    dist = np.zeros(n + 1, np.int64)
    v = np.zeros(n, np.int8)
    dist[0] = 1
    total = 1
    for _ in range(L):
        total *= p
    wt = 0
    minw = n + 1
    argn = 0
    for N in range(1, total):
        j = 0
        t = N
        while t % p == 0:
            t //= p
            j += 1
        for c in range(n):
            old = v[c]
            new = add[old, R[j, c]]
            v[c] = new
            if old == 0 and new != 0:
                wt += 1
            elif old != 0 and new == 0:
                wt -= 1
        dist[wt] += 1
        if 0 < wt < minw:
            minw = wt
            argn = N
    return dist, minw, argn


@njit(cache=True)
def _nullspace_has_full_support(A, add, mul, neg, inv, q, max_enum):
    """Row-reduce A in place; 1 if the nullspace holds a vector with no zero
    entry, 0 if not, -1 if the nullspace is too large to enumerate."""
    rows, n = A.shape
    piv = np.full(rows, -1, np.int64)
    r = 0
    for c in range(n):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(n):
                tmp = A[r, j]
                A[r, j] = A[pr, j]
                A[pr, j] = tmp
        s = inv[A[r, c]]
        for j in range(n):
            A[r, j] = mul[s, A[r, j]]
        for i in range(rows):
            if i != r and A[i, c] != 0:
                f = neg[A[i, c]]
                for j in range(n):
                    A[i, j] = add[A[i, j], mul[f, A[r, j]]]
        piv[r] = c
        r += 1
    is_piv = np.zeros(n, np.bool_)
    for i in range(r):
        is_piv[piv[i]] = True
    free = np.empty(n - r, np.int64)
    t = 0
    for c in range(n):
        if not is_piv[c]:
            free[t] = c
            t += 1
    nf = n - r
    if nf == 0:
        return 0
    total = 1
    for _ in range(nf):
        total *= q
        if total > max_enum:
            return -1
    # a full-support vector has every free coordinate nonzero
    x = np.zeros(n, np.int64)
    digits = np.ones(nf, np.int64)
    count = 1
    for _ in range(nf):
        count *= q - 1
    for it in range(count):
        for a in range(nf):
            x[free[a]] = digits[a]
        ok = True
        for i in range(r):
            s = 0
            for a in range(nf):
                s = add[s, mul[A[i, free[a]], digits[a]]]
            val = neg[s]
            if val == 0:
                ok = False
                break
        if ok:
            return 1
        # next assignment of nonzero digits
        a = 0
        while a < nf:
            digits[a] += 1
            if digits[a] < q:
                break
            digits[a] = 1
            a += 1
    return 0


@njit(cache=True)
def monomial_search(G1, H2, add, mul, neg, inv, q, max_perms, max_enum):
    """Search coordinate permutations pi (Heap's order) for one admitting
    nonzero scalars s with (G1 . diag(s) . P_pi) H2^T = 0.

    Returns (status, perm, tried): status 1 found, 0 exhausted search space
    with no map, -1 budget hit, -2 nullspace too large.
    """
    k, n = G1.shape
    m = H2.shape[0]
    perm = np.arange(n)
    cidx = np.zeros(n, np.int64)
    A = np.zeros((k * m, n), np.int64)
    tried = 0
    i = 1
    first = True
    while True:
        if not first:
            while i < n and cidx[i] >= i:
                cidx[i] = 0
                i += 1
            if i >= n:
                return 0, perm, tried
            if i % 2 == 0:
                tmp = perm[0]
                perm[0] = perm[i]
                perm[i] = tmp
            else:
                tmp = perm[cidx[i]]
                perm[cidx[i]] = perm[i]
                perm[i] = tmp
            cidx[i] += 1
            i = 1
        first = False
        tried += 1
        if tried > max_perms:
            return -1, perm, tried
        # coordinate j of a G1-row goes to position perm[j]
        for a in range(k):
            for b in range(m):
                row = a * m + b
                for j in range(n):
                    A[row, j] = mul[H2[b, perm[j]], G1[a, j]]
        st = _nullspace_has_full_support(A, add, mul, neg, inv, q, max_enum)
        if st == 1:
            return 1, perm, tried
        if st == -1:
            return -2, perm, tried
