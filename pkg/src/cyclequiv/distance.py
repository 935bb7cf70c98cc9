"""Minimum distance and weight distribution of linear codes.

Three engines share one result type:

* exhaustive: walk every message in Gray order (small q^k);
* information sets (Brouwer-Zimmermann): systematic generator matrices on
  (nearly) disjoint information sets, enumerating messages of weight
  1, 2, ... until the accumulated lower bound meets the lightest codeword;
* random information sets: low-weight messages on random systematic forms,
  which only ever improves the upper bound.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels
from .algebra import FieldSpec
from .codes import CodeError, GeneratorMatrix
from .linalg import rref

log = logging.getLogger(__name__)

EXHAUSTIVE_CAP = 2**24
DEFAULT_BUDGET = 5 * 10**9


@dataclass
class DistanceResult:
    """Outcome of a distance computation.

    ``ub`` is always the weight of ``witness``; ``exact`` means ``lb >= ub``
    was established, so ``d == ub``.
    """

    ub: int
    lb: int
    witness: np.ndarray = dc_field(repr=False)
    method: str
    enumerated: int = 0
    levels: list[tuple[int, int, int]] = dc_field(default_factory=list, repr=False)

    @property
    def exact(self) -> bool:
        return self.lb >= self.ub

    @property
    def d(self) -> int:
        return self.ub

    @property
    def cert(self) -> str:
        return "exact" if self.exact else "upper"


def _check(M: GeneratorMatrix) -> None:
    if M.k == 0 or M.rank == 0:
        raise CodeError("the zero code has no minimum distance")
    if not M.is_full_rank():
        raise CodeError(f"generator matrix has rank {M.rank} < {M.k} rows")
    if M.field.q > 127:
        raise CodeError("distance engines support q <= 127")


def _gf_p_rows(M: GeneratorMatrix) -> np.ndarray:
    """Rows spanning the code as a GF(p)-space (k*m rows)."""
    F = M.field
    if F.m == 1:
        return M.entries.astype(np.int8)
    rows = [F.mul_table[F.p**t, M.entries] for t in range(F.m)]
    return np.concatenate(rows, axis=0).astype(np.int8)


def _gray_message(N: int, p: int, L: int) -> np.ndarray:
    digits = [(N // p**j) % p for j in range(L + 1)]
    return np.array([(digits[j] - digits[j + 1]) % p for j in range(L)], dtype=np.int64)


def _walk(M: GeneratorMatrix):
    F = M.field
    R = _gf_p_rows(M)
    dist, minw, argn = _kernels.gray_weight_distribution(R, F.add_table.astype(np.int8), F.p)
    return R, dist, minw, argn


def exhaustive_distance(M: GeneratorMatrix, cap: int = EXHAUSTIVE_CAP) -> DistanceResult:
    _check(M)
    F = M.field
    if F.q**M.k > cap:
        raise CodeError(f"q^k = {F.q}^{M.k} exceeds the exhaustive cap {cap}")
    R, dist, minw, argn = _walk(M)
    coeffs = _gray_message(int(argn), F.p, R.shape[0])
    word = F.vsum(F.mul_table[coeffs[:, None], R.astype(np.int64)], axis=0)
    return DistanceResult(int(minw), int(minw), word, "exhaustive", int(F.q**M.k))


# ---------------------------------------------------------------------------
# weight distribution


def _macwilliams(B: np.ndarray, n: int, q: int, dual_size: int) -> np.ndarray:
    """Weight distribution of C from that of its dual (exact integers)."""
    out = []
    for j in range(n + 1):
        total = 0
        for i in range(n + 1):
            if not B[i]:
                continue
            kr = sum((-1) ** s * (q - 1) ** (j - s) * math.comb(i, s) * math.comb(n - i, j - s)
                     for s in range(0, j + 1))
            total += int(B[i]) * kr
        if total % dual_size:
            raise ArithmeticError("MacWilliams transform produced a non-integer")
        out.append(total // dual_size)
    return np.array(out, dtype=object)


def weight_enumerator(M: GeneratorMatrix, cap: int = EXHAUSTIVE_CAP) -> np.ndarray:
    """Counts A_0..A_n of codewords by Hamming weight.

    Enumerates the code itself when q^k <= cap, otherwise its dual followed
    by the MacWilliams transform when q^(n-k) <= cap.
    """
    F = M.field
    if not M.is_full_rank():
        raise CodeError("generator matrix is not full rank")
    n, k, q = M.n, M.k, F.q
    if k == 0:
        out = np.zeros(n + 1, dtype=np.int64)
        out[0] = 1
        return out
    if q**k <= cap and (k <= n - k or q ** (n - k) > cap):
        _, dist, _, _ = _walk(M)
        return dist.astype(np.int64)
    if q ** (n - k) <= cap:
        H = M.parity_check()
        if H.shape[0] == 0:
            B = np.zeros(n + 1, dtype=np.int64)
            B[0] = 1
        else:
            _, B, _, _ = _walk(GeneratorMatrix(F, H))
        A = _macwilliams(B, n, q, q ** (n - k))
        return A.astype(np.int64)
    raise CodeError(f"min(q^k, q^(n-k)) exceeds the enumeration cap {cap}")


# ---------------------------------------------------------------------------
# information-set engines


@dataclass
class _Systematic:
    R: np.ndarray        # k x n, identity on `info`
    info: list[int]      # pivot column of each row
    red: np.ndarray      # redundancy columns
    SA: np.ndarray       # (q, k, n-k) int8 scaled redundancy rows
    rel_rank: int        # pivots among previously unused columns


def _systematic(F: FieldSpec, G: np.ndarray, order, rel_rank: int | None = None) -> _Systematic:
    R, piv = rref(F, G, col_order=order)
    info = list(piv)
    mask = np.ones(G.shape[1], dtype=bool)
    mask[info] = False
    red = np.nonzero(mask)[0]
    A = R[:, red]
    SA = F.mul_table[np.arange(F.q)[:, None, None], A[None, :, :]].astype(np.int8)
    return _Systematic(R, info, red, SA, len(info) if rel_rank is None else rel_rank)


def information_sets(M: GeneratorMatrix) -> list[_Systematic]:
    """Greedy chain of systematic forms on disjoint column sets.

    Each form pivots on the not-yet-used columns first (leftmost first) and
    completes its information set from used columns only when those run out.
    """
    F = M.field
    n = M.n
    used = np.zeros(n, dtype=bool)
    out = []
    while not used.all():
        fresh = [c for c in range(n) if not used[c]]
        old = [c for c in range(n) if used[c]]
        R, piv = rref(F, M.entries, col_order=fresh + old)
        new = [c for c in piv if not used[c]]
        if not new:
            break
        out.append(_systematic(F, M.entries, fresh + old, rel_rank=len(new)))
        used[new] = True
    return out


def _run_level(S: _Systematic, F: FieldSpec, w: int, limit: int):
    best, bpos, bcoef, counts = _kernels.enum_weight(S.SA, F.add_table.astype(np.int8), w, limit)
    total = int(counts.sum())
    i = int(np.argmin(best))
    if best[i] < limit:
        msg = np.zeros(S.R.shape[0], dtype=np.int64)
        msg[bpos[i]] = bcoef[i]
        word = F.vsum(F.mul_table[msg[:, None], S.R], axis=0)
        return int(best[i]), word, total
    return limit, None, total


def level_size(k: int, w: int, q: int) -> int:
    return math.comb(k, w) * (q - 1) ** (w - 1)


def _row_bound(S: _Systematic) -> tuple[int, np.ndarray]:
    weights = (S.R != 0).sum(axis=1)
    i = int(np.argmin(weights))
    return int(weights[i]), S.R[i].copy()


def information_set_distance(M: GeneratorMatrix, budget: int = DEFAULT_BUDGET,
                             stop_at: int | None = None) -> DistanceResult:
    """Brouwer-Zimmermann lower/upper bounding.

    After all messages of weight <= w have been tried on form j, any codeword
    not yet seen has more than w - (k - r_j) nonzeros on the r_j fresh columns
    of form j; summing over forms gives the lower bound. ``budget`` caps the
    number of enumerated messages. ``stop_at`` ends the run as soon as the
    lower bound reaches it (the result is then exact only if lb >= ub).
    """
    _check(M)
    F = M.field
    k, q = M.k, F.q
    forms = information_sets(M)
    deficiency = [k - S.rel_rank for S in forms]
    ub, word = min((_row_bound(S) for S in forms), key=lambda t: t[0])
    contrib = [max(0, 1 - d) for d in deficiency]
    lb = sum(contrib)
    spent = 0
    levels = []
    w = 1
    while lb < ub and w <= k:
        for j, S in enumerate(forms):
            if w + 1 - deficiency[j] <= 0 or lb >= ub:
                continue
            size = level_size(k, w, q)
            if spent + size > budget:
                log.info("budget exhausted before weight %d on form %d", w, j)
                return DistanceResult(ub, lb, word, "information-sets", spent, levels)
            found, cand, cnt = _run_level(S, F, w, ub)
            spent += cnt
            if cand is not None:
                ub, word = found, cand
            contrib[j] = w + 1 - deficiency[j]
            lb = sum(contrib)
            levels.append((w, j, lb))
            log.debug("w=%d form=%d lb=%d ub=%d", w, j, lb, ub)
            if stop_at is not None and lb >= stop_at:
                return DistanceResult(ub, lb, word, "information-sets", spent, levels)
        w += 1
    if w > k:
        lb = max(lb, ub)  # every message was enumerated on a full form
    return DistanceResult(ub, lb, word, "information-sets", spent, levels)


def upper_bound_search(M: GeneratorMatrix, target: int | None = None, seed: int = 0,
                       iterations: int = 200, max_weight: int = 3,
                       level_cap: int = 3 * 10**6, start: DistanceResult | None = None) -> DistanceResult:
    """Lightest codeword found on random information sets.

    Each iteration draws a random column order from ``seed``'s stream, puts
    the matrix in systematic form on it and enumerates messages of weight
    up to ``max_weight`` (levels larger than ``level_cap`` are skipped).
    Stops early once the weight drops to ``target``.
    """
    _check(M)
    F = M.field
    k, q = M.k, F.q
    rng = np.random.default_rng(seed)
    if start is None:
        S = _systematic(F, M.entries, None)
        ub, word = _row_bound(S)
        lb = 1
    else:
        ub, word, lb = start.ub, start.witness, start.lb
    spent = 0
    for _ in range(iterations):
        if target is not None and ub <= target:
            break
        order = rng.permutation(M.n)
        S = _systematic(F, M.entries, order)
        for w in range(1, min(max_weight, k) + 1):
            if w >= ub or level_size(k, w, q) > level_cap:
                break
            found, cand, cnt = _run_level(S, F, w, ub)
            spent += cnt
            if cand is not None:
                ub, word = found, cand
    return DistanceResult(ub, lb, word, "random-information-sets", spent)


def min_distance(M: GeneratorMatrix, budget: int = DEFAULT_BUDGET,
                 exhaustive_cap: int = EXHAUSTIVE_CAP) -> DistanceResult:
    """Exact minimum distance when reachable within ``budget``, else bounds."""
    _check(M)
    if M.field.q**M.k <= exhaustive_cap and M.field.q**M.k <= budget:
        return exhaustive_distance(M, exhaustive_cap)
    return information_set_distance(M, budget)


def check_witness(M: GeneratorMatrix, res: DistanceResult) -> bool:
    """The stored codeword is a nonzero member of the code of weight ub."""
    w = np.asarray(res.witness)
    return bool(w.any()) and int((w != 0).sum()) == res.ub and M.contains(w)
