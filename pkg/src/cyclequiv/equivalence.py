"""Affine-map equivalence test on coset multisets, verdicts, and a brute-force
monomial-equivalence oracle for short codes.

A witness (e, b) says that z -> e*z + b (mod n_q) carries the first multiset
onto the second, multiplicities included. With b = 0 this is the coordinate
permutation x -> x^s, s = e^{-1}; with b != 0 it is additionally the scaling
x -> alpha^{-b} x of the coordinates.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal

import numpy as np

from . import _kernels
from .codes import GeneratorMatrix, circulant_matrix
from .cosets import CosetMultiset, coset_to_poly
from .linalg import matmul, nullspace, rref

Mode = Literal["strict", "literal"]
MODES = ("strict", "literal")


class SearchExhausted(RuntimeError):
    """A bounded search ran out of budget before reaching a conclusion."""


@dataclass(frozen=True)
class AffineWitness:
    e: int
    b: int
    n_q: int

    def __post_init__(self):
        if math.gcd(self.e, self.n_q) != 1:
            raise ValueError(f"e = {self.e} is not a unit mod {self.n_q}")

    @property
    def exponent(self) -> int:
        """Exponent s of the ring map x -> x^s realising the multiplicative part."""
        return pow(self.e, -1, self.n_q) if self.n_q > 1 else 1

    def apply(self, z):
        return (self.e * np.asarray(z) + self.b) % self.n_q

    def inverse(self) -> AffineWitness:
        if self.n_q == 1:
            return self
        ei = pow(self.e, -1, self.n_q)
        return AffineWitness(ei, (-ei * self.b) % self.n_q, self.n_q)

    def then(self, other: AffineWitness) -> AffineWitness:
        """Composite map: apply self first, then other."""
        return AffineWitness((other.e * self.e) % self.n_q,
                             (other.e * self.b + other.b) % self.n_q, self.n_q)

    def maps(self, ms1: CosetMultiset, ms2: CosetMultiset) -> bool:
        u1 = ms1.element_multiplicities()
        u2 = ms2.element_multiplicities()
        z = np.arange(self.n_q)
        return bool(np.array_equal(u2[self.apply(z)], u1))

    def __str__(self) -> str:
        return f"e={self.e} b={self.b}"


class Status(str, Enum):
    EQUIVALENT = "equivalent"
    INEQUIVALENT = "inequivalent"
    UNKNOWN = "unknown"


EXIT_CODES = {Status.EQUIVALENT: 0, Status.UNKNOWN: 1, Status.INEQUIVALENT: 2}


@dataclass(frozen=True)
class EquivVerdict:
    status: Status
    mode: str
    witness: AffineWitness | None = None
    reason: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def __str__(self) -> str:
        if self.status is Status.EQUIVALENT:
            return f"equivalent {self.witness}" if self.witness else "equivalent (monomial map)"
        return f"{self.status.value} none"


class OpCounter:
    """Counts element comparisons made by :func:`affine_equivalent`."""

    def __init__(self):
        self.count = 0

    def add(self, k: int):
        self.count += int(k)


def allowed_shifts(n_q: int, size: int, q: int, mode: Mode) -> np.ndarray:
    """Shifts b admitted by the mode for a multiset of total size ``size``."""
    b = np.arange(n_q)
    if mode == "literal":
        return b
    if mode != "strict":
        raise ValueError(f"unknown mode {mode!r}")
    return b[(b * size * (q - 1)) % n_q == 0]


def _units(n: int) -> list[int]:
    return [e for e in range(1, max(n, 2)) if math.gcd(e, n) == 1] if n > 1 else [1]


def exponent_order(n_q: int) -> list[int]:
    """Coset multipliers e in search order: ascending ring exponent e^{-1}."""
    if n_q == 1:
        return [1]
    return [pow(s, -1, n_q) for s in _units(n_q)]


def affine_equivalent(ms1: CosetMultiset, ms2: CosetMultiset, mode: Mode = "strict",
                      counter: OpCounter | None = None) -> AffineWitness | None:
    """First (e, b) with z -> e z + b mapping ms1 onto ms2, else None.

    Candidates are tried in ascending order of the ring exponent s = e^{-1}
    (the x -> x^s isometry), then ascending b. In strict mode a shift b is
    admitted only if n_q divides b * |ms| * (q - 1).
    """
    if ms1.table != ms2.table:
        raise ValueError("multisets belong to different coset tables")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if ms1.size != ms2.size:
        if counter:
            counter.add(1)
        return None
    n = ms1.table.n_q
    u1 = ms1.element_multiplicities()
    u2 = ms2.element_multiplicities()
    if counter:
        counter.add(n)
    if not np.array_equal(np.sort(u1), np.sort(u2)):
        return None
    z = np.arange(n)
    shifts = allowed_shifts(n, ms1.size, ms1.table.field.q, mode)
    if counter:
        counter.add(n)  # one gate test per candidate shift
    for e in exponent_order(n):
        idx = (e * z[None, :] + shifts[:, None]) % n
        eq = u2[idx] == u1[None, :]
        ok = eq.all(axis=1)
        hit = int(np.argmax(ok)) if ok.any() else -1
        if counter:
            # comparisons a sequential early-exit scan would make up to the hit
            upto = eq if hit < 0 else eq[: hit + 1]
            first_bad = np.where(upto.all(axis=1), n, np.argmin(upto, axis=1) + 1)
            counter.add(int(first_bad.sum()))
        if hit >= 0:
            return AffineWitness(int(e), int(shifts[hit]), n)
    return None


def affine_orbit(ms: CosetMultiset, mode: Mode = "strict") -> dict[tuple[int, ...], AffineWitness]:
    """All multisets reachable from ``ms`` by admitted affine maps.

    Maps each image's multiplicity vector to the first witness (in search
    order) producing it. Multipliers differing by a power of q act alike on
    coset multisets, so only the first of each such class is applied.
    """
    table = ms.table
    n = table.n_q
    q = table.field.q
    u = ms.element_multiplicities()
    z = np.arange(n)
    shifts = allowed_shifts(n, ms.size, q, mode)
    reps = np.array([c[0] for c in table.cosets])
    out: dict[tuple[int, ...], AffineWitness] = {}
    done: set[int] = set()
    for e in exponent_order(n):
        if e in done:
            continue
        x = e
        while x not in done:
            done.add(x)
            x = x * q % n if n > 1 else x
        ei = pow(int(e), -1, n) if n > 1 else 1
        # image multiplicity at y is u[e^{-1}(y - b)]
        img = u[(ei * (z[None, :] - shifts[:, None])) % n]
        mult = img[:, reps]
        ok = (mult[:, table.coset_of] == img).all(axis=1)
        for row in np.nonzero(ok)[0]:
            key = tuple(int(v) for v in mult[row])
            if key not in out:
                out[key] = AffineWitness(int(e), int(shifts[row]), n)
    return out


def code_matrix(ms: CosetMultiset) -> GeneratorMatrix:
    """Circulant generator matrix of the cyclic code <P(ms)>."""
    return circulant_matrix(coset_to_poly(ms), ms.table.n)


def brute_force_equivalent(C1: GeneratorMatrix, C2: GeneratorMatrix,
                           cap: int = 10**8) -> bool:
    """Exhaustive monomial equivalence test (field automorphisms excluded).

    Every coordinate permutation is tried; for each one the admissible
    scalings form the nullspace of a linear system, which is checked for a
    vector with no zero entry. That covers all n! (q-1)^n monomial maps.
    ``cap`` bounds n! (q-1)^(n-1); beyond it :class:`SearchExhausted` is
    raised instead of guessing.
    """
    F = C1.field
    if C2.field != F:
        raise ValueError("codes over different fields")
    if C1.n != C2.n or C1.rank != C2.rank:
        return False
    n = C1.n
    work = math.factorial(n) * (F.q - 1) ** max(n - 1, 0)
    if work > cap:
        raise SearchExhausted(f"n!(q-1)^(n-1) = {work} exceeds cap {cap}")
    G1 = _kernels_basis(C1)
    H2 = C2.parity_check()
    if H2.shape[0] == 0 or G1.shape[0] == 0:
        return True
    status, _, _ = _kernels.monomial_search(
        G1, H2, F.add_table, F.mul_table, F.neg_table, F.inv_table, F.q,
        math.factorial(n), cap)
    if status < 0:
        raise SearchExhausted("monomial search exceeded its nullspace budget")
    return status == 1


def find_monomial_map(C1: GeneratorMatrix, C2: GeneratorMatrix) -> np.ndarray | None:
    """An n x n monomial matrix M with C1 M = C2, or None (small n only)."""
    F = C1.field
    G1 = _kernels_basis(C1)
    H2 = C2.parity_check()
    n = C1.n
    status, perm, _ = _kernels.monomial_search(
        G1, H2, F.add_table, F.mul_table, F.neg_table, F.inv_table, F.q,
        math.factorial(n), 10**8)
    if status != 1:
        return None
    k, m = G1.shape[0], H2.shape[0]
    A = np.zeros((k * m, n), dtype=np.int64)
    for a in range(k):
        for b in range(m):
            A[a * m + b] = F.mul_table[H2[b, perm], G1[a]]
    basis = nullspace(F, A)
    for coeffs in itertools.product(range(F.q), repeat=basis.shape[0]):
        s = F.vsum(F.mul_table[np.array(coeffs)[:, None], basis], axis=0)
        if np.all(s != 0):
            M = np.zeros((n, n), dtype=np.int64)
            M[np.arange(n), perm] = s
            return M
    return None  # pragma: no cover


def _kernels_basis(C: GeneratorMatrix) -> np.ndarray:
    return rref(C.field, C.entries)[0]


def maps_into(C1: GeneratorMatrix, M: np.ndarray, C2: GeneratorMatrix) -> bool:
    """Every row of G1 times M lies in C2."""
    images = matmul(C1.field, C1.entries, M)
    return all(C2.contains(r) for r in images)


def verdict(ms1: CosetMultiset, ms2: CosetMultiset, mode: Mode = "strict",
            oracle_cap: int | None = None) -> EquivVerdict:
    """Qualified answer: a witness is certain; its absence is conclusive only
    for binary codes, for different dimensions, or when the brute-force oracle
    ran (``oracle_cap`` set and the instance fits)."""
    if ms1.size != ms2.size:
        return EquivVerdict(Status.INEQUIVALENT, mode, reason="dimensions differ")
    w = affine_equivalent(ms1, ms2, mode)
    if w is not None:
        return EquivVerdict(Status.EQUIVALENT, mode, w)
    if ms1.table.field.q == 2:
        return EquivVerdict(Status.INEQUIVALENT, mode, reason="affine test is complete for q = 2")
    if oracle_cap is not None:
        try:
            eq = brute_force_equivalent(code_matrix(ms1), code_matrix(ms2), oracle_cap)
        except SearchExhausted:
            pass
        else:
            if eq:
                return EquivVerdict(Status.EQUIVALENT, mode, reason="monomial map found by exhaustive search")
            return EquivVerdict(Status.INEQUIVALENT, mode, reason="exhaustive monomial search")
    return EquivVerdict(Status.UNKNOWN, mode, reason="no affine witness; test is one-sided for q > 2")
