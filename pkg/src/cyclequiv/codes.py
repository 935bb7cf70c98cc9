"""Cyclic and 1-generator quasi-cyclic codes as generator matrices.

Also the standard derived-code constructions (shorten, puncture, extend)
and the :class:`CodeRecord` used to persist search and verification results.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .algebra import FieldSpec, Poly, format_poly, poly_divmod, poly_gcd, poly_mulmod
from .linalg import in_rowspace, nullspace, rref


class CodeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """k x n matrix of element codes over ``field``."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64)
        if a.ndim != 2:
            raise CodeError("generator matrix must be 2-d")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @cached_property
    def _rref(self) -> tuple[np.ndarray, list[int]]:
        return rref(self.field, self.entries)

    @property
    def rank(self) -> int:
        return len(self._rref[1])

    def is_full_rank(self) -> bool:
        return self.rank == self.k

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.n,):
            return False
        R, piv = self._rref
        return in_rowspace(self.field, R, piv, v)

    def parity_check(self) -> np.ndarray:
        """(n - rank) x n matrix H with G H^T = 0."""
        return nullspace(self.field, self.entries)

    def encode(self, msg) -> np.ndarray:
        msg = np.asarray(msg, dtype=np.int64)
        F = self.field
        prods = F.mul_table[msg[:, None], self.entries]
        return F.vsum(prods, axis=0)

    def same_code(self, other: GeneratorMatrix) -> bool:
        if other.field != self.field or other.n != self.n or other.rank != self.rank:
            return False
        return all(self.contains(r) for r in other.entries)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GeneratorMatrix) and self.field == other.field
                and np.array_equal(self.entries, other.entries))

    __hash__ = None


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class CyclicCodeSpec:
    field: FieldSpec
    n: int
    g: Poly

    def __post_init__(self):
        g = self.g
        if g.field != self.field or g.is_zero():
            raise CodeError("generator must be a nonzero polynomial over the code field")
        if not g.is_monic():
            raise CodeError("generator polynomial must be monic")
        h, r = poly_divmod(Poly.xn_minus_1(self.field, self.n), g)
        if not r.is_zero():
            raise CodeError(f"g = {format_poly(g)} does not divide x^{self.n} - 1")

    @classmethod
    def from_check(cls, field: FieldSpec, n: int, h: Poly) -> CyclicCodeSpec:
        h = h.monic()
        g, r = poly_divmod(Poly.xn_minus_1(field, n), h)
        if not r.is_zero():
            raise CodeError(f"h = {format_poly(h)} does not divide x^{n} - 1")
        return cls(field, n, g)

    @property
    def h(self) -> Poly:
        return poly_divmod(Poly.xn_minus_1(self.field, self.n), self.g)[0]

    @property
    def k(self) -> int:
        return self.n - self.g.degree

    def matrix(self) -> GeneratorMatrix:
        return circulant_matrix(self.g, self.n)


@dataclass(frozen=True)
class QCCodeSpec:
    """1-generator QC code of index ell generated by (g, g f_2, ..., g f_ell)."""

    field: FieldSpec
    m: int
    g: Poly
    fs: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "fs", tuple(self.fs))
        cyc = CyclicCodeSpec(self.field, self.m, self.g)
        h = cyc.h
        for j, f in enumerate(self.fs, start=2):
            if f.field != self.field:
                raise CodeError(f"f_{j} is over the wrong field")
            if f.degree >= self.m:
                raise CodeError(f"deg f_{j} must be < m = {self.m}")
            if f.is_zero() or poly_gcd(f, h).degree != 0:
                raise CodeError(f"gcd(f_{j}, h) != 1 for f_{j} = {format_poly(f)}")

    @property
    def ell(self) -> int:
        return len(self.fs) + 1

    @property
    def n(self) -> int:
        return self.ell * self.m

    @property
    def k(self) -> int:
        return self.m - self.g.degree

    @property
    def h(self) -> Poly:
        return poly_divmod(Poly.xn_minus_1(self.field, self.m), self.g)[0]

    def matrix(self) -> GeneratorMatrix:
        return qc_matrix(self)


def circulant_matrix(g: Poly, n: int) -> GeneratorMatrix:
    """(n - deg g) x n matrix whose row r holds the coefficients of x^r g(x)."""
    if g.is_zero():
        raise CodeError("generator is the zero polynomial")
    if g.degree >= n:
        raise CodeError(f"deg g = {g.degree} must be < n = {n}")
    k = n - g.degree
    coeffs = g.array()
    M = np.zeros((k, n), dtype=np.int64)
    for r in range(k):
        M[r, r:r + len(coeffs)] = coeffs
    return GeneratorMatrix(g.field, M)


def qc_matrix(spec: QCCodeSpec) -> GeneratorMatrix:
    m, k = spec.m, spec.k
    blocks = [spec.g] + [poly_mulmod(spec.g, f, m) for f in spec.fs]
    M = np.zeros((k, spec.ell * m), dtype=np.int64)
    for b, poly in enumerate(blocks):
        row0 = poly.array(m)
        for r in range(k):
            M[r, b * m:(b + 1) * m] = np.roll(row0, r)
    return GeneratorMatrix(spec.field, M)


# ---------------------------------------------------------------------------
# derived codes


def _basis(F: FieldSpec, M: np.ndarray) -> np.ndarray:
    R, _ = rref(F, M)
    return R


def shorten(M: GeneratorMatrix, pos: int) -> GeneratorMatrix:
    """Codewords vanishing at ``pos``, with that coordinate deleted."""
    if not 0 <= pos < M.n:
        raise CodeError(f"position {pos} out of range for length {M.n}")
    F = M.field
    order = [pos] + [c for c in range(M.n) if c != pos]
    R, piv = rref(F, M.entries, col_order=order)
    if not piv or piv[0] != pos:
        # coordinate is identically zero: shortening only deletes it
        sub = R
    else:
        sub = R[1:]
    sub = np.delete(sub, pos, axis=1)
    if sub.shape[0] < 1:
        raise CodeError("shortening leaves the zero code")
    out = GeneratorMatrix(F, sub)
    if not out.is_full_rank():
        raise CodeError("degenerate rank after shortening")
    return out


def puncture(M: GeneratorMatrix, pos: int) -> GeneratorMatrix:
    """Delete coordinate ``pos``."""
    if not 0 <= pos < M.n:
        raise CodeError(f"position {pos} out of range for length {M.n}")
    F = M.field
    sub = _basis(F, np.delete(M.entries, pos, axis=1))
    return GeneratorMatrix(F, sub)


def extend(M: GeneratorMatrix) -> GeneratorMatrix:
    """Append the coordinate -(sum of the row) to every row."""
    F = M.field
    parity = F.vneg(F.vsum(M.entries, axis=1))
    return GeneratorMatrix(F, np.concatenate([M.entries, parity[:, None]], axis=1))


# ---------------------------------------------------------------------------
# records


@dataclass
class CodeRecord:
    """Parameters of a constructed code plus how it was obtained.

    ``cert`` is ``"exact"`` when the lower bound met the weight of the stored
    codeword, otherwise ``"upper"`` and ``d`` is only an upper bound (with
    ``lb`` the best certified lower bound).
    """

    q: int
    n: int
    k: int
    d: int | None
    cert: str
    construction: list[str]
    lb: int = 0
    seed: int | None = None
    witness: np.ndarray | None = dc_field(default=None, repr=False)
    matrix: GeneratorMatrix | None = dc_field(default=None, repr=False, compare=False)
    flag: str = ""
    block: int | None = None          # cyclic shift block length, if known
    note: str = ""

    @property
    def params(self) -> str:
        d = "?" if self.d is None else (str(self.d) if self.cert == "exact" else f"<={self.d}")
        return f"[{self.n},{self.k},{d}]_{self.q}"

    def chain(self) -> str:
        return " | ".join(self.construction)


def describe_cyclic(spec: CyclicCodeSpec) -> str:
    return f"cyclic(n={spec.n}, g={format_poly(spec.g)})"


def describe_qc(spec: QCCodeSpec) -> str:
    fs = ", ".join(f"f{j}={format_poly(f)}" for j, f in enumerate(spec.fs, start=2))
    return f"qc(m={spec.m}, g={format_poly(spec.g)}, {fs})"


def block_orbit_positions(n: int, block: int) -> list[int]:
    """One coordinate per block: representatives of the block-shift orbits."""
    return list(range(0, n, block))


def coordinate_orbits(n: int, block: int | None) -> list[int]:
    """Representative positions under simultaneous block-wise cyclic shift."""
    if block is None:
        return list(range(n))
    return block_orbit_positions(n, block)
