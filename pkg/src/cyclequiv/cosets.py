"""Cyclotomic cosets, coset multisets and the multiset <-> divisor map.

A length n over GF(p^m) splits as ``n = n_q * p^i`` with ``gcd(n_q, p) = 1``;
then ``x^n - 1 = (x^{n_q} - 1)^{p^i}`` and every divisor of ``x^n - 1`` is a
product of minimal polynomials of n_q-th roots of unity, each taken at most
``p^i`` times. A :class:`CosetMultiset` records those multiplicities.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .algebra import FieldSpec, Poly, embedding, gf, poly_divmod, primitive_root_of_unity


@dataclass(frozen=True)
class LengthSplit:
    n: int
    q: int
    n_q: int
    i: int

    @property
    def max_multiplicity(self) -> int:
        """Multiplicity of every irreducible factor in x^n - 1."""
        return self.n // self.n_q


def split_length(n: int, q: int | FieldSpec) -> LengthSplit:
    """Write n = n_q * p^i with p the characteristic of GF(q)."""
    if n < 1:
        raise ValueError(f"length must be positive, got {n}")
    F = gf(q)
    n_q, i = n, 0
    while n_q % F.p == 0:
        n_q //= F.p
        i += 1
    return LengthSplit(n, F.q, n_q, i)


def coset_partition(n_q: int, q: int) -> tuple[tuple[int, ...], ...]:
    """q-cyclotomic cosets mod n_q as sorted tuples, ordered by least element."""
    if math.gcd(n_q, q) != 1:
        raise ValueError(f"gcd({n_q}, {q}) != 1")
    seen = [False] * n_q
    out = []
    for s in range(n_q):
        if seen[s]:
            continue
        orbit, z = [], s
        while not seen[z]:
            seen[z] = True
            orbit.append(z)
            z = z * q % n_q
        out.append(tuple(sorted(orbit)))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Cyclotomic cosets for one (field, length) pair with a fixed root of unity."""

    field: FieldSpec
    split: LengthSplit
    cosets: tuple[tuple[int, ...], ...]
    ext: FieldSpec
    alpha: int

    @property
    def n(self) -> int:
        return self.split.n

    @property
    def n_q(self) -> int:
        return self.split.n_q

    @property
    def max_multiplicity(self) -> int:
        return self.split.max_multiplicity

    def __len__(self) -> int:
        return len(self.cosets)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CosetTable) and self.field == other.field
                and self.split == other.split)

    def __hash__(self) -> int:
        return hash((self.field, self.split))

    @cached_property
    def coset_of(self) -> np.ndarray:
        """coset_of[z] = index of the coset containing residue z."""
        out = np.empty(self.n_q, dtype=np.int64)
        for j, c in enumerate(self.cosets):
            out[list(c)] = j
        return out

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.cosets], dtype=np.int64)

    @cached_property
    def coset_polys(self) -> tuple[Poly, ...]:
        """P(S) for every coset S, as polynomials over the base field."""
        return tuple(_minimal_poly(self, c) for c in self.cosets)

    def full(self) -> CosetMultiset:
        k = self.max_multiplicity
        return CosetMultiset(self, (k,) * len(self))

    def empty(self) -> CosetMultiset:
        return CosetMultiset(self, (0,) * len(self))


def _minimal_poly(table: CosetTable, coset: Sequence[int]) -> Poly:
    ext, alpha, F = table.ext, table.alpha, table.field
    if ext.tabulated:
        add, mul, neg, power = ext.add, ext.mul, ext.neg, ext.pow
    else:
        add, mul, neg, power = ext._slow_add, ext._slow_mul, ext._slow_neg, ext._slow_pow
    coeffs = [1]
    for z in coset:
        root = neg(power(alpha, z))
        # multiply by (x + root)
        new = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            new[j + 1] = add(new[j + 1], c)
            new[j] = add(new[j], mul(c, root))
        coeffs = new
    emb = embedding(F, ext)
    back = {int(v): code for code, v in enumerate(emb)}
    try:
        base = [back[c] for c in coeffs]
    except KeyError:
        raise RuntimeError(
            f"P({set(coset)}) has coefficients outside {F}; root of unity is broken"
        ) from None
    return Poly(F, base)


@lru_cache(maxsize=None)
def cyclotomic_cosets(n_q: int, q: int | FieldSpec, n: int | None = None) -> CosetTable:
    """Coset table mod n_q over GF(q), for codes of length n (default n_q)."""
    F = gf(q)
    n = n_q if n is None else n
    split = split_length(n, F)
    if split.n_q != n_q:
        raise ValueError(f"coprime part of {n} over {F} is {split.n_q}, not {n_q}")
    cosets = coset_partition(n_q, F.q)
    ext, alpha = primitive_root_of_unity(F, n_q)
    return CosetTable(F, split, cosets, ext, alpha)


def coset_table(field: int | FieldSpec, n: int) -> CosetTable:
    """Coset table for length-n cyclic codes over ``field``."""
    F = gf(field)
    return cyclotomic_cosets(split_length(n, F).n_q, F, n)


@dataclass(frozen=True)
class CosetMultiset:
    """Multiplicity vector over the cosets of a table."""

    table: CosetTable
    mult: tuple[int, ...]

    def __post_init__(self):
        mult = tuple(int(x) for x in self.mult)
        if len(mult) != len(self.table):
            raise ValueError(f"expected {len(self.table)} multiplicities, got {len(mult)}")
        cap = self.table.max_multiplicity
        if any(not 0 <= x <= cap for x in mult):
            raise ValueError(f"multiplicities must lie in [0, {cap}]: {mult}")
        object.__setattr__(self, "mult", mult)

    @property
    def size(self) -> int:
        """Total number of roots with multiplicity, i.e. deg P(MS)."""
        return int(np.dot(self.mult, self.table.sizes))

    @property
    def dimension(self) -> int:
        return self.table.n - self.size

    def element_multiplicities(self) -> np.ndarray:
        """Length-n_q vector: multiplicity of each residue."""
        return np.asarray(self.mult, dtype=np.int64)[self.table.coset_of]

    def elements(self) -> list[int]:
        """Sorted residues with repetition."""
        out = []
        for c, k in zip(self.table.cosets, self.mult):
            out.extend(list(c) * k)
        return sorted(out)

    def __add__(self, other: CosetMultiset) -> CosetMultiset:
        if other.table != self.table:
            raise ValueError("multisets over different tables")
        return CosetMultiset(self.table, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __str__(self) -> str:
        return format_multiset(self)


def coset_to_poly(ms: CosetMultiset) -> Poly:
    """P(MS): the monic divisor of x^n - 1 whose roots are alpha^z, z in MS."""
    F = ms.table.field
    out = Poly.one(F)
    for P, k in zip(ms.table.coset_polys, ms.mult):
        if k:
            out = out * P**k
    return out


def poly_to_coset(g: Poly, table: CosetTable) -> CosetMultiset:
    """Inverse of :func:`coset_to_poly` for monic divisors of x^n - 1."""
    if g.field != table.field:
        raise ValueError(f"polynomial over {g.field}, table over {table.field}")
    if g.is_zero():
        raise ValueError("the zero polynomial is not a divisor of x^n - 1")
    g = g.monic()
    rest = g
    mult = []
    for P in table.coset_polys:
        k = 0
        while rest.degree >= P.degree:
            quo, rem = poly_divmod(rest, P)
            if not rem.is_zero():
                break
            rest, k = quo, k + 1
        mult.append(k)
    if rest.degree != 0 or any(k > table.max_multiplicity for k in mult):
        raise ValueError(f"{g.pretty()} does not divide x^{table.n} - 1 over {table.field}")
    return CosetMultiset(table, tuple(mult))


# ---------------------------------------------------------------------------
# text grammar: "{1,2,4}^2 + {0}"

_TERM = re.compile(r"\{([\d,\s]*)\}\s*(?:\^\s*(\d+))?")


def format_multiset(ms: CosetMultiset) -> str:
    parts = []
    for c, k in zip(ms.table.cosets, ms.mult):
        if k:
            s = "{" + ",".join(map(str, c)) + "}"
            parts.append(s if k == 1 else f"{s}^{k}")
    return " + ".join(parts) if parts else "{}"


def parse_multiset(text: str, table: CosetTable) -> CosetMultiset:
    """Parse ``{1,2,4}^2 + {0}``; a coset is named by any of its members.

    A braced group may also list a whole union, e.g. ``{0,1,3,4}``, in which
    case every coset it touches must be listed completely.
    """
    mult = [0] * len(table)
    body = text.strip()
    if body in ("{}", ""):
        return CosetMultiset(table, tuple(mult))
    pos = 0
    first = True
    while pos < len(body):
        if not first:
            m = re.compile(r"\s*\+\s*").match(body, pos)
            if not m:
                raise ValueError(f"expected '+' at position {pos + 1} in {text!r}")
            pos = m.end()
        first = False
        m = _TERM.match(body, pos)
        if not m:
            raise ValueError(f"expected '{{...}}' at position {pos + 1} in {text!r}")
        k = int(m.group(2)) if m.group(2) else 1
        members = [int(t) for t in m.group(1).replace(" ", "").split(",") if t]
        if any(not 0 <= z < table.n_q for z in members):
            raise ValueError(f"residue out of range mod {table.n_q} in {m.group(0)!r}")
        touched = sorted({int(table.coset_of[z]) for z in members})
        listed = set(members)
        if len(touched) > 1:
            for j in touched:
                if not set(table.cosets[j]) <= listed:
                    raise ValueError(f"{m.group(0)!r} is not a union of cyclotomic cosets")
        for j in touched:
            mult[j] += k
        pos = m.end()
        pos += len(body[pos:]) - len(body[pos:].lstrip())
    return CosetMultiset(table, tuple(mult))
