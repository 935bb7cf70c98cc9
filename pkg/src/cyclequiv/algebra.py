"""Finite fields GF(p^m) and dense polynomials over them.

Field elements are plain ints: the element with power-basis coordinates
``(c_0, ..., c_{m-1})`` is encoded as ``c_0 + c_1 p + ... + c_{m-1} p^(m-1)``.
Zero and one are therefore ``0`` and ``1`` in every field, and the prime
subfield occupies ``0 .. p-1``.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER_BOUND = 2**20
TABLE_BOUND = 2**10


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Least t >= 1 with a^t = 1 mod n (n = 1 gives 1)."""
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    t, x = 1, a % n
    while x != 1:
        x = x * a % n
        t += 1
    return t


# -- small GF(p)[x] helpers, lists ascending by degree; used only while
# -- building a field, before any tables exist

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible_prime_field(f: Sequence[int], p: int) -> bool:
    """Ben-Or's test for a monic f over GF(p): no factor of degree j <= m/2,
    i.e. gcd(f, x^(p^j) - x) = 1 for each such j. Reducible inputs usually
    fail at small j, which keeps the search for a modulus cheap."""
    f = _trim(list(f))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for a in range(p):
        if sum(c * pow(a, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    xp = [0, 1]
    for _ in range(m // 2):
        xp = _ppowmod(xp, p, f, p)
        h = xp + [0] * max(0, 2 - len(xp))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, _trim(h), p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree m over GF(p), coefficients low-degree-first."""
    # constant term first (slowest varying) and never zero
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=m - 1):
            f = [c0, *rest, 1]
            if is_irreducible_prime_field(f, p):
                return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with a fixed modulus and primitive element.

    Build instances with :func:`field_make`; the constructor does not search
    for a modulus or generator.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    generator: int
    bound: int = dc_field(default=DEFAULT_ORDER_BOUND, compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def order(self) -> int:
        return self.q

    def __str__(self) -> str:
        return f"GF({self.q})"

    # -- tables ---------------------------------------------------------

    @cached_property
    def digits(self) -> np.ndarray:
        """(q, m) array of base-p coordinates of every element."""
        codes = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.m), dtype=np.int64)
        for j in range(self.m):
            out[:, j] = codes % self.p
            codes //= self.p
        return out

    @cached_property
    def _powers_of_p(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    @cached_property
    def exp(self) -> np.ndarray:
        """exp[i] = generator^i for 0 <= i < 2(q-1)."""
        n = self.q - 1
        if self.m == 1:
            out = np.empty(n, dtype=np.int64)
            x = 1
            for i in range(n):
                out[i] = x
                x = x * self.generator % self.p
        else:
            out = np.empty(n, dtype=np.int64)
            out[0] = 1
            size = 1
            g = self.generator
            while size < n:
                take = min(size, n - size)
                out[size:size + take] = self._mul_by_const(g, out[:take])
                g = self._slow_mul(g, g)
                size += take
        if len(np.unique(out)) != n:
            raise FieldError(f"generator {self.generator} is not primitive in {self}")
        return np.concatenate([out, out])

    @cached_property
    def log(self) -> np.ndarray:
        """log[a] = discrete log of a to the generator; log[0] = -1."""
        out = np.full(self.q, -1, dtype=np.int64)
        out[self.exp[: self.q - 1]] = np.arange(self.q - 1)
        return out

    @cached_property
    def add_table(self) -> np.ndarray:
        codes = np.arange(self.q)
        return self.vadd(codes[:, None], codes[None, :])

    @cached_property
    def mul_table(self) -> np.ndarray:
        codes = np.arange(self.q)
        return self.vmul(codes[:, None], codes[None, :])

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.vneg(np.arange(self.q))

    @cached_property
    def inv_table(self) -> np.ndarray:
        out = np.zeros(self.q, dtype=np.int64)
        nz = np.arange(1, self.q)
        out[nz] = self.exp[(self.q - 1 - self.log[nz]) % (self.q - 1)]
        return out

    # -- construction helpers --------------------------------------------

    def _code_digits(self, a: int) -> np.ndarray:
        out = np.zeros(self.m, dtype=np.int64)
        j = 0
        while a:
            a, out[j] = divmod(a, self.p)
            j += 1
        return out

    def _digits_code(self, d) -> int:
        out = 0
        for c in reversed(d.tolist()):
            out = out * self.p + c
        return out

    def _slow_mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        p, m = self.p, self.m
        prod = np.convolve(self._code_digits(a), self._code_digits(b)) % p
        mod = np.array(self.modulus[:m], dtype=np.int64)  # monic: x^m = -mod
        for top in range(len(prod) - 1, m - 1, -1):
            c = prod[top]
            if c:
                prod[top - m:top] = (prod[top - m:top] - c * mod) % p
        return self._digits_code(prod[:m])

    def _slow_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        out, scale = 0, 1
        while a or b:
            out += ((a % self.p + b % self.p) % self.p) * scale
            a //= self.p
            b //= self.p
            scale *= self.p
        return out

    def _slow_neg(self, a: int) -> int:
        if self.p == 2:
            return a
        out, scale = 0, 1
        while a:
            out += (-(a % self.p) % self.p) * scale
            a //= self.p
            scale *= self.p
        return out

    @property
    def tabulated(self) -> bool:
        """Whether table-based arithmetic is allowed (q within the bound)."""
        return self.q <= self.bound

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _mul_by_const(self, c: int, arr: np.ndarray) -> np.ndarray:
        # multiplication by c is GF(p)-linear: precompute c * x^j for each basis vector
        basis = np.array([self._slow_mul(c, self.p**j) for j in range(self.m)], dtype=np.int64)
        bd = self.digits[basis]  # (m, m): row j = digits of c*x^j
        return ((self.digits[arr] @ bd) % self.p) @ self._powers_of_p

    # -- scalar arithmetic -----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self.vadd(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return int(self.vneg(np.int64(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.m == 1:
            return pow(a, -1, self.p)
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        return (self.q - 1) // math.gcd(self.q - 1, int(self.log[a]))

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**j) % self.p for j in range(self.m))

    def from_coords(self, c: Sequence[int]) -> int:
        if len(c) != self.m or any(not 0 <= x < self.p for x in c):
            raise FieldError(f"bad coordinates {c!r} for {self}")
        return sum(x * self.p**j for j, x in enumerate(c))

    # -- vectorised arithmetic on int arrays -----------------------------

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._powers_of_p

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return ((-self.digits[a]) % self.p) @ self._powers_of_p

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.p
        la, lb = self.log[a], self.log[b]
        out = self.exp[np.where((la < 0) | (lb < 0), 0, la + lb)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vsum(self, a, axis: int = 0) -> np.ndarray:
        """Field sum along an axis."""
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        d = self.digits[a].sum(axis=axis) % self.p
        return d @ self._powers_of_p

    # -- text -------------------------------------------------------------

    def format_element(self, a: int) -> str:
        if self.m == 1 or a in (0, 1):
            return str(a)
        e = int(self.log[a])
        return "a" if e == 1 else f"a^{e}"

    def parse_element(self, tok: str) -> int:
        tok = tok.strip()
        if re.fullmatch(r"\d+", tok):
            v = int(tok)
            if self.m == 1 and 0 <= v < self.p or v in (0, 1):
                return v
            raise FieldError(f"integer token {tok!r} is not an element of {self}")
        m = re.fullmatch(r"a(?:\^\(?(\d+)\)?)?", tok)
        if m and self.m > 1:
            e = int(m.group(1)) if m.group(1) else 1
            return int(self.exp[e % (self.q - 1)])
        raise FieldError(f"cannot parse field element {tok!r} in {self}")


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return p, m
    raise FieldError(f"{q} is not a prime power")


@lru_cache(maxsize=None)
def field_make(p: int, m: int = 1, bound: int = DEFAULT_ORDER_BOUND) -> FieldSpec:
    """Deterministic GF(p^m).

    The modulus is the lexicographically least monic irreducible (compared
    low-degree coefficient first) and the generator is the least element,
    by integer code, of multiplicative order p^m - 1.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if p**m > bound:
        raise FieldError(f"GF({p}^{m}) exceeds the configured bound {bound}")
    modulus = (0, 1) if m == 1 else least_irreducible(p, m)
    probe = FieldSpec(p, m, modulus, 1, bound)
    q = p**m
    if q == 2:
        return FieldSpec(p, m, modulus, 1, bound)
    factors = prime_factors(q - 1)
    for g in range(2 if m > 1 else 1, q):
        if all(probe._slow_pow(g, (q - 1) // r) != 1 for r in factors):
            return FieldSpec(p, m, modulus, g, bound)
    raise FieldError(f"no primitive element found in GF({q})")  # pragma: no cover


def gf(q: int | FieldSpec, bound: int = DEFAULT_ORDER_BOUND) -> FieldSpec:
    """GF(q) from its order (or pass a FieldSpec through)."""
    if isinstance(q, FieldSpec):
        return q
    p, m = _factor_prime_power(int(q))
    return field_make(p, m, bound)


@lru_cache(maxsize=None)
def embedding(base: FieldSpec, ext: FieldSpec) -> np.ndarray:
    """Array mapping each element code of ``base`` to its image in ``ext``.

    ``ext`` must have the same characteristic and a degree divisible by
    ``base.m``. The image of the base variable x is the least root (by
    discrete log in ``ext``) of the base modulus inside the subfield.
    """
    if base.p != ext.p or ext.m % base.m:
        raise FieldError(f"{base} is not a subfield of {ext}")
    if base.m == 1:
        return np.arange(base.q, dtype=np.int64)
    if base == ext:
        return np.arange(base.q, dtype=np.int64)
    if ext.tabulated:
        add, mul, power = ext.add, ext.mul, ext.pow
    else:
        add, mul, power = ext._slow_add, ext._slow_mul, ext._slow_pow
    step = (ext.q - 1) // (base.q - 1)

    def is_root(cand: int) -> bool:
        val = 0
        for c in reversed(base.modulus):
            val = add(mul(val, cand), c)
        return val == 0

    if ext.tabulated:
        cands = (int(ext.exp[j * step]) for j in range(base.q - 1))
    else:
        # no discrete logs: walk z = 1, 2, ... through the subfield z^step
        cands = (power(z, step) for z in range(1, ext.q))
    rho = next((c for c in cands if is_root(c)), None)
    if rho is None:  # pragma: no cover - a subfield always holds the roots
        raise FieldError("base modulus has no root in the extension")
    rho_pows = [power(rho, j) for j in range(base.m)]
    out = np.zeros(base.q, dtype=np.int64)
    for code in range(base.q):
        acc = 0
        for j, d in enumerate(base.coords(code)):
            acc = add(acc, mul(d, rho_pows[j]))
        out[code] = acc
    return out


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over a FieldSpec, coefficients ascending by degree.

    Trailing zeros are stripped on construction, so the zero polynomial has
    ``coeffs == ()`` and degree -1.
    """

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        q = self.field.q
        if any(not 0 <= x < q for x in c):
            raise FieldError(f"coefficient out of range for {self.field}")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # constructors
    @classmethod
    def zero(cls, field: FieldSpec) -> Poly:
        return cls(field, ())

    @classmethod
    def one(cls, field: FieldSpec) -> Poly:
        return cls(field, (1,))

    @classmethod
    def x(cls, field: FieldSpec) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: FieldSpec, deg: int, c: int = 1) -> Poly:
        return cls(field, (0,) * deg + (c,))

    @classmethod
    def xn_minus_1(cls, field: FieldSpec, n: int) -> Poly:
        return cls(field, (field.neg(1),) + (0,) * (n - 1) + (1,))

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        inv = self.field.inv(self.lead)
        return self.scale(inv)

    def array(self, length: int | None = None) -> np.ndarray:
        n = len(self.coeffs) if length is None else length
        out = np.zeros(n, dtype=np.int64)
        c = self.coeffs[:n]
        out[: len(c)] = c
        return out

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)

    # arithmetic
    def _check(self, other: Poly):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        n = max(len(self), len(other))
        return Poly(self.field, self.field.vadd(self.array(n), other.array(n)))

    def __neg__(self) -> Poly:
        return Poly(self.field, self.field.vneg(self.array()))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c: int) -> Poly:
        return Poly(self.field, self.field.vmul(self.array(), c))

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(F)
        a, b = self.array(), other.array()
        if F.m == 1:
            return Poly(F, np.convolve(a, b) % F.p)
        if len(a) > len(b):
            a, b = b, a
        out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        for i, c in enumerate(a):
            if c:
                seg = slice(i, i + len(b))
                out[seg] = F.vadd(out[seg], F.vmul(b, int(c)))
        return Poly(F, out)

    def __pow__(self, e: int) -> Poly:
        result, base = Poly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        return poly_divmod(self, other)

    def __floordiv__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.field.add(self.field.mul(acc, x), c)
        return acc

    def __repr__(self) -> str:
        return f"Poly({self.field}, {format_poly(self)})"

    def pretty(self) -> str:
        F = self.field
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = F.format_element(c)
            if i == 0:
                terms.append(cs)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Euclidean division f = q*g + r with deg r < deg g."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F = f.field
    dg = g.degree
    r = f.array().copy()
    if len(r) - 1 < dg:
        return Poly.zero(F), f
    quot = np.zeros(len(r) - dg, dtype=np.int64)
    garr = g.array()
    inv_lead = F.inv(g.lead)
    if F.m == 1:
        p = F.p
        for i in range(len(r) - 1 - dg, -1, -1):
            c = r[i + dg] * inv_lead % p
            if c:
                quot[i] = c
                r[i:i + dg + 1] = (r[i:i + dg + 1] - c * garr) % p
    else:
        for i in range(len(r) - 1 - dg, -1, -1):
            c = F.mul(int(r[i + dg]), inv_lead)
            if c:
                quot[i] = c
                r[i:i + dg + 1] = F.vsub(r[i:i + dg + 1], F.vmul(garr, c))
    return Poly(F, quot), Poly(F, r[:dg])


def poly_divides(g: Poly, f: Poly) -> bool:
    return poly_divmod(f, g)[1].is_zero()


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    f._check(g)
    while not g.is_zero():
        f, g = g, poly_divmod(f, g)[1]
    return f.monic()


def _fold(F: FieldSpec, coeffs: np.ndarray, n: int) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if len(coeffs) <= n:
        out = np.zeros(n, dtype=np.int64)
        out[: len(coeffs)] = coeffs
        return out
    pad = (-len(coeffs)) % n
    blocks = np.concatenate([coeffs, np.zeros(pad, dtype=np.int64)]).reshape(-1, n)
    return F.vsum(blocks, axis=0)


def poly_reduce(f: Poly, n: int) -> Poly:
    """f mod (x^n - 1)."""
    return Poly(f.field, _fold(f.field, f.array(), n))


def poly_mulmod(f: Poly, g: Poly, n: int) -> Poly:
    """(f * g) mod (x^n - 1)."""
    return poly_reduce(f * g, n)


def substitute_power(f: Poly, e: int, n: int) -> Poly:
    """f(x^e) mod (x^n - 1)."""
    if not 0 < e < n:
        raise ValueError(f"exponent must satisfy 0 < e < n, got e={e}, n={n}")
    F = f.field
    out = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(f.coeffs):
        if c:
            j = i * e % n
            out[j] = F.add(int(out[j]), c)
    return Poly(F, out)


def substitute_scale(f: Poly, delta: int, n: int) -> Poly:
    """f(delta * x) mod (x^n - 1)."""
    if delta == 0:
        raise ValueError("delta must be nonzero")
    F = f.field
    if not f.coeffs:
        return f
    powers = F.exp[(F.log[delta] * np.arange(len(f.coeffs))) % (F.q - 1)]
    return Poly(F, _fold(F, F.vmul(f.array(), powers), n))


def _root_of_order(n: int, size: int, power) -> int:
    """Least z^((size - 1) / n), over element codes z = 1, 2, ..., of order exactly n."""
    cof = (size - 1) // n
    primes = prime_factors(n) if n > 1 else []
    for z in range(1, size):
        a = power(z, cof)
        if power(a, n) == 1 and all(power(a, n // r) != 1 for r in primes):
            return a
    raise FieldError(f"no element of order {n} in a field of size {size}")  # pragma: no cover


def primitive_root_of_unity(field: FieldSpec, n: int) -> tuple[FieldSpec, int]:
    """Extension GF(q^t), t minimal with n | q^t - 1, and an element of order n.

    The root is z^((q^t - 1) / n) for the least element code z for which
    this has order exactly n; the extension is ``field`` itself when t = 1.
    An extension above the size bound is still returned, with ``tabulated``
    False; only its ``_slow_*`` operations may be used.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(n, field.p) != 1:
        raise ValueError(f"gcd(n, p) != 1 for n={n}, p={field.p}")
    t = multiplicative_order(field.q, n) if n > 1 else 1
    size = field.q**t
    if t == 1:
        ext = field
    elif size <= field.bound:
        ext = field_make(field.p, field.m * t, field.bound)
    else:
        # generator 0 marks an untabulated field whose generator was never searched for
        deg = field.m * t
        ext = FieldSpec(field.p, deg, least_irreducible(field.p, deg), 0, field.bound)
    power = ext.pow if ext.tabulated else ext._slow_pow
    return ext, _root_of_order(n, size, power)


# ---------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(r"\s*(a\^\(\d+\)|a\^\d|a|\d)\s*")
_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?\s*")


def _parse_algebraic(text: str, field: FieldSpec) -> Poly:
    """``x^3 + 2x^2 + 1`` style input over a prime field."""
    if field.m != 1:
        raise FieldError("algebraic polynomial notation needs a prime field")
    body = text.strip()
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise FieldError(f"bad term at position {pos + 1} in {text!r}")
        if pos > 0 and not m.group(1):
            raise FieldError(f"missing operator at position {pos + 1} in {text!r}")
        c = int(m.group(2)) if m.group(2) else 1
        deg = 0 if not m.group(3) else int(m.group(4) or 1)
        if m.group(1) == "-":
            c = -c
        coeffs[deg] = (coeffs.get(deg, 0) + c) % field.p
        pos = m.end()
    top = max(coeffs, default=-1)
    return Poly(field, [coeffs.get(i, 0) for i in range(top + 1)])


def format_poly(f: Poly) -> str:
    F = f.field
    if F.m == 1 and F.p <= 10:
        return "[" + "".join(str(c) for c in f.coeffs) + "]"
    return "[" + ",".join(F.format_element(c) for c in f.coeffs) + "]"


def parse_poly(text: str, field: FieldSpec) -> Poly:
    """Parse ``[2021]`` (prime fields) or ``[1,a,a^2,0,1]`` (extensions).

    Prime-field polynomials may also be written as ``2x^3 + x + 1``.

    For extension fields the comma-free compact form ``[1aa^2]`` is also
    accepted; there a bare ``a^`` exponent is a single digit.
    """
    s = text.strip()
    if not s.startswith("[") and "x" in s:
        return _parse_algebraic(s, field)
    if not (s.startswith("[") and s.endswith("]")):
        raise FieldError(f"polynomial must be bracketed: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return Poly.zero(field)
    if "," in body:
        toks = [t.strip() for t in body.split(",")]
    elif field.m == 1 and field.p <= 10:
        toks = list(body.replace(" ", ""))
    elif field.m == 1:
        toks = [body]  # multi-digit coefficients need commas
    else:
        toks, pos = [], 0
        while pos < len(body):
            m = _TOKEN.match(body, pos)
            if not m:
                raise FieldError(f"bad token at position {pos + 1} in {text!r}")
            toks.append(m.group(1))
            pos = m.end()
    coeffs = []
    for i, tok in enumerate(toks):
        try:
            coeffs.append(field.parse_element(tok))
        except FieldError as exc:
            raise FieldError(f"{exc} (token {i + 1} of {text!r})") from None
    return Poly(field, coeffs)


def poly_from_ints(field: FieldSpec, coeffs: Iterable[int]) -> Poly:
    return Poly(field, tuple(coeffs))
