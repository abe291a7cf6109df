"""Exact arithmetic in finite fields F_q, q = p^n.

Elements are coordinate vectors over F_p relative to a fixed modulus: the
lexicographically least monic irreducible polynomial of degree n over F_p
(coefficient tuple (c_{n-1}, ..., c_1, c_0) compared componentwise).  This
makes every output reproducible bit-for-bit.  Internally an element is the
integer sum(c_i * p^i) indexing precomputed operation tables, so arithmetic
is table lookups; the tables are built once per (p, n) and cached.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

_TABLE_LIMIT = 4096  # largest q for which full q*q tables are built


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# -- modulus selection ------------------------------------------------------
#
# Univariate helpers on little-endian coefficient lists over F_p, used only
# to pick the modulus and build tables.


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and _poly_trim(a):
        shift = len(a) - 1 - dm
        top = a[-1]
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - top * c) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _poly_mod(out, m, p)


def _monic_polys(p: int, degree: int):
    """Monic degree-d polynomials over F_p in lexicographic coefficient order."""
    for k in range(p**degree):
        coeffs = []
        kk = k
        for _ in range(degree):
            coeffs.append(kk % p)
            kk //= p
        # coeffs is little-endian (c_0 first); the loop index orders by
        # (c_0, then c_1, ...) — re-emit in (c_{d-1},...,c_0)-lex order.
        yield coeffs + [1]


def _is_irreducible(poly, p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    d = len(poly) - 1
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for cand in _monic_polys(p, e):
            if not _poly_mod(poly, cand, p):  # empty remainder = divisible
                return False
    return True


def _least_irreducible(p: int, n: int):
    """Lexicographically least monic irreducible of degree n over F_p.

    Order: compare coefficient tuples (c_{n-1}, ..., c_1, c_0).
    """
    if n == 1:
        return [0, 1]  # x itself; residue arithmetic is plain mod-p
    best = None
    for k in range(p**n):
        digits = []
        kk = k
        for _ in range(n):
            digits.append(kk % p)
            kk //= p
        # k's most significant digit is c_{n-1}, so increasing k enumerates
        # coefficient tuples (c_{n-1}, ..., c_0) in lexicographic order
        coeffs = digits + [1]
        if _is_irreducible(coeffs, p):
            best = coeffs
            break
    if best is None:
        raise FieldError(f"no irreducible modulus found for p={p}, n={n}")
    return best


@functools.lru_cache(maxsize=None)
def GF(p: int, n: int = 1) -> "FiniteField":
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if n < 1:
        raise FieldError(f"extension degree {n} must be >= 1")
    return FiniteField(p, n)


class FiniteField:
    """The field F_{p^n} with precomputed operation tables.

    Use the GF(p, n) constructor; direct instantiation bypasses the cache.
    Elements are handed around as FieldElement wrappers; the integer codes
    (base-p coordinate encodings) are the internal currency.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.q = p**n
        if self.q > _TABLE_LIMIT:
            raise FieldError(f"field size {self.q} exceeds table limit {_TABLE_LIMIT}")
        self.modulus = _least_irreducible(p, n)
        self._build_tables()
        self._embeddings: dict[tuple[int, int], list[int]] = {}

    # integer code <-> little-endian coordinate vector
    def coords(self, val: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            out.append(val % self.p)
            val //= self.p
        return tuple(out)

    def encode(self, coords) -> int:
        val = 0
        for c in reversed(list(coords)):
            val = val * self.p + (c % self.p)
        return val

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        if n == 1:
            self.mul_t = [[(a * b) % p for b in range(p)] for a in range(p)]
            self.add_t = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.neg_t = [(-a) % p for a in range(p)]
        else:
            polys = [list(self.coords(v)) for v in range(q)]
            self.add_t = [
                [self.encode((x + y) % p for x, y in zip(polys[a], polys[b])) for b in range(q)]
                for a in range(q)
            ]
            self.neg_t = [self.encode((-x) % p for x in polys[a]) for a in range(q)]
            self.mul_t = []
            for a in range(q):
                row = []
                pa = _poly_trim(list(polys[a]))
                for b in range(q):
                    pb = _poly_trim(list(polys[b]))
                    prod = _poly_mulmod(pa, pb, self.modulus, p)
                    prod += [0] * (n - len(prod))
                    row.append(self.encode(prod))
                self.mul_t.append(row)
        self.inv_t = [0] * q
        for a in range(1, q):
            b = pow_int(self, a, q - 2)
            self.inv_t[a] = b
        self.frob_t = [pow_int(self, a, self.p) for a in range(q)]
        # absolute trace down to F_p
        self.trace_t = []
        for a in range(q):
            acc, cur = 0, a
            for _ in range(n):
                acc = self.add_t[acc][cur]
                cur = self.frob_t[cur]
            self.trace_t.append(acc)

    # raw integer-code operations (hot path)
    def add(self, a: int, b: int) -> int:
        return self.add_t[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_t[a][self.neg_t[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a][b]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.inv_t[a]

    def frobenius(self, a: int, times: int = 1) -> int:
        for _ in range(times % self.n):
            a = self.frob_t[a]
        return a

    def pth_root(self, a: int) -> int:
        """Unique p-th root: Frobenius is a bijection on a finite field."""
        return self.frobenius(a, self.n - 1) if self.n > 1 else a

    def one(self) -> "FieldElement":
        return FieldElement(self, 1 % self.q)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def elem(self, val) -> "FieldElement":
        """Coerce an integer (mod p) or coordinate iterable to an element."""
        if isinstance(val, FieldElement):
            if val.field is not self:
                raise FieldError("element belongs to a different field")
            return val
        if isinstance(val, int):
            return FieldElement(self, val % self.p)
        return FieldElement(self, self.encode(val))

    def from_code(self, val: int) -> "FieldElement":
        return FieldElement(self, val)

    def elements(self):
        """All q elements in the canonical (integer code) order."""
        return (FieldElement(self, v) for v in range(self.q))

    def embedding_codes(self, target: "FiniteField") -> list[int]:
        """Code-level embedding table F_{p^n} -> F_{p^m}, n | m.

        The image of the generator is the first root of this field's modulus
        in the target's canonical element order, so the embedding is
        deterministic and recorded by that root's code.
        """
        key = (target.p, target.n)
        if key in self._embeddings:
            return self._embeddings[key]
        if target.p != self.p or target.n % self.n:
            raise FieldError(f"no embedding F_{self.q} -> F_{target.q}")
        if target is self:
            table = list(range(self.q))
            self._embeddings[key] = table
            return table
        root = None
        for z in range(target.q):
            acc = 0
            for c in reversed(self.modulus):
                acc = target.add(target.mul(acc, z), c % target.p)
            if acc == 0:
                root = z
                break
        assert root is not None, "modulus must split in the extension"
        table = []
        for a in range(self.q):
            img, zpow = 0, 1
            for c in self.coords(a):
                img = target.add(img, target.mul(c, zpow))
                zpow = target.mul(zpow, root)
            table.append(img)
        self._embeddings[key] = table
        return table

    def render(self, val: int) -> str:
        if self.n == 1:
            return str(val)
        return "[" + ",".join(str(c) for c in self.coords(val)) + "]"

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.n, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                terms.append(f"{head}g^{i}" if i > 1 else f"{head}g")
        return " + ".join(terms)

    def __repr__(self):
        return f"GF({self.p})" if self.n == 1 else f"GF({self.p}^{self.n})"


def pow_int(field: FiniteField, a: int, e: int) -> int:
    out = 1 % field.q
    base = a
    while e:
        if e & 1:
            out = field.mul_t[out][base]
        base = field.mul_t[base][base]
        e >>= 1
    return out


@dataclass(frozen=True)
class FieldElement:
    """One element of a FiniteField, identified by its integer code."""

    field: FiniteField
    val: int

    def _check(self, other: "FieldElement"):
        if not isinstance(other, FieldElement) or other.field is not self.field:
            raise FieldError("mixed-field arithmetic")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.add(self.val, other.val))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.val, other.val))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.val))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.val, other.val))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.val, self.field.inv(other.val)))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.field, pow_int(self.field, self.field.inv(self.val), -e))
        return FieldElement(self.field, pow_int(self.field, self.val, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.val))

    def frobenius(self, times: int = 1):
        return FieldElement(self.field, self.field.frobenius(self.val, times))

    def is_zero(self) -> bool:
        return self.val == 0

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and other.field is self.field
            and other.val == self.val
        )

    def __hash__(self):
        return hash((id(self.field), self.val))

    def __repr__(self):
        return self.field.render(self.val)


def fq_trace(c: FieldElement) -> FieldElement:
    """Absolute trace c + c^p + ... + c^{p^{n-1}}, landing in F_p."""
    prime = GF(c.field.p)
    return FieldElement(prime, c.field.trace_t[c.val])
