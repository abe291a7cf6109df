"""Sparse bivariate polynomials over a finite field, in variables (t, x).

Coefficients are stored as the field's integer codes; the zero coefficient is
never stored.  The monomial order everywhere is lexicographic with x ahead of
t: monomial t^i x^j is keyed (i, j) and compared by (j, i).  Division, gcd
(primitive pseudo-remainder sequence over F_q[t][x]) and rendering all use
this one order, so canonical forms are stable across runs.
"""

from __future__ import annotations

import functools

from .finitefield import FiniteField


class NotDivisibleError(ArithmeticError):
    pass


@functools.lru_cache(maxsize=None)
def _pascal_row(n: int, p: int) -> tuple[int, ...]:
    row = [1]
    for _ in range(n):
        row = [1] + [(row[k] + row[k + 1]) % p for k in range(len(row) - 1)] + [1]
    return tuple(row)


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        out = (out * _pascal_row(ni, p)[ki]) % p
        n //= p
        k //= p
    return out


class BivarPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field: FiniteField, terms: dict):
        self.field = field
        self.terms = terms  # (t_exp, x_exp) -> nonzero coefficient code

    # -- constructors --------------------------------------------------
    @staticmethod
    def zero(field):
        return BivarPoly(field, {})

    @staticmethod
    def const(field, code: int):
        return BivarPoly(field, {(0, 0): code} if code else {})

    @staticmethod
    def from_int(field, value: int):
        return BivarPoly.const(field, value % field.p)

    @staticmethod
    def monomial(field, code: int, i: int, j: int):
        return BivarPoly(field, {(i, j): code} if code else {})

    @staticmethod
    def var_t(field):
        return BivarPoly(field, {(1, 0): 1})

    @staticmethod
    def var_x(field):
        return BivarPoly(field, {(0, 1): 1})

    # -- basics ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, BivarPoly)
            and other.field is self.field
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((id(self.field), tuple(sorted(self.terms.items()))))

    def copy_terms(self) -> dict:
        return dict(self.terms)

    def deg_t(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_x(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def min_t(self) -> int:
        return min((i for i, _ in self.terms), default=-1)

    def min_x(self) -> int:
        return min((j for _, j in self.terms), default=-1)

    def lead_monomial(self):
        """Largest (i, j) under the (x, then t) order, or None."""
        if not self.terms:
            return None
        return max(self.terms, key=lambda ij: (ij[1], ij[0]))

    def lead_coeff(self) -> int:
        m = self.lead_monomial()
        return self.terms[m] if m is not None else 0

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return BivarPoly(F, out)

    def __neg__(self):
        F = self.field
        return BivarPoly(F, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        out: dict = {}
        add, mul = F.add, F.mul
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                v = add(out.get(m, 0), mul(c1, c2))
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return BivarPoly(F, out)

    def scale(self, code: int):
        F = self.field
        if code == 0:
            return BivarPoly.zero(F)
        return BivarPoly(F, {m: F.mul(c, code) for m, c in self.terms.items()})

    def shift(self, di: int, dj: int):
        return BivarPoly(self.field, {(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def pow(self, e: int):
        if e < 0:
            raise ValueError("negative exponent on a polynomial")
        out = BivarPoly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def frobenius_pow(self, k: int):
        """Raise to the p^k-th power: scale exponents, Frobenius on coefficients."""
        if k < 0:
            raise ValueError("negative Frobenius power")
        F = self.field
        s = F.p**k
        return BivarPoly(F, {(i * s, j * s): F.frobenius(c, k) for (i, j), c in self.terms.items()})

    # -- evaluation and substitution --------------------------------------
    def evaluate(self, target: FiniteField, emb: list[int], t_code: int, x_code: int) -> int:
        """Evaluate at (t, x) in a target field via the embedding table."""
        out = 0
        tp: dict[int, int] = {0: 1}
        xp: dict[int, int] = {0: 1}

        def power(cache, base, e):
            if e not in cache:
                cache[e] = target.mul(power(cache, base, e - 1), base)
            return cache[e]

        for (i, j), c in self.terms.items():
            v = target.mul(emb[c], power(tp, t_code, i))
            v = target.mul(v, power(xp, x_code, j))
            out = target.add(out, v)
        return out

    def shift_x(self, target: FiniteField, emb: list[int], alpha: int) -> "BivarPoly":
        """f(t, alpha + x) over the target field; alpha is a target code."""
        F = target
        p = F.p
        apow = [1]
        for _ in range(self.deg_x()):
            apow.append(F.mul(apow[-1], alpha))
        out: dict = {}
        for (i, j), c in self.terms.items():
            ce = emb[c]
            for k in range(j + 1):
                b = binom_mod_p(j, k, p)  # prime-subfield codes are 0..p-1
                if not b:
                    continue
                v = F.mul(F.mul(ce, b), apow[j - k])
                m = (i, k)
                w = F.add(out.get(m, 0), v)
                if w:
                    out[m] = w
                else:
                    out.pop(m, None)
        return BivarPoly(F, out)

    def reverse_x(self, degree: int) -> "BivarPoly":
        """x^degree * f(t, 1/x); degree must be >= deg_x."""
        if degree < self.deg_x():
            raise ValueError("reversal degree below x-degree")
        return BivarPoly(self.field, {(i, degree - j): c for (i, j), c in self.terms.items()})

    def map_coeffs(self, target: FiniteField, emb: list[int]) -> "BivarPoly":
        return BivarPoly(target, {m: emb[c] for m, c in self.terms.items()})

    # -- slice views -------------------------------------------------------
    def t_slices(self) -> dict[int, dict[int, int]]:
        """t-degree -> sparse univariate polynomial in x."""
        out: dict[int, dict[int, int]] = {}
        for (i, j), c in self.terms.items():
            out.setdefault(i, {})[j] = c
        return out

    def x_slices(self) -> dict[int, dict[int, int]]:
        """x-degree -> sparse univariate polynomial in t."""
        out: dict[int, dict[int, int]] = {}
        for (i, j), c in self.terms.items():
            out.setdefault(j, {})[i] = c
        return out

    def x_lead(self) -> "BivarPoly":
        """Coefficient of x^{deg_x} as a polynomial in t."""
        d = self.deg_x()
        return BivarPoly(self.field, {(i, 0): c for (i, j), c in self.terms.items() if j == d})

    def coeff(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    # -- rendering -----------------------------------------------------------
    def render(self, var_t: str = "t", var_x: str = "x") -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for (i, j) in sorted(self.terms, key=lambda ij: (ij[1], ij[0]), reverse=True):
            c = self.terms[(i, j)]
            factors = []
            if i:
                factors.append(var_t if i == 1 else f"{var_t}^{i}")
            if j:
                factors.append(var_x if j == 1 else f"{var_x}^{j}")
            cs = F.render(c)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                parts.append("*".join([cs] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return self.render()


def emb_scalar(field: FiniteField, value: int) -> int:
    """Code of the prime-field integer `value` inside `field`."""
    return value % field.p


# -- exact division and gcd ---------------------------------------------------


def divmod_exact(f: BivarPoly, d: BivarPoly) -> BivarPoly:
    """Quotient f/d when d divides f exactly; NotDivisibleError otherwise."""
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    F = f.field
    q: dict = {}
    r = BivarPoly(F, dict(f.terms))
    dm = d.lead_monomial()
    dc = d.terms[dm]
    dci = F.inv(dc)
    while not r.is_zero():
        rm = r.lead_monomial()
        di, dj = rm[0] - dm[0], rm[1] - dm[1]
        if di < 0 or dj < 0:
            raise NotDivisibleError("inexact polynomial division")
        c = F.mul(r.terms[rm], dci)
        q[(di, dj)] = c
        r = r - d.scale(c).shift(di, dj)
    return BivarPoly(F, q)


def _uni_divmod(a: dict, b: dict, F: FiniteField):
    """Division with remainder for sparse univariate polynomials (t only)."""
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = dict(a)
    db = max(b)
    lb = F.inv(b[db])
    q: dict = {}
    while a and max(a) >= db:
        da = max(a)
        c = F.mul(a[da], lb)
        q[da - db] = c
        for e, cb in b.items():
            m = da - db + e
            v = F.sub(a.get(m, 0), F.mul(c, cb))
            if v:
                a[m] = v
            else:
                a.pop(m, None)
    return q, a


def _uni_gcd(a: dict, b: dict, F: FiniteField) -> dict:
    """Monic gcd of sparse univariate polynomials."""
    while b:
        _, r = _uni_divmod(a, b, F)
        a, b = b, r
    if not a:
        return {}
    lead = F.inv(a[max(a)])
    return {e: F.mul(c, lead) for e, c in a.items()}


def _as_tpoly(poly: BivarPoly) -> dict:
    assert poly.deg_x() <= 0
    return {i: c for (i, _), c in poly.terms.items()}


def _from_tpoly(field: FiniteField, d: dict) -> BivarPoly:
    return BivarPoly(field, {(i, 0): c for i, c in d.items() if c})


def _content_x(f: BivarPoly) -> BivarPoly:
    """gcd over F_q[t] of the x-slice coefficients of f."""
    F = f.field
    g: dict = {}
    for _, tpoly in f.x_slices().items():
        g = _uni_gcd(g, tpoly, F) if g else _uni_gcd(tpoly, {}, F)
    return _from_tpoly(F, g)


def _pseudo_rem_x(f: BivarPoly, g: BivarPoly) -> BivarPoly:
    """Pseudo-remainder of f by g as polynomials in x over F_q[t]."""
    dg = g.deg_x()
    lcg = g.x_lead()
    r = f
    while not r.is_zero() and r.deg_x() >= dg:
        lcr = r.x_lead()
        r = r * lcg - (g * lcr).shift(0, r.deg_x() - dg)
    return r


def poly_gcd(f: BivarPoly, g: BivarPoly) -> BivarPoly:
    """gcd in F_q[t, x], normalized to lead coefficient 1 in the (x, t) order."""
    F = f.field
    if f.is_zero():
        return _normalize_lead(g)
    if g.is_zero():
        return _normalize_lead(f)
    if f.deg_x() <= 0 and g.deg_x() <= 0:
        return _from_tpoly(F, _uni_gcd(_as_tpoly(f), _as_tpoly(g), F))
    if f.deg_x() <= 0:
        return _from_tpoly(F, _uni_gcd(_as_tpoly(f), _as_tpoly(_content_x(g)), F))
    if g.deg_x() <= 0:
        return _from_tpoly(F, _uni_gcd(_as_tpoly(g), _as_tpoly(_content_x(f)), F))
    cf, cg = _content_x(f), _content_x(g)
    a, b = divmod_exact(f, cf), divmod_exact(g, cg)
    if a.deg_x() < b.deg_x():
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem_x(a, b)
        if not r.is_zero():
            r = divmod_exact(r, _content_x(r))
        a, b = b, r
    if a.deg_x() > 0:
        a = divmod_exact(a, _content_x(a))
    cont = _from_tpoly(F, _uni_gcd(_as_tpoly(cf), _as_tpoly(cg), F))
    return _normalize_lead(cont * a)


def _normalize_lead(f: BivarPoly) -> BivarPoly:
    if f.is_zero():
        return f
    return f.scale(f.field.inv(f.lead_coeff()))
