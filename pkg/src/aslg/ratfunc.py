"""Exact rational functions in (t, x) over a finite field.

A RatFunc is always kept in canonical form: numerator and denominator
coprime in F_q[t, x], denominator with leading coefficient 1 under the
(x, then t) monomial order.  Equality is therefore structural, and the
canonical form is what certificates serialize.
"""

from __future__ import annotations

from .finitefield import FiniteField
from .poly import BivarPoly, divmod_exact, poly_gcd


class ZeroDenominatorError(ZeroDivisionError):
    pass


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: BivarPoly, den: BivarPoly, *, _canonical=False):
        if not _canonical:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @property
    def field(self) -> FiniteField:
        return self.num.field

    # -- constructors ----------------------------------------------------
    @staticmethod
    def from_poly(poly: BivarPoly) -> "RatFunc":
        return RatFunc(poly, BivarPoly.const(poly.field, 1), _canonical=True)

    @staticmethod
    def from_int(field: FiniteField, value: int) -> "RatFunc":
        return RatFunc.from_poly(BivarPoly.from_int(field, value))

    @staticmethod
    def zero(field: FiniteField) -> "RatFunc":
        return RatFunc.from_poly(BivarPoly.zero(field))

    @staticmethod
    def var_t(field: FiniteField) -> "RatFunc":
        return RatFunc.from_poly(BivarPoly.var_t(field))

    @staticmethod
    def var_x(field: FiniteField) -> "RatFunc":
        return RatFunc.from_poly(BivarPoly.var_x(field))

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.deg_t() == 0 and self.den.deg_x() == 0

    def is_t_only(self) -> bool:
        return self.num.deg_x() <= 0 and self.den.deg_x() <= 0

    def is_x_only(self) -> bool:
        return self.num.deg_t() <= 0 and self.den.deg_t() <= 0

    def is_constant(self) -> bool:
        return (
            self.num.deg_t() <= 0
            and self.num.deg_x() <= 0
            and self.den.deg_t() <= 0
            and self.den.deg_x() <= 0
        )

    def constant_code(self) -> int:
        assert self.is_constant()
        if self.num.is_zero():
            return 0
        return self.field.mul(self.num.coeff(0, 0), self.field.inv(self.den.coeff(0, 0)))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "RatFunc") -> "RatFunc":
        g = poly_gcd(self.den, other.den)
        if g.deg_t() == 0 and g.deg_x() == 0:
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
        else:
            d1 = divmod_exact(other.den, g)
            b1 = divmod_exact(self.den, g)
            num = self.num * d1 + other.num * b1
            den = self.den * d1
        return RatFunc(num, den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.field)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        a = divmod_exact(self.num, g1)
        d = divmod_exact(other.den, g1)
        c = divmod_exact(other.num, g2)
        b = divmod_exact(self.den, g2)
        num, den = a * c, b * d
        lead = den.lead_coeff()
        if lead != 1:
            inv = den.field.inv(lead)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, _canonical=True)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDenominatorError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def pow(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse().pow(-e)
        out = RatFunc.from_int(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def frobenius_pow(self, k: int) -> "RatFunc":
        """The p^k-th power; coprimality and monic leading term survive."""
        return RatFunc(self.num.frobenius_pow(k), self.den.frobenius_pow(k), _canonical=True)

    def artin_schreier_image(self) -> "RatFunc":
        """f^p - f, always computed through Frobenius."""
        return self.frobenius_pow(1) - self

    # -- p-th power structure -----------------------------------------------
    def is_pth_power(self) -> bool:
        """Exact test: in reduced form both num and den must live in
        F_q[t^p, x^p] (coefficients always have p-th roots here)."""
        return all(
            i % self.field.p == 0 and j % self.field.p == 0
            for poly in (self.num, self.den)
            for (i, j) in poly.terms
        )

    def pth_root(self) -> "RatFunc":
        if not self.is_pth_power():
            raise ValueError("element is not a p-th power")
        F = self.field
        p = F.p

        def root(poly: BivarPoly) -> BivarPoly:
            return BivarPoly(F, {(i // p, j // p): F.pth_root(c) for (i, j), c in poly.terms.items()})

        return RatFunc(root(self.num), root(self.den), _canonical=True)

    # -- structure -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and other.field is self.field
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def map_coeffs(self, target: FiniteField, emb: list[int]) -> "RatFunc":
        return RatFunc(self.num.map_coeffs(target, emb), self.den.map_coeffs(target, emb))

    def render(self, var_t: str = "t", var_x: str = "x") -> str:
        ns = self.num.render(var_t, var_x)
        if self.den.deg_t() == 0 and self.den.deg_x() == 0:
            return ns
        ds = self.den.render(var_t, var_x)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if len(self.den.terms) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return self.render()


def _normalize(num: BivarPoly, den: BivarPoly):
    if den.is_zero():
        raise ZeroDenominatorError("zero denominator")
    F = num.field
    if num.is_zero():
        return BivarPoly.zero(F), BivarPoly.const(F, 1)
    g = poly_gcd(num, den)
    if g.deg_t() > 0 or g.deg_x() > 0:
        num, den = divmod_exact(num, g), divmod_exact(den, g)
    lead = den.lead_coeff()
    if lead != 1:
        inv = F.inv(lead)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def ratfunc_normalize(num: BivarPoly, den: BivarPoly) -> RatFunc:
    """Public constructor: gcd-reduced, denominator-monic representative."""
    return RatFunc(num, den)


def frobenius_power(f: RatFunc, i: int) -> RatFunc:
    """f^{p^i} via coefficient Frobenius and exponent scaling."""
    if i < 0:
        raise ValueError("Frobenius power must be nonnegative")
    return f.frobenius_pow(i)
