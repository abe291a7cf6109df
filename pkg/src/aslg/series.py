"""Truncated series expansions at places, exact valuations, and maximal-ideal
membership tests.

Everything that decides is exact: valuations and membership are computed from
multiplicities and point evaluations of the defining polynomials, never from
truncations.  Series enter only as witnesses and renderings.

At a finite place the local coordinates are (t, s) with s = x - alpha for the
recorded root alpha of the place polynomial; at infinity s = 1/x.  Series
terms are kept in a window i < prec_t, j < prec_s (s-exponents may be
negative for Laurent parts); a precision of None means the value is exact.
At the Gauss place coefficients are exact rational functions in x and only
the t-window applies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .finitefield import FiniteField
from .poly import BivarPoly
from .places import FINITE, GAUSS, INFINITY, Place
from .ratfunc import RatFunc

DEFAULT_PRECISION = (32, 32)


class ZeroValuationInputError(ValueError):
    """Valuation of the zero element requested."""


class NotExpandableError(ArithmeticError):
    """The element has no Laurent expansion with nonnegative t-exponents at
    this place (denominator vanishes at the point along a mixed curve)."""


class PrecisionError(ValueError):
    pass


# -- coefficient domains -------------------------------------------------------


class FieldCoeffs:
    """Coefficients are integer codes of a finite field."""

    kind = "field"

    def __init__(self, field: FiniteField):
        self.field = field

    def is_zero(self, c):
        return c == 0

    def add(self, a, b):
        return self.field.add(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def inv(self, a):
        return self.field.inv(a)

    def frobenius(self, a, k):
        return self.field.frobenius(a, k)

    def render(self, a):
        return self.field.render(a)

    def same(self, other):
        return isinstance(other, FieldCoeffs) and other.field is self.field


class RationalCoeffs:
    """Coefficients are exact rational functions in x (Gauss residue field)."""

    kind = "rational"

    def __init__(self, field: FiniteField):
        self.field = field

    def is_zero(self, c: RatFunc):
        return c.is_zero()

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def frobenius(self, a, k):
        return a.frobenius_pow(k)

    def render(self, a):
        s = a.render()
        return s if ("+" not in s and "/" not in s and "*" not in s) else f"({s})"

    def same(self, other):
        return isinstance(other, RationalCoeffs) and other.field is self.field


class TruncSeries:
    """Sparse series sum c_{ij} t^i s^j, exact modulo (t^prec_t, s^prec_s)."""

    __slots__ = ("domain", "terms", "prec_t", "prec_s")

    def __init__(self, domain, terms: dict, prec_t, prec_s):
        self.domain = domain
        self.terms = {m: c for m, c in terms.items() if not domain.is_zero(c)}
        self.prec_t = prec_t
        self.prec_s = prec_s
        self._trim()

    def _trim(self):
        nt, ns = self.prec_t, self.prec_s
        if nt is None and ns is None:
            return
        drop = [
            m
            for m in self.terms
            if (nt is not None and m[0] >= nt) or (ns is not None and m[1] >= ns)
        ]
        for m in drop:
            del self.terms[m]

    # -- constructors -----------------------------------------------------
    @staticmethod
    def from_poly(domain, poly: BivarPoly):
        """Exact series of a polynomial in local coordinates; the second
        exponent slot is the s-exponent."""
        return TruncSeries(domain, dict(poly.terms), None, None)

    @staticmethod
    def zero(domain, prec_t=None, prec_s=None):
        return TruncSeries(domain, {}, prec_t, prec_s)

    # -- window bookkeeping --------------------------------------------------
    def s_floor(self):
        return min((j for _, j in self.terms), default=None)

    def t_floor(self):
        return min((i for i, _ in self.terms), default=None)

    def truncate(self, prec_t, prec_s):
        nt = _pmin(self.prec_t, prec_t)
        ns = _pmin(self.prec_s, prec_s)
        return TruncSeries(self.domain, dict(self.terms), nt, ns)

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        assert self.domain.same(other.domain)
        out = dict(self.terms)
        d = self.domain
        for m, c in other.terms.items():
            v = d.add(out.get(m, _zero_of(d)), c)
            if d.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return TruncSeries(d, out, _pmin(self.prec_t, other.prec_t), _pmin(self.prec_s, other.prec_s))

    def __neg__(self):
        d = self.domain
        return TruncSeries(d, {m: d.neg(c) for m, c in self.terms.items()}, self.prec_t, self.prec_s)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        assert self.domain.same(other.domain)
        d = self.domain
        prec_t = _pmin(self.prec_t, other.prec_t)
        # Laurent-aware s-precision: the first corrupted s-exponent of the
        # product is min over (own tail) + (other's lowest exponent).
        fa, fb = self.s_floor(), other.s_floor()
        cands = []
        if self.prec_s is not None:
            cands.append(self.prec_s + (fb if fb is not None else 0))
        if other.prec_s is not None:
            cands.append(other.prec_s + (fa if fa is not None else 0))
        prec_s = min(cands) if cands else None
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                i, j = i1 + i2, j1 + j2
                if prec_t is not None and i >= prec_t:
                    continue
                if prec_s is not None and j >= prec_s:
                    continue
                m = (i, j)
                v = d.add(out.get(m, _zero_of(d)), d.mul(c1, c2))
                if d.is_zero(v):
                    out.pop(m, None)
                else:
                    out[m] = v
        return TruncSeries(d, out, prec_t, prec_s)

    def p_power(self, k: int = 1):
        """p^k-th power; in characteristic p this is term-wise."""
        d = self.domain
        p = d.field.p
        e = p**k
        terms = {(i * e, j * e): d.frobenius(c, k) for (i, j), c in self.terms.items()}
        nt = None if self.prec_t is None else self.prec_t * e
        ns = None if self.prec_s is None else self.prec_s * e
        return TruncSeries(d, terms, nt, ns)

    def invert(self, prec_t: int, prec_s: int | None):
        """Inverse to the requested window.  Requires an exact input (it is
        only used on expansions of polynomials) whose t^0 layer is nonzero."""
        if self.prec_t is not None or self.prec_s is not None:
            raise PrecisionError("inversion is only supported for exact series")
        d = self.domain
        layers: dict[int, dict] = {}
        for (i, j), c in self.terms.items():
            layers.setdefault(i, {})[j] = c
        if min(layers, default=1) < 0 or 0 not in layers:
            raise NotExpandableError("no unit t^0 layer to invert against")
        a0 = layers[0]
        if d.kind == "rational":
            if prec_s is not None:
                raise PrecisionError("rational-coefficient series have no s-window")
            b0 = {0: d.inv(a0[0])}
            width = None
        else:
            v0 = min(a0)
            width = (prec_s if prec_s is not None else 0) + (max(0, v0) + 1) * (prec_t + 2)
            b0 = _invert_laurent_layer(d, a0, width)
        out_layers = {0: b0}
        for i in range(1, prec_t):
            acc: dict = {}
            for k, ak in layers.items():
                if k < 1 or k > i:
                    continue
                bk = out_layers.get(i - k)
                if not bk:
                    continue
                for j1, c1 in ak.items():
                    for j2, c2 in bk.items():
                        j = j1 + j2
                        if width is not None and j >= width:
                            continue
                        v = d.add(acc.get(j, _zero_of(d)), d.mul(c1, c2))
                        if d.is_zero(v):
                            acc.pop(j, None)
                        else:
                            acc[j] = v
            layer: dict = {}
            for j1, c1 in acc.items():
                for j2, c2 in b0.items():
                    j = j1 + j2
                    if width is not None and j >= width:
                        continue
                    v = d.add(layer.get(j, _zero_of(d)), d.neg(d.mul(c1, c2)))
                    if d.is_zero(v):
                        layer.pop(j, None)
                    else:
                        layer[j] = v
            if layer:
                out_layers[i] = layer
        terms = {
            (i, j): c
            for i, layer in out_layers.items()
            for j, c in layer.items()
            if not d.is_zero(c)
        }
        return TruncSeries(d, terms, prec_t, prec_s)

    # -- comparisons ---------------------------------------------------------
    def eq_mod(self, other) -> bool:
        """Equality of all coefficients inside the common window."""
        assert self.domain.same(other.domain)
        nt = _pmin(self.prec_t, other.prec_t)
        ns = _pmin(self.prec_s, other.prec_s)
        a = self.truncate(nt, ns)
        b = other.truncate(nt, ns)
        if set(a.terms) != set(b.terms):
            return False
        return all(c == b.terms[m] for m, c in a.terms.items())

    def is_zero_mod(self) -> bool:
        return not self.terms

    def order(self):
        """(t-exp, s-exp) of the least term under (s, then t) order, or None."""
        if not self.terms:
            return None
        return min(self.terms, key=lambda m: (m[1], m[0]))

    def min_s_exponent(self):
        return self.s_floor()

    # -- rendering -----------------------------------------------------------
    def render(self, var_t: str = "t", var_s: str = "s") -> str:
        d = self.domain
        parts = []
        for (i, j) in sorted(self.terms, key=lambda m: (m[1], m[0])):
            c = self.terms[(i, j)]
            factors = []
            if i:
                factors.append(var_t if i == 1 else f"{var_t}^{i}")
            if j:
                factors.append(var_s if j == 1 else f"{var_s}^{j}")
            cs = d.render(c)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                parts.append("*".join([cs] + factors))
        body = " + ".join(parts) if parts else "0"
        tail = []
        if self.prec_t is not None:
            tail.append(f"{var_t}^{self.prec_t}")
        if self.prec_s is not None:
            tail.append(f"{var_s}^{self.prec_s}")
        if tail:
            return f"{body} + O({', '.join(tail)})"
        return body

    def __repr__(self):
        return self.render()


def _zero_of(domain):
    return 0 if domain.kind == "field" else RatFunc.zero(domain.field)


def _deq(domain, a, b):
    if domain.kind == "field":
        return a == b
    return a == b


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _invert_laurent_layer(domain: FieldCoeffs, layer: dict, width: int) -> dict:
    """Inverse of a univariate Laurent polynomial sum c_j s^j as a Laurent
    series, exact for exponents below `width` relative to its own floor."""
    F = domain.field
    v0 = min(layer)
    unit = {j - v0: c for j, c in layer.items()}
    inv0 = F.inv(unit[0])
    out = {0: inv0}
    for j in range(1, max(0, width - v0) + 1):
        acc = 0
        for e, c in unit.items():
            if 1 <= e <= j:
                b = out.get(j - e)
                if b:
                    acc = F.add(acc, F.mul(c, b))
        if acc:
            out[j] = F.mul(F.neg(acc), inv0)
    return {j - v0: c for j, c in out.items() if c}


# -- localization -------------------------------------------------------------


def localize(f: RatFunc, place: Place):
    """(num, den) as polynomials in local coordinates (t, s) over the
    residue field, together with that field.  Gauss keeps (t, x)."""
    if place.kind == FINITE:
        ext, emb, alpha = place.local_data()
        return f.num.shift_x(ext, emb, alpha), f.den.shift_x(ext, emb, alpha), ext
    if place.kind == INFINITY:
        g, h = f.num, f.den
        dg, dh = g.deg_x(), h.deg_x()
        gs, hs = g.reverse_x(dg), h.reverse_x(dh)
        e = dh - dg
        if e >= 0:
            return gs.shift(0, e), hs, place.field
        return gs, hs.shift(0, -e), place.field
    return f.num, f.den, place.field


# -- exact valuations ------------------------------------------------------------


def _pi_multiplicity(poly: BivarPoly, pi: BivarPoly) -> int:
    """max k with pi^k | poly over K[x] (t-coefficients are units of K)."""
    F = poly.field
    dcoef = {j: c for (_, j), c in pi.terms.items()}
    dd = max(dcoef)
    inv = F.inv(dcoef[dd])
    best = None
    for _, slice_x in poly.t_slices().items():
        count = 0
        cur = dict(slice_x)
        while True:
            quo: dict = {}
            rem = dict(cur)
            while rem and max(rem) >= dd:
                top = max(rem)
                c = F.mul(rem[top], inv)
                quo[top - dd] = c
                for e, dc in dcoef.items():
                    m = top - dd + e
                    v = F.sub(rem.get(m, 0), F.mul(c, dc))
                    if v:
                        rem[m] = v
                    else:
                        rem.pop(m, None)
            if rem or not quo:
                break
            count += 1
            cur = quo
            if not cur:
                break
        best = count if best is None else min(best, count)
        if best == 0:
            return 0
    return best or 0


def valuation_exact(f: RatFunc, place: Place) -> int:
    """Exact DVR valuation of f at the place; t-units count as units away
    from Gauss, and the Gauss valuation measures t-adic content."""
    if f.is_zero():
        raise ZeroValuationInputError("the zero element has no valuation")
    if place.kind == FINITE:
        return _pi_multiplicity(f.num, place.pi) - _pi_multiplicity(f.den, place.pi)
    if place.kind == INFINITY:
        return f.den.deg_x() - f.num.deg_x()
    return f.num.min_t() - f.den.min_t()


# -- membership ------------------------------------------------------------------

IN_MAX_IDEAL = "IN_MAX_IDEAL"
UNIT = "UNIT"
NOT_IN_RING = "NOT_IN_RING"


@dataclass
class Membership:
    status: str
    residue_code: int | None = None  # field code at finite/infinity places
    residue_ratfunc: RatFunc | None = None  # x-rational residue at Gauss
    local_field: FiniteField | None = None

    def __repr__(self):
        if self.status == UNIT:
            r = (
                self.local_field.render(self.residue_code)
                if self.residue_code is not None
                else self.residue_ratfunc.render()
            )
            return f"UNIT(residue={r})"
        return self.status


def maximal_ideal_membership(f: RatFunc, place: Place) -> Membership:
    """Exact membership of f in the complete local ring at the place.

    Finite points and infinity use the two-dimensional ring k'[[t, s]]: with
    f = g/h reduced, h not vanishing at the point makes f integral there and
    the verdict is read off the residue; h vanishing at the point makes f a
    genuine non-member because g and h share no factor.  Gauss uses the
    t-adic DVR.
    """
    if place.kind == GAUSS:
        if f.is_zero():
            return Membership(IN_MAX_IDEAL)
        v = valuation_exact(f, place)
        if v > 0:
            return Membership(IN_MAX_IDEAL)
        if v < 0:
            return Membership(NOT_IN_RING)
        return Membership(UNIT, residue_ratfunc=gauss_residue(f), local_field=place.field)
    if place.kind == FINITE:
        ext, emb, alpha = place.local_data()
        hval = f.den.evaluate(ext, emb, 0, alpha)
        if hval == 0:
            return Membership(NOT_IN_RING)
        gval = f.num.evaluate(ext, emb, 0, alpha)
        if gval == 0:
            return Membership(IN_MAX_IDEAL, local_field=ext)
        return Membership(UNIT, residue_code=ext.mul(gval, ext.inv(hval)), local_field=ext)
    # infinity: f = s^e * g*/h* with s not dividing g*, h*
    g, h = f.num, f.den
    dg, dh = g.deg_x(), h.deg_x()
    e = dh - dg
    ch = h.coeff(0, dh)
    F = place.field
    if ch == 0:
        return Membership(NOT_IN_RING)
    if e < 0:
        return Membership(NOT_IN_RING)
    if e > 0:
        return Membership(IN_MAX_IDEAL, local_field=F)
    cg = g.coeff(0, dg)
    if cg == 0:
        return Membership(IN_MAX_IDEAL, local_field=F)
    return Membership(UNIT, residue_code=F.mul(cg, F.inv(ch)), local_field=F)


def gauss_residue(f: RatFunc) -> RatFunc:
    """The x-rational residue of a Gauss-unit element (v_t = 0)."""
    F = f.field
    gslices, hslices = f.num.t_slices(), f.den.t_slices()
    g0 = BivarPoly(F, {(0, j): c for j, c in gslices[min(gslices)].items()})
    h0 = BivarPoly(F, {(0, j): c for j, c in hslices[min(hslices)].items()})
    return RatFunc(g0, h0)


def s_leading_data(f: RatFunc, place: Place):
    """(valuation, leading coefficient) of f in the s-adic DVR at the place.

    The leading coefficient is an exact rational function of t over the
    residue extension.
    """
    if f.is_zero():
        raise ZeroValuationInputError("the zero element has no leading term")
    num, den, ext = localize(f, place)
    vg, vh = num.min_x(), den.min_x()
    g0 = BivarPoly(ext, {(i, 0): c for (i, j), c in num.terms.items() if j == vg})
    h0 = BivarPoly(ext, {(i, 0): c for (i, j), c in den.terms.items() if j == vh})
    return vg - vh, RatFunc(g0, h0)


def t_leading_data(f: RatFunc):
    """(t-adic valuation, leading coefficient in x) of a nonzero element."""
    if f.is_zero():
        raise ZeroValuationInputError("the zero element has no leading term")
    vg, vh = f.num.min_t(), f.den.min_t()
    F = f.field
    g0 = BivarPoly(F, {(0, j): c for (i, j), c in f.num.terms.items() if i == vg})
    h0 = BivarPoly(F, {(0, j): c for (i, j), c in f.den.terms.items() if i == vh})
    return vg - vh, RatFunc(g0, h0)


# -- expansion ---------------------------------------------------------------------


def expand_at_place(f: RatFunc, place: Place, precision=DEFAULT_PRECISION) -> TruncSeries:
    """Laurent-type expansion of f in local coordinates at the place.

    The denominator must have unit t-content (no positive power of t divides
    it); place-uniformizer poles are fine and give Laurent terms in s.  At
    the Gauss place the result has exact rational-function coefficients and
    only the t-window applies.
    """
    nt, ns = precision
    if nt < 1 or (ns is not None and ns < 1):
        raise PrecisionError("precision bounds must be positive")
    if place.kind == GAUSS:
        return _expand_gauss(f, nt)
    num, den, ext = localize(f, place)
    domain = FieldCoeffs(ext)
    if f.is_zero():
        return TruncSeries.zero(domain, nt, ns)
    if den.min_t() > 0:
        raise NotExpandableError(
            "denominator is divisible by t; no expansion with nonnegative t-exponents"
        )
    b = den.min_x()
    if b > 0:
        den = BivarPoly(ext, {(i, j - b): c for (i, j), c in den.terms.items()})
    ns_eff = ns if ns is None else ns + max(0, b)
    dnum = TruncSeries.from_poly(domain, num)
    dden = TruncSeries.from_poly(domain, den)
    inv = dden.invert(nt, ns_eff)
    out = dnum * inv
    if b > 0:
        out = TruncSeries(
            domain,
            {(i, j - b): c for (i, j), c in out.terms.items()},
            out.prec_t,
            None if out.prec_s is None else out.prec_s - b,
        )
    return out.truncate(nt, ns)


def _expand_gauss(f: RatFunc, nt: int) -> TruncSeries:
    F = f.field
    domain = RationalCoeffs(F)
    if f.is_zero():
        return TruncSeries.zero(domain, nt, None)
    vg, vh = f.num.min_t(), f.den.min_t()
    shift = vg - vh

    def tlayers(poly: BivarPoly, v0: int) -> dict:
        out: dict[int, RatFunc] = {}
        for i, slice_x in poly.t_slices().items():
            out[i - v0] = RatFunc.from_poly(BivarPoly(F, {(0, j): c for j, c in slice_x.items()}))
        return out

    gl = tlayers(f.num, vg)
    hl = tlayers(f.den, vh)
    width = nt - shift if shift < 0 else nt
    num_series = TruncSeries(domain, {(i, 0): c for i, c in gl.items()}, None, None)
    den_series = TruncSeries(domain, {(i, 0): c for i, c in hl.items()}, None, None)
    inv = den_series.invert(max(1, width), None)
    out = num_series * inv
    terms = {(i + shift, j): c for (i, j), c in out.terms.items()}
    return TruncSeries(domain, terms, nt, None)
