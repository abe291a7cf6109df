"""Places of the projective line over F_q((t)) used for local decisions.

Three kinds: a finite closed point given by a monic irreducible pi(x) over
F_q (residue extension degree d = deg pi), the point at infinity (local
coordinate s = 1/x), and the Gauss place (the t-adic valuation, residue
field F_q(x)).

A finite point with d > 1 works over the residue extension F_{q^d} with a
fixed root of pi: the first root in the canonical element order.  That
choice is part of the place's identity and is recorded when serializing.
"""

from __future__ import annotations

from .finitefield import GF, FiniteField
from .poly import BivarPoly
from .ratfunc import RatFunc

FINITE = "finite"
INFINITY = "infinity"
GAUSS = "gauss"


class Place:
    kind: str
    field: FiniteField

    def local_field(self) -> FiniteField:
        raise NotImplementedError

    def label(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.label()


class FinitePoint(Place):
    kind = FINITE

    def __init__(self, pi: BivarPoly):
        if pi.deg_t() > 0 or pi.deg_x() < 1:
            raise ValueError("place polynomial must be a nonconstant polynomial in x")
        if pi.lead_coeff() != 1:
            raise ValueError("place polynomial must be monic")
        if not _is_irreducible_x(pi):
            raise ValueError(f"{pi.render()} is reducible over F_{pi.field.q}")
        self.pi = pi
        self.field = pi.field
        self.degree = pi.deg_x()
        self._local: tuple[FiniteField, list[int], int] | None = None

    def local_data(self):
        """(residue field F_{q^d}, embedding table F_q -> F_{q^d}, root code)."""
        if self._local is None:
            base = self.field
            ext = GF(base.p, base.n * self.degree)
            emb = base.embedding_codes(ext)
            root = None
            for z in range(ext.q):
                acc = 0
                for jj in range(self.degree, -1, -1):
                    acc = ext.add(ext.mul(acc, z), emb[self.pi.coeff(0, jj)])
                if acc == 0:
                    root = z
                    break
            assert root is not None
            self._local = (ext, emb, root)
        return self._local

    def local_field(self) -> FiniteField:
        return self.local_data()[0]

    def label(self) -> str:
        return f"pt:{self.pi.render(var_x='x')}"

    def __eq__(self, other):
        return isinstance(other, FinitePoint) and other.field is self.field and other.pi == self.pi

    def __hash__(self):
        return hash(("pt", self.pi))


class Infinity(Place):
    kind = INFINITY

    def __init__(self, field: FiniteField):
        self.field = field
        self.degree = 1

    def local_field(self) -> FiniteField:
        return self.field

    def label(self) -> str:
        return "inf"

    def __eq__(self, other):
        return isinstance(other, Infinity) and other.field is self.field

    def __hash__(self):
        return hash(("inf", id(self.field)))


class GaussPlace(Place):
    kind = GAUSS

    def __init__(self, field: FiniteField):
        self.field = field
        self.degree = 1

    def local_field(self) -> FiniteField:
        return self.field

    def label(self) -> str:
        return "gauss"

    def __eq__(self, other):
        return isinstance(other, GaussPlace) and other.field is self.field

    def __hash__(self):
        return hash(("gauss", id(self.field)))


def finite_point_at(field: FiniteField, *coeffs: int) -> FinitePoint:
    """Finite point x^d + c_{d-1} x^{d-1} + ... + c_0 from lower coefficients
    (constant term first).  Negative integers are reduced mod p; nonnegative
    ones are taken as element codes."""
    terms = {}
    for j, c in enumerate(coeffs):
        code = c % field.p if c < 0 else c
        if code >= field.q:
            raise ValueError(f"coefficient code {c} out of range for {field!r}")
        if code:
            terms[(0, j)] = code
    terms[(0, len(coeffs))] = 1
    return FinitePoint(BivarPoly(field, terms))


def _is_irreducible_x(pi: BivarPoly) -> bool:
    d = pi.deg_x()
    if d == 1:
        return True
    for cand in _monic_x_polys(pi.field, 1, d // 2):
        if _x_divides(pi, cand):
            return False
    return True


def _monic_x_polys(field: FiniteField, lo: int, hi: int):
    """Monic x-polynomials of degree lo..hi over F_q, degree then lex order."""
    for d in range(lo, hi + 1):
        for k in range(field.q**d):
            terms = {(0, d): 1}
            kk = k
            digits = []
            for _ in range(d):
                digits.append(kk % field.q)
                kk //= field.q
            # most significant digit is the x^{d-1} coefficient
            for j, c in enumerate(digits):
                if c:
                    terms[(0, j)] = c
            yield BivarPoly(field, terms)


def _x_divides(poly: BivarPoly, div: BivarPoly) -> bool:
    F = poly.field
    rem = {j: c for (_, j), c in poly.terms.items()}
    dd = div.deg_x()
    dcoef = {j: c for (_, j), c in div.terms.items()}
    inv = F.inv(dcoef[dd])
    while rem and max(rem) >= dd:
        top = max(rem)
        c = F.mul(rem[top], inv)
        for e, dc in dcoef.items():
            m = top - dd + e
            v = F.sub(rem.get(m, 0), F.mul(c, dc))
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return not rem


def enumerate_places(field: FiniteField, degree_bound: int) -> list[Place]:
    """All finite points of degree <= bound (by degree, then lexicographic
    coefficient order), then infinity, then the Gauss place."""
    if degree_bound < 1:
        raise ValueError("degree bound must be >= 1")
    places: list[Place] = []
    irreducibles: list[BivarPoly] = []
    for cand in _monic_x_polys(field, 1, degree_bound):
        half = cand.deg_x() // 2
        if any(p.deg_x() <= half and _x_divides(cand, p) for p in irreducibles):
            continue
        irreducibles.append(cand)
        places.append(FinitePoint(cand))
    places.append(Infinity(field))
    places.append(GaussPlace(field))
    return places


# -- DVR views ----------------------------------------------------------------
#
# A DvrView names a discrete valuation together with its residue tower:
#   axis "s" at a place: the completion k'((t))((s)), residue k'((t))
#   axis "t" over k':    the completion k'((t)), residue k' (finite bottom)
#   axis "t" at Gauss:   the completion with residue field F_q(x)
# Towers bottom out within depth 3 by construction.

RESIDUE_LAURENT = "laurent"
RESIDUE_FINITE = "finite"
RESIDUE_RATIONAL = "rational"

MAX_TOWER_DEPTH = 3


class DvrView:
    def __init__(
        self,
        axis: str,
        residue_kind: str,
        field: FiniteField,
        label: str,
        depth: int,
        place: "Place | None" = None,
    ):
        if depth > MAX_TOWER_DEPTH:
            raise ValueError("residue tower too deep")
        if axis not in ("s", "t"):
            raise ValueError(f"unknown uniformizer axis {axis!r}")
        self.axis = axis
        self.residue_kind = residue_kind
        self.field = field  # coefficient field of the elements handled here
        self.label = label
        self.depth = depth
        self.place = place

    def residue_view(self) -> "DvrView":
        if self.residue_kind != RESIDUE_LAURENT:
            raise ValueError("residue field is not itself a discrete valuation field")
        return DvrView("t", RESIDUE_FINITE, self.field, self.label + "/residue", self.depth + 1)

    def __repr__(self):
        return f"DvrView({self.axis}-adic, residue={self.residue_kind}, {self.label})"


def view_at_place(place: Place) -> DvrView:
    """The s-adic DVR view of the completion at a finite place or infinity."""
    if place.kind == GAUSS:
        return DvrView("t", RESIDUE_RATIONAL, place.field, place.label(), 1, place)
    ext = place.local_field()
    return DvrView("s", RESIDUE_LAURENT, ext, place.label(), 1, place)


def view_t_adic(field: FiniteField) -> DvrView:
    """The t-adic view of k'((t)) with finite residue field."""
    return DvrView("t", RESIDUE_FINITE, field, "t-adic", 1)
