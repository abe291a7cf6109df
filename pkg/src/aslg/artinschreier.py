"""Decision procedures for Z^p - Z = f over finite fields and completions.

Two constructive halves drive everything here:

 * if f lies in the maximal ideal of a complete local domain, the series
   -(f + f^p + f^{p^2} + ...) converges and is a root, so partial sums are
   root witnesses with an exactly-bounded tail;
 * over a DVR fraction field, u^p - u has valuation either >= 0 or p times
   a negative integer, so any f of negative valuation prime to p is
   unsolvable outright, and negative valuations divisible by p are peeled
   off by subtracting p-th parts of the leading term until the residue
   field decides.

All verdicts carry replayable payloads: a SOLVABLE decision holds an exact
rational partial sum plus residual terms with declared valuation bounds; an
UNSOLVABLE decision holds the obstruction; every reduction is transcripted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .finitefield import FieldElement, FiniteField, fq_trace
from .poly import BivarPoly
from .ratfunc import RatFunc
from .places import FINITE, GAUSS, INFINITY, DvrView, Place
from .series import (
    DEFAULT_PRECISION,
    TruncSeries,
    ZeroValuationInputError,
    expand_at_place,
    localize,
    maximal_ideal_membership,
    s_leading_data,
    t_leading_data,
    valuation_exact,
    IN_MAX_IDEAL,
)

SOLVABLE = "SOLVABLE"
UNSOLVABLE = "UNSOLVABLE"
UNKNOWN_AT_PRECISION = "UNKNOWN_AT_PRECISION"
UNKNOWN_RESIDUE = "UNKNOWN_RESIDUE"
DEFERRED = "DEFERRED"


class PreconditionError(ValueError):
    """An operation was called outside its stated precondition."""


# -- residual terms and root witnesses ---------------------------------------


@dataclass
class ResidualTerm:
    """An exact tail term together with its declared smallness bound.

    kinds: "t" (t-adic valuation >= bound), "s" (s-adic valuation at the
    place >= bound), "m-power" (equals base^{p^power} with base in the
    maximal ideal and p^power >= bound, hence inside (t^Nt, s^Ns)).
    """

    kind: str
    bound: int
    element: RatFunc
    base: RatFunc | None = None
    power: int | None = None

    def verify(self, place: Place | None) -> bool:
        if self.element.is_zero():
            return True
        if self.kind == "t":
            return t_leading_data(self.element)[0] >= self.bound
        if self.kind == "s":
            if place is None:
                return False
            return _s_val_local(self.element) >= self.bound
        if self.kind == "m-power":
            if place is None or self.base is None or self.power is None:
                return False
            if maximal_ideal_membership(self.base, place).status != IN_MAX_IDEAL:
                return False
            if self.element != self.base.frobenius_pow(self.power):
                return False
            return self.base.field.p**self.power >= self.bound
        return False


@dataclass
class RootWitness:
    """partial_sum is an exact rational function with
    (partial_sum^p - partial_sum) + sum(residuals) == f, each residual term
    small beyond the working precision."""

    partial_sum: RatFunc
    residuals: list[ResidualTerm]
    localized: bool = False  # True when expressed in local (t, s) coordinates

    def residual_sum(self) -> RatFunc:
        out = RatFunc.zero(self.partial_sum.field)
        for r in self.residuals:
            out = out + r.element
        return out


def verify_root_witness(f: RatFunc, witness: RootWitness, place: Place | None) -> bool:
    """Independent recheck: exact identity plus every residual bound."""
    lhs = witness.partial_sum.artin_schreier_image() + witness.residual_sum()
    if lhs != f:
        return False
    return all(r.verify(place) for r in witness.residuals)


@dataclass
class ReductionStep:
    valuation: int
    root_term: RatFunc  # the subtracted p-th part
    after: RatFunc

    def to_payload(self):
        return {
            "valuation": self.valuation,
            "root_term": self.root_term.render(var_x="s"),
            "after": self.after.render(var_x="s"),
        }


@dataclass
class ReductionTranscript:
    steps: list[ReductionStep] = dc_field(default_factory=list)

    def replay(self, start: RatFunc, axis_val) -> bool:
        """Re-run every substitution from `start`; axis_val computes the
        valuation the transcript claims at each step."""
        cur = start
        for step in self.steps:
            if cur.is_zero() or axis_val(cur) != step.valuation:
                return False
            nxt = cur - step.root_term.artin_schreier_image()
            if nxt != step.after:
                return False
            cur = nxt
        return True

    def valuations_strictly_increase(self) -> bool:
        vals = [s.valuation for s in self.steps]
        return all(a < b for a, b in zip(vals, vals[1:]))


@dataclass
class ASDecision:
    verdict: str
    witness: RootWitness | None = None
    finite_roots: tuple[FieldElement, ...] = ()
    obstruction: dict | None = None
    transcript: ReductionTranscript | None = None
    precision: tuple | None = None
    notes: list[str] = dc_field(default_factory=list)

    def is_solvable(self) -> bool:
        return self.verdict == SOLVABLE


# -- finite-field base case ----------------------------------------------------


def as_solvable_finite_field(c: FieldElement) -> ASDecision:
    """Decide z^p - z = c over F_q by the trace criterion, with roots found
    by exhaustive search (q is small here by construction)."""
    F = c.field
    tr = fq_trace(c)
    roots = tuple(
        FieldElement(F, z)
        for z in range(F.q)
        if F.sub(F.frobenius(z, 1), z) == c.val
    )
    if tr.val == 0:
        assert len(roots) == F.p, "trace zero must give exactly p roots"
        return ASDecision(SOLVABLE, finite_roots=roots)
    assert not roots
    return ASDecision(
        UNSOLVABLE,
        obstruction={
            "kind": "residue-trace",
            "residue": F.render(c.val),
            "trace": tr.val,
        },
    )


# -- the constructive root series -----------------------------------------------


def partial_sum_identity_check(f: RatFunc, I: int) -> bool:
    """Exact telescoping: with u = -(f + f^p + ... + f^{p^{I-1}}),
    u^p - u = f - f^{p^I}, in plain rational-function arithmetic."""
    if I < 0:
        raise PreconditionError("partial sum length must be >= 0")
    u = root_partial_sum(f, I)
    return u.artin_schreier_image() == f - f.frobenius_pow(I)


def root_partial_sum(f: RatFunc, I: int) -> RatFunc:
    out = RatFunc.zero(f.field)
    for i in range(I):
        out = out + f.frobenius_pow(i)
    return -out


def _sum_length_for(vmin: int, target: int, p: int) -> int:
    """Least I with p^I * vmin >= target."""
    I = 0
    while p**I * vmin < target:
        I += 1
    return I


def root_witness_in_m(f: RatFunc, place: Place, precision=DEFAULT_PRECISION) -> RootWitness:
    """Root witness for f in the maximal ideal at the place (the series root,
    frozen as a partial sum with a tail bounded inside the precision ideal)."""
    nt, ns = precision
    if f.is_zero():
        return RootWitness(RatFunc.zero(f.field), [])
    membership = maximal_ideal_membership(f, place)
    if membership.status != IN_MAX_IDEAL:
        raise PreconditionError(
            f"{f.render()} is not in the maximal ideal at {place.label()}; "
            "use the translation or reduction path"
        )
    p = f.field.p
    if place.kind == GAUSS:
        v = valuation_exact(f, place)
        I = _sum_length_for(v, nt, p)
        tail = ResidualTerm("t", nt, f.frobenius_pow(I), base=f, power=I)
    else:
        I = _sum_length_for(1, nt + ns - 1, p)
        tail = ResidualTerm("m-power", nt + ns - 1, f.frobenius_pow(I), base=f, power=I)
    return RootWitness(root_partial_sum(f, I), [tail])


def as_root_series(f: RatFunc, place: Place, precision=DEFAULT_PRECISION) -> TruncSeries:
    """The root series expanded at the place: u with u^p - u = f modulo the
    precision ideal.  Requires f in the maximal ideal there."""
    witness = root_witness_in_m(f, place, precision)
    return expand_at_place(witness.partial_sum, place, precision)


# -- valuation obstruction -------------------------------------------------------


def _valuation_obstruction(v: int) -> dict:
    return {
        "kind": "valuation",
        "valuation": v,
        "argument": "valuation-minus-one" if v == -1 else "extended-valuation-argument",
    }


def as_unsolvable_valuation(f: RatFunc, place: Place) -> ASDecision:
    """The negative-valuation obstruction at a DVR: if v(f) < 0 and p does
    not divide v(f), no u can satisfy u^p - u = f in the completion."""
    v = valuation_exact(f, place)
    if v >= 0:
        raise PreconditionError(f"valuation {v} is nonnegative; no obstruction applies")
    if v % f.field.p:
        return ASDecision(UNSOLVABLE, obstruction=_valuation_obstruction(v))
    return ASDecision(
        DEFERRED,
        notes=[f"valuation {v} divisible by p={f.field.p}; reduction required"],
    )


# -- full DVR decision -------------------------------------------------------------


def _s_val_local(f: RatFunc) -> int:
    """s-adic valuation of a localized element (s stored in the x slot)."""
    return f.num.min_x() - f.den.min_x()


def _s_lead_local(f: RatFunc):
    ext = f.field
    vg, vh = f.num.min_x(), f.den.min_x()
    g0 = BivarPoly(ext, {(i, 0): c for (i, j), c in f.num.terms.items() if j == vg})
    h0 = BivarPoly(ext, {(i, 0): c for (i, j), c in f.den.terms.items() if j == vh})
    return vg - vh, RatFunc(g0, h0)


def _t_residue_constant(f: RatFunc) -> int:
    """Residue code of a t-only element of valuation 0."""
    v, c = t_leading_data(f)
    assert v == 0 and c.is_constant()
    return c.constant_code()


def _reduce_along_axis(f: RatFunc, axis: str, precision_main: int, transcript: ReductionTranscript):
    """Shared reduction loop.  Returns (terminal f, accumulated root, verdict)
    where verdict is None when reduction succeeded down to valuation >= 0."""
    p = f.field.p
    lead = _s_lead_local if axis == "s" else t_leading_data
    acc = RatFunc.zero(f.field)
    while not f.is_zero():
        v, c = lead(f)
        if v >= 0:
            break
        if v % p:
            return f, acc, ASDecision(
                UNSOLVABLE,
                obstruction=_valuation_obstruction(v),
                transcript=transcript,
            )
        if not c.is_pth_power():
            return f, acc, ASDecision(
                UNSOLVABLE,
                obstruction={
                    "kind": "leading-coefficient-not-a-p-th-power",
                    "valuation": v,
                    "coefficient": c.render(),
                },
                transcript=transcript,
            )
        m = -v // p
        if axis == "s":
            mono = RatFunc(
                BivarPoly.const(f.field, 1), BivarPoly.monomial(f.field, 1, 0, m)
            )
        else:
            mono = RatFunc(
                BivarPoly.const(f.field, 1), BivarPoly.monomial(f.field, 1, m, 0)
            )
        r = c.pth_root() * mono
        nxt = f - r.artin_schreier_image()
        transcript.steps.append(ReductionStep(v, r, nxt))
        acc = acc + r
        f = nxt
    return f, acc, None


def _series_tail_witness(f: RatFunc, axis: str, vmin: int, target: int) -> tuple[RatFunc, ResidualTerm]:
    I = _sum_length_for(vmin, target, f.field.p)
    return root_partial_sum(f, I), ResidualTerm(axis, target, f.frobenius_pow(I), base=f, power=I)


def _decide_t_adic(f: RatFunc, precision_t: int) -> ASDecision:
    """Decide over k'((t)) for an exact rational f(t) over the finite field k'."""
    transcript = ReductionTranscript()
    F = f.field
    if f.is_zero():
        return ASDecision(SOLVABLE, witness=RootWitness(RatFunc.zero(F), []), transcript=transcript)
    f, acc, bad = _reduce_along_axis(f, "t", precision_t, transcript)
    if bad is not None:
        return bad
    if f.is_zero():
        return ASDecision(SOLVABLE, witness=RootWitness(acc, []), transcript=transcript)
    v, c = t_leading_data(f)
    if v > 0:
        tail_sum, tail = _series_tail_witness(f, "t", v, precision_t)
        return ASDecision(
            SOLVABLE, witness=RootWitness(acc + tail_sum, [tail]), transcript=transcript
        )
    # valuation 0: the residue must solve over the finite bottom field
    code = _t_residue_constant(f)
    base = as_solvable_finite_field(FieldElement(F, code))
    if not base.is_solvable():
        return ASDecision(
            UNSOLVABLE,
            obstruction={"kind": "residue-trace", "residue": F.render(code), "trace": base.obstruction["trace"]},
            transcript=transcript,
        )
    zeta = RatFunc.from_poly(BivarPoly.const(F, base.finite_roots[0].val))
    rest = f - RatFunc.from_poly(BivarPoly.const(F, code))
    if rest.is_zero():
        return ASDecision(SOLVABLE, witness=RootWitness(acc + zeta, []), transcript=transcript)
    tail_sum, tail = _series_tail_witness(rest, "t", t_leading_data(rest)[0], precision_t)
    return ASDecision(
        SOLVABLE,
        witness=RootWitness(acc + zeta + tail_sum, [tail]),
        transcript=transcript,
    )


def _decide_gauss(f: RatFunc, precision_t: int) -> ASDecision:
    transcript = ReductionTranscript()
    if f.is_zero():
        return ASDecision(SOLVABLE, witness=RootWitness(RatFunc.zero(f.field), []), transcript=transcript)
    f, acc, bad = _reduce_along_axis(f, "t", precision_t, transcript)
    if bad is not None:
        return bad
    if f.is_zero():
        return ASDecision(SOLVABLE, witness=RootWitness(acc, []), transcript=transcript)
    v, c = t_leading_data(f)
    if v > 0:
        tail_sum, tail = _series_tail_witness(f, "t", v, precision_t)
        return ASDecision(
            SOLVABLE, witness=RootWitness(acc + tail_sum, [tail]), transcript=transcript
        )
    return ASDecision(
        UNKNOWN_RESIDUE,
        notes=[
            "t-adic valuation 0 at the Gauss place: solvability over the "
            "rational residue field F_q(x) is a global problem and is not decided"
        ],
        transcript=transcript,
    )


def _decide_s_adic(f_loc: RatFunc, precision) -> ASDecision:
    """Decide over k'((t))((s)) for an exact localized element."""
    nt, ns = precision
    transcript = ReductionTranscript()
    F = f_loc.field
    if f_loc.is_zero():
        return ASDecision(SOLVABLE, witness=RootWitness(RatFunc.zero(F), [], localized=True), transcript=transcript)
    f, acc, bad = _reduce_along_axis(f_loc, "s", ns, transcript)
    if bad is not None:
        return bad
    if f.is_zero():
        return ASDecision(SOLVABLE, witness=RootWitness(acc, [], localized=True), transcript=transcript)
    v, c = _s_lead_local(f)
    if v > 0:
        tail_sum, tail = _series_tail_witness(f, "s", v, ns)
        return ASDecision(
            SOLVABLE,
            witness=RootWitness(acc + tail_sum, [tail], localized=True),
            transcript=transcript,
        )
    # valuation 0: decide the residue r(t) over k'((t)) and lift
    residue = c  # t-only rational function over k'
    sub = _decide_t_adic(residue, nt)
    if sub.verdict != SOLVABLE:
        out = ASDecision(
            sub.verdict,
            obstruction={"kind": "residue", "detail": sub.obstruction},
            transcript=transcript,
            notes=["obstruction lives in the residue field k'((t))"] + sub.notes,
        )
        return out
    w = sub.witness.partial_sum
    residue_tail = residue - w.artin_schreier_image()  # == sum of sub's residuals
    a = f - residue
    residuals = [ResidualTerm("t", nt, residue_tail)]
    total = acc + w
    if not a.is_zero():
        tail_sum, tail = _series_tail_witness(a, "s", _s_val_local(a), ns)
        total = total + tail_sum
        residuals.append(tail)
    return ASDecision(
        SOLVABLE,
        witness=RootWitness(total, [r for r in residuals if not r.element.is_zero()], localized=True),
        transcript=transcript,
    )


def as_decide_dvr(f: RatFunc, where, precision=DEFAULT_PRECISION) -> ASDecision:
    """Complete decision over the DVR completion designated by a Place or a
    DvrView.  f must be an exact rational function (possibly in localized
    coordinates when a t-adic view is passed)."""
    nt, ns = precision
    if isinstance(where, DvrView):
        if where.axis == "t" and where.residue_kind == "finite":
            out = _decide_t_adic(f, nt)
        elif where.residue_kind == "rational":
            out = _decide_gauss(f, nt)
        else:
            if where.place is None:
                raise PreconditionError("s-adic view requires its place for localization")
            return as_decide_dvr(f, where.place, precision)
        out.precision = precision
        return out
    place: Place = where
    if place.kind == GAUSS:
        out = _decide_gauss(f, nt)
        out.precision = precision
        return out
    num, den, ext = localize(f, place)
    f_loc = RatFunc(num, den)
    out = _decide_s_adic(f_loc, precision)
    out.precision = precision
    return out
