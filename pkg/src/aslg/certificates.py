"""JSON-safe payloads for rational functions, places, witnesses and
decisions, plus reconstruction back from payloads.

Certificates are pure functions of their inputs, so replay means: rebuild
the inputs from the stored payload, recompute the certificate, and compare
structurally.  Any single-coefficient tamper therefore flips validity.
"""

from __future__ import annotations

from .finitefield import GF, FiniteField
from .poly import BivarPoly
from .places import FinitePoint, GaussPlace, Infinity, Place
from .ratfunc import RatFunc
from .artinschreier import ASDecision, ReductionStep, ReductionTranscript, ResidualTerm, RootWitness


def poly_payload(poly: BivarPoly) -> list:
    return [[i, j, c] for (i, j), c in sorted(poly.terms.items())]


def poly_from_payload(field: FiniteField, payload: list) -> BivarPoly:
    return BivarPoly(field, {(i, j): c for i, j, c in payload})


def ratfunc_payload(f: RatFunc) -> dict:
    return {"num": poly_payload(f.num), "den": poly_payload(f.den), "text": f.render()}


def ratfunc_from_payload(field: FiniteField, payload: dict) -> RatFunc:
    return RatFunc(
        poly_from_payload(field, payload["num"]),
        poly_from_payload(field, payload["den"]),
    )


def field_payload(field: FiniteField) -> dict:
    return {"p": field.p, "n": field.n, "modulus": list(field.modulus)}


def field_from_payload(payload: dict) -> FiniteField:
    return GF(payload["p"], payload["n"])


def place_payload(place: Place) -> dict:
    if place.kind == "finite":
        out = {"kind": "finite", "pi": poly_payload(place.pi), "text": place.label()}
        if place.degree > 1:
            ext, _, root = place.local_data()
            out["residue_degree"] = place.degree
            out["residue_root"] = ext.render(root)
        return out
    return {"kind": place.kind, "text": place.label()}


def place_from_payload(field: FiniteField, payload: dict) -> Place:
    kind = payload["kind"]
    if kind == "finite":
        return FinitePoint(poly_from_payload(field, payload["pi"]))
    if kind == "infinity":
        return Infinity(field)
    if kind == "gauss":
        return GaussPlace(field)
    raise ValueError(f"unknown place kind {kind!r}")


def residual_payload(r: ResidualTerm) -> dict:
    out = {"kind": r.kind, "bound": r.bound, "element": ratfunc_payload(r.element)}
    if r.base is not None:
        out["base"] = ratfunc_payload(r.base)
    if r.power is not None:
        out["power"] = r.power
    return out


def residual_from_payload(field: FiniteField, payload: dict) -> ResidualTerm:
    return ResidualTerm(
        payload["kind"],
        payload["bound"],
        ratfunc_from_payload(field, payload["element"]),
        base=ratfunc_from_payload(field, payload["base"]) if "base" in payload else None,
        power=payload.get("power"),
    )


def witness_payload(w: RootWitness) -> dict:
    return {
        "partial_sum": ratfunc_payload(w.partial_sum),
        "residuals": [residual_payload(r) for r in w.residuals],
        "localized": w.localized,
    }


def witness_from_payload(field: FiniteField, payload: dict) -> RootWitness:
    return RootWitness(
        ratfunc_from_payload(field, payload["partial_sum"]),
        [residual_from_payload(field, r) for r in payload["residuals"]],
        localized=payload["localized"],
    )


def transcript_payload(tr: ReductionTranscript | None) -> list:
    if tr is None:
        return []
    return [
        {
            "valuation": s.valuation,
            "root_term": ratfunc_payload(s.root_term),
            "after": ratfunc_payload(s.after),
        }
        for s in tr.steps
    ]


def transcript_from_payload(field: FiniteField, payload: list) -> ReductionTranscript:
    return ReductionTranscript(
        [
            ReductionStep(
                s["valuation"],
                ratfunc_from_payload(field, s["root_term"]),
                ratfunc_from_payload(field, s["after"]),
            )
            for s in payload
        ]
    )


def decision_payload(d: ASDecision) -> dict:
    out: dict = {"verdict": d.verdict}
    if d.witness is not None:
        out["witness"] = witness_payload(d.witness)
    if d.finite_roots:
        out["roots"] = [e.field.render(e.val) for e in d.finite_roots]
    if d.obstruction is not None:
        out["obstruction"] = d.obstruction
    if d.transcript is not None:
        out["transcript"] = transcript_payload(d.transcript)
    if d.precision is not None:
        out["precision"] = list(d.precision)
    if d.notes:
        out["notes"] = list(d.notes)
    return out
