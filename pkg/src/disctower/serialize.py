"""Canonical JSON for every value kind; equal values give identical bytes."""
from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .discriminants import DistinctRootReport, GDiscVector, UniOverJets
from .hensel import BranchSolution
from .kernel import Jet, LinearChange, VarContext, monomial_key
from .numeric import ProfileSample, RootProfile
from .tower import NormalSystem, TowerLevel
from .verify import ReportEntry, VerificationReport
from .weierstrass import PreparationResult


class FormatError(ValueError):
    pass


def rational_to_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def rational_from_str(s: str) -> Fraction:
    if not isinstance(s, str) or s.count("/") != 1:
        raise FormatError(f"rational must be an 'n/d' string, got {s!r}")
    num, den = s.split("/")
    value = Fraction(int(num), int(den))
    if rational_to_str(value) != s:
        raise FormatError(f"rational {s!r} is not in lowest terms")
    return value


def context_to_data(ctx: VarContext) -> dict:
    return {"vars": list(ctx.names), "param": ctx.param}


def context_from_data(d) -> VarContext:
    return VarContext(tuple(d["vars"]), d.get("param"))


# ------------------------------------------------------------------ value kinds

def jet_to_data(a: Jet) -> dict:
    terms = [[list(e), rational_to_str(c)]
             for e, c in sorted(a.terms.items(), key=lambda t: monomial_key(t[0]))]
    return {"precision": "exact" if a.prec is None else a.prec, "terms": terms}


def jet_from_data(d, ctx: VarContext) -> Jet:
    prec = d["precision"]
    prec = None if prec == "exact" else int(prec)
    terms = {}
    for exps, c in d["terms"]:
        e = tuple(int(k) for k in exps)
        if len(e) != ctx.arity:
            raise FormatError(f"monomial {exps} does not match {ctx.arity} variables")
        terms[e] = rational_from_str(c)
    return Jet(ctx, terms, prec)


def poly_to_data(f: UniOverJets) -> dict:
    return {"var": f.var, "coeffs": [jet_to_data(c) for c in f.coeffs]}


def poly_from_data(d, ctx) -> UniOverJets:
    return UniOverJets(int(d["var"]), tuple(jet_from_data(c, ctx) for c in d["coeffs"]))


def change_to_data(m: LinearChange) -> dict:
    return {"block": list(m.block),
            "matrix": [[rational_to_str(x) for x in row] for row in m.matrix]}


def change_from_data(d) -> LinearChange:
    return LinearChange(tuple(d["block"]),
                        tuple(tuple(rational_from_str(x) for x in row) for row in d["matrix"]))


def _matrix_to_data(m):
    return [[rational_to_str(x) for x in row] for row in m]


def _matrix_from_data(d):
    return tuple(tuple(rational_from_str(x) for x in row) for row in d)


def level_to_data(lv: TowerLevel) -> dict:
    return {
        "index": lv.index,
        "f": poly_to_data(lv.f),
        "disc_index": lv.disc_index,
        "unit": jet_to_data(lv.unit),
        "q": lv.q,
        "change": change_to_data(lv.change),
        "exact_form": poly_to_data(lv.exact_form) if lv.exact_form is not None else None,
    }


def level_from_data(d, ctx) -> TowerLevel:
    ef = d.get("exact_form")
    return TowerLevel(
        int(d["index"]), poly_from_data(d["f"], ctx), d["disc_index"],
        jet_from_data(d["unit"], ctx), int(d["q"]), change_from_data(d["change"]),
        poly_from_data(ef, ctx) if ef is not None else None,
    )


def system_to_data(ns: NormalSystem) -> dict:
    return {
        "kind": ns.kind,
        "precision": ns.precision,
        "height_bound": ns.height_bound,
        "seed": ns.seed,
        "exact_input": ns.exact_input,
        "inputs": [jet_to_data(g) for g in ns.inputs],
        "splitting": [[jet_to_data(b) for b in bs] for bs in ns.splitting],
        "transform": _matrix_to_data(ns.transform),
        "levels": [level_to_data(lv) for lv in ns.levels],
        "base": {"j": ns.base_index, "u0": rational_to_str(ns.base_unit), "q0": ns.base_q},
    }


def system_from_data(d, ctx) -> NormalSystem:
    base = d["base"]
    return NormalSystem(
        kind=d["kind"], ctx=ctx, precision=int(d["precision"]),
        levels=tuple(level_from_data(x, ctx) for x in d["levels"]),
        base_index=int(base["j"]), base_unit=rational_from_str(base["u0"]), base_q=int(base["q0"]),
        inputs=tuple(jet_from_data(g, ctx) for g in d["inputs"]),
        transform=_matrix_from_data(d["transform"]),
        splitting=tuple(tuple(jet_from_data(b, ctx) for b in bs) for bs in d["splitting"]),
        exact_input=bool(d["exact_input"]), height_bound=int(d["height_bound"]), seed=d["seed"],
    )


def _prep_to_data(p: PreparationResult):
    return {"unit": jet_to_data(p.unit), "weierstrass": poly_to_data(p.weierstrass),
            "precision": "exact" if p.precision is None else p.precision}


def _prep_from_data(d, ctx):
    prec = None if d["precision"] == "exact" else int(d["precision"])
    return PreparationResult(jet_from_data(d["unit"], ctx), poly_from_data(d["weierstrass"], ctx), prec)


def _report_to_data(r: VerificationReport):
    return {"all_pass": r.all_pass,
            "entries": [{"condition": e.condition, "level": e.level, "status": e.status,
                         "detail": e.detail, "witness": e.witness} for e in r.entries]}


def _report_from_data(d, ctx):
    return VerificationReport(tuple(
        ReportEntry(e["condition"], e["level"], e["status"], e["detail"], e["witness"])
        for e in d["entries"]))


def _complex_to_data(z):
    return [float(z.real), float(z.imag)]


def _profile_to_data(p: RootProfile):
    return {"label": p.label, "rel_tol": p.rel_tol, "constant": p.constant,
            "samples": [{"point": [_complex_to_data(z) for z in s.point], "count": s.count,
                         "max_modulus": s.max_modulus, "escaped": s.escaped}
                        for s in p.samples]}


def _profile_from_data(d, ctx):
    samples = tuple(
        ProfileSample(tuple(complex(a, b) for a, b in s["point"]), int(s["count"]),
                      float(s["max_modulus"]), bool(s["escaped"]))
        for s in d["samples"])
    return RootProfile(samples, float(d["rel_tol"]), d["label"])


KINDS = {
    "rational": (lambda v: rational_to_str(v), lambda d, ctx: rational_from_str(d)),
    "jet": (jet_to_data, jet_from_data),
    "poly": (poly_to_data, poly_from_data),
    "gdisc": (lambda v: [jet_to_data(x) for x in v.entries],
              lambda d, ctx: GDiscVector(tuple(jet_from_data(x, ctx) for x in d))),
    "distinct-roots": (lambda v: {"status": v.status, "count": v.count, "index": v.index},
                       lambda d, ctx: DistinctRootReport(d["status"], d["count"], d["index"])),
    "change": (change_to_data, lambda d, ctx: change_from_data(d)),
    "preparation": (_prep_to_data, _prep_from_data),
    "tower": (system_to_data, system_from_data),
    "branches": (lambda v: {"precision": v.precision,
                            "branches": [jet_to_data(b) for b in v.branches]},
                 lambda d, ctx: BranchSolution(tuple(jet_from_data(b, ctx) for b in d["branches"]),
                                               int(d["precision"]))),
    "verification": (_report_to_data, _report_from_data),
    "profile": (_profile_to_data, _profile_from_data),
}


def kind_of(value) -> str:
    table = [
        (Fraction, "rational"), (Jet, "jet"), (UniOverJets, "poly"), (GDiscVector, "gdisc"),
        (DistinctRootReport, "distinct-roots"), (LinearChange, "change"),
        (PreparationResult, "preparation"), (NormalSystem, "tower"), (BranchSolution, "branches"),
        (VerificationReport, "verification"), (RootProfile, "profile"),
    ]
    for cls, name in table:
        if isinstance(value, cls):
            return name
    raise TypeError(f"no serialization for {type(value).__name__}")


def to_document(value, ctx: VarContext | None, config: dict | None = None) -> dict:
    kind = kind_of(value)
    return {
        "tool": "disctower",
        "version": __version__,
        "config": dict(sorted((config or {}).items())),
        "kind": kind,
        "context": context_to_data(ctx) if ctx is not None else None,
        "value": KINDS[kind][0](value),
    }


def dumps(value, ctx: VarContext | None = None, config: dict | None = None) -> str:
    return json.dumps(to_document(value, ctx, config), indent=1, ensure_ascii=True) + "\n"


def loads(text: str):
    """(value, context, config) from a document written by ``dumps``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    kind = doc.get("kind")
    if kind not in KINDS:
        raise FormatError(f"unknown value kind {kind!r}")
    ctx = context_from_data(doc["context"]) if doc.get("context") is not None else None
    return KINDS[kind][1](doc["value"], ctx), ctx, doc.get("config", {})
