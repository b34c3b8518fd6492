"""Independent re-derivation of the conditions a normal system must satisfy."""
from __future__ import annotations

from dataclasses import dataclass

from .discriminants import (
    IndexOutOfRange,
    classify_entry,
    generalized_discriminants,
    scaled_discriminants,
)
from .kernel import Jet, jet_to_str, mat_mul, substitute_matrix
from .tower import FUNCTION, SET, NormalSystem, TowerLevel, input_product

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
NUMERIC_ONLY = "numeric-only"


@dataclass(frozen=True)
class ReportEntry:
    condition: str
    level: int | None
    status: str
    detail: str = ""
    witness: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    entries: tuple

    @property
    def symbolic(self):
        return [e for e in self.entries if e.status != NUMERIC_ONLY]

    @property
    def all_pass(self) -> bool:
        return all(e.status == PASS for e in self.symbolic)

    @property
    def failures(self):
        return [e for e in self.entries if e.status == FAIL]

    def statuses(self, condition: str):
        return [e.status for e in self.entries if e.condition == condition]


def _agree(a: Jet, b: Jet):
    """Compare at the common precision; returns (ok, witness)."""
    diff = a - b
    if diff.is_zero():
        return True, None
    return False, jet_to_str(diff)


def _disc_vector(lv: TowerLevel):
    """Vector used for zero/nonzero judgments: exact when an exact form is recorded."""
    if lv.exact_form is not None:
        return scaled_discriminants(lv.exact_form)
    return generalized_discriminants(lv.f)


def _check_level_shape(lv: TowerLevel, out: list):
    i = lv.index
    f = lv.f
    if not f.is_monic():
        out.append(ReportEntry("monic", i, FAIL, "leading coefficient is not 1",
                               jet_to_str(f.leading)))
    else:
        out.append(ReportEntry("monic", i, PASS))
    bad = [c for c in f.tail() if c.constant_term() != 0]
    if bad:
        out.append(ReportEntry("(1) coefficients vanish at origin", i, FAIL,
                               "a_{i-1,j}(0) != 0", jet_to_str(bad[0])))
    else:
        out.append(ReportEntry("(1) coefficients vanish at origin", i, PASS))
    late = [c for c in f.coeffs if any(e[k] for e in c.terms for k in range(i - 1, f.ctx.arity))]
    if f.var != i - 1 or late:
        out.append(ReportEntry("variables", i, FAIL, "f_i must be a polynomial in x_i over x^{i-1}",
                               jet_to_str(late[0]) if late else None))
    else:
        out.append(ReportEntry("variables", i, PASS))
    if lv.unit.constant_term() == 0:
        out.append(ReportEntry("unit", i, FAIL, "u_i(0) = 0", jet_to_str(lv.unit)))
    else:
        out.append(ReportEntry("unit", i, PASS))
    if f.is_one() or f.degree >= 1 and not bad:
        out.append(ReportEntry("(6) F_i(0) = 0 or F_i = 1", i, PASS))
    else:
        out.append(ReportEntry("(6) F_i(0) = 0 or F_i = 1", i, FAIL))
    if lv.exact_form is not None:
        ef = lv.exact_form
        ok = ef.leading.constant_term() != 0 and ef.exact and ef.degree == f.degree
        if ok:
            ok, wit = _agree(ef.to_jet(), ef.leading * f.to_jet())
        else:
            wit = None
        out.append(ReportEntry("exact form", i, PASS if ok else FAIL,
                               "exact form equals c * f_i with c a unit", wit))


def _check_vanishing(upper: TowerLevel, j: int, out: list, label: int):
    """Delta_k identically zero for k < j and provably nonzero at j."""
    try:
        vec = _disc_vector(upper)
        vec[j]
    except (IndexOutOfRange, ValueError) as exc:
        out.append(ReportEntry("discriminant index", label, FAIL, str(exc)))
        return False
    for k in range(1, j):
        kind = classify_entry(vec[k])
        status = {"zero": PASS, "ambiguous": INCONCLUSIVE, "nonzero": FAIL}[kind]
        out.append(ReportEntry("(2) vanishing below j", label, status, f"Delta_{k}",
                               jet_to_str(vec[k]) if status == FAIL else None))
    kind = classify_entry(vec[j])
    status = {"nonzero": PASS, "ambiguous": INCONCLUSIVE, "zero": FAIL}[kind]
    out.append(ReportEntry("(2) non-vanishing at j", label, status, f"Delta_{j}",
                           "0" if status == FAIL else None))
    return True


def _x1_power(ctx, q: int) -> Jet:
    return Jet.monomial(ctx, (q,) + (0,) * (ctx.arity - 1))


def _check_identity(upper: TowerLevel, lv: TowerLevel, out: list):
    """Delta_{i+1, j}(a_i) = u_i x_1^q f_i, recomputed from the monic f_{i+1}."""
    j = lv.disc_index
    try:
        d = generalized_discriminants(upper.f)[j]
    except (IndexOutOfRange, ValueError) as exc:
        out.append(ReportEntry("discriminant identity", lv.index, FAIL, str(exc)))
        return
    rhs = lv.unit * _x1_power(lv.f.ctx, lv.q) * lv.f.to_jet()
    ok, wit = _agree(d, rhs)
    out.append(ReportEntry("discriminant identity", lv.index, PASS if ok else FAIL,
                           f"Delta_{{{upper.index},{j}}} = u x1^q f", wit))


def _check_base(ns: NormalSystem, out: list):
    low = ns.levels[-1]
    if low.f.is_one():
        # levels below a trivial f_i are trivial as well
        ok = (ns.base_index == low.disc_index and ns.base_unit == low.unit.constant_term()
              and ns.base_q == low.q and ns.base_unit != 0)
        out.append(ReportEntry("(3) base", 0, PASS if ok else FAIL,
                               "base data matches the last level"))
        if ns.kind == FUNCTION:
            out.append(ReportEntry("(3') F_1 = 1", 1, PASS))
        return
    if ns.kind == FUNCTION:
        out.append(ReportEntry("(3') F_1 = 1", 1, FAIL, "f_1 is not 1"))
    if low.index != 1:
        out.append(ReportEntry("(3) base", 0, FAIL, "tower stops above level 1"))
        return
    if not _check_vanishing(low, ns.base_index, out, 0):
        return
    d = generalized_discriminants(low.f)[ns.base_index]
    ok = ns.base_unit != 0 and d.is_constant() and d.constant_term() == ns.base_unit \
        and ns.base_q == 0
    out.append(ReportEntry("(3) base", 0, PASS if ok else FAIL,
                           "Delta_{1,j_1}(a_0) is the constant u_0", None if ok else jet_to_str(d)))


def _check_top(ns: NormalSystem, out: list):
    top = ns.levels[0]
    n = ns.n
    if top.index != n:
        out.append(ReportEntry("reconstruction", n, FAIL, "first level must be level n"))
        return
    moved = substitute_matrix(input_product(ns), ns.transform)
    ok, wit = _agree(moved, top.unit * top.f.to_jet())
    out.append(ReportEntry("reconstruction", n, PASS if ok else FAIL,
                           "input product in new coordinates = u_n f_n", wit))
    m = None
    for lv in ns.levels:
        if lv.f.is_one():
            continue
        full = lv.change.full_matrix(n)
        m = full if m is None else mat_mul(m, full)
    ok = m is None or tuple(tuple(r) for r in m) == ns.transform
    out.append(ReportEntry("coordinate changes", None, PASS if ok else FAIL,
                           "recorded transform is the product of the level changes"))


def _check_extraction(lv: TowerLevel, out: list):
    g = lv.unit * lv.f.to_jet()
    ok = lv.q >= 0 and any(e[0] == 0 for e in g.terms)
    out.append(ReportEntry("(2') x_1 power maximal", lv.index, PASS if ok else FAIL))


def verify_normal_system(ns: NormalSystem) -> VerificationReport:
    out: list = []
    _check_top(ns, out)
    levels = ns.levels
    expected = list(range(ns.n, ns.n - len(levels), -1))
    if [lv.index for lv in levels] != expected:
        out.append(ReportEntry("level indices", None, FAIL, "levels must run n, n-1, ..."))
        return VerificationReport(tuple(out))
    for k, lv in enumerate(levels):
        _check_level_shape(lv, out)
        if ns.kind == SET and lv.q != 0:
            out.append(ReportEntry("(2') x_1 power maximal", lv.index, FAIL,
                                   "set towers never extract x_1"))
        if k == 0:
            continue
        upper = levels[k - 1]
        if lv.disc_index is None:
            out.append(ReportEntry("discriminant index", lv.index, FAIL, "missing j"))
            continue
        if _check_vanishing(upper, lv.disc_index, out, lv.index):
            _check_identity(upper, lv, out)
        if ns.kind == FUNCTION:
            _check_extraction(lv, out)
    _check_base(ns, out)
    for lv in levels:
        if not lv.f.is_one():
            out.append(ReportEntry("(4) polydisc domains", lv.index, NUMERIC_ONLY,
                                   "see root_count_profile"))
            out.append(ReportEntry("(5) roots inside eps_i", lv.index, NUMERIC_ONLY,
                                   "see root_count_profile"))
    return VerificationReport(tuple(out))
