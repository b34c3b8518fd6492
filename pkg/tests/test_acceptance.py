"""Acceptance criteria 1-9, each run at its stated size and time budget.

Every criterion prints one ``PASS``/``FAIL`` line; pytest also repeats them in the
terminal summary.  ``python tests/test_acceptance.py`` runs the suite standalone.
"""
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from disctower.discriminants import (  # noqa: E402
    UniOverJets,
    classical_discriminant_oracle,
    count_distinct_roots,
    gdisc_from_roots_oracle,
    generalized_discriminants,
    poly_from_roots,
)
from disctower.hensel import DerivativeNotUnit, hensel_lift_branches, lift_branch  # noqa: E402
from disctower.kernel import Jet, LinearChange, VarContext, random_jet  # noqa: E402
from disctower.numeric import SampleRegion, root_count_profile  # noqa: E402
from disctower.serialize import KINDS, dumps, kind_of, loads  # noqa: E402
from disctower.tower import (  # noqa: E402
    InconclusivePrecision,
    TowerConfig,
    build_tower_function,
    build_tower_set,
    towers_agree,
)
from disctower.verify import verify_normal_system  # noqa: E402
from disctower.weierstrass import regularity_order, weierstrass_prepare  # noqa: E402

from conftest import regular_jet  # noqa: E402

RESULTS: dict = {}

T = VarContext(("T",))
XY = VarContext(("x1", "x2"))


def _record(k, title, ok, detail, elapsed, budget=None):
    within = budget is None or elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    clock = f"{elapsed:.2f}s" + (f" / {budget}s" if budget else "")
    line = f"{status} criterion {k}: {title} ({detail}; {clock})"
    RESULTS[k] = line
    print(line)
    return ok and within


# ----------------------------------------------------------------- 1

def criterion_1():
    rng = random.Random(101)
    t0 = time.perf_counter()
    bad = []
    for case in range(200):
        pool = list({Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3])) for _ in range(4)})
        roots = []
        for r in rng.sample(pool, rng.randint(1, len(pool))):
            roots += [r] * rng.randint(1, 3)
        roots = roots[:6]
        f = poly_from_roots(T, 0, roots)
        vec = generalized_discriminants(f)
        for j in range(1, len(roots) + 1):
            if vec[j] != Jet.constant(T, gdisc_from_roots_oracle(roots, j)):
                bad.append((case, j))
        if count_distinct_roots(f).count != len(set(roots)):
            bad.append((case, "count"))
    elapsed = time.perf_counter() - t0
    return _record(1, "generalized discriminants vs root oracle", not bad,
                   f"200 polynomials, {len(bad)} mismatches", elapsed, 10)


# ----------------------------------------------------------------- 2

def criterion_2():
    rng = random.Random(202)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(100):
        n = rng.randint(1, 3)
        ctx = VarContext(tuple(f"x{k + 1}" for k in range(n)))
        prec = rng.randint(2, 8)
        p = rng.randint(1, 5)
        tail = tuple(random_jet(rng, ctx, prec, density=0.3, max_degree=4).restrict_zero([n - 1])
                     for _ in range(p))
        f = UniOverJets.monic(n - 1, tail)
        if generalized_discriminants(f)[1] != classical_discriminant_oracle(f):
            bad += 1
    elapsed = time.perf_counter() - t0
    return _record(2, "Delta_1 vs Sylvester-resultant oracle", not bad,
                   f"100 polynomials, {bad} mismatches", elapsed, 30)


# ----------------------------------------------------------------- 3

def criterion_3():
    rng = random.Random(303)
    t0 = time.perf_counter()
    bad = []
    for case in range(100):
        n = rng.randint(2, 3)
        prec = rng.randint(3, 10)
        p = rng.randint(1, min(4, prec - 1))
        f = regular_jet(rng, n, prec + 5, p)
        coarse = weierstrass_prepare(f.truncate(prec), n - 1)
        fine = weierstrass_prepare(f, n - 1)
        w = coarse.weierstrass
        if (coarse.unit * w.to_jet() - f.truncate(prec)).order() < coarse.precision:
            bad.append((case, "identity"))
        if not (w.degree == p == regularity_order(f, n - 1) and w.is_monic()):
            bad.append((case, "degree"))
        if not (fine.unit.agrees_with(coarse.unit, coarse.unit.prec)
                and fine.weierstrass.to_jet().agrees_with(w.to_jet(), w.to_jet().prec)):
            bad.append((case, "stability"))
    elapsed = time.perf_counter() - t0
    return _record(3, "Weierstrass identity, degree law, N vs N+5", not bad,
                   f"100 jets, {len(bad)} failures", elapsed, 60)


# ----------------------------------------------------------------- 4

def criterion_4():
    x1, x2 = Jet.variable(XY, 0), Jet.variable(XY, 1)
    t0 = time.perf_counter()
    ns = build_tower_set([x2 ** 2 - x1 ** 3], TowerConfig(precision=10))
    report = verify_normal_system(ns)
    got = (ns.level(2).degree, ns.level(1).disc_index, ns.level(1).f.to_jet() == x1 ** 3,
           ns.base_index, str(ns.base_unit))
    ok = got == (2, 1, True, 3, "3") and report.all_pass
    elapsed = time.perf_counter() - t0
    return _record(4, "cusp tower-set", ok,
                   f"(p2, j2, f1 = x1^3, j1, u0) = {got}, verify all_pass={report.all_pass}",
                   elapsed)


# ----------------------------------------------------------------- 5

def criterion_5():
    x2 = Jet.variable(XY, 1)
    t0 = time.perf_counter()
    ns = build_tower_function([x2 ** 2], TowerConfig(precision=10))
    report = verify_normal_system(ns)
    got = (ns.level(1).q, ns.level(1).f.is_one(), str(ns.base_unit), ns.base_q)
    ok = got == (1, True, "4", 1) and report.all_pass
    elapsed = time.perf_counter() - t0
    return _record(5, "function germ x2^2", ok,
                   f"(q1, f1 = 1, u0, q0) = {got}, verify all_pass={report.all_pass}", elapsed)


# ----------------------------------------------------------------- 6

def five_line_family(precision):
    ctx = VarContext(("t", "x", "y"), "t")
    t, x, y = (Jet.variable(ctx, k) for k in range(3))
    # the polynomial 4 + t + t^2 stands in for the series gamma(t), gamma(0) = 4
    gamma = 4 + t + t ** 2
    f = x * y * (y - x) * (y - (3 + t) * x) * (y - gamma * x)
    return build_tower_set([f], TowerConfig(precision=precision))


def criterion_6():
    t0 = time.perf_counter()
    coarse = five_line_family(12)
    fine = five_line_family(17)
    report = verify_normal_system(coarse)
    stable = towers_agree(coarse, fine)
    ok = report.all_pass and stable
    js = {lv.index + 1: lv.disc_index for lv in coarse.levels if lv.disc_index is not None}
    elapsed = time.perf_counter() - t0
    return _record(6, "five-line family at N=12", ok,
                   f"j={js}, base j={coarse.base_index}, u0={coarse.base_unit}, "
                   f"verify all_pass={report.all_pass}, stable vs N=17: {stable}", elapsed, 300)


# ----------------------------------------------------------------- 7

def _binomial_half(k):
    c = Fraction(1)
    for i in range(k):
        c *= (Fraction(1, 2) - i) / (i + 1)
    return c


def criterion_7():
    x1, x2 = Jet.variable(XY, 0), Jet.variable(XY, 1)
    t0 = time.perf_counter()
    f = UniOverJets.from_jet(x1 ** 2 - x2 ** 2 - x2 ** 3, 0)
    g = hensel_lift_branches(f, [x2], 9).branches[0]
    # sqrt(x2^2 + x2^3) = x2 * (1 + x2)^(1/2)
    oracle = Jet(XY, {(0, k + 1): _binomial_half(k) for k in range(8)}, 9)
    matches = g.agrees_with(oracle, 9)
    try:
        lift_branch(UniOverJets.from_jet((x1 - x2) ** 2, 0), x2, 8)
        raised = False
    except DerivativeNotUnit:
        raised = True
    elapsed = time.perf_counter() - t0
    return _record(7, "Hensel binomial branch and double root", matches and raised,
                   f"branch matches through degree 8: {matches}, DerivativeNotUnit: {raised}",
                   elapsed)


# ----------------------------------------------------------------- 8

def criterion_8():
    rng = random.Random(808)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(50):
        # distinct roots on a 1/1000 lattice are at least 1e-3 apart
        pool = list({Fraction(rng.randint(-3000, 3000), 1000) for _ in range(5)})
        roots = []
        for r in rng.sample(pool, rng.randint(1, len(pool))):
            roots += [r] * rng.randint(1, 2)
        f = poly_from_roots(T, 0, roots[:6])
        prof = root_count_profile(f, SampleRegion({}))
        if prof.counts != [count_distinct_roots(f).count]:
            bad += 1
    tx = VarContext(("t", "x"), "t")
    t, x = Jet.variable(tx, 0), Jet.variable(tx, 1)
    prof = root_count_profile(UniOverJets.from_jet(x ** 2 - t, 1),
                              SampleRegion({"t": 1.0}, grid=5))
    elapsed = time.perf_counter() - t0
    ok = not bad and not prof.constant
    return _record(8, "numeric/symbolic agreement", ok,
                   f"50 polynomials, {bad} mismatches; x^2 - t counts {prof.counts}", elapsed)


# ----------------------------------------------------------------- 9

def _random_poly(rng, ctx=XY):
    p = rng.randint(1, 4)
    tail = tuple(random_jet(rng, ctx, rng.randint(3, 6), density=0.3, min_degree=1)
                 .restrict_zero([ctx.arity - 1]) for _ in range(p))
    return UniOverJets.monic(ctx.arity - 1, tail)


def _random_tower(rng, function=False):
    """Set towers over (x1, x2); function germs are in (x2, x3), so over three variables."""
    ctx = VarContext(("x1", "x2", "x3")) if function else XY
    a, b = Jet.variable(ctx, ctx.arity - 2), Jet.variable(ctx, ctx.arity - 1)
    while True:
        g = Jet.constant(ctx, 1)
        for _ in range(rng.randint(1, 3 - function)):
            g = g * (b - rng.randint(-3, 3) * a ** rng.randint(1, 3))
        try:
            build = build_tower_function if function else build_tower_set
            return build([g], TowerConfig(precision=6))
        except InconclusivePrecision:
            continue


def _random_value(kind, rng):
    x1, x2 = Jet.variable(XY, 0), Jet.variable(XY, 1)
    if kind == "rational":
        return Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))
    if kind == "jet":
        return random_jet(rng, XY, rng.randint(1, 8), density=0.4)
    if kind == "poly":
        return _random_poly(rng)
    if kind == "gdisc":
        return generalized_discriminants(_random_poly(rng))
    if kind == "distinct-roots":
        return count_distinct_roots(_random_poly(rng))
    if kind == "change":
        a, b = rng.randint(-3, 3), rng.randint(1, 3)
        return LinearChange((0, 1), ((b, Fraction(a, b)), (0, 1)))
    if kind == "preparation":
        return weierstrass_prepare(regular_jet(rng, 2, rng.randint(4, 8), rng.randint(1, 3)), 1)
    if kind == "tower":
        return _random_tower(rng, function=rng.random() < 0.5)
    if kind == "branches":
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        f = UniOverJets.from_jet(x1 ** 2 - x2 ** 2 - c * x2 ** 3, 0)
        return hensel_lift_branches(f, [x2, -x2], rng.randint(3, 8))
    if kind == "verification":
        return verify_normal_system(_random_tower(rng))
    if kind == "profile":
        tx = VarContext(("t", "x"), "t")
        t, x = Jet.variable(tx, 0), Jet.variable(tx, 1)
        a = rng.randint(-3, 3)
        f = UniOverJets.from_jet(x ** 2 - a * t * x - t ** rng.randint(1, 3), 1)
        return root_count_profile(f, SampleRegion({"t": rng.choice([0.5, 1.0])},
                                                  grid=rng.randint(1, 6)))
    raise KeyError(kind)


def criterion_9():
    rng = random.Random(909)
    t0 = time.perf_counter()
    bad = []
    for kind in KINDS:
        for _ in range(100):
            value = _random_value(kind, rng)
            ctx = getattr(value, "ctx", XY)
            if kind == "profile":
                ctx = VarContext(("t", "x"), "t")
            text = dumps(value, ctx, {"precision": 6})
            back, ctx2, cfg = loads(text)
            if kind_of(back) != kind or dumps(back, ctx2, cfg) != text:
                bad.append(kind)
    elapsed = time.perf_counter() - t0
    return _record(9, "serialization round trip", not bad,
                   f"{len(KINDS)} kinds x 100 values, {len(bad)} mismatches", elapsed)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 10)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
