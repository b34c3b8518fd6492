import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from disctower.kernel import Jet, VarContext, random_jet

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CTX2 = VarContext(("x1", "x2"))
CTX3 = VarContext(("x1", "x2", "x3"))

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def jets(draw, ctx=CTX2, prec=None, max_degree=4, min_degree=0, max_terms=6):
    """Jets with small rational coefficients; ``prec`` None draws exactness too."""
    n = ctx.arity
    exps = st.tuples(*[st.integers(0, max_degree)] * n).filter(
        lambda e: min_degree <= sum(e) <= max_degree)
    terms = draw(st.dictionaries(exps, rationals, max_size=max_terms))
    if prec is None:
        prec = draw(st.one_of(st.none(), st.integers(1, max_degree + 3)))
    return Jet(ctx, terms, prec)


def regular_jet(rng, n, prec, p):
    """Random jet in n variables, x_n-regular of order exactly p."""
    ctx = VarContext(tuple(f"x{k + 1}" for k in range(n)))
    i = n - 1
    big = random_jet(rng, ctx, prec, density=0.3, min_degree=1)
    terms = {e: c for e, c in big.terms.items()
             if not (all(e[k] == 0 for k in range(n) if k != i) and e[i] <= p)}
    e = [0] * n
    e[i] = p
    terms[tuple(e)] = Fraction(rng.choice([1, 2, -3]))
    return Jet(ctx, terms, prec)


@pytest.fixture
def x2vars():
    return Jet.variable(CTX2, 0), Jet.variable(CTX2, 1)


@pytest.fixture
def x3vars():
    return tuple(Jet.variable(CTX3, k) for k in range(3))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
