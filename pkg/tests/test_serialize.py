import pytest
from hypothesis import given
from hypothesis import strategies as st

from disctower.discriminants import UniOverJets, count_distinct_roots, generalized_discriminants
from disctower.hensel import hensel_lift_branches
from disctower.kernel import LinearChange
from disctower.numeric import SampleRegion, root_count_profile
from disctower.serialize import FormatError, dumps, loads, rational_from_str
from disctower.tower import TowerConfig, build_tower_function, build_tower_set
from disctower.verify import verify_normal_system
from disctower.weierstrass import weierstrass_prepare

from conftest import CTX2, jets, rationals


def roundtrip(value, ctx=CTX2):
    text = dumps(value, ctx, {"precision": 8})
    back, ctx2, cfg = loads(text)
    assert dumps(back, ctx2, cfg) == text
    return back


@given(rationals)
def test_rational(c):
    assert roundtrip(c) == c


@given(jets())
def test_jet(a):
    assert roundtrip(a) == a


@given(st.lists(jets(min_degree=1), min_size=1, max_size=3))
def test_poly(tail):
    tail = [t.restrict_zero([1]) for t in tail]
    f = UniOverJets.monic(1, tail)
    assert roundtrip(f) == f
    assert roundtrip(generalized_discriminants(f)) == generalized_discriminants(f)
    assert roundtrip(count_distinct_roots(f)) == count_distinct_roots(f)


def test_other_kinds(x2vars):
    x1, x2 = x2vars
    roundtrip(LinearChange((0, 1), ((1, 2), (0, 1))))
    roundtrip(weierstrass_prepare((1 + x1) * (x2 ** 2 - x1), 1))
    cusp = build_tower_set([x2 ** 2 - x1 ** 3], TowerConfig(precision=8))
    assert roundtrip(cusp) == cusp
    fn = build_tower_function([x2 ** 2], TowerConfig(precision=8))
    assert roundtrip(fn) == fn
    roundtrip(verify_normal_system(cusp))
    roundtrip(hensel_lift_branches(UniOverJets.from_jet(x1 ** 2 - x2 ** 2 - x2 ** 3, 0), [x2], 8))
    prof = root_count_profile(UniOverJets.from_jet(x2 ** 2 - x1, 1), SampleRegion({"x1": 1.0}))
    assert roundtrip(prof) == prof


def test_canonical_bytes(x2vars):
    x1, x2 = x2vars
    a = x1 + x2 ** 2
    b = x2 ** 2 + x1
    assert dumps(a, CTX2) == dumps(b, CTX2)


def test_rejects_bad_input():
    with pytest.raises(FormatError):
        rational_from_str("2/4")
    with pytest.raises(FormatError):
        rational_from_str("3")
    with pytest.raises(FormatError):
        loads('{"kind": "nonsense"}')
