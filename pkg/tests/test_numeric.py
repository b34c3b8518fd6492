from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from disctower.discriminants import UniOverJets, count_distinct_roots, poly_from_roots
from disctower.kernel import Jet, VarContext
from disctower.numeric import (
    LeadingCoefficientZero,
    SampleRegion,
    cluster_roots,
    root_count_profile,
    univariate_roots,
)

T = VarContext(("T",))
TX = VarContext(("t", "x"), "t")


def test_simple_roots():
    r = np.sort_complex(univariate_roots([1, 0, -1]))
    assert np.allclose(r, [-1, 1], atol=1e-12)


def test_triple_zero():
    assert np.allclose(univariate_roots([1, 0, 0, 0]), 0)


def test_double_root():
    r = univariate_roots([1, -2, 1])
    assert np.all(np.abs(r - 1) < 1e-6)


def test_leading_zero():
    with pytest.raises(LeadingCoefficientZero):
        univariate_roots([0, 1, 2])


def test_clusters():
    assert cluster_roots([1.0, 1.0 + 1e-12, -2.0]).count == 2
    assert cluster_roots([]).count == 0
    assert cluster_roots([0, 1e-9, 1]).count == 2


def test_profile_not_constant():
    t, x = Jet.variable(TX, 0), Jet.variable(TX, 1)
    prof = root_count_profile(UniOverJets.from_jet(x ** 2 - t, 1), SampleRegion({"t": 1.0}, grid=5))
    assert prof.counts == [2, 2, 1, 2, 2] and not prof.constant
    assert prof.label == "numeric-only"


def test_profile_constant():
    x = Jet.variable(TX, 1)
    prof = root_count_profile(UniOverJets.from_jet(x * (x - 1), 1), SampleRegion({"t": 1.0}))
    assert prof.constant and prof.counts[0] == 2


def test_profile_escape():
    t, x = Jet.variable(TX, 0), Jet.variable(TX, 1)
    f = UniOverJets.from_jet(x ** 2 - (1 + t) * x, 1)
    prof = root_count_profile(f, SampleRegion({"t": 0.5}, grid=7, escape_radius=2.0))
    assert prof.constant and not prof.any_escape
    prof = root_count_profile(f, SampleRegion({"t": 0.5}, grid=7, escape_radius=1.2))
    assert prof.any_escape


def test_complex_grid_is_deterministic():
    t, x = Jet.variable(TX, 0), Jet.variable(TX, 1)
    f = UniOverJets.from_jet(x ** 3 - t * x - t, 1)
    region = SampleRegion({"t": 0.3}, grid=4, complex_grid=True)
    a = root_count_profile(f, region)
    b = root_count_profile(f, region)
    assert a == b and len(a.samples) == 16


def test_region_validation():
    with pytest.raises(ValueError):
        SampleRegion({"t": 0.0})


@given(st.lists(st.builds(Fraction, st.integers(-40, 40), st.sampled_from([1, 2, 4, 5])),
                min_size=1, max_size=6))
def test_agrees_with_symbolic_count(roots):
    f = poly_from_roots(T, 0, roots)
    coeffs = [float(c.constant_term()) for c in f.coeffs]
    assert cluster_roots(univariate_roots(coeffs)).count == count_distinct_roots(f).count


@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=6))
def test_residuals_small(roots):
    coeffs = np.poly(roots)
    found = univariate_roots(coeffs)
    scale = np.polyval(np.abs(coeffs), np.abs(found)) + 1
    assert np.all(np.abs(np.polyval(coeffs, found)) <= 1e-6 * scale)
