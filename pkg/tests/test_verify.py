from dataclasses import replace

from disctower.discriminants import UniOverJets
from disctower.tower import TowerConfig, build_tower_function, build_tower_set
from disctower.verify import NUMERIC_ONLY, PASS, verify_normal_system

CFG = TowerConfig(precision=8)


def failing(report):
    return {e.condition for e in report.failures}


def test_cusp_passes(x2vars):
    x1, x2 = x2vars
    report = verify_normal_system(build_tower_set([x2 ** 2 - x1 ** 3], CFG))
    assert report.all_pass
    assert NUMERIC_ONLY in {e.status for e in report.entries}
    assert PASS in report.statuses("discriminant identity")


def test_tampered_constant_term(x2vars):
    x1, x2 = x2vars
    ns = build_tower_set([x2 ** 2 - x1 ** 3], CFG)
    lv = ns.level(1)
    coeffs = list(lv.f.coeffs)
    coeffs[-1] = coeffs[-1] + 1
    bad = replace(ns, levels=(ns.levels[0], replace(lv, f=UniOverJets(lv.f.var, tuple(coeffs)))))
    report = verify_normal_system(bad)
    assert "(1) coefficients vanish at origin" in failing(report)
    assert not report.all_pass


def test_lowered_disc_index(x2vars):
    x1, x2 = x2vars
    ns = build_tower_set([x2 ** 2 * (x2 - x1)], CFG)
    assert ns.level(1).disc_index == 2
    bad = replace(ns, levels=(ns.levels[0], replace(ns.level(1), disc_index=1)))
    report = verify_normal_system(bad)
    assert "(2) non-vanishing at j" in failing(report)


def test_raised_disc_index(x2vars):
    x1, x2 = x2vars
    ns = build_tower_set([x2 ** 2 - x1 ** 3], CFG)
    bad = replace(ns, levels=(ns.levels[0], replace(ns.level(1), disc_index=2)))
    assert "(2) vanishing below j" in failing(verify_normal_system(bad))


def test_tampered_unit(x2vars):
    x1, x2 = x2vars
    ns = build_tower_set([x2 ** 2 - x1 ** 3], CFG)
    bad = replace(ns, levels=(ns.levels[0], replace(ns.level(1), unit=x1)))
    assert {"unit", "discriminant identity"} <= failing(verify_normal_system(bad))


def test_tampered_base(x2vars):
    x1, x2 = x2vars
    ns = build_tower_set([x2 ** 2 - x1 ** 3], CFG)
    assert "(3) base" in failing(verify_normal_system(replace(ns, base_unit=5)))


def test_tampered_input(x2vars):
    x1, x2 = x2vars
    ns = build_tower_set([x2 ** 2 - x1 ** 3], CFG)
    bad = replace(ns, inputs=(x2 ** 2 - x1 ** 5,))
    assert "reconstruction" in failing(verify_normal_system(bad))


def test_function_tower_checks(x2vars):
    _, x2 = x2vars
    ns = build_tower_function([x2 ** 2], CFG)
    report = verify_normal_system(ns)
    assert report.all_pass
    assert report.statuses("(3') F_1 = 1") == [PASS]
    bad = replace(ns, levels=(ns.levels[0], replace(ns.level(1), q=0)))
    assert "discriminant identity" in failing(verify_normal_system(bad))


def test_truncated_function_tower_levels(x2vars):
    _, x2 = x2vars
    ns = build_tower_function([x2 ** 2], CFG)
    bad = replace(ns, levels=ns.levels[:1])
    assert "(3') F_1 = 1" in failing(verify_normal_system(bad))
