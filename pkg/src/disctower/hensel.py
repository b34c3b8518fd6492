"""Newton/Hensel lifting of graph branches x_1 = G(t, x_2, ..., x_n)."""
from __future__ import annotations

from dataclasses import dataclass

from .discriminants import UniOverJets
from .kernel import Jet, jet_invert_unit


class DerivativeNotUnit(ValueError):
    pass


class SeedNotApproximate(ValueError):
    pass


@dataclass(frozen=True)
class BranchSolution:
    branches: tuple
    precision: int


def _taylor_shift(f: UniOverJets, g0: Jet):
    """Coefficients T_k of f(g0 + Y) = sum_k T_k Y^k (T_k = f^(k)(g0)/k!)."""
    p = f.degree
    # synthetic division repeated p+1 times
    work = list(f.coeffs)
    out = []
    for _ in range(p + 1):
        acc = [work[0]]
        for c in work[1:]:
            acc.append(acc[-1] * g0 + c)
        out.append(acc[-1])
        work = acc[:-1]
    return out


def _common_monomial(d: Jet):
    n = d.ctx.arity
    return tuple(min(e[k] for e in d.terms) for k in range(n))


def _divide_monomial(a: Jet, mu) -> Jet:
    for k, m in enumerate(mu):
        if m:
            a = a.shift_var(k, -m)
    return a


def _times_monomial(a: Jet, mu) -> Jet:
    for k, m in enumerate(mu):
        if m:
            a = a.shift_var(k, m)
    return a


def lift_branch(f: UniOverJets, seed: Jet, target: int) -> Jet:
    """One branch G with f(G) = 0 modulo degree ``target``.

    The derivative along the seed may be x^mu times a unit; the seed then has to
    satisfy f(seed) = 0 modulo x^(2 mu) * (x).
    """
    if any(e[f.var] for e in seed.terms):
        raise ValueError("seed must not involve the branch variable")
    t = _taylor_shift(f, seed)
    d = t[1] if len(t) > 1 else Jet.zero(f.ctx)
    if d.is_zero():
        raise DerivativeNotUnit("derivative vanishes along the seed")
    mu = _common_monomial(d)
    v = _divide_monomial(d, mu)
    if v.constant_term() == 0:
        raise DerivativeNotUnit("derivative along the seed is not a monomial times a unit")
    k_mu = sum(mu)
    r = t[0]
    try:
        phi0 = _divide_monomial(r, tuple(2 * m for m in mu))
    except ArithmeticError as exc:
        raise SeedNotApproximate("seed residual is not divisible by x^(2 mu)") from exc
    if phi0.constant_term() != 0:
        raise SeedNotApproximate("seed residual does not vanish at the origin")

    h_prec = target - k_mu
    if f.prec is not None:
        h_prec = min(h_prec, f.prec - 2 * k_mu)
    if h_prec <= 0:
        return Jet.zero(f.ctx, max(target, 0)) + seed
    # Phi(H) = f(seed + x^mu H) / x^(2 mu) = sum_k T_k x^((k-2) mu) H^k
    phi = [phi0, v]
    for k in range(2, len(t)):
        phi.append(_times_monomial(t[k], tuple((k - 2) * m for m in mu)))
    phi = [c.truncate(h_prec) for c in phi]
    poly = UniOverJets(f.var, tuple(reversed(phi)))
    dpoly = poly.derivative()
    h = Jet.zero(f.ctx, h_prec)
    for _ in range(h_prec + 2):
        step = poly.evaluate_at(h) * jet_invert_unit(dpoly.evaluate_at(h), h_prec)
        if step.is_zero():
            break
        h = h - step
    g = seed + _times_monomial(h, mu)
    return g.truncate(h_prec + k_mu)


def hensel_lift_branches(f: UniOverJets, seeds, target: int) -> BranchSolution:
    branches = tuple(lift_branch(f, s, target) for s in seeds)
    precs = [b.prec for b in branches if b.prec is not None]
    return BranchSolution(branches, min(precs) if precs else target)
