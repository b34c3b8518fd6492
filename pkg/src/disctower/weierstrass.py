"""Regularity, generic coordinate changes, Weierstrass preparation, x_1-power extraction."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .discriminants import UniOverJets
from .kernel import Jet, LinearChange, jet_substitute_linear


class NotRegular(ValueError):
    pass


class AmbiguousZero(ValueError):
    pass


class SearchExhausted(RuntimeError):
    def __init__(self, height_bound, message=None):
        self.height_bound = height_bound
        super().__init__(message or f"no coordinate change of height <= {height_bound} "
                                    "achieves regularity; raise the precision or the height bound")


@dataclass(frozen=True)
class PreparationResult:
    unit: Jet
    weierstrass: UniOverJets
    precision: int | None  # None when both factors are exact

    @property
    def degree(self) -> int:
        return self.weierstrass.degree


def regularity_order(f: Jet, i: int) -> int:
    if f.is_zero():
        raise AmbiguousZero("germ is zero at the stored precision")
    others = [k for k in range(f.ctx.arity) if k != i]
    r = f.restrict_zero(others)
    if r.is_zero():
        raise NotRegular(f"restriction to the x{i + 1}-axis vanishes")
    return int(r.order())


# ------------------------------------------------------------------ genericity search

_VALUE_ORDER_CACHE: dict = {}


def _values(height: int):
    out = [0]
    for h in range(1, height + 1):
        out += [h, -h]
    return out


def _shear_candidates(k: int, height_bound: int, seed=None):
    vals = _values(height_bound)
    rank = {v: n for n, v in enumerate(vals)}
    cands = [c for c in product(vals, repeat=k) if any(c)]
    cands.sort(key=lambda c: (max(abs(v) for v in c), sum(1 for v in c if v),
                              tuple(rank[v] for v in c)))
    if seed is not None:
        random.Random(seed).shuffle(cands)
    return cands


def _shear(block, i, coeffs) -> LinearChange:
    """x_k -> x_k + c_k x_i for the block variables k != i."""
    k = len(block)
    col = block.index(i)
    rows = []
    others = [b for b in block if b != i]
    cmap = dict(zip(others, coeffs))
    for r, var in enumerate(block):
        row = [int(r == c) for c in range(k)]
        if var != i:
            row[col] = cmap[var]
        rows.append(tuple(row))
    return LinearChange(tuple(block), tuple(rows))


def _axis_order(f: Jet, i: int):
    r = f.restrict_zero([k for k in range(f.ctx.arity) if k != i])
    return r.order()


def generic_linear_change(f: Jet, i: int, block, height_bound: int = 3, seed=None):
    """Shear within ``block`` so that f becomes x_i-regular of the least possible order.

    The least order is that of f restricted to the block (other variables set to
    zero).  Shears are tried by increasing height, then number of nonzero
    entries, then lexicographically (0, 1, -1, 2, -2, ...).
    """
    block = tuple(block)
    if i not in block:
        raise ValueError("block must contain the distinguished variable")
    if f.is_zero():
        raise AmbiguousZero("germ is zero at the stored precision")
    outside = [k for k in range(f.ctx.arity) if k not in block]
    target = f.restrict_zero(outside).order()
    if target == math.inf:
        raise AmbiguousZero("germ vanishes on the coordinate block at the stored precision")
    ident = LinearChange.identity(block)
    if _axis_order(f, i) == target:
        return ident, f
    for coeffs in _shear_candidates(len(block) - 1, height_bound, seed):
        change = _shear(block, i, coeffs)
        g = jet_substitute_linear(f, change)
        if _axis_order(g, i) == target:
            return change, g
    raise SearchExhausted(height_bound)


# ------------------------------------------------------------------ preparation

def _upoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for s, x in enumerate(a):
        if x:
            for t, y in enumerate(b):
                if y:
                    out[s + t] += x * y
    return out


def _upoly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]


def _series_inverse(e, n):
    """First n coefficients of 1/e (e[0] != 0)."""
    inv = [Fraction(0)] * n
    inv[0] = 1 / e[0]
    for k in range(1, n):
        s = sum((e[m] * inv[k - m] for m in range(1, min(k, len(e) - 1) + 1)), Fraction(0))
        inv[k] = -s / e[0]
    return inv


def _by_xprime(f: Jet, i: int):
    """{alpha (x_i slot zeroed): [coefficient of x_i^beta]}"""
    out: dict = {}
    for e, c in f.terms.items():
        beta = e[i]
        alpha = e[:i] + (0,) + e[i + 1:]
        lst = out.setdefault(alpha, [])
        if len(lst) <= beta:
            lst.extend([Fraction(0)] * (beta + 1 - len(lst)))
        lst[beta] += c
    return out


def certified_precisions(f: Jet, i: int, p: int):
    """(W precision, u precision) certified for the preparation of an inexact f.

    Uses the weight |alpha| + r*beta with r = min(1, Newton slope, N/p): a
    perturbation of total degree >= N moves W only in weight >= r*N and u in
    weight >= r*(N - p).
    """
    n = f.prec
    rho = Fraction(n, p) if p else Fraction(1)
    for e, c in f.terms.items():
        beta = e[i]
        if beta < p:
            rho = min(rho, Fraction(sum(e) - beta, p - beta))
    r = min(Fraction(1), rho)
    w_prec = min(n, math.ceil(r * n))
    u_prec = min(n, math.ceil(r * (n - p)))
    return w_prec, u_prec


def weierstrass_prepare(f: Jet, i: int, prec: int | None = None) -> PreparationResult:
    """f = u * W with W monic in x_i of degree = regularity order.

    ``f`` is a germ in x_1..x_i (0-based indices <= i).  Exact input is lifted to
    ``prec`` (required unless the factors turn out to be polynomials); the
    result is flagged exact when u*W reproduces f identically.
    """
    if any(e[k] for e in f.terms for k in range(i + 1, f.ctx.arity)):
        raise ValueError(f"germ involves variables after x{i + 1}")
    p = regularity_order(f, i)
    ctx = f.ctx
    if f.exact:
        if prec is None:
            prec = max(f.degree() + 1, 1)
        w_prec = u_prec = prec
        top = max(prec, max((sum(e) - e[i] for e in f.terms), default=0) + 1)
    else:
        w_prec, u_prec = certified_precisions(f, i, p)
        top = max(w_prec, u_prec)

    fx = _by_xprime(f, i)
    zero_alpha = (0,) * ctx.arity
    base = fx.get(zero_alpha, [])
    e0 = base[p:]
    tinv = _series_inverse(e0, p) if p else []

    w = {zero_alpha: [Fraction(0)] * p + [Fraction(1)]}
    u = {zero_alpha: list(e0)}
    wdeg = {0: [zero_alpha]}
    udeg = {0: [zero_alpha]}
    fdeg: dict = {}
    for alpha in fx:
        fdeg.setdefault(sum(alpha), []).append(alpha)

    for k in range(1, top):
        err: dict = {}
        for alpha in fdeg.get(k, []):
            err[alpha] = list(fx[alpha])
        for a in range(0, k + 1):
            for a1 in wdeg.get(a, []):
                for a2 in udeg.get(k - a, []):
                    alpha = tuple(x + y for x, y in zip(a1, a2))
                    prod = _upoly_mul(w[a1], u[a2])
                    err[alpha] = _upoly_sub(err.get(alpha, []), prod)
        for alpha, ea in err.items():
            if not any(ea):
                continue
            dw = _upoly_mul(tinv, ea)[:p] if p else []
            rest = _upoly_sub(ea, _upoly_mul(e0, dw))
            if any(rest[:p]):
                raise AssertionError("Hensel step left a low-order residue")
            du = rest[p:]
            if any(dw):
                w[alpha] = dw
                wdeg.setdefault(k, []).append(alpha)
            if any(du):
                u[alpha] = du
                udeg.setdefault(k, []).append(alpha)

    def to_terms(d):
        out = {}
        for alpha, coeffs in d.items():
            for beta, c in enumerate(coeffs):
                if c:
                    out[alpha[:i] + (beta,) + alpha[i + 1:]] = c
        return out

    u_terms = to_terms(u)
    w_terms = to_terms(w)
    exact = False
    if f.exact:
        prod = Jet(ctx, u_terms) * Jet(ctx, w_terms)
        exact = prod.terms == f.terms
    w_exact = exact or (i == 0 and not f.exact) or (f.exact and exact)
    unit = Jet(ctx, u_terms, None if exact else u_prec)
    wjet = Jet(ctx, w_terms, None if w_exact else w_prec)
    wpoly = UniOverJets.from_jet(wjet, i, p)
    if p:
        wpoly = UniOverJets(i, (Jet.constant(ctx, 1),) + wpoly.coeffs[1:])
    declared = None if exact else min(w_prec, u_prec) if not w_exact else u_prec
    return PreparationResult(unit, wpoly, declared)


def extract_x1_power(f: Jet):
    """Largest q with x_1^q dividing f, and f / x_1^q (precision lowered by q)."""
    if f.is_zero():
        raise AmbiguousZero("germ is zero at the stored precision")
    q = min(e[0] for e in f.terms)
    return q, f.shift_var(0, -q) if q else f
