"""Generalized discriminants of polynomials over jet coefficient rings.

``Delta_j`` (j = 1..p) is the sum, over the (p-j+1)-subsets S of the roots, of
the squared Vandermonde of S.  It is the leading principal minor of size
p-j+1 of the Hankel matrix of power sums (Cauchy-Binet), so ``Delta_1`` is the
classical discriminant and ``Delta_p = p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .kernel import Jet, VarContext, poly_exquo
from .linalg import bareiss_det, leading_principal_minors


class NotMonic(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class UniOverJets:
    """sum_j coeffs[j] * x_var^(p-j); ``coeffs[0]`` is the leading coefficient."""

    var: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a polynomial needs at least a leading coefficient")
        ctx = self.coeffs[0].ctx
        for c in self.coeffs:
            if c.ctx != ctx:
                raise ValueError("coefficients live in different contexts")
            if any(e[self.var] for e in c.terms):
                raise ValueError("coefficient involves the distinguished variable")

    @property
    def ctx(self) -> VarContext:
        return self.coeffs[0].ctx

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Jet:
        return self.coeffs[0]

    @property
    def prec(self):
        precs = [c.prec for c in self.coeffs if c.prec is not None]
        return min(precs) if precs else None

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.coeffs)

    def is_monic(self) -> bool:
        lc = self.coeffs[0]
        return lc.is_constant() and lc.constant_term() == 1

    def is_one(self) -> bool:
        return self.degree == 0 and self.is_monic()

    def tail(self):
        """Non-leading coefficients a_1..a_p."""
        return self.coeffs[1:]

    def to_jet(self) -> Jet:
        # c * x^k is known to precision prec(c) + k
        p = self.degree
        total = Jet.zero(self.ctx)
        for j, c in enumerate(self.coeffs):
            total = total + c.shift_var(self.var, p - j)
        return total

    @classmethod
    def from_jet(cls, f: Jet, var: int, degree: int | None = None) -> "UniOverJets":
        """Read ``f`` as a polynomial in ``x_var`` (its x_var-degree unless given)."""
        parts = f.split_by_var(var)
        p = max(parts) if degree is None and parts else (degree or 0)
        coeffs = []
        for j in range(p + 1):
            c = parts.get(p - j)
            if c is None:
                c = Jet.zero(f.ctx, None if f.prec is None else max(f.prec - (p - j), 0))
            coeffs.append(c)
        if any(k > p for k in parts):
            raise ValueError("polynomial has higher degree than requested")
        return cls(var, tuple(coeffs))

    @classmethod
    def monic(cls, var: int, tail) -> "UniOverJets":
        tail = tuple(tail)
        ctx = tail[0].ctx if tail else None
        if ctx is None:
            raise ValueError("use monic_from_context for degree-0 polynomials")
        return cls(var, (Jet.constant(ctx, 1),) + tail)

    @classmethod
    def one(cls, ctx: VarContext, var: int) -> "UniOverJets":
        return cls(var, (Jet.constant(ctx, 1),))

    def map_coeffs(self, fn) -> "UniOverJets":
        return UniOverJets(self.var, tuple(fn(c) for c in self.coeffs))

    def truncate(self, prec) -> "UniOverJets":
        return self.map_coeffs(lambda c: c.truncate(prec))

    def evaluate_at(self, value: Jet) -> Jet:
        """Horner evaluation with x_var replaced by the jet ``value``."""
        acc = self.coeffs[0]
        for c in self.coeffs[1:]:
            acc = acc * value + c
        return acc

    def derivative(self) -> "UniOverJets":
        p = self.degree
        if p == 0:
            return UniOverJets(self.var, (Jet.zero(self.ctx),))
        return UniOverJets(self.var, tuple(c * (p - j) for j, c in enumerate(self.coeffs[:-1])))


@dataclass(frozen=True)
class GDiscVector:
    entries: tuple

    @property
    def degree(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> Jet:
        """1-based access: ``vec[j]`` is Delta_j."""
        if not 1 <= j <= len(self.entries):
            raise IndexOutOfRange(f"Delta_{j} undefined for degree {len(self.entries)}")
        return self.entries[j - 1]


@dataclass(frozen=True)
class DistinctRootReport:
    status: str  # "determined" | "inconclusive"
    count: int | None = None
    index: int | None = None  # Delta index that decided (or blocked) the scan

    @property
    def determined(self) -> bool:
        return self.status == "determined"


def _require_monic(f: UniOverJets):
    if not f.is_monic():
        raise NotMonic("polynomial is not monic")


def _scaled_power_sums(f: UniOverJets, up_to: int):
    """sigma_k = c^k s_k with c the leading coefficient; polynomial in the coefficients."""
    c = f.coeffs[0]
    b = f.coeffs
    p = f.degree
    one = Jet.constant(f.ctx, 1)
    cpow = [one]
    for _ in range(max(p, 1)):
        cpow.append(cpow[-1] * c)
    sig = [one * p]
    for k in range(1, up_to + 1):
        acc = Jet.zero(f.ctx)
        for i in range(1, min(k - 1, p) + 1):
            acc = acc + b[i] * cpow[i - 1] * sig[k - i]
        if k <= p:
            acc = acc + b[k] * cpow[k - 1] * k
        sig.append(-acc)
    return sig


def newton_power_sums(f: UniOverJets, up_to: int):
    _require_monic(f)
    return _scaled_power_sums(f, up_to)


def _hankel_minors(f: UniOverJets):
    p = f.degree
    if p < 1:
        raise ValueError("generalized discriminants need degree >= 1")
    s = _scaled_power_sums(f, 2 * p - 2)
    h = [[s[k + l] for l in range(p)] for k in range(p)]
    minors = leading_principal_minors(h, Jet.constant(f.ctx, 1))
    # minor of size m is Delta_{p-m+1}
    return tuple(minors[p - j] for j in range(1, p + 1))


def generalized_discriminants(f: UniOverJets) -> GDiscVector:
    _require_monic(f)
    return GDiscVector(_hankel_minors(f))


def scaled_discriminants(f: UniOverJets) -> GDiscVector:
    """c^(m(m-1)) * Delta_j(f/c), m = p-j+1, for a unit leading coefficient c.

    Polynomial in the coefficients, so an exact input yields exact entries even
    when f/c is only a series.
    """
    return GDiscVector(_hankel_minors(f))


def classify_entry(d: Jet) -> str:
    """'nonzero', 'zero' (certified) or 'ambiguous' (zero at precision only)."""
    if d.is_zero():
        return "zero" if d.exact else "ambiguous"
    if d.exact or d.order() < d.prec:
        return "nonzero"
    return "ambiguous"


def scan_first_nonvanishing(vec: GDiscVector) -> DistinctRootReport:
    p = vec.degree
    for j in range(1, p + 1):
        kind = classify_entry(vec[j])
        if kind == "nonzero":
            return DistinctRootReport("determined", p - j + 1, j)
        if kind == "ambiguous":
            return DistinctRootReport("inconclusive", None, j)
    raise AssertionError("Delta_p = p can never vanish")


def count_distinct_roots(f: UniOverJets) -> DistinctRootReport:
    return scan_first_nonvanishing(generalized_discriminants(f))


# ------------------------------------------------------------------ oracles

@lru_cache(maxsize=None)
def universal_discriminant(p: int) -> Jet:
    """(-1)^(p(p-1)/2) Res(f, f') for f = T^p + a_1 T^(p-1) + ... + a_p, in Q[a_1..a_p]."""
    ctx = VarContext(tuple(f"a{i}" for i in range(1, p + 1)))
    one = Jet.constant(ctx, 1)
    zero = Jet.zero(ctx)
    fc = [one] + [Jet.variable(ctx, i) for i in range(p)]
    gc = [fc[j] * (p - j) for j in range(p)]
    size = 2 * p - 1
    rows = []
    for r in range(p - 1):
        rows.append([zero] * r + fc + [zero] * (size - r - len(fc)))
    for r in range(p):
        rows.append([zero] * r + gc + [zero] * (size - r - len(gc)))
    res = bareiss_det(rows, poly_exquo)
    return res if (p * (p - 1) // 2) % 2 == 0 else -res


def evaluate_universal(u: Jet, values, one: Jet) -> Jet:
    powers = [[one] for _ in values]
    total = one * 0
    for e, c in u.terms.items():
        term = one * c
        for i, k in enumerate(e):
            if k:
                lst = powers[i]
                while len(lst) <= k:
                    lst.append(lst[-1] * values[i])
                term = term * lst[k]
        total = total + term
    return total


def classical_discriminant_oracle(f: UniOverJets) -> Jet:
    _require_monic(f)
    u = universal_discriminant(f.degree)
    return evaluate_universal(u, list(f.tail()), Jet.constant(f.ctx, 1))


def gdisc_from_roots_oracle(roots, j: int) -> Fraction:
    roots = [Fraction(r) for r in roots]
    p = len(roots)
    if not 1 <= j <= p:
        raise IndexOutOfRange(f"j={j} outside 1..{p}")
    total = Fraction(0)
    for removed in combinations(range(p), j - 1):
        keep = [roots[i] for i in range(p) if i not in removed]
        prod = Fraction(1)
        for a, b in combinations(keep, 2):
            prod *= (a - b) ** 2
        total += prod
    return total


def poly_from_roots(ctx: VarContext, var: int, roots) -> UniOverJets:
    """Monic prod (x_var - r) with constant coefficients (exact)."""
    coeffs = [Fraction(1)]
    for r in roots:
        r = Fraction(r)
        nxt = coeffs + [Fraction(0)]
        for i in range(1, len(nxt)):
            nxt[i] -= r * coeffs[i - 1]
        coeffs = nxt
    return UniOverJets(var, tuple(Jet.constant(ctx, c) for c in coeffs))
