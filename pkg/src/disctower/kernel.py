"""Exact multivariate polynomials and truncated power series (jets) over Q.

A :class:`Jet` is a polynomial body known modulo the ideal ``(x_1, ..., x_n)^N``.
``prec=None`` marks an *exact* jet: the body is the whole series (a genuine
polynomial), so vanishing of anything derived from it is decidable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Scalar = Fraction
INFINITE = math.inf

Exponent = tuple


class ContextMismatch(ValueError):
    pass


class NotAUnit(ArithmeticError):
    pass


class SingularMatrix(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


@dataclass(frozen=True)
class VarContext:
    """Ordered variable names; ``names[:i]`` is the prefix x^i."""

    names: tuple
    param: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ValueError("a context needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if self.param is not None and self.param not in self.names:
            raise ValueError(f"parameter {self.param!r} is not a context variable")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


def _prec_min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _clean(terms: Mapping, prec) -> dict:
    if prec is None:
        return {e: Fraction(c) for e, c in terms.items() if c}
    return {e: Fraction(c) for e, c in terms.items() if c and sum(e) < prec}


def _mul_terms(a: Mapping, b: Mapping, cap) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    bl = sorted(((sum(e), e, c) for e, c in b.items()), key=lambda t: t[0])
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        da = sum(ea)
        for db, eb, cb in bl:
            if cap is not None and da + db >= cap:
                break
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


class Jet:
    """Immutable truncated power series with rational coefficients."""

    __slots__ = ("ctx", "terms", "prec", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping | None = None, prec: int | None = None,
                 *, _trusted: bool = False):
        if prec is not None and prec < 0:
            raise ValueError("precision must be non-negative")
        self.ctx = ctx
        self.prec = prec
        if _trusted:
            self.terms = terms
        else:
            terms = terms or {}
            for e in terms:
                if len(e) != ctx.arity:
                    raise ValueError(f"exponent {e} does not match arity {ctx.arity}")
            self.terms = _clean(terms, prec)
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ctx, prec=None):
        return cls(ctx, {}, prec, _trusted=True)

    @classmethod
    def constant(cls, ctx, c, prec=None):
        c = Fraction(c)
        if c == 0 or prec == 0:
            return cls(ctx, {}, prec, _trusted=True)
        return cls(ctx, {(0,) * ctx.arity: c}, prec, _trusted=True)

    @classmethod
    def variable(cls, ctx, name_or_index, prec=None):
        i = name_or_index if isinstance(name_or_index, int) else ctx.index(name_or_index)
        e = [0] * ctx.arity
        e[i] = 1
        return cls(ctx, {tuple(e): Fraction(1)}, prec)

    @classmethod
    def monomial(cls, ctx, exps, coeff=1, prec=None):
        return cls(ctx, {tuple(exps): Fraction(coeff)}, prec)

    # basic queries ------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        return not self.terms

    def is_provably_zero(self) -> bool:
        return self.prec is None and not self.terms

    def order(self):
        """Lowest total degree of a stored term; INFINITE for a zero body."""
        if not self.terms:
            return INFINITE
        return min(sum(e) for e in self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ctx.arity, Fraction(0))

    def is_constant(self) -> bool:
        z = (0,) * self.ctx.arity
        return all(e == z for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables_used(self) -> set:
        return {k for e in self.terms for k, v in enumerate(e) if v}

    def truncate(self, prec: int) -> "Jet":
        """Drop to precision ``prec`` (never raises precision of an inexact jet)."""
        prec = _prec_min(self.prec, prec)
        return Jet(self.ctx, self.terms, prec)

    def as_inexact(self, prec: int) -> "Jet":
        return Jet(self.ctx, self.terms, _prec_min(self.prec, prec))

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx.names} vs {other.ctx.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return Jet.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _prec_min(self.prec, other.prec)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Jet(self.ctx, _clean(out, prec), prec, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.ctx, {e: -c for e, c in self.terms.items()}, self.prec, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Jet(self.ctx, {}, self.prec, _trusted=True)
            return Jet(self.ctx, {e: c * other for e, c in self.terms.items()}, self.prec,
                       _trusted=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _prec_min(self.prec, other.prec)
        return Jet(self.ctx, _mul_terms(self.terms, other.terms, prec), prec, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need jet_invert_unit")
        result = Jet.constant(self.ctx, 1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Jet":
        return self * Fraction(c)

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.ctx == other.ctx and self.prec == other.prec and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.prec, frozenset(self.terms.items())))
        return self._hash

    def agrees_with(self, other: "Jet", prec=None) -> bool:
        """Equality of bodies modulo degree ``prec`` (default: the common precision)."""
        p = _prec_min(_prec_min(self.prec, other.prec), prec)
        d = self - other
        return d.order() >= (INFINITE if p is None else p)

    def __repr__(self):
        tag = "exact" if self.prec is None else f"N={self.prec}"
        return f"Jet({jet_to_str(self)}; {tag})"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    # structural helpers -------------------------------------------------
    def restrict_zero(self, indices: Iterable[int]) -> "Jet":
        """Set the given variables to zero."""
        idx = list(indices)
        return Jet(self.ctx, {e: c for e, c in self.terms.items() if all(e[i] == 0 for i in idx)},
                   self.prec, _trusted=True)

    def split_by_var(self, i: int) -> dict:
        """Coefficients of powers of variable ``i``: {k: jet free of x_i}.

        The coefficient of x_i^k is only known below degree prec - k.
        """
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            base = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[base] = c
        if self.prec is None:
            return {k: Jet(self.ctx, t, None, _trusted=True) for k, t in out.items()}
        return {k: Jet(self.ctx, t, max(self.prec - k, 0)) for k, t in out.items()}

    def shift_var(self, i: int, k: int) -> "Jet":
        """Multiply by x_i^k (k may be negative when exactly divisible)."""
        out = {}
        for e, c in self.terms.items():
            if e[i] + k < 0:
                raise InexactDivision(f"term {e} not divisible by x{i + 1}^{-k}")
            out[e[:i] + (e[i] + k,) + e[i + 1:]] = c
        prec = None if self.prec is None else max(self.prec + k, 0)
        return Jet(self.ctx, _clean(out, prec), prec, _trusted=True)

    def evaluate(self, point: Sequence):
        """Evaluate the stored body at a point (numbers of any ring type)."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total


def format_terms(terms: Mapping, names: Sequence[str]) -> str:
    """Human-readable expression in the input grammar (parseable back)."""
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms.items(), key=lambda t: monomial_key(t[0])):
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        coef = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if not mono:
            body = coef
        elif a == 1:
            body = mono
        else:
            body = f"{coef}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def jet_to_str(a: "Jet") -> str:
    return format_terms(a.terms, a.ctx.names)


def monomial_key(e):
    """Graded order: total degree ascending, then lexicographically descending."""
    return (sum(e), tuple(-k for k in e))


# ---------------------------------------------------------------- operations

def jet_add(a: Jet, b: Jet) -> Jet:
    return a + b


def jet_mul(a: Jet, b: Jet) -> Jet:
    return a * b


def jet_order(a: Jet):
    return a.order()


def jet_invert_unit(a: Jet, prec: int | None = None) -> Jet:
    """Inverse of a unit; exact jets need an explicit target precision unless constant."""
    c0 = a.constant_term()
    if c0 == 0:
        raise NotAUnit("constant term is zero")
    if a.is_constant() and a.exact:
        return Jet.constant(a.ctx, 1 / c0)
    target = _prec_min(a.prec, prec)
    if target is None:
        raise ValueError("inverse of a non-constant exact jet needs a target precision")
    b = Jet.constant(a.ctx, 1 / c0, 1)
    p = 1
    while p < target:
        p = min(2 * p, target)
        ap = a.truncate(p)
        b = Jet(a.ctx, b.terms, p, _trusted=True)
        b = b * (2 - ap * b)
    return b.as_inexact(target)


def poly_exquo(a: Jet, b: Jet) -> Jet:
    """Exact quotient of exact polynomials; raises InexactDivision otherwise."""
    if not b.terms:
        raise ZeroDivisionError("division by zero polynomial")
    if b.prec is not None or a.prec is not None:
        raise InexactDivision("exact division needs exact operands")
    if len(b.terms) == 1:
        (eb, cb), = b.terms.items()
        out = {}
        for e, c in a.terms.items():
            q = tuple(x - y for x, y in zip(e, eb))
            if min(q) < 0:
                raise InexactDivision("monomial division failed")
            out[q] = c / cb
        return Jet(a.ctx, out, None, _trusted=True)
    lead_b = max(b.terms)
    lc_b = b.terms[lead_b]
    rem = dict(a.terms)
    quot: dict = {}
    blist = list(b.terms.items())
    while rem:
        lead = max(rem)
        q = tuple(x - y for x, y in zip(lead, lead_b))
        if min(q) < 0:
            raise InexactDivision("polynomial division left a remainder")
        qc = rem[lead] / lc_b
        quot[q] = qc
        for eb, cb in blist:
            e = tuple(x + y for x, y in zip(q, eb))
            v = rem.get(e, 0) - qc * cb
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    return Jet(a.ctx, quot, None, _trusted=True)


# ---------------------------------------------------------------- linear changes

def _frac_det(m) -> Fraction:
    from .linalg import bareiss_det
    return bareiss_det([[Fraction(x) for x in row] for row in m])


@dataclass(frozen=True)
class LinearChange:
    """x_b -> sum_c M[r][c] x_{block[c]} for the contiguous variable block ``block``."""

    block: tuple
    matrix: tuple

    def __post_init__(self):
        block = tuple(int(i) for i in self.block)
        matrix = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "block", block)
        object.__setattr__(self, "matrix", matrix)
        k = len(block)
        if k == 0 or len(matrix) != k or any(len(r) != k for r in matrix):
            raise ValueError("matrix shape does not match block")
        if list(block) != list(range(block[0], block[0] + k)):
            raise ValueError("block must be contiguous")
        if _frac_det(matrix) == 0:
            raise SingularMatrix("linear change is not invertible")

    @classmethod
    def identity(cls, block):
        k = len(block)
        return cls(tuple(block), tuple(tuple(int(r == c) for c in range(k)) for r in range(k)))

    @property
    def is_identity(self) -> bool:
        k = len(self.block)
        return all(self.matrix[r][c] == (r == c) for r in range(k) for c in range(k))

    def full_matrix(self, n: int):
        m = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
        for r, vr in enumerate(self.block):
            for c, vc in enumerate(self.block):
                m[vr][vc] = self.matrix[r][c]
        return m

    def inverse(self) -> "LinearChange":
        return LinearChange(self.block, mat_inverse(self.matrix))


def mat_inverse(m):
    k = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(k)]
         for r, row in enumerate(m)]
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[k:]) for row in a)


def mat_mul(a, b):
    return [[sum((a[i][t] * b[t][j] for t in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def substitute_matrix(a: Jet, m) -> Jet:
    """a(M x) for a full n x n matrix M (rows give the image of each variable)."""
    ctx = a.ctx
    n = ctx.arity
    forms = []
    for r in range(n):
        row = m[r]
        if all(row[c] == (r == c) for c in range(n)):
            forms.append(None)
        else:
            forms.append(Jet(ctx, {tuple(int(t == c) for t in range(n)): row[c]
                                   for c in range(n) if row[c]}, None))
    if all(f is None for f in forms):
        return a
    moving = [r for r in range(n) if forms[r] is not None]
    powers = {r: [Jet.constant(ctx, 1)] for r in moving}

    def power(r, k):
        lst = powers[r]
        while len(lst) <= k:
            lst.append(lst[-1] * forms[r])
        return lst[k]

    # group by the exponents of moving variables
    groups: dict = {}
    for e, c in a.terms.items():
        key = tuple(e[r] for r in moving)
        rest = tuple(0 if r in moving else e[r] for r in range(n))
        groups.setdefault(key, {})[rest] = c
    out: dict = {}
    for key, rest_terms in groups.items():
        prod = Jet.constant(ctx, 1)
        for r, k in zip(moving, key):
            if k:
                prod = prod * power(r, k)
        prod_terms = _mul_terms(prod.terms, rest_terms, a.prec)
        for e, c in prod_terms.items():
            out[e] = out.get(e, 0) + c
    return Jet(ctx, _clean(out, a.prec), a.prec, _trusted=True)


def jet_substitute_linear(a: Jet, change: LinearChange) -> Jet:
    if change.block and change.block[-1] >= a.ctx.arity:
        raise ContextMismatch("change acts outside the context")
    return substitute_matrix(a, change.full_matrix(a.ctx.arity))


def random_jet(rng, ctx: VarContext, prec: int, density: float = 0.5, height: int = 5,
               min_degree: int = 0, max_degree: int | None = None) -> Jet:
    """Random jet with small integer-over-small-integer coefficients (test helper)."""
    from itertools import product as iproduct
    top = prec if max_degree is None else min(prec, max_degree + 1)
    terms = {}
    for e in iproduct(range(top), repeat=ctx.arity):
        d = sum(e)
        if d < min_degree or d >= top:
            continue
        if rng.random() < density:
            terms[e] = Fraction(rng.randint(-height, height), rng.randint(1, 3))
    return Jet(ctx, terms, prec)
