"""Normal systems of equations (discriminant towers) for set germs and function germs."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .discriminants import (
    UniOverJets,
    generalized_discriminants,
    scaled_discriminants,
    scan_first_nonvanishing,
)
from .kernel import Jet, LinearChange, VarContext, jet_invert_unit, mat_mul, substitute_matrix
from .weierstrass import (
    AmbiguousZero,
    NotRegular,
    extract_x1_power,
    generic_linear_change,
    weierstrass_prepare,
)

SET = "set"
FUNCTION = "function"


class InconclusivePrecision(RuntimeError):
    def __init__(self, message):
        super().__init__(f"{message}; raise the precision N")


class ZeroGerm(ValueError):
    pass


class NonzeroConstantTerm(ValueError):
    pass


class InvolvesX1(ValueError):
    pass


@dataclass(frozen=True)
class TowerConfig:
    precision: int = 10
    height_bound: int = 3
    seed: int | None = None


@dataclass(frozen=True)
class TowerLevel:
    """f_i with the data that produced it.

    ``disc_index`` is j_{i+1}, the index of the first non-vanishing generalized
    discriminant of f_{i+1} (None on the top level).  ``exact_form`` is c*f_i with
    exact coefficients and unit leading coefficient c, kept when f_i itself is
    only known as a series.
    """

    index: int
    f: UniOverJets
    disc_index: int | None
    unit: Jet
    q: int
    change: LinearChange
    exact_form: UniOverJets | None = None

    @property
    def degree(self) -> int:
        return self.f.degree


@dataclass(frozen=True)
class NormalSystem:
    kind: str
    ctx: VarContext
    precision: int
    levels: tuple
    base_index: int
    base_unit: Fraction
    base_q: int
    inputs: tuple
    transform: tuple
    splitting: tuple = ()
    exact_input: bool = True
    height_bound: int = 3
    seed: int | None = None

    @property
    def n(self) -> int:
        return self.ctx.arity

    def level(self, i: int) -> TowerLevel:
        for lv in self.levels:
            if lv.index == i:
                return lv
        raise KeyError(f"no level {i}")

    def summary(self) -> dict:
        return {
            "p": {lv.index: lv.degree for lv in self.levels},
            "j": {lv.index + 1: lv.disc_index for lv in self.levels if lv.disc_index is not None},
            "q": {lv.index: lv.q for lv in self.levels},
            "base": (self.base_index, self.base_unit, self.base_q),
        }


# ------------------------------------------------------------------ helpers

def split_linear_parts(g: Jet):
    """b_2..b_n with g = sum_k x_k b_k; each monomial goes to its least variable index."""
    n = g.ctx.arity
    zero = (0,) * n
    if g.terms.get(zero):
        raise NonzeroConstantTerm("g(0) != 0")
    if any(e[0] for e in g.terms):
        raise InvolvesX1("g involves x_1")
    parts = [dict() for _ in range(n)]
    for e, c in g.terms.items():
        k = next(k for k in range(1, n) if e[k])
        parts[k][e[:k] + (e[k] - 1,) + e[k + 1:]] = c
    prec = None if g.prec is None else g.prec - 1
    return tuple(Jet(g.ctx, parts[k], prec) for k in range(1, n))


def graph_product(ctx: VarContext, splitting) -> Jet:
    """prod_m (x_1 - sum_k x_k b_{m,k})."""
    x = [Jet.variable(ctx, k) for k in range(ctx.arity)]
    total = Jet.constant(ctx, 1)
    for bs in splitting:
        g = Jet.zero(ctx)
        for k, b in enumerate(bs, start=1):
            g = g + x[k] * b
        total = total * (x[0] - g)
    return total


def _transport_level(lv: TowerLevel, m) -> TowerLevel:
    sub = lambda j: substitute_matrix(j, m)  # noqa: E731
    return replace(
        lv,
        f=lv.f.map_coeffs(sub),
        unit=sub(lv.unit),
        exact_form=lv.exact_form.map_coeffs(sub) if lv.exact_form is not None else None,
    )


def _exact_form(g: Jet, var: int, p: int, f: UniOverJets):
    if f.exact or not g.exact or g.degree_in(var) != p:
        return None
    return UniOverJets.from_jet(g, var, p)


def level_discriminants(lv: TowerLevel):
    """(vector, rescale) with Delta_j(f) = vector[j] * rescale(j)."""
    if lv.exact_form is not None:
        return scaled_discriminants(lv.exact_form), lv.exact_form.leading
    return generalized_discriminants(lv.f), None


def rescale_factor(lead: Jet | None, p: int, j: int, prec: int) -> Jet | None:
    """c^(-m(m-1)) with m = p - j + 1 (None when no rescaling is needed)."""
    if lead is None:
        return None
    m = p - j + 1
    e = m * (m - 1)
    if e == 0:
        return None
    return jet_invert_unit(lead, prec) ** e


def _mul_opt(a: Jet, b: Jet | None) -> Jet:
    return a if b is None else a * b


def _first_nonvanishing(lv: TowerLevel):
    vec, lead = level_discriminants(lv)
    rep = scan_first_nonvanishing(vec)
    if not rep.determined:
        raise InconclusivePrecision(
            f"Delta_{{{lv.index},{rep.index}}} vanishes at the stored precision but is not "
            "certified identically zero")
    return rep.index, vec[rep.index], lead


def _prepare(g: Jet, var: int, block, cfg: TowerConfig, what: str):
    try:
        change, moved = generic_linear_change(g, var, block, cfg.height_bound, cfg.seed)
        prep = weierstrass_prepare(moved, var, cfg.precision if moved.exact else None)
    except (AmbiguousZero, NotRegular) as exc:
        raise InconclusivePrecision(f"{what}: {exc}") from exc
    return change, moved, prep


def _start(ctx, product: Jet, block, cfg, kind):
    n = ctx.arity
    change, moved, prep = _prepare(product, n - 1, block, cfg, f"level {n}")
    f_n = prep.weierstrass
    top = TowerLevel(n, f_n, None, prep.unit, 0, change,
                     _exact_form(moved, n - 1, f_n.degree, f_n))
    return top, change.full_matrix(n)


def _descend(ctx, top, transform, cfg, kind):
    """Run the recursion below the top level; returns (levels, base, transform)."""
    n = ctx.arity
    levels = [top]
    for i in range(n - 1, -1, -1):
        current = levels[-1]
        j, d, lead = _first_nonvanishing(current)
        p = current.degree
        scale = rescale_factor(lead, p, j, cfg.precision)
        q = 0
        if kind == FUNCTION:
            try:
                q, d = extract_x1_power(d)
            except AmbiguousZero as exc:
                raise InconclusivePrecision(str(exc)) from exc
        if i == 0 or d.constant_term() != 0:
            unit = _mul_opt(d, scale)
            if i > 0:
                one = UniOverJets.one(ctx, i - 1)
                block = tuple(range(1, i)) if kind == FUNCTION else tuple(range(i))
                levels.append(TowerLevel(i, one, j, unit, q,
                                         LinearChange.identity(block or (0,))))
            return levels, (j, unit.constant_term(), q), transform
        block = tuple(range(1, i)) if kind == FUNCTION else tuple(range(i))
        change, moved, prep = _prepare(d, i - 1, block, cfg, f"level {i}")
        m = change.full_matrix(n)
        if not change.is_identity:
            levels = [_transport_level(lv, m) for lv in levels]
            transform = mat_mul(transform, m)
            if scale is not None:
                scale = substitute_matrix(scale, m)
        f_i = prep.weierstrass
        levels.append(TowerLevel(i, f_i, j, _mul_opt(prep.unit, scale), q, change,
                                 _exact_form(moved, i - 1, f_i.degree, f_i)))
    raise AssertionError("recursion must stop at level 1")


def _as_jet(g) -> Jet:
    return g.to_jet() if isinstance(g, UniOverJets) else g


def build_tower_set(germs, config: TowerConfig | None = None) -> NormalSystem:
    """Discriminant tower of the set germ {g_1 = ... = 0}: f_n is the (prepared) product."""
    cfg = config or TowerConfig()
    jets = [_as_jet(g) for g in germs]
    if not jets:
        raise ValueError("need at least one germ")
    ctx = jets[0].ctx
    product = Jet.constant(ctx, 1)
    for g in jets:
        product = product * g
    if product.is_zero():
        raise ZeroGerm("product of germs vanishes at the stored precision")
    top, transform = _start(ctx, product, tuple(range(ctx.arity)), cfg, SET)
    levels, base, transform = _descend(ctx, top, transform, cfg, SET)
    return NormalSystem(SET, ctx, cfg.precision, tuple(levels), base[0], base[1], 0,
                        tuple(jets), _freeze(transform), (), all(g.exact for g in jets),
                        cfg.height_bound, cfg.seed)


def build_tower_function(germs, config: TowerConfig | None = None) -> NormalSystem:
    """Tower of the graph family prod_m (x_1 - g_m(x_2, ..., x_n))."""
    cfg = config or TowerConfig()
    germs = list(germs)
    if not germs:
        raise ValueError("need at least one germ")
    ctx = germs[0].ctx
    if ctx.arity < 2:
        raise ValueError("function towers need at least two variables")
    for g in germs:
        if g.is_zero():
            raise ZeroGerm("germ is identically zero at the stored precision")
    splitting = tuple(split_linear_parts(g) for g in germs)
    product = graph_product(ctx, splitting)
    top, transform = _start(ctx, product, tuple(range(1, ctx.arity)), cfg, FUNCTION)
    levels, base, transform = _descend(ctx, top, transform, cfg, FUNCTION)
    return NormalSystem(FUNCTION, ctx, cfg.precision, tuple(levels), base[0], base[1], base[2],
                        tuple(germs), _freeze(transform), splitting,
                        all(g.exact for g in germs), cfg.height_bound, cfg.seed)


def _freeze(m):
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def input_product(ns: NormalSystem) -> Jet:
    if ns.kind == FUNCTION:
        return graph_product(ns.ctx, ns.splitting)
    total = Jet.constant(ns.ctx, 1)
    for g in ns.inputs:
        total = total * g
    return total


# ------------------------------------------------------------------ precision stability

def _jet_matches(coarse: Jet, fine: Jet) -> bool:
    if coarse.exact:
        return fine.exact and coarse.terms == fine.terms
    if fine.prec is not None and fine.prec < coarse.prec:
        return False
    return fine.truncate(coarse.prec).terms == coarse.terms


def _poly_matches(a: UniOverJets | None, b: UniOverJets | None) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return (a.var == b.var and a.degree == b.degree
            and all(_jet_matches(x, y) for x, y in zip(a.coeffs, b.coeffs)))


def towers_agree(coarse: NormalSystem, fine: NormalSystem) -> bool:
    """Same discrete data, and every jet of ``fine`` truncates to the one in ``coarse``."""
    if (coarse.kind, coarse.ctx, len(coarse.levels)) != (fine.kind, fine.ctx, len(fine.levels)):
        return False
    if (coarse.base_index, coarse.base_unit, coarse.base_q) != \
            (fine.base_index, fine.base_unit, fine.base_q):
        return False
    if coarse.transform != fine.transform:
        return False
    for a, b in zip(coarse.levels, fine.levels):
        if (a.index, a.disc_index, a.q, a.degree, a.change) != \
                (b.index, b.disc_index, b.q, b.degree, b.change):
            return False
        if not (_poly_matches(a.f, b.f) and _jet_matches(a.unit, b.unit)
                and _poly_matches(a.exact_form, b.exact_form)):
            return False
    return True
