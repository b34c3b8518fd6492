"""Floating-point root finding and root-count profiles over sample grids."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .discriminants import UniOverJets

DEFAULT_REL_TOL = 1e-8
ABS_FLOOR = 1e-10


class LeadingCoefficientZero(ValueError):
    pass


class NoConvergence(RuntimeError):
    def __init__(self, residuals):
        self.residuals = residuals
        super().__init__(f"Aberth iteration did not converge; max residual {max(residuals):.3e}")


def _horner(c, z):
    p = np.full_like(z, c[0])
    dp = np.zeros_like(z)
    for a in c[1:]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _taylor(c, x):
    """Taylor coefficients a_0, a_1, ... of the polynomial c (highest first) at x."""
    work = np.array(c, dtype=complex)
    out = []
    while work.size:
        acc = np.empty_like(work)
        acc[0] = work[0]
        for k in range(1, work.size):
            acc[k] = acc[k - 1] * x + work[k]
        out.append(acc[-1])
        work = acc[:-1]
    return np.array(out)


def _multiple_root(c, pts, slack: float = 64.0):
    """The k-fold root that ``pts`` smear out, or None if they are k distinct roots.

    The polished centroid x of a smeared k-fold root is accurate to working precision, so
    the remainder of f by (T - x)^k, i.e. the Taylor coefficients a_0..a_(k-1) at x,
    must sit at rounding level.  Distinct roots at distance d leave a_0 ~ d^k.
    """
    k = len(pts)
    x = np.mean(pts)
    # Newton on f^(k-1), whose root at a k-fold root of f is simple
    for _ in range(8):
        a = _taylor(c, x)
        if a[k] == 0:
            return None
        step = a[k - 1] / (k * a[k])
        x = x - step
        if abs(step) <= np.finfo(float).eps * max(1.0, abs(x)):
            break
    a = _taylor(c, x)
    noise = 4 * len(c) * np.finfo(float).eps * np.abs(_taylor(np.abs(c), abs(x)))
    floor = 4 * len(c) * np.finfo(float).eps * float(np.max(np.abs(c)))
    return x if np.all(np.abs(a[:k]) <= slack * (noise[:k] + floor)) else None


def _merge_clusters(c, z):
    """Replace each numerically multiple root by the centroid of its approximations.

    Groups are formed by single linkage in order of distance; a group is kept
    only if ``_multiple_root`` accepts it, otherwise its accepted parts survive.
    A k-fold root comes out of the iteration as k points spread by about eps^(1/k).
    """
    m = z.size
    parent = list(range(m))
    parts = {a: [([a], z[a])] for a in range(m)}
    members = {a: [a] for a in range(m)}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pairs = sorted((abs(z[a] - z[b]), a, b) for a in range(m) for b in range(a + 1, m))
    for _, a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[ra] = rb
        group = members.pop(ra) + members[rb]
        members[rb] = group
        root = _multiple_root(c, z[group])
        if root is not None:
            parts[rb] = [(group, root)]
        else:
            parts[rb] = parts.pop(ra) + parts[rb]
            continue
        parts.pop(ra)
    out = z.copy()
    for plist in parts.values():
        for g, root in plist:
            out[g] = root
    return out


def univariate_roots(coeffs, max_iter: int = 500, tol: float = 1e-14, lead_tol: float = 1e-300,
                     merge_clusters: bool = True):
    """All complex roots of sum_j coeffs[j] z^(p-j) by Aberth-Ehrlich iteration."""
    c = np.asarray(coeffs, dtype=complex)
    if c.size == 0 or abs(c[0]) <= lead_tol:
        raise LeadingCoefficientZero("leading coefficient is zero")
    if not np.all(np.isfinite(c)):
        raise ValueError("coefficients must be finite")
    p = c.size - 1
    if p == 0:
        return np.zeros(0, dtype=complex)
    c = c / c[0]
    # exact zero roots first; they would stall the iteration
    k = 0
    while k < p and c[p - k] == 0:
        k += 1
    zeros = np.zeros(k, dtype=complex)
    c = c[: p - k + 1]
    m = c.size - 1
    if m == 0:
        return zeros
    radius = 1 + np.max(np.abs(c[1:]))
    # Fujiwara-type bound keeps the start circle comparable to the roots
    radius = min(radius, 2 * np.max(np.abs(c[1:]) ** (1.0 / np.arange(1, m + 1))))
    radius = max(radius, 1e-3)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(m) / m + 0.4))
    for _ in range(max_iter):
        val, der = _horner(c, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = val / der
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1 / diff
            np.fill_diagonal(inv, 0)
            s = inv.sum(axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1, np.abs(z))):
            break
    else:
        res = np.abs(_horner(c, z)[0])
        scale = np.abs(_horner(np.abs(c), np.abs(z))[0]) + 1e-300
        if np.any(res / scale > 1e-6):
            raise NoConvergence(res.tolist())
    if merge_clusters:
        z = _merge_clusters(c, z)
    return np.concatenate([zeros, z])


@dataclass(frozen=True)
class Clusters:
    count: int
    representatives: tuple
    sizes: tuple


def cluster_roots(roots, rel_tol: float = DEFAULT_REL_TOL, abs_floor: float = ABS_FLOOR) -> Clusters:
    """Single-linkage clusters: a, b linked when |a-b| <= max(rel_tol * max|z|, abs_floor)."""
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    z = np.asarray(roots, dtype=complex)
    n = z.size
    parent = list(range(n))
    tol = max(rel_tol * float(np.max(np.abs(z))), abs_floor) if n else abs_floor

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            if abs(z[a] - z[b]) <= tol:
                parent[find(a)] = find(b)
    groups: dict = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    reps = tuple(complex(np.mean(z[g])) for g in sorted(groups.values()))
    sizes = tuple(len(g) for g in sorted(groups.values()))
    return Clusters(len(groups), reps, sizes)


@dataclass(frozen=True)
class SampleRegion:
    """Polydisc radii keyed by variable name (delta_k for parameters, eps_j otherwise).

    ``escape_radius`` is eps_i for the distinguished variable; a sample escapes when
    some root reaches it.
    """

    radii: dict
    grid: int = 5
    complex_grid: bool = False
    escape_radius: float | None = None

    def __post_init__(self):
        if any(r <= 0 for r in self.radii.values()):
            raise ValueError("all radii must be positive")
        if self.grid < 1:
            raise ValueError("grid must be >= 1")

    def axis(self, r: float):
        pts = np.linspace(-r, r, self.grid) if self.grid > 1 else np.array([0.0])
        if not self.complex_grid:
            return [complex(v) for v in pts]
        return [complex(a, b) for a in pts for b in pts]


@dataclass(frozen=True)
class ProfileSample:
    point: tuple
    count: int
    max_modulus: float
    escaped: bool


@dataclass(frozen=True)
class RootProfile:
    samples: tuple
    rel_tol: float
    label: str = field(default="numeric-only")

    @property
    def counts(self):
        return [s.count for s in self.samples]

    @property
    def constant(self) -> bool:
        return len(set(self.counts)) <= 1

    @property
    def any_escape(self) -> bool:
        return any(s.escaped for s in self.samples)


def _coeff_value(c, point):
    return complex(c.evaluate([complex(v) for v in point]))


def root_count_profile(f: UniOverJets, region: SampleRegion,
                       rel_tol: float = DEFAULT_REL_TOL) -> RootProfile:
    """Distinct-root counts of f at every grid point of ``region`` (grid order)."""
    n = f.ctx.arity
    axes = []
    for k in range(n):
        if k == f.var:
            axes.append([0j])
            continue
        name = f.ctx.names[k]
        used = any(e[k] for c in f.coeffs for e in c.terms)
        axes.append(region.axis(region.radii[name]) if used and name in region.radii else [0j])
    samples = []
    for point in product(*axes):
        coeffs = [_coeff_value(c, point) for c in f.coeffs]
        roots = univariate_roots(coeffs)
        cl = cluster_roots(roots, rel_tol)
        mod = float(np.max(np.abs(roots))) if roots.size else 0.0
        esc = region.escape_radius is not None and mod >= region.escape_radius
        shown = tuple(p for k, p in enumerate(point) if k != f.var)
        samples.append(ProfileSample(shown, cl.count, mod, esc))
    return RootProfile(tuple(samples), rel_tol)
