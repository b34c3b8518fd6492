"""Determinants over commutative rings: fraction-free Bareiss and division-free Berkowitz."""
from __future__ import annotations

from fractions import Fraction


def _is_zero(x) -> bool:
    z = getattr(x, "is_zero", None)
    return z() if callable(z) else x == 0


def bareiss_det(m, exquo=None):
    """Determinant by Bareiss elimination.

    ``exquo(a, b)`` must return the exact quotient a/b; the default is true
    division, which is right for fields (Fraction entries).
    """
    n = len(m)
    if n == 0:
        return Fraction(1)
    if exquo is None:
        exquo = lambda a, b: a / b  # noqa: E731
    a = [list(row) for row in m]
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            piv = next((i for i in range(k + 1, n) if not _is_zero(a[i][k])), None)
            if piv is None:
                return a[k][k] * 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else exquo(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def leading_principal_minors(a, one):
    """Determinants of the leading principal r x r submatrices, r = 1..n.

    Berkowitz's recursion: only ring additions and multiplications, so it is
    valid over truncated power series where exact division is unavailable.
    """
    n = len(a)
    p = [one]
    dets = []
    for r in range(1, n + 1):
        k = r - 1
        row = a[k][:k]
        col = [a[i][k] for i in range(k)]
        toeplitz = [one, -a[k][k]]
        v = col
        for _ in range(k):
            s = None
            for x, y in zip(row, v):
                t = x * y
                s = t if s is None else s + t
            toeplitz.append(-s)
            v = [_dot(a[i][:k], v) for i in range(k)]
        new_p = []
        for i in range(r + 1):
            s = None
            for j in range(max(0, i - len(toeplitz) + 1), min(i, k) + 1):
                t = toeplitz[i - j] * p[j]
                s = t if s is None else s + t
            new_p.append(s)
        p = new_p
        dets.append(p[r] if r % 2 == 0 else -p[r])
    return dets


def _dot(u, v):
    s = None
    for x, y in zip(u, v):
        t = x * y
        s = t if s is None else s + t
    return s
