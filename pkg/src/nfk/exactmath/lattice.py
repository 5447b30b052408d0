"""Exact enumeration of integer vectors in a positive definite ellipsoid."""

from fractions import Fraction
from math import isqrt


class NotPositiveDefinite(ValueError):
    pass


class EnumerationLimit(RuntimeError):
    """Raised when more than ``limit`` vectors would be produced."""


def quadratic_form(gram, v):
    return sum(gram[i][j] * v[i] * v[j] for i in range(len(v)) for j in range(len(v)))


def ldl(gram):
    """Exact completion of squares: Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("Gram matrix is not symmetric")
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if a[i][i] <= 0:
            raise NotPositiveDefinite("Gram matrix is not positive definite")
        d[i] = a[i][i]
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= mu[i][j] * a[i][k]
    return d, mu


def _sqrt_upper(q):
    """A rational upper bound for sqrt(q), q >= 0."""
    q = Fraction(q)
    num, den = q.numerator, q.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    r = isqrt(num * den)
    if r * r < num * den:
        r += 1
    return Fraction(r, den)


def _gso(g):
    """Gram-Schmidt data (mu, squared lengths) of the basis with Gram matrix ``g``."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (g[i][j] - sum(mu[j][k] * mu[i][k] * b[k] for k in range(j))) / b[j]
        b[i] = g[i][i] - sum(mu[i][k] ** 2 * b[k] for k in range(i))
        if b[i] <= 0:
            raise NotPositiveDefinite("Gram matrix is not positive definite")
    return mu, b


def lll_gram(gram, delta=Fraction(3, 4)):
    """LLL reduction driven by a Gram matrix.

    Returns ``(G', U)`` with ``U`` unimodular and ``G' = U G U^T``.
    """
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(k, j, q):
        # b_k <- b_k - q b_j
        u[k] = [a - q * c for a, c in zip(u[k], u[j])]
        gkk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j]
        g[k] = [a - q * c for a, c in zip(g[k], g[j])]
        g[k][k] = gkk
        for i in range(n):
            if i != k:
                g[i][k] = g[k][i]

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            mu, _ = _gso(g)
            q = round(mu[k][j])
            if q:
                add_row(k, j, q)
        mu, b = _gso(g)
        if b[k] < (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            u[k], u[k - 1] = u[k - 1], u[k]
            g[k], g[k - 1] = g[k - 1], g[k]
            for row in g:
                row[k], row[k - 1] = row[k - 1], row[k]
            k = max(k - 1, 1)
        else:
            k += 1
    return g, u


def enumerate_bounded(gram, bound, limit=None):
    """All integer vectors ``v`` with ``v^T G v <= bound``.

    Fincke-Pohst style depth-first search on the exact square completion; the
    per-coordinate intervals are widened outward by one and then every
    candidate is checked exactly, so the output is complete.  Vectors are
    returned sorted by (norm, vector).
    """
    n = len(gram)
    bound = Fraction(bound)
    ldl(gram)  # validates symmetry and definiteness
    out = []
    if bound < 0:
        return out
    reduced, u = lll_gram(gram) if n > 1 else (gram, [[1]])
    d, mu = ldl(reduced)
    x = [0] * n

    def centre(i):
        return sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))

    def search(i, remaining):
        c = centre(i)
        r = _sqrt_upper(remaining / d[i])
        lo = int((-c - r).__floor__()) - 1
        hi = int((-c + r).__ceil__()) + 1
        for xi in range(lo, hi + 1):
            t = d[i] * (xi + c) ** 2
            if t > remaining:
                continue
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
                if limit is not None and len(out) > limit:
                    raise EnumerationLimit(f"more than {limit} lattice points")
            else:
                search(i - 1, remaining - t)
        x[i] = 0

    search(n - 1, bound)
    out = [tuple(sum(w[i] * u[i][j] for i in range(n)) for j in range(n)) for w in out]
    out.sort(key=lambda v: (quadratic_form(gram, v), v))
    return out


def cholesky_box(gram, bound):
    """Per-coordinate bounds |v_i| <= B_i valid for every v with v^T G v <= bound.

    Uses |v_i|^2 <= bound * (G^-1)_ii, evaluated exactly.
    """
    from .matrix import solve_rational

    n = len(gram)
    out = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        col = solve_rational(gram, e)
        if col is None:
            raise NotPositiveDefinite("singular Gram matrix")
        out.append(int(_sqrt_upper(Fraction(bound) * col[i]).__floor__()))
    return out
