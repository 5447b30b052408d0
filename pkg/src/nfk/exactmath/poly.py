"""Dense univariate polynomials over the integers and the rationals.

A polynomial ``c0 + c1*x + ... + cn*x^n`` is stored as a tuple ``(c0, c1, ..., cn)``
with a nonzero last entry; the zero polynomial is the empty tuple.  Coefficients
may be ``int`` or ``fractions.Fraction``; nothing here ever touches floats.
"""

from dataclasses import dataclass
from fractions import Fraction


def strip(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def degree(f):
    """Degree of ``f``; -1 for the zero polynomial."""
    return len(strip(f)) - 1


def lc(f):
    f = strip(f)
    return f[-1] if f else 0


def add(f, g):
    n = max(len(f), len(g))
    return strip((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def neg(f):
    return tuple(-c for c in f)


def sub(f, g):
    return add(f, neg(g))


def scale(f, c):
    return strip(c * a for a in f)


def mul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return strip(out)


def power(f, k):
    out = (1,)
    while k:
        if k & 1:
            out = mul(out, f)
        f = mul(f, f)
        k >>= 1
    return out


def divmod_poly(f, g):
    """Quotient and remainder over Q (exact over Z when ``g`` is monic)."""
    f, g = list(strip(f)), strip(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg, lead = len(g) - 1, g[-1]
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        c = f[-1]
        c = c * lead if lead in (1, -1) else Fraction(c) / lead
        shift = len(f) - 1 - dg
        q[shift] = c
        for i, b in enumerate(g):
            f[i + shift] -= c * b
        f = list(strip(f))
    return strip(q), strip(f)


def rem(f, g):
    return divmod_poly(f, g)[1]


def derivative(f):
    return strip(i * f[i] for i in range(1, len(f)))


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def compose_linear(f, a, b):
    """Return ``f(a*x + b)``."""
    out = ()
    lin = strip((b, a))
    for c in reversed(f):
        out = add(mul(out, lin), (c,))
    return out


def content(f):
    from math import gcd

    g = 0
    for c in f:
        g = gcd(g, int(c))
    return g


def resultant(f, g):
    """Resultant of ``f`` and ``g`` by the Euclidean remainder sequence over Q."""
    f, g = strip(f), strip(g)
    if not f or not g:
        return 0
    sign = 1
    acc = Fraction(1)
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return _as_int(sign * acc * Fraction(g[0]) ** m)
        r = rem(f, g)
        if not r:
            return 0
        k = len(r) - 1
        if (m * n) % 2:
            sign = -sign
        acc *= Fraction(g[-1]) ** (m - k)
        f, g = g, r


def discriminant(f):
    f = strip(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant of a constant polynomial")
    if n == 1:
        return 1
    r = Fraction(resultant(f, derivative(f))) / f[-1]
    if (n * (n - 1) // 2) % 2:
        r = -r
    return _as_int(r)


def _as_int(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def gcd_poly(f, g):
    """Monic gcd over Q."""
    f, g = strip(f), strip(g)
    while g:
        f, g = g, rem(f, g)
    if not f:
        return ()
    return strip(Fraction(c) / f[-1] for c in f)


def is_squarefree(f):
    return degree(gcd_poly(f, derivative(f))) == 0


def sturm_sequence(f):
    seq = [strip(f), derivative(f)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(neg(r))
    return [s for s in seq if s]


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def real_root_count(f):
    """Number of distinct real roots of a squarefree polynomial (Sturm)."""
    f = strip(f)
    if degree(f) < 1:
        return 0
    if not is_squarefree(f):
        raise ValueError("not squarefree")
    seq = sturm_sequence(f)
    at_neg_inf = [lc(s) * (-1) ** degree(s) for s in seq]
    at_pos_inf = [lc(s) for s in seq]
    return _sign_changes(at_neg_inf) - _sign_changes(at_pos_inf)


def to_string(f, var="x"):
    f = strip(f)
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", strip(int(c) for c in self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __str__(self):
        return to_string(self.coeffs)
