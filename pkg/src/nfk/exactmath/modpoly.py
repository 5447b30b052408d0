"""Polynomials over GF(p) and their factorization.

Polynomials are coefficient tuples, lowest degree first, entries in ``range(p)``,
with no trailing zeros.  Factorization follows the usual three stages:
squarefree decomposition, distinct-degree splitting, and Cantor-Zassenhaus
equal-degree splitting driven by a seeded generator.
"""

import random
from dataclasses import dataclass

from sympy import isprime

DEFAULT_SEED = 0x5EED


def normalize(f, p):
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def add(f, g, p):
    n = max(len(f), len(g))
    return normalize([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def sub(f, g, p):
    n = max(len(f), len(g))
    return normalize([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], p)


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return normalize(out, p)


def scale(f, c, p):
    return normalize([c * a for a in f], p)


def make_monic(f, p):
    if not f:
        return f
    return scale(f, pow(f[-1], -1, p), p)


def divmod_mod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        q[shift] = c
        for i, b in enumerate(g):
            f[i + shift] = (f[i + shift] - c * b) % p
        while f and f[-1] == 0:
            f.pop()
    return normalize(q, p), tuple(f)


def rem(f, g, p):
    return divmod_mod(f, g, p)[1]


def quo(f, g, p):
    return divmod_mod(f, g, p)[0]


def gcd(f, g, p):
    while g:
        f, g = g, rem(f, g, p)
    return make_monic(f, p)


def derivative(f, p):
    return normalize([i * f[i] for i in range(1, len(f))], p)


def powmod(f, k, g, p):
    """``f**k mod g`` over GF(p)."""
    out = (1,)
    f = rem(f, g, p)
    while k:
        if k & 1:
            out = rem(mul(out, f, p), g, p)
        f = rem(mul(f, f, p), g, p)
        k >>= 1
    return out


def _pth_root(f, p):
    # f' = 0, so f(x) = h(x^p) and h^p = f in GF(p)[x]
    return tuple(f[i] for i in range(0, len(f), p))


def squarefree_decomposition(f, p):
    """List of (squarefree factor, multiplicity) for monic ``f``."""
    out = []
    f = make_monic(f, p)
    mult = 1
    while len(f) > 1:
        df = derivative(f, p)
        if not df:
            f = _pth_root(f, p)
            mult *= p
            continue
        c = gcd(f, df, p)
        w = quo(f, c, p)
        i = 1
        while len(w) > 1:
            y = gcd(w, c, p)
            z = quo(w, y, p)
            if len(z) > 1:
                out.append((z, i * mult))
            i += 1
            w = y
            c = quo(c, y, p)
        if len(c) > 1:
            f = _pth_root(c, p)
            mult *= p
        else:
            break
    return out


def distinct_degree(f, p):
    """Split squarefree monic ``f`` into (product of degree-d irreducibles, d) pairs."""
    out = []
    x = (0, 1)
    h = x
    d = 0
    while len(f) > 1:
        d += 1
        if 2 * d > len(f) - 1:
            out.append((f, len(f) - 1))
            break
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = quo(f, g, p)
            h = rem(h, f, p)
    return out


def equal_degree(f, d, p, rng):
    """Irreducible monic factors of ``f``, all of which have degree ``d``."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = normalize([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, acc = a, a
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            b = acc
        else:
            b = sub(powmod(a, (p**d - 1) // 2, f, p), (1,), p)
        g = gcd(f, b, p)
        if 1 < len(g) < len(f):
            return equal_degree(g, d, p, rng) + equal_degree(quo(f, g, p), d, p, rng)


def canonical_key(f):
    return (len(f), tuple(reversed(f)))


def factor_mod_p(f, p, seed=DEFAULT_SEED):
    """Factor ``f`` over GF(p) into monic irreducibles.

    Returns a list of ``(factor, multiplicity)`` pairs sorted by degree, then by
    coefficients from the leading term down.  The leading coefficient of ``f`` is
    dropped (the unit part).
    """
    if not isprime(p):
        raise ValueError("composite modulus")
    f = normalize(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    found = {}
    for sqf, mult in squarefree_decomposition(f, p):
        for block, d in distinct_degree(sqf, p):
            for g in equal_degree(block, d, p, rng):
                found[g] = found.get(g, 0) + mult
    return sorted(found.items(), key=lambda item: canonical_key(item[0]))


def is_irreducible(f, p):
    fac = factor_mod_p(f, p)
    return len(fac) == 1 and fac[0][1] == 1


@dataclass(frozen=True)
class ModPoly:
    coeffs: tuple
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", normalize(self.coeffs, self.p))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __str__(self):
        from .poly import to_string

        return to_string(self.coeffs)
