"""Roots of unity in the ring of integers, p_max and the good-prime test."""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import mpmath
from sympy import factorint, totient

from .exactmath import poly as P
from .exactmath.lattice import cholesky_box, enumerate_bounded
from .ideals import contains, t2_gram
from .numberfield import elem_charpoly, elem_mul, elem_norm, index_safe

PREFILTER_TOL = 1e-9


@dataclass(frozen=True)
class TorsionData:
    m: int
    zeta: tuple  # power-basis coordinates (Fractions)
    p_max: int = None

    @property
    def denominator(self):
        return lcm(*(Fraction(c).denominator for c in self.zeta))


def _one(n):
    return (Fraction(1),) + (Fraction(0),) * (n - 1)


def order_denominator(K):
    """A d with O_K contained in (1/d) Z[alpha]: only primes failing Dedekind's test count."""
    d = 1
    for q, k in factorint(abs(K.poly_discriminant)).items():
        if k >= 2 and not index_safe(K, q):
            d *= q ** (k // 2)
    return d


def _max_order(n):
    """Largest k with phi(k) <= n."""
    k, best = 1, 1
    while k <= 4 * n * n + 6:
        if totient(k) <= n:
            best = k
        k += 1
    return best


def _embeddings(K):
    with mpmath.workdps(40):
        return mpmath.polyroots(list(reversed(K.poly)), maxsteps=400, extraprec=200)


def _numerically_on_circle(roots, x):
    for z in roots:
        val = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * z**i for i, c in enumerate(x))
        if abs(abs(val) - 1) > PREFILTER_TOL:
            return False
    return True


def element_order(K, x, kmax):
    one = _one(K.degree)
    cur = x
    for k in range(1, kmax + 1):
        if cur == one:
            return k
        cur = tuple(Fraction(c) for c in elem_mul(K, cur, x))
    return None


def _is_algebraic_integer(K, x):
    return all(Fraction(c).denominator == 1 for c in elem_charpoly(K, x))


def torsion_units(K):
    """All roots of unity of O_K as ``{coords: order}``, found by exhaustive search."""
    n = K.degree
    if K.signature[0] > 0:
        minus_one = (Fraction(-1),) + (Fraction(0),) * (n - 1)
        return {_one(n): 1, minus_one: 2}
    d = order_denominator(K)
    gram, exact = t2_gram(K)
    bound = Fraction(4 * n + 1, 4) * d * d
    if not exact:
        # entrywise error < 2**-150; make sure it cannot push a point across the 1/4 margin
        box = cholesky_box(gram, bound + 1)
        assert Fraction(sum(box) ** 2, 2**150) < Fraction(1, 8)
    roots = _embeddings(K)
    kmax = _max_order(n)
    found = {}
    for v in enumerate_bounded(gram, bound):
        if not any(v):
            continue
        x = tuple(Fraction(c, d) for c in v)
        if d > 1 and not _is_algebraic_integer(K, x):
            continue
        if not _numerically_on_circle(roots, x):
            continue
        k = element_order(K, x, kmax)
        if k is not None:
            found[x] = k
    return found


def roots_of_unity(K):
    cached = K._cache.get("torsion")
    if cached:
        return cached
    units = torsion_units(K)
    m = max(units.values())
    if len(units) != m:
        raise AssertionError(f"torsion group of size {len(units)} is not cyclic of order {m}")
    zeta = min(x for x, k in units.items() if k == m)
    t = TorsionData(m=m, zeta=zeta, p_max=p_max(K, m, zeta))
    K._cache["torsion"] = t
    return t


def zeta_powers(K, t):
    cached = K._cache.get("zeta_powers")
    if cached:
        return cached
    out = [_one(K.degree)]
    for _ in range(1, t.m):
        out.append(tuple(Fraction(c) for c in elem_mul(K, out[-1], t.zeta)))
    K._cache["zeta_powers"] = out
    return out


def p_max(K, m, zeta):
    """Largest prime dividing N(1 - zeta^i) for some 1 <= i < m (norms as determinants)."""
    best = None
    power = _one(K.degree)
    for _ in range(1, m):
        power = tuple(Fraction(c) for c in elem_mul(K, power, zeta))
        y = tuple(Fraction(int(j == 0)) - c for j, c in enumerate(power))
        norm = Fraction(elem_norm(K, y))
        assert norm.denominator == 1 and norm != 0
        for q in factorint(abs(norm.numerator)):
            best = q if best is None else max(best, q)
    return best


def is_good_prime(K, t, P_):
    """True iff 1 - zeta^i lies outside the prime ideal for every 1 <= i < m."""
    powers = zeta_powers(K, t)
    for i in range(1, t.m):
        y = tuple(Fraction(int(j == 0)) - c for j, c in enumerate(powers[i]))
        den = lcm(*(c.denominator for c in y))
        assert den % P_.p != 0, "root of unity denominator not invertible at p"
        if contains(P_.ideal, tuple(int(c * den) for c in y)):
            return False
    return True


def torsion_summary(t):
    den = t.denominator
    return {"m": t.m, "zeta": [int(c * den) for c in t.zeta], "zeta_denominator": den, "p_max": t.p_max}


def zeta_string(t):
    den = t.denominator
    s = P.to_string(P.strip(int(c * den) for c in t.zeta), var="a")
    return s if den == 1 else f"({s})/{den}"
