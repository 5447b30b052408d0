"""Number fields Q[x]/(f) and the splitting of rational primes.

The working order is the equation order Z[alpha], alpha a root of the stored
polynomial.  Primes are only factored when Dedekind's criterion shows they do
not divide the index [O_K : Z[alpha]].
"""

import re
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import divisors, factorint, isprime, primerange

from .errors import IndexUnsafe, InputError
from .exactmath import modpoly
from .exactmath import poly as P
from .exactmath.matrix import charpoly, determinant
from .exactmath.modpoly import ModPoly, factor_mod_p

IRREDUCIBILITY_PRIMES = 25

_TERM = re.compile(r"^(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_poly(text):
    """Parse ``"[c0,c1,...]"`` or a symbolic polynomial in ``x`` into coefficients."""
    s = "".join(str(text).split())
    if not s:
        raise InputError("empty polynomial")
    if s.startswith("["):
        if not s.endswith("]"):
            raise InputError(f"cannot parse polynomial {text!r}")
        try:
            coeffs = [int(c) for c in s[1:-1].split(",") if c != ""]
        except ValueError:
            raise InputError(f"cannot parse polynomial {text!r}") from None
        return P.strip(coeffs)
    if "(" in s or ")" in s:
        raise InputError("parentheses are not supported in polynomial input")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise InputError(f"cannot parse polynomial {text!r}")
    coeffs = {}
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        m = _TERM.match(body)
        if not m or (not m.group(1) and not m.group(2)):
            raise InputError(f"cannot parse term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            k = int(m.group(3)) if m.group(3) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
    n = max(coeffs)
    return P.strip(coeffs.get(i, 0) for i in range(n + 1))


@dataclass(frozen=True)
class NumberField:
    poly: tuple
    degree: int
    poly_discriminant: int
    field_discriminant_bound: int
    signature: tuple
    input_poly: tuple = None
    representation: str = "equation order"
    seed: int = dataclasses.field(default=modpoly.DEFAULT_SEED, compare=False)
    _cache: dict = dataclasses.field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def key(self):
        return list(self.poly)

    def __str__(self):
        return P.to_string(self.poly)


def create_field(coeffs, seed=modpoly.DEFAULT_SEED):
    """Validate a monic irreducible integer polynomial and build its field."""
    f = P.strip(int(c) for c in coeffs)
    if len(f) < 2:
        raise InputError("polynomial must have degree >= 1")
    if f[-1] != 1:
        raise InputError("non-monic polynomial")
    witness = irreducibility_witness(f)
    if witness is not None:
        raise InputError(f"reducible polynomial (factor {P.to_string(witness)})")
    stored, note = f, "equation order"
    if len(f) == 3 and f[1] == 0 and (-f[0]) % 4 == 1:
        d = -f[0]
        stored = (-(d - 1) // 4, -1, 1)
        note = f"maximal order of Q(sqrt({d})), re-presented from {P.to_string(f)}"
    n = len(stored) - 1
    disc = P.discriminant(stored)
    r1 = P.real_root_count(stored)
    return NumberField(
        poly=stored,
        degree=n,
        poly_discriminant=disc,
        field_discriminant_bound=largest_square_divisor_root(disc),
        signature=(r1, (n - r1) // 2),
        input_poly=f,
        representation=note,
        seed=seed,
    )


def largest_square_divisor_root(d):
    out = 1
    for q, k in factorint(abs(d)).items():
        out *= q ** (k // 2)
    return out


def _subset_sums(degrees):
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def irreducibility_witness(f):
    """None when ``f`` is irreducible over Q, else a proper monic factor.

    Factor-degree patterns modulo primes not dividing disc(f) bound the degrees
    any rational factor can have; an empty intersection (in particular one
    irreducible reduction) certifies irreducibility.  Otherwise Kronecker's
    method searches the surviving degrees exhaustively.
    """
    n = len(f) - 1
    if n == 1:
        return None
    disc = P.discriminant(f)
    if disc == 0:
        g = P.gcd_poly(f, P.derivative(f))
        return tuple(int(c) for c in g)
    possible = set(range(n + 1))
    used = 0
    for p in primerange(2, 10**6):
        if disc % p == 0:
            continue
        degs = [len(g) - 1 for g, e in factor_mod_p(f, p) for _ in range(e)]
        possible &= _subset_sums(degs)
        used += 1
        if possible == {0, n} or used >= IRREDUCIBILITY_PRIMES:
            break
    if possible == {0, n}:
        return None
    for d in sorted(k for k in possible if 0 < k <= n // 2):
        g = kronecker_factor(f, d)
        if g is not None:
            return g
    return None


def kronecker_factor(f, d):
    """A monic integer factor of ``f`` of degree ``d``, or None (exhaustive)."""
    candidates = sorted(range(-4 * len(f) - 4, 4 * len(f) + 5), key=abs)
    scored = []
    for a in candidates:
        v = P.evaluate(f, a)
        if v == 0:
            return (-a, 1)
        scored.append((len(divisors(abs(v))), abs(a), a, v))
    scored.sort()
    points = [(a, v) for _, _, a, v in scored[:d]]
    xs = [a for a, _ in points]
    base = (1,)
    for a in xs:
        base = P.mul(base, (-a, 1))
    choices = [[s * q for q in divisors(abs(v)) for s in (1, -1)] for _, v in points]
    for values in product(*choices):
        interp = _lagrange(xs, values)
        if interp is None:
            continue
        g = P.add(base, interp)
        if any(Fraction(c).denominator != 1 for c in g):
            continue
        g = tuple(int(c) for c in g)
        q, r = P.divmod_poly(f, g)
        if not r and all(Fraction(c).denominator == 1 for c in q):
            return g
    return None


def _lagrange(xs, ys):
    out = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = (Fraction(yi),)
        for j, xj in enumerate(xs):
            if j != i:
                term = P.mul(term, (Fraction(-xj, xi - xj), Fraction(1, xi - xj)))
        out = P.add(out, term)
    return out


# --- field elements in power-basis coordinates ------------------------------


def elem_mul(K, a, b):
    prod = P.mul(P.strip(a), P.strip(b))
    r = P.rem(prod, K.poly) if len(prod) > K.degree else prod
    return _pad(r, K.degree)


def _pad(r, n):
    r = list(r) + [0] * (n - len(r))
    return tuple(r)


def elem_pow(K, a, k):
    out = _pad((1,), K.degree)
    while k:
        if k & 1:
            out = elem_mul(K, out, a)
        a = elem_mul(K, a, a)
        k >>= 1
    return out


def mult_matrix(K, a):
    """Rows are the coordinates of ``a * alpha^i``."""
    n = K.degree
    rows = []
    cur = _pad(a, n)
    x = _pad((0, 1), n) if n > 1 else (K.poly[0] * -1,)
    for _ in range(n):
        rows.append(list(cur))
        cur = elem_mul(K, cur, x)
    return rows


def elem_norm(K, a):
    return determinant(mult_matrix(K, a))


def elem_charpoly(K, a):
    return charpoly(mult_matrix(K, a))


def alpha_power_basis(K):
    return [_pad((0,) * i + (1,), K.degree) for i in range(K.degree)]


# --- splitting of rational primes --------------------------------------------


@dataclass(frozen=True)
class PrimeIdealSlot:
    p: int
    e: int
    f: int
    generator_poly: ModPoly

    @property
    def norm(self):
        return self.p**self.f


@dataclass(frozen=True)
class SplittingRecord:
    p: int
    slots: tuple
    index_safe: bool = True

    @property
    def g(self):
        return len(self.slots)

    @property
    def ef(self):
        return sorted((s.e, s.f) for s in self.slots)


def _lift(g):
    return tuple(g)


def index_safe(K, p):
    """Dedekind's criterion: True iff p does not divide [O_K : Z[alpha]]."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    cache = K._cache.setdefault("index_safe", {})
    if p in cache:
        return cache[p]
    if K.poly_discriminant % (p * p) != 0:
        cache[p] = True
        return True
    f = K.poly
    fac = factor_mod_p(f, p, K.seed)
    g = (1,)
    h = (1,)
    for gi, e in fac:
        g = P.mul(g, _lift(gi))
        h = P.mul(h, P.power(_lift(gi), e - 1))
    F = P.sub(f, P.mul(g, h))
    if any(c % p for c in F):
        raise AssertionError("mod-p factorization does not reproduce f")
    Fbar = modpoly.normalize([c // p for c in F], p)
    gbar = modpoly.normalize(g, p)
    hbar = modpoly.normalize(h, p)
    common = modpoly.gcd(modpoly.gcd(gbar, hbar, p), Fbar, p) if Fbar else modpoly.gcd(gbar, hbar, p)
    safe = len(common) == 1
    cache[p] = safe
    return safe


def split_prime(K, p):
    """Factor p in O_K via Dedekind's theorem (requires an index-safe prime)."""
    if not index_safe(K, p):
        raise IndexUnsafe(p)
    cache = K._cache.setdefault("split", {})
    if p in cache:
        return cache[p]
    slots = [PrimeIdealSlot(p=p, e=e, f=len(g) - 1, generator_poly=ModPoly(g, p)) for g, e in factor_mod_p(K.poly, p, K.seed)]
    slots.sort(key=lambda s: (s.f, s.e, tuple(reversed(s.generator_poly.coeffs))))
    rec = SplittingRecord(p=p, slots=tuple(slots))
    cache[p] = rec
    return rec


def g_count(K, p):
    return split_prime(K, p).g
