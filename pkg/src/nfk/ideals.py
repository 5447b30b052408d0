"""Integral ideals of the working order, principality and class data.

Ideals are Z-lattices in power-basis coordinates, kept as n x n row Hermite
forms.  Class orders come from one of three backends: reduced binary forms
(imaginary quadratic fields), a lattice search for generators, or values the
user supplies.
"""

import dataclasses
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy import divisors

from . import forms
from .errors import ClassDataUnavailable
from .exactmath import poly as P
from .exactmath.lattice import EnumerationLimit, enumerate_bounded, quadratic_form
from .exactmath.matrix import hermite_form, mat_mul, reduce_vector, transpose
from .numberfield import alpha_power_basis, elem_mul, elem_norm

DEFAULT_ENUM_CAP = 200_000
DEFAULT_SEARCH_BUDGET = 12


@dataclass(frozen=True)
class IntegralIdeal:
    field: object = dataclasses.field(repr=False, compare=False)
    basis: tuple

    @property
    def norm(self):
        out = 1
        for i, row in enumerate(self.basis):
            out *= row[i]
        return out

    def __contains__(self, x):
        return contains(self, x)


@dataclass(frozen=True)
class PrimeIdeal:
    slot: object
    ideal: IntegralIdeal
    index: int = 0

    @property
    def p(self):
        return self.slot.p

    @property
    def key(self):
        return (self.slot.p, self.index)


def _same_field(a, b):
    if a.field.poly != b.field.poly:
        raise ValueError("ideals belong to different fields")


def ideal_from_rows(K, rows):
    n = K.degree
    hnf = [r for r in hermite_form(rows) if any(r)]
    if len(hnf) != n:
        raise ValueError("generators do not span a full-rank lattice")
    return IntegralIdeal(K, tuple(tuple(r) for r in hnf))


def ideal_from_generators(K, gens):
    """Ideal of Z[alpha] generated by the given integral elements."""
    rows = []
    for g in gens:
        cur = tuple(int(c) for c in g) + (0,) * (K.degree - len(g))
        for b in alpha_power_basis(K):
            rows.append(list(elem_mul(K, cur, b)))
    return ideal_from_rows(K, rows)


def unit_ideal(K):
    return ideal_from_generators(K, [(1,)])


def principal_ideal(K, x):
    return ideal_from_generators(K, [x])


def ideal_mul(a, b):
    _same_field(a, b)
    K = a.field
    rows = [list(elem_mul(K, x, y)) for x in a.basis for y in b.basis]
    return ideal_from_rows(K, rows)


def ideal_add(a, b):
    _same_field(a, b)
    return ideal_from_rows(a.field, [list(r) for r in a.basis + b.basis])


def ideal_pow(a, k):
    out = unit_ideal(a.field)
    base = a
    while k:
        if k & 1:
            out = ideal_mul(out, base)
        base = ideal_mul(base, base)
        k >>= 1
    return out


def ideal_norm(a):
    return a.norm


def contains(a, x):
    x = list(x) + [0] * (a.field.degree - len(x))
    if any(Fraction(c).denominator != 1 for c in x):
        return False
    return not any(reduce_vector(a.basis, [int(c) for c in x]))


def reduce_mod(a, x):
    """Canonical representative of ``x`` modulo ``a`` (coordinates in [0, pivot))."""
    return tuple(reduce_vector(a.basis, list(x) + [0] * (a.field.degree - len(x))))


def prime_ideal_from_slot(K, record, i):
    if not record.index_safe:
        raise ValueError("prime divides index; splitting uncertified")
    if not 0 <= i < len(record.slots):
        raise IndexError(f"slot index {i} out of range")
    slot = record.slots[i]
    g = tuple(slot.generator_poly.coeffs)
    gen = g + (0,) * (K.degree - len(g)) if len(g) <= K.degree else P.rem(g, K.poly)
    ideal = ideal_from_generators(K, [(record.p,), gen])
    if ideal.norm != slot.norm:
        raise AssertionError("prime ideal norm mismatch")
    return PrimeIdeal(slot=slot, ideal=ideal, index=i)


def prime_ideals_above(K, record):
    return [prime_ideal_from_slot(K, record, i) for i in range(record.g)]


# --- the T2 form ----------------------------------------------------------------


def _power_sums(f, count):
    """Newton power sums s_k = sum of alpha_i^k over the roots of monic ``f``."""
    n = len(f) - 1
    a = [None] + [f[n - i] for i in range(1, n + 1)]  # f = x^n + a1 x^(n-1) + ... + an
    s = [n]
    for k in range(1, count):
        acc = sum(a[i] * s[k - i] for i in range(1, min(k - 1, n) + 1))
        if k <= n:
            acc += k * a[k]
        s.append(-acc)
    return s


def t2_gram(K):
    """Gram matrix of T2(x) = sum over embeddings |sigma(x)|^2 on the power basis.

    Returns ``(gram, exact)``.  Totally real fields and quadratic fields get an
    exact rational matrix; otherwise entries are high-precision approximations
    rounded to rationals, with absolute error below 2**-150.
    """
    cached = K._cache.get("t2")
    if cached:
        return cached
    n = K.degree
    r1, r2 = K.signature
    if r2 == 0:
        s = _power_sums(K.poly, 2 * n)
        gram = [[Fraction(s[i + j]) for j in range(n)] for i in range(n)]
        out = (gram, True)
    elif n == 2:
        c, b = K.poly[0], K.poly[1]
        gram = [[Fraction(2), Fraction(-b)], [Fraction(-b), Fraction(2 * c)]]
        out = (gram, True)
    else:
        with mpmath.workdps(80):
            roots = mpmath.polyroots(list(reversed(K.poly)), maxsteps=500, extraprec=400)
            gram = []
            scale = 2**160
            for i in range(n):
                row = []
                for j in range(n):
                    v = mpmath.fsum(mpmath.re(z**i * mpmath.conj(z) ** j) for z in roots)
                    row.append(Fraction(int(mpmath.nint(v * scale)), scale))
                gram.append(row)
        for i in range(n):
            for j in range(i):
                gram[i][j] = gram[j][i]
        out = (gram, False)
    K._cache["t2"] = out
    return out


def t2(K, x):
    gram, _ = t2_gram(K)
    return quadratic_form(gram, list(x))


def ideal_gram(a):
    gram, exact = t2_gram(a.field)
    B = [[Fraction(c) for c in row] for row in a.basis]
    return mat_mul(mat_mul(B, gram), transpose(B)), exact


# --- principality ---------------------------------------------------------------


@dataclass(frozen=True)
class Principality:
    status: str  # "principal", "not_principal", "unknown"
    generator: tuple = None

    @property
    def is_principal(self):
        return self.status == "principal"


def _ceil_root(x, n):
    r = int(round(x ** (1.0 / n)))
    while r**n < x:
        r += 1
    while r > 0 and (r - 1) ** n >= x:
        r -= 1
    return r


def unit_rank(K):
    r1, r2 = K.signature
    return r1 + r2 - 1


def search_bound(a):
    K = a.field
    n = K.degree
    return n * _ceil_root(a.norm**2 * abs(K.poly_discriminant), n)


def is_principal(a, cap=DEFAULT_ENUM_CAP):
    """Search ``a`` for an element whose norm equals N(a).

    A found generator is re-verified (membership and norm).  A negative answer is
    only given when the unit group is finite and the Gram matrix is exact, since
    then the search region provably contains every generator up to sign.
    """
    K = a.field
    N = a.norm
    if N == 1:
        return Principality("principal", (1,) + (0,) * (K.degree - 1))
    gram, exact = ideal_gram(a)
    try:
        vecs = enumerate_bounded(gram, search_bound(a), limit=cap)
    except EnumerationLimit:
        return Principality("unknown")
    for v in vecs:
        if not any(v):
            continue
        x = tuple(sum(v[i] * a.basis[i][j] for i in range(K.degree)) for j in range(K.degree))
        if abs(elem_norm(K, x)) == N:
            if not contains(a, x):
                raise AssertionError("principality certificate outside the ideal")
            return Principality("principal", x)
    if exact and unit_rank(K) == 0:
        return Principality("not_principal")
    return Principality("unknown")


# --- class data -------------------------------------------------------------


def is_imaginary_quadratic(K):
    return K.degree == 2 and K.signature == (0, 1)


def iq_class_number(K):
    if not is_imaginary_quadratic(K):
        raise ValueError("field is not imaginary quadratic")
    return forms.class_number(K.poly_discriminant)


def ideal_form(P_):
    """Binary form attached to a degree-one prime of an imaginary quadratic order."""
    K = P_.ideal.field
    b0 = K.poly[1]
    g = P_.slot.generator_poly.coeffs
    p = P_.p
    r = (-g[0]) % p
    b = 2 * r + b0
    D = K.poly_discriminant
    if (b * b - D) % (4 * p):
        raise AssertionError("ideal form construction failed")
    return (p, b, (b * b - D) // (4 * p))


@dataclass
class ClassData:
    field: object = dataclasses.field(repr=False)
    h: int = None
    backend: str = "search"
    per_prime_orders: dict = dataclasses.field(default_factory=dict)
    manual: dict = dataclasses.field(default_factory=dict)
    enum_cap: int = DEFAULT_ENUM_CAP
    search_budget: int = DEFAULT_SEARCH_BUDGET


def forms_available(K):
    return is_imaginary_quadratic(K) and forms.is_fundamental(K.poly_discriminant)


def make_class_data(K, backend=None, h=None, hp=None, enum_cap=DEFAULT_ENUM_CAP):
    """Pick a backend and assemble class data.

    ``hp`` maps ``(p, slot)`` to a user-supplied class order.  With no explicit
    backend: forms for imaginary quadratic fields of fundamental discriminant,
    manual when values were supplied, search otherwise.
    """
    hp = dict(hp or {})
    if backend is None:
        if forms_available(K):
            backend = "forms"
        elif hp:
            backend = "manual"
        else:
            backend = "search"
    if backend == "forms":
        if not forms_available(K):
            raise ClassDataUnavailable("forms backend needs an imaginary quadratic maximal order")
        known = iq_class_number(K)
        if h is not None and h != known:
            raise ClassDataUnavailable(f"supplied h={h} disagrees with forms count {known}")
        h = known
    elif backend == "search":
        if K.degree == 1:
            h = 1
    elif backend != "manual":
        raise ValueError(f"unknown class backend {backend!r}")
    return ClassData(field=K, h=h, backend=backend, manual=hp, enum_cap=enum_cap)


def class_order_of_prime(K, P_, class_data):
    """Order h_p of the class of the prime ideal ``P_``."""
    key = P_.key
    if key in class_data.per_prime_orders:
        return class_data.per_prime_orders[key]
    if key in class_data.manual:
        k = class_data.manual[key]
    elif class_data.backend == "manual":
        raise ClassDataUnavailable(f"no manual h_p for prime {key[0]} slot {key[1]}")
    elif class_data.backend == "forms":
        k = forms_class_order(K, P_)
    else:
        k = search_class_order(K, P_, class_data)
    if k < 1 or (class_data.h is not None and class_data.h % k):
        raise ClassDataUnavailable(f"h_p={k} inconsistent with h={class_data.h}")
    class_data.per_prime_orders[key] = k
    return k


def forms_class_order(K, P_):
    if P_.slot.f > 1:
        return 1
    return forms.form_order(ideal_form(P_))


def search_class_order(K, P_, class_data):
    h = class_data.h
    candidates = divisors(h) if h is not None else range(1, class_data.search_budget + 1)
    status = {}
    for k in candidates:
        res = is_principal(ideal_pow(P_.ideal, k), class_data.enum_cap)
        status[k] = res.status
        if res.is_principal:
            if all(status.get(j) == "not_principal" for j in divisors(k) if j < k):
                return k
            raise ClassDataUnavailable(f"principality undecided below k={k} for prime {P_.p}")
    raise ClassDataUnavailable(f"no principal power of the prime above {P_.p} found")
