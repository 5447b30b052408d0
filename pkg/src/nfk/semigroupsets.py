"""Finite-support model of constructible sets in the ax+b-semigroup over O_K.

A constructible set is a product (b + a) x (multiplicative part) where ``a`` is an
ideal supported on a finite set S of prime ideals.  Everything is observed in the
finite quotient R/M with M = prod_{q in S} q^k; there the multiplicative part of
a full set (b + a) x a^x is the set of elements of ``a`` that stay nonzero at
every q in S, and that of a p-difference set (b + a) x (a \\ pa) additionally has
p-valuation exactly v_p(a).  Coset intersections are done by CRT; the brute
force enumerations serve as the oracle.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import LevelTooSmall
from .exactmath.matrix import solve_integer
from .ideals import ideal_mul, ideal_pow, reduce_mod, unit_ideal

FULL, PDIFF, EMPTY_KIND = "full", "pdiff", "empty"


@dataclass(frozen=True)
class SupportedIdeal:
    support: tuple  # PrimeIdeal objects, no duplicates
    valuations: tuple

    def __post_init__(self):
        if len(self.support) != len(self.valuations):
            raise ValueError("support and valuations differ in length")
        if len(set(self.support)) != len(self.support):
            raise ValueError("duplicate prime in support")

    def valuation(self, P_):
        for q, v in zip(self.support, self.valuations):
            if q == P_:
                return v
        return 0

    def extend(self, support):
        return SupportedIdeal(tuple(support), tuple(self.valuation(q) for q in support))

    @property
    def is_integral(self):
        return all(v >= 0 for v in self.valuations)

    def ideal(self):
        """The integral ideal prod q^v_q (nonnegative valuations only)."""
        if not self.is_integral:
            raise ValueError("fractional ideal has no integral lattice")
        if not self.support:
            raise ValueError("empty support")
        out = unit_ideal(self.support[0].ideal.field)
        for q, v in zip(self.support, self.valuations):
            if v:
                out = ideal_mul(out, _prime_power(q, v))
        return out


@lru_cache(maxsize=None)
def _prime_power(P_, v):
    return ideal_pow(P_.ideal, v)


def merge_supports(*supports):
    out = []
    for s in supports:
        for q in s:
            if q not in out:
                out.append(q)
    return tuple(out)


def ideal_max(a, b):
    """Valuation-wise maximum (intersection of ideals)."""
    S = merge_supports(a.support, b.support)
    a, b = a.extend(S), b.extend(S)
    return SupportedIdeal(S, tuple(max(x, y) for x, y in zip(a.valuations, b.valuations)))


def ideal_min(a, b):
    """Valuation-wise minimum (sum of ideals)."""
    S = merge_supports(a.support, b.support)
    a, b = a.extend(S), b.extend(S)
    return SupportedIdeal(S, tuple(min(x, y) for x, y in zip(a.valuations, b.valuations)))


@dataclass(frozen=True)
class ConstructibleSet:
    kind: str
    rep: tuple = None
    ideal: SupportedIdeal = None
    marked: object = None

    @property
    def is_empty(self):
        return self.kind == EMPTY_KIND

    @property
    def support(self):
        return () if self.is_empty else self.ideal.support

    def describe(self):
        if self.is_empty:
            return "empty"
        vals = ",".join(f"{q.p}.{q.index}^{v}" for q, v in zip(self.ideal.support, self.ideal.valuations))
        tail = f" minus p{self.marked.p}.{self.marked.index}" if self.kind == PDIFF else ""
        return f"({list(self.rep)} + [{vals}]){tail}"


EMPTY = ConstructibleSet(EMPTY_KIND)


def _normalized(kind, rep, ideal, marked=None):
    if not ideal.is_integral:
        raise ValueError("finite model needs integral ideals")
    K = ideal.support[0].ideal.field
    rep = tuple(int(c) for c in rep) + (0,) * (K.degree - len(rep))
    rep = reduce_mod(ideal.ideal(), rep)
    return ConstructibleSet(kind, rep, ideal, marked)


def full_set(rep, ideal):
    """(rep + a) x a^x."""
    return _normalized(FULL, rep, ideal)


def pdiff_set(rep, ideal, marked):
    """(rep + a) x (a minus marked*a)."""
    if marked not in ideal.support:
        raise ValueError("marked prime must lie in the support")
    return _normalized(PDIFF, rep, ideal, marked)


def _crt(rep1, ideal1, rep2, ideal2):
    """A common element of rep1 + a1 and rep2 + a2, or None if the cosets are disjoint."""
    a1, a2 = ideal1.ideal(), ideal2.ideal()
    diff = [y - x for x, y in zip(rep1, rep2)]
    u = solve_integer([list(r) for r in a1.basis + a2.basis], diff)
    if u is None:
        return None
    n = len(rep1)
    x = [sum(u[i] * a1.basis[i][j] for i in range(n)) for j in range(n)]
    return tuple(r + c for r, c in zip(rep1, x))


def _coset_meet(X1, X2):
    S = merge_supports(X1.ideal.support, X2.ideal.support)
    i1, i2 = X1.ideal.extend(S), X2.ideal.extend(S)
    b = _crt(X1.rep, i1, X2.rep, i2)
    return b, ideal_max(i1, i2)


def intersect(X1, X2):
    """Intersection of two full constructible sets."""
    if X1.is_empty or X2.is_empty:
        return EMPTY
    if X1.kind != FULL or X2.kind != FULL:
        raise ValueError("intersect expects full sets; use pdiff_intersect or meet")
    b, top = _coset_meet(X1, X2)
    if b is None:
        return EMPTY
    return full_set(b, top)


def pdiff_intersect(X1, X2):
    """Intersection of two p-difference sets with the same marked prime."""
    if X1.is_empty or X2.is_empty:
        return EMPTY
    if X1.kind != PDIFF or X2.kind != PDIFF:
        raise ValueError("pdiff_intersect expects p-difference sets")
    if X1.marked != X2.marked:
        raise ValueError("marked prime mismatch")
    p = X1.marked
    if X1.ideal.valuation(p) != X2.ideal.valuation(p):
        return EMPTY
    b, top = _coset_meet(X1, X2)
    if b is None:
        return EMPTY
    return pdiff_set(b, top, p)


def meet(X1, X2):
    """Intersection of any two constructible sets of the kinds above."""
    if X1.is_empty or X2.is_empty:
        return EMPTY
    if X1.kind == FULL and X2.kind == FULL:
        return intersect(X1, X2)
    if X1.kind == PDIFF and X2.kind == PDIFF:
        if X1.marked != X2.marked:
            raise ValueError("sets marked at different primes")
        return pdiff_intersect(X1, X2)
    if X1.kind == FULL:
        X1, X2 = X2, X1
    p = X1.marked
    # (a minus pa) meets b only when v_p(a) >= v_p(b)
    if X1.ideal.valuation(p) < X2.ideal.valuation(p):
        return EMPTY
    b, top = _coset_meet(X1, X2)
    if b is None:
        return EMPTY
    return pdiff_set(b, top, p)


# --- finite quotients ---------------------------------------------------------


class Level:
    """The quotient R/M, M = prod_{q in S} q^k, with per-prime residue labels."""

    def __init__(self, support, k):
        if not support:
            raise ValueError("empty support")
        self.support = tuple(support)
        self.k = k
        self.field = support[0].ideal.field
        modulus = SupportedIdeal(self.support, (k,) * len(self.support)).ideal()
        self.modulus = modulus
        diag = [modulus.basis[i][i] for i in range(self.field.degree)]
        grids = np.indices(diag).reshape(len(diag), -1).T
        self.residues = [tuple(int(c) for c in row) for row in grids]
        self.size = len(self.residues)
        self.index = {r: i for i, r in enumerate(self.residues)}
        self._labels = {}
        self.valuations = np.stack([self._valuation_column(j) for j in range(len(self.support))], axis=1)

    def labels(self, j, v):
        """Class label of every residue modulo q_j^v."""
        key = (j, v)
        if key not in self._labels:
            if v == 0:
                self._labels[key] = np.zeros(self.size, dtype=np.int64)
            else:
                ideal = _prime_power(self.support[j], v)
                seen = {}
                out = np.empty(self.size, dtype=np.int64)
                for i, r in enumerate(self.residues):
                    out[i] = seen.setdefault(reduce_mod(ideal, r), len(seen))
                self._labels[key] = out
        return self._labels[key]

    def _valuation_column(self, j):
        val = np.zeros(self.size, dtype=np.int64)
        for v in range(1, self.k + 1):
            zero_label = self.labels(j, v)[self.index[(0,) * self.field.degree]]
            val += self.labels(j, v) == zero_label
        return val

    def label_of(self, j, v, x):
        ideal = _prime_power(self.support[j], v) if v else None
        if ideal is None:
            return 0
        r = reduce_mod(self.modulus, x)
        return int(self.labels(j, v)[self.index[r]])


_LEVELS = {}


def get_level(support, k):
    key = (tuple(support), k)
    if key not in _LEVELS:
        _LEVELS[key] = Level(support, k)
    return _LEVELS[key]


@dataclass(frozen=True)
class FiniteSet:
    """Image of a constructible set in R/M x R/M, as additive x multiplicative residues."""

    level: object
    additive: frozenset
    multiplicative: frozenset

    @property
    def is_empty(self):
        return not self.additive or not self.multiplicative

    def __eq__(self, other):
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return self.additive == other.additive and self.multiplicative == other.multiplicative

    def __hash__(self):
        return 0 if self.is_empty else hash((self.additive, self.multiplicative))

    def __le__(self, other):
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return self.additive <= other.additive and self.multiplicative <= other.multiplicative

    def __and__(self, other):
        return FiniteSet(self.level, self.additive & other.additive, self.multiplicative & other.multiplicative)

    def __len__(self):
        return 0 if self.is_empty else len(self.additive) * len(self.multiplicative)

    def pairs(self):
        if self.is_empty:
            return set()
        res = self.level.residues
        return {(res[a], res[m]) for a in self.additive for m in self.multiplicative}


def max_valuation(X):
    return max(X.ideal.valuations) if not X.is_empty and X.ideal.valuations else 0


def enumerate_at_level(X, k, support=None):
    """The exact image of ``X`` in (R/M) x (R/M), M = prod_{q in support} q^k."""
    support = tuple(support) if support is not None else X.support
    if X.is_empty:
        return FiniteSet(None, frozenset(), frozenset())
    if any(q not in support for q in X.support):
        raise ValueError("set support not contained in the enumeration support")
    if k < max_valuation(X) + 1:
        raise LevelTooSmall(f"level too small: need k >= {max_valuation(X) + 1}, got {k}")
    L = get_level(support, k)
    ideal = X.ideal.extend(support)
    add_mask = np.ones(L.size, dtype=bool)
    mul_mask = np.ones(L.size, dtype=bool)
    for j, v in enumerate(ideal.valuations):
        if v:
            add_mask &= L.labels(j, v) == L.label_of(j, v, X.rep)
        col = L.valuations[:, j]
        mul_mask &= (col >= v) & (col < k)
        if X.kind == PDIFF and support[j] == X.marked:
            mul_mask &= col == v
    return FiniteSet(L, frozenset(np.flatnonzero(add_mask).tolist()), frozenset(np.flatnonzero(mul_mask).tolist()))


def minimal_level(sets):
    return max((max_valuation(X) for X in sets), default=0) + 1


def common_support(sets):
    return merge_supports(*(X.support for X in sets))


# --- families, independence, filters ----------------------------------------


def residues_mod(ideal):
    K = ideal.field
    diag = [ideal.basis[i][i] for i in range(K.degree)]
    return [tuple(int(c) for c in row) for row in np.indices(diag).reshape(len(diag), -1).T]


def jp_family(P_, max_val, kind=PDIFF):
    """All (b + p^a) x (p^a minus p^(a+1)) for 0 <= a <= max_val, b over R/p^a."""
    out = []
    for a in range(max_val + 1):
        ideal = SupportedIdeal((P_,), (a,))
        for b in residues_mod(ideal.ideal()):
            out.append(pdiff_set(b, ideal, P_) if kind == PDIFF else full_set(b, ideal))
    return out


@dataclass
class IndependenceResult:
    independent: bool
    witness: tuple = None  # (X, [X_1, ..., X_n])


def _project(E, additive_only):
    if additive_only:
        return FiniteSet(E.level, E.additive, frozenset([0]) if not E.is_empty else frozenset())
    return E


def independence_check(family, k=None, additive_only=False):
    """No member may be the union of members it properly contains (exhaustive at level k)."""
    if not family:
        return IndependenceResult(True)
    support = common_support(family)
    need = minimal_level(family)
    k = need if k is None else k
    if k < need:
        raise LevelTooSmall(f"level too small: need k >= {need}, got {k}")
    if not support:
        return IndependenceResult(True)
    enums = [_project(enumerate_at_level(X, k, support), additive_only) for X in family]
    for i, (X, E) in enumerate(zip(family, enums)):
        if E.is_empty:
            continue
        inside = [j for j, F in enumerate(enums) if j != i and not F.is_empty and F <= E and F != E]
        if not inside:
            continue
        if _covers(E, [enums[j] for j in inside]):
            return IndependenceResult(False, (X, [family[j] for j in inside]))
    return IndependenceResult(True)


def _covers(E, parts):
    """Whether the union of product sets ``parts`` equals the product set ``E``."""
    for a in E.additive:
        covered = set()
        for F in parts:
            if a in F.additive:
                covered |= F.multiplicative
        if not E.multiplicative <= covered:
            return False
    return True


@dataclass
class FilterTruncation:
    universe: list
    members: list


@dataclass
class FilterResult:
    is_filter: bool
    reason: str = ""
    witness: tuple = ()


def is_filter(F, k=None):
    """Check the three filter axioms exhaustively inside the finite universe."""
    sets = list(F.universe) + list(F.members)
    support = common_support(sets)
    k = minimal_level(sets) if k is None else k
    enum = {}

    def E(X):
        if X not in enum:
            enum[X] = enumerate_at_level(X, k, support)
        return enum[X]

    if not F.members:
        return FilterResult(False, "empty family")
    member_enums = [E(X) for X in F.members]
    for X, EX in zip(F.members, member_enums):
        if EX.is_empty:
            return FilterResult(False, "contains the empty set", (X,))
    for X, EX in zip(F.members, member_enums):
        for Y in F.universe:
            EY = E(Y)
            if EX <= EY and EY not in member_enums:
                return FilterResult(False, "not upward closed", (X, Y))
    for (X1, E1), (X2, E2) in combinations(zip(F.members, member_enums), 2):
        both = E1 & E2
        if both.is_empty or both not in member_enums:
            return FilterResult(False, "not closed under intersection", (X1, X2))
    return FilterResult(True)


def principal_filter(universe, X0, k=None):
    """All members of ``universe`` containing ``X0``."""
    support = common_support(list(universe) + [X0])
    k = minimal_level(list(universe) + [X0]) if k is None else k
    E0 = enumerate_at_level(X0, k, support)
    return FilterTruncation(universe, [Y for Y in universe if E0 <= enumerate_at_level(Y, k, support)])
