"""Torsion orders of unit classes, splitting-number recovery, degree and rank.

For a prime ideal p with 1 - zeta^i outside p for all 0 < i < m, the class of
the unit in the quotient by the minimal primitive ideal attached to p has order
(N(p)^h_p - 1) / m.  Everything below is built on that closed form.
"""

from collections import Counter
from dataclasses import dataclass
from math import gcd

from sympy import primerange

from .errors import BelowThreshold, ClassDataUnavailable, InsufficientData, NotPurelyImaginary
from .ideals import class_order_of_prime, prime_ideal_from_slot
from .numberfield import index_safe, split_prime
from .torsion import is_good_prime, roots_of_unity


@dataclass(frozen=True)
class InvariantRecord:
    p: int
    slot: int
    N: int
    e: int
    f: int
    hp: int
    good: bool
    ord: int

    def as_dict(self):
        return {"p": self.p, "slot": self.slot, "N": self.N, "hp": self.hp, "good": self.good, "ord": self.ord}


@dataclass
class FieldInvariants:
    field: object
    bound: int
    torsion: object
    class_number: int
    class_backend: str
    records: list
    skipped: dict
    rank_pi_star: object
    degree_estimate: object

    def records_above(self, p):
        return [r for r in self.records if r.p == p]


def torsion_order(K, t, P_, class_data):
    """(N(p)^h_p - 1) / m for a good prime ideal, else None."""
    if not is_good_prime(K, t, P_):
        return None
    hp = class_order_of_prime(K, P_, class_data)
    top = P_.slot.norm**hp - 1
    if top % t.m:
        raise AssertionError(f"m={t.m} does not divide N^h_p - 1 = {top}")
    return top // t.m


def divisibility_bound_check(K, t, P_, class_data, candidate):
    """True iff ``candidate`` is a multiple of (N^h_p - 1) / gcd(m, N^h_p - 1)."""
    hp = class_order_of_prime(K, P_, class_data)
    top = P_.slot.norm**hp - 1
    step = top // gcd(t.m, top)
    return candidate % step == 0


def rank_pi_star(K, t):
    """m * 2^(n/2 - 2), defined for purely imaginary fields only."""
    if K.signature[0] > 0:
        raise NotPurelyImaginary()
    e = K.degree // 2 - 2
    return t.m * 2**e if e >= 0 else t.m // 2 ** (-e)


def degree_estimate(records):
    """Largest number of records sharing one torsion order."""
    counts = Counter(r.ord for r in records if r.ord is not None)
    if not counts:
        raise InsufficientData()
    return max(counts.values())


def recovery_threshold_met(K, t, h, p):
    # (p - 1) / m > p_max^(n h) - 1, compared without division
    return p - 1 > t.m * (t.p_max ** (K.degree * h) - 1)


def recover_splitting(fi, p):
    """Number of minimal primitive ideals whose unit class order ord has p | m*ord + 1."""
    K, t = fi.field, fi.torsion
    if fi.class_number is None:
        raise ClassDataUnavailable("class number needed for the recovery threshold")
    if not recovery_threshold_met(K, t, fi.class_number, p):
        raise BelowThreshold(f"below recovery threshold (p={p})")
    if p > fi.bound or p in fi.skipped:
        raise ValueError(f"prime {p} was not scanned")
    return sum(1 for r in fi.records if r.ord is not None and (t.m * r.ord + 1) % p == 0)


def invariant_records(K, t, p, class_data):
    rec = split_prime(K, p)
    out = []
    for i, slot in enumerate(rec.slots):
        P_ = prime_ideal_from_slot(K, rec, i)
        good = is_good_prime(K, t, P_)
        try:
            hp = class_order_of_prime(K, P_, class_data)
        except ClassDataUnavailable:
            hp = None
        ord_ = None
        if good and hp is not None:
            top = slot.norm**hp - 1
            if top % t.m:
                raise AssertionError(f"m={t.m} does not divide N^h_p - 1 at p={p}")
            ord_ = top // t.m
        out.append(InvariantRecord(p=p, slot=i, N=slot.norm, e=slot.e, f=slot.f, hp=hp, good=good, ord=ord_))
    return out


def scan_primes(K, class_data, primes):
    """Records and skip reasons for the given primes, in order."""
    t = roots_of_unity(K)
    records, skipped = [], {}
    for p in primes:
        if not index_safe(K, p):
            skipped[p] = "prime divides index"
            continue
        records.extend(invariant_records(K, t, p, class_data))
    return records, skipped


def assemble(K, bound, class_data, records, skipped):
    t = roots_of_unity(K)
    records = sorted(records, key=lambda r: (r.p, r.slot))
    try:
        rank = rank_pi_star(K, t)
    except NotPurelyImaginary as exc:
        rank = str(exc)
    try:
        deg = degree_estimate(records)
    except InsufficientData as exc:
        deg = str(exc)
    return FieldInvariants(
        field=K,
        bound=bound,
        torsion=t,
        class_number=class_data.h,
        class_backend=class_data.backend,
        records=records,
        skipped=dict(sorted(skipped.items())),
        rank_pi_star=rank,
        degree_estimate=deg,
    )


def fingerprint(K, bound, class_data, primes=None):
    """Invariant records for every prime ideal above the index-safe p <= bound."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    primes = primes if primes is not None else primerange(2, bound + 1)
    records, skipped = scan_primes(K, class_data, primes)
    return assemble(K, bound, class_data, records, skipped)
