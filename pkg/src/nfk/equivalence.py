"""Splitting fingerprints and the arithmetic-equivalence comparison."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from sympy import primerange

from .numberfield import index_safe, split_prime

SCHEMA = 1
SKIP_REASON = "prime divides index"


def prime_entry(K, p):
    if not index_safe(K, p):
        return {"skipped": SKIP_REASON}
    rec = split_prime(K, p)
    return {"g": rec.g, "ef": [list(x) for x in rec.ef]}


def _entries_chunk(args):
    K, primes = args
    return [(p, prime_entry(K, p)) for p in primes]


@dataclass
class Fingerprint:
    poly: list
    bound: int
    primes: dict = field(default_factory=dict)  # p -> entry dict

    def as_dict(self):
        return {
            "schema": SCHEMA,
            "poly": list(self.poly),
            "bound": self.bound,
            "primes": {str(p): self.primes[p] for p in sorted(self.primes)},
        }

    @classmethod
    def from_dict(cls, d):
        return cls(poly=list(d["poly"]), bound=int(d["bound"]), primes={int(p): e for p, e in d["primes"].items()})

    def truncated(self, bound):
        if bound > self.bound:
            raise ValueError("cannot extend a fingerprint")
        return Fingerprint(self.poly, bound, {p: e for p, e in self.primes.items() if p <= bound})


def compute_fingerprint(K, bound, jobs=1):
    primes = list(primerange(2, bound + 1))
    if jobs > 1 and len(primes) > 1:
        chunks = [primes[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [item for part in pool.map(_entries_chunk, [(K, c) for c in chunks]) for item in part]
    else:
        results = _entries_chunk((K, primes))
    return Fingerprint(poly=list(K.poly), bound=bound, primes=dict(sorted(results)))


@dataclass
class EquivVerdict:
    mode: str
    bound: int
    equivalent: bool
    prime: int = None
    left: dict = None
    right: dict = None
    excluded: list = field(default_factory=list)

    def as_dict(self):
        out = {
            "schema": SCHEMA,
            "mode": self.mode,
            "bound": self.bound,
            "verdict": "equivalent_up_to" if self.equivalent else "distinguished_at",
        }
        if not self.equivalent:
            out["prime"] = self.prime
            out["left"] = self.left
            out["right"] = self.right
        out["excluded"] = list(self.excluded)
        return out

    def describe(self):
        if self.equivalent:
            return f"EquivalentUpTo({self.bound})"
        return f"DistinguishedAt({self.prime})"


def _key(entry, mode):
    if mode == "g":
        return entry["g"]
    return sorted(tuple(x) for x in entry["ef"])


def compare_fingerprints(left, right, bound, mode="g"):
    """First prime <= bound, index-safe for both, where the splitting data differ."""
    if mode not in ("g", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    excluded = []
    for p in primerange(2, bound + 1):
        a, b = left.primes[p], right.primes[p]
        if "skipped" in a or "skipped" in b:
            excluded.append(p)
            continue
        if _key(a, mode) != _key(b, mode):
            return EquivVerdict(mode, bound, False, p, a, b, excluded)
    return EquivVerdict(mode, bound, True, excluded=excluded)
