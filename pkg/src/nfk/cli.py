"""Command-line front end.

Exit codes: 0 success or equivalent, 1 distinguished, 2 input error,
3 class data missing or inconsistent.
"""

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from sympy import factorint, primerange

from . import __version__
from . import semigroupsets as sg
from .cache import FingerprintCache
from .equivalence import SCHEMA, compare_fingerprints, compute_fingerprint
from .errors import InputError, NfkError
from .exactmath import poly as P
from .ideals import DEFAULT_ENUM_CAP, forms_available, iq_class_number, make_class_data, prime_ideals_above
from .kinvariants import assemble, scan_primes
from .numberfield import create_field, parse_poly, split_prime
from .torsion import roots_of_unity, torsion_summary, zeta_string

DEGREE_LABEL = "degree (certified lower bound; exact when a totally split good prime is in range)"

EXIT_OK, EXIT_DISTINGUISHED, EXIT_INPUT, EXIT_CLASS = 0, 1, 2, 3


# --- helpers ---------------------------------------------------------------


def _field(args, text):
    return create_field(parse_poly(text), seed=args.seed)


def _emit(args, payload, table):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(table)


def _table(headers, rows):
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _kv(pairs):
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs)


def _check_bound(bound):
    if bound < 2:
        raise InputError("bound must be at least 2")


def _fingerprint(args, K, bound):
    store = FingerprintCache(args.cache) if args.cache else None
    if store is not None:
        hit = store.get(K.key, bound)
        if hit is not None:
            return hit
    fp = compute_fingerprint(K, bound, jobs=args.jobs)
    if store is not None:
        store.put(fp)
    return fp


def _ef_text(entry):
    if "skipped" in entry:
        return f"skipped ({entry['skipped']})"
    return " ".join(f"({e},{f})" for e, f in entry["ef"])


# --- field info / split ----------------------------------------------------


def cmd_field_info(args):
    K = _field(args, args.poly)
    t = roots_of_unity(K)
    backend = "forms" if forms_available(K) else "search"
    h = iq_class_number(K) if backend == "forms" else None
    payload = {
        "schema": SCHEMA,
        "poly": K.key,
        "input_poly": list(K.input_poly),
        "representation": K.representation,
        "degree": K.degree,
        "poly_discriminant": K.poly_discriminant,
        "signature": list(K.signature),
        "torsion": torsion_summary(t),
        "class_backend": backend,
        "class_number": h,
    }
    table = _kv(
        [
            ("polynomial", P.to_string(K.poly)),
            ("order", K.representation),
            ("n", K.degree),
            ("disc(f)", K.poly_discriminant),
            ("signature", f"({K.signature[0]},{K.signature[1]})"),
            ("m", t.m),
            ("zeta", zeta_string(t)),
            ("p_max", t.p_max),
            ("class backend", backend),
            ("class number", h if h is not None else "unknown"),
        ]
    )
    _emit(args, payload, table)
    return EXIT_OK


def cmd_split(args):
    _check_bound(args.bound)
    K = _field(args, args.poly)
    fp = _fingerprint(args, K, args.bound)
    rows = [(p, e.get("g", "-"), _ef_text(e)) for p, e in sorted(fp.primes.items())]
    _emit(args, fp.as_dict(), _table(["p", "g", "(e,f)"], rows))
    return EXIT_OK


# --- invariants ------------------------------------------------------------


def _parse_hp(items):
    out = {}
    for item in items or []:
        m = re.fullmatch(r"\s*(\d+):(\d+):(\d+)\s*", item)
        if not m:
            raise InputError(f"--class-hp expects p:slot:k, got {item!r}")
        p, slot, k = map(int, m.groups())
        if k < 1:
            raise InputError("class order must be positive")
        out[(p, slot)] = k
    return out


def _scan_chunk(job):
    K, class_data, primes = job
    return scan_primes(K, class_data, primes)


def field_invariants(K, bound, class_data, jobs=1):
    primes = list(primerange(2, bound + 1))
    if jobs > 1 and len(primes) > 1:
        chunks = [primes[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, [(K, class_data, c) for c in chunks]))
        records = [r for recs, _ in parts for r in recs]
        skipped = {p: why for _, sk in parts for p, why in sk.items()}
    else:
        records, skipped = scan_primes(K, class_data, primes)
    return assemble(K, bound, class_data, records, skipped)


def invariants_payload(fi):
    return {
        "schema": SCHEMA,
        "poly": fi.field.key,
        "bound": fi.bound,
        "torsion": torsion_summary(fi.torsion),
        "class_backend": fi.class_backend,
        "class_number": fi.class_number,
        "records": [r.as_dict() for r in fi.records],
        "skipped": {str(p): why for p, why in fi.skipped.items()},
        "rank_pi_star": fi.rank_pi_star,
        "degree_estimate": fi.degree_estimate,
        "degree_label": DEGREE_LABEL,
    }


def invariants_table(fi):
    t = fi.torsion
    head = _kv(
        [
            ("polynomial", P.to_string(fi.field.poly)),
            ("m", t.m),
            ("p_max", t.p_max),
            ("class backend", fi.class_backend),
            ("class number", fi.class_number if fi.class_number is not None else "unknown"),
        ]
    )
    rows = []
    for r in fi.records:
        hp = r.hp if r.hp is not None else "?"
        if not r.good:
            ord_ = "- (bad prime)"
        elif r.ord is None:
            ord_ = "?"
        else:
            ord_ = r.ord
        rows.append((r.p, r.slot, r.N, f"({r.e},{r.f})", hp, "yes" if r.good else "no", ord_))
    body = _table(["p", "slot", "N", "(e,f)", "h_p", "good", "ord"], rows)
    skipped = ", ".join(f"{p} ({why})" for p, why in fi.skipped.items()) or "none"
    tail = _kv([("skipped", skipped), ("rank_pi_star", fi.rank_pi_star), (DEGREE_LABEL, fi.degree_estimate)])
    return "\n\n".join([head, body, tail])


def cmd_invariants(args):
    _check_bound(args.bound)
    K = _field(args, args.poly)
    class_data = make_class_data(
        K, backend=args.class_backend, h=args.class_h, hp=_parse_hp(args.class_hp), enum_cap=args.enum_cap
    )
    fi = field_invariants(K, args.bound, class_data, jobs=args.jobs)
    _emit(args, invariants_payload(fi), invariants_table(fi))
    if args.plot:
        from .report import plot_invariants

        plot_invariants(fi, args.plot)
    missing = [r for r in fi.records if r.good and r.hp is None]
    if missing:
        print(f"error: class data unavailable for {len(missing)} prime ideal(s); supply --class-h or --class-hp", file=sys.stderr)
        return EXIT_CLASS
    return EXIT_OK


# --- equivalence -----------------------------------------------------------


def cmd_equiv(args):
    _check_bound(args.bound)
    K = _field(args, args.left)
    L = _field(args, args.right)
    left = _fingerprint(args, K, args.bound)
    right = _fingerprint(args, L, args.bound)
    verdict = compare_fingerprints(left, right, args.bound, args.mode)
    payload = dict(verdict.as_dict(), left_poly=K.key, right_poly=L.key)
    pairs = [("verdict", verdict.describe()), ("mode", verdict.mode)]
    if not verdict.equivalent:
        key = "g" if args.mode == "g" else "ef"
        pairs += [("left", verdict.left[key]), ("right", verdict.right[key])]
    pairs.append(("excluded", ", ".join(map(str, verdict.excluded)) or "none"))
    _emit(args, payload, _kv(pairs))
    if args.plot:
        from .report import plot_equiv

        plot_equiv(left, right, verdict, args.plot, labels=(P.to_string(K.poly), P.to_string(L.poly)))
    return EXIT_OK if verdict.equivalent else EXIT_DISTINGUISHED


# --- constructible sets ----------------------------------------------------


def _prime_ideal(K, p, slot):
    primes = prime_ideals_above(K, split_prime(K, p))
    if not 0 <= slot < len(primes):
        raise InputError(f"prime {p} has {len(primes)} prime ideal(s); slot {slot} out of range")
    return primes[slot]


def _set_text(X):
    return X.describe()


def cmd_jset_independence(args):
    K = _field(args, args.poly)
    P_ = _prime_ideal(K, args.prime, args.slot)
    family = sg.jp_family(P_, args.max_val, args.kind)
    res = sg.independence_check(family, k=args.level, additive_only=args.additive_only)
    payload = {"schema": SCHEMA, "members": len(family), "level": args.level, "independent": res.independent}
    text = f"independent ({len(family)} members, level {args.level})"
    if not res.independent:
        X, parts = res.witness
        payload["witness"] = {"set": _set_text(X), "union_of": [_set_text(Y) for Y in parts]}
        text = f"not independent: {_set_text(X)} is the union of {len(parts)} smaller members"
    _emit(args, payload, text)
    return EXIT_OK if res.independent else EXIT_DISTINGUISHED


def cmd_jset_filter(args):
    K = _field(args, args.poly)
    P_ = _prime_ideal(K, args.prime, args.slot)
    universe = sg.jp_family(P_, args.max_val, sg.FULL)
    if args.members:
        try:
            idx = [int(i) for i in args.members.split(",")]
            F = sg.FilterTruncation(universe, [universe[i] for i in idx])
        except (ValueError, IndexError):
            raise InputError(f"--members must list indices below {len(universe)}") from None
    else:
        if not 0 <= args.generator < len(universe):
            raise InputError(f"--generator must be below {len(universe)}")
        F = sg.principal_filter(universe, universe[args.generator], k=args.level)
    res = sg.is_filter(F, k=args.level)
    payload = {"schema": SCHEMA, "members": len(F.members), "filter": res.is_filter}
    text = "filter" if res.is_filter else f"not a filter: {res.reason}"
    if not res.is_filter:
        payload["reason"] = res.reason
        payload["witness"] = [_set_text(X) for X in res.witness]
    _emit(args, payload, text)
    return EXIT_OK if res.is_filter else EXIT_DISTINGUISHED


_COSET = re.compile(r"^\s*\(?\s*(-?\d+)\s*mod\s*(\d+)\s*\)?\s*$")


def parse_cosets(expr):
    """``"(0 mod 2) ∩ (1 mod 3)"`` (or with ``&``) into [(b, n), ...]."""
    out = []
    for part in re.split(r"∩|&", expr):
        m = _COSET.match(part)
        if not m:
            raise InputError(f"cannot parse coset {part.strip()!r}; expected 'b mod n'")
        b, n = int(m.group(1)), int(m.group(2))
        if n < 1:
            raise InputError("modulus must be positive")
        out.append((b % n, n))
    return out


def _rational_coset(Q, b, n):
    primes = sorted(factorint(n).items())
    support = tuple(_prime_ideal(Q, p, 0) for p, _ in primes)
    return sg.full_set((b,), sg.SupportedIdeal(support, tuple(v for _, v in primes)))


def intersect_cosets(cosets):
    """Intersection of residue classes of Z through the constructible-set calculus."""
    Q = create_field([0, 1])
    acc = None
    for b, n in cosets:
        if n == 1:
            continue
        X = _rational_coset(Q, b, n)
        acc = X if acc is None else sg.intersect(acc, X)
        if acc.is_empty:
            return None
    if acc is None:
        return (0, 1)
    n = acc.ideal.ideal().norm
    return (acc.rep[0] % n, n)


def cmd_jset_intersect(args):
    res = intersect_cosets(parse_cosets(args.expr))
    if res is None:
        payload, text = {"schema": SCHEMA, "empty": True}, "empty"
    else:
        payload = {"schema": SCHEMA, "empty": False, "residue": res[0], "modulus": res[1]}
        text = f"{res[0]} mod {res[1]}"
    _emit(args, payload, text)
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def _add_globals(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=["table", "json"], default=d("table"))
    p.add_argument("--cache", metavar="PATH", default=d(None), help="JSON-lines fingerprint store")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for per-prime work")
    p.add_argument("--seed", type=int, default=d(0x5EED), help="seed for randomized factoring")


def build_parser():
    parser = argparse.ArgumentParser(prog="nfk", description="K-theoretic invariants of number fields.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    fld = sub.add_parser("field", parents=[common], help="field data")
    fsub = fld.add_subparsers(dest="field_command", required=True)
    info = fsub.add_parser("info", parents=[common], help="degree, discriminant, signature, roots of unity")
    info.add_argument("--poly", required=True)
    info.set_defaults(func=cmd_field_info)

    sp = sub.add_parser("split", parents=[common], help="splitting of primes up to a bound")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.set_defaults(func=cmd_split)

    inv = sub.add_parser("invariants", parents=[common], help="torsion orders, rank and degree")
    inv.add_argument("--poly", required=True)
    inv.add_argument("--bound", type=int, required=True)
    inv.add_argument("--class-backend", choices=["forms", "search", "manual"])
    inv.add_argument("--class-h", type=int)
    inv.add_argument("--class-hp", nargs="+", metavar="P:SLOT:K")
    inv.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    inv.add_argument("--plot", metavar="PATH", help="write a figure of ord against p")
    inv.set_defaults(func=cmd_invariants)

    eq = sub.add_parser("equiv", parents=[common], help="compare splitting data of two fields")
    eq.add_argument("--left", required=True)
    eq.add_argument("--right", required=True)
    eq.add_argument("--bound", type=int, required=True)
    eq.add_argument("--mode", choices=["g", "full"], default="g")
    eq.add_argument("--plot", metavar="PATH", help="write a figure of g against p")
    eq.set_defaults(func=cmd_equiv)

    js = sub.add_parser("jset", parents=[common], help="finite checks on constructible sets")
    jsub = js.add_subparsers(dest="jset_command", required=True)
    for name, func, helptext in (
        ("independence", cmd_jset_independence, "independence of the family J({p})"),
        ("filter", cmd_jset_filter, "filter axioms on a family of full sets"),
    ):
        q = jsub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("--poly", default="x")
        q.add_argument("--prime", type=int, required=True)
        q.add_argument("--slot", type=int, default=0)
        q.add_argument("--max-val", type=int, default=2)
        q.add_argument("--level", type=int)
        q.set_defaults(func=func)
        if name == "independence":
            q.add_argument("--kind", choices=[sg.PDIFF, sg.FULL], default=sg.PDIFF)
            q.add_argument("--additive-only", action="store_true")
        else:
            q.add_argument("--generator", type=int, default=0, help="index of the generating set")
            q.add_argument("--members", help="comma-separated member indices instead of a principal filter")
    ix = jsub.add_parser("intersect", parents=[common], help="intersect residue classes of Z")
    ix.add_argument("expr", help="e.g. '(0 mod 2) ∩ (1 mod 3)'")
    ix.set_defaults(func=cmd_jset_intersect)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except NfkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
