import json
import logging
import subprocess
import sys

import pytest

from nfk.cache import FingerprintCache
from nfk.cli import intersect_cosets, main, parse_cosets
from nfk.equivalence import compare_fingerprints, compute_fingerprint
from nfk.errors import InputError
from nfk.numberfield import create_field


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    return code, json.loads(out), err


def test_field_info(capsys):
    code, d, _ = run_json(capsys, "field", "info", "--poly", "x^2+1")
    assert code == 0
    assert (d["degree"], d["poly_discriminant"], d["signature"]) == (2, -4, [0, 1])
    assert (d["torsion"]["m"], d["torsion"]["p_max"]) == (4, 2)
    code, d, _ = run_json(capsys, "field", "info", "--poly", "x^2-2")
    assert d["signature"] == [2, 0] and d["torsion"]["m"] == 2


def test_field_info_table(capsys):
    code, out, _ = run(capsys, "field", "info", "--poly", "x^2+x+1")
    assert code == 0 and "p_max          3" in out


@pytest.mark.parametrize("poly, msg", [("x^2-1", "reducible polynomial"), ("2x^2+1", "non-monic"), ("x^2+(1)", "parentheses")])
def test_input_errors_exit_2(capsys, poly, msg):
    code, _, err = run(capsys, "field", "info", "--poly", poly)
    assert code == 2 and msg in err


def test_invariants_gaussian(capsys):
    code, d, _ = run_json(capsys, "invariants", "--poly", "x^2+1", "--bound", "10")
    assert code == 0 and d["schema"] == 1
    ords = [(r["p"], r["ord"]) for r in d["records"]]
    assert ords == [(2, None), (3, 2), (5, 1), (5, 1), (7, 12)]
    assert d["rank_pi_star"] == 2 and d["degree_estimate"] == 2
    assert d["degree_label"].startswith("degree (certified lower bound")
    assert set(d["records"][0]) == {"p", "slot", "N", "hp", "good", "ord"}


def test_invariants_table_gaussian(capsys):
    code, out, _ = run(capsys, "invariants", "--poly", "x^2+1", "--bound", "10")
    assert "- (bad prime)" in out and "12" in out


def test_invariants_forms_backend(capsys):
    code, d, _ = run_json(capsys, "invariants", "--poly", "x^2+5", "--bound", "5", "--class-backend", "forms")
    rows = [r for r in d["records"] if r["p"] == 3]
    assert [(r["hp"], r["ord"]) for r in rows] == [(2, 4), (2, 4)]


def test_invariants_real_field(capsys):
    code, d, _ = run_json(capsys, "invariants", "--poly", "x^2-2", "--bound", "10")
    assert code == 0 and d["rank_pi_star"] == "not purely imaginary"


def test_invariants_manual_class_data_missing_exits_3(capsys):
    code, d, err = run_json(
        capsys, "invariants", "--poly", "x^4+x^3+x^2+x+1", "--bound", "12", "--class-backend", "manual", "--class-h", "1", "--class-hp", "11:0:1"
    )
    assert code == 3 and "class data unavailable" in err
    known = [r for r in d["records"] if r["hp"] is not None]
    assert [(r["p"], r["ord"]) for r in known] == [(11, 1)]


def test_invariants_bad_class_hp(capsys):
    code, _, err = run(capsys, "invariants", "--poly", "x^2+1", "--bound", "10", "--class-hp", "5-0-1")
    assert code == 2 and "p:slot:k" in err


def test_invariants_inconsistent_h_exits_3(capsys):
    code, _, err = run(capsys, "invariants", "--poly", "x^2+5", "--bound", "10", "--class-backend", "forms", "--class-h", "3")
    assert code == 3


def test_bound_too_small(capsys):
    code, _, err = run(capsys, "split", "--poly", "x^2+1", "--bound", "1")
    assert code == 2


def test_split(capsys):
    code, d, _ = run_json(capsys, "split", "--poly", "x^2+1", "--bound", "13")
    assert d["primes"]["2"] == {"g": 1, "ef": [[2, 1]]}
    assert d["primes"]["13"] == {"g": 2, "ef": [[1, 1], [1, 1]]}


def test_split_skipped_prime(capsys):
    code, d, _ = run_json(capsys, "split", "--poly", "x^8-48", "--bound", "5")
    assert d["primes"]["2"] == {"skipped": "prime divides index"}


def test_equiv_distinguished(capsys):
    code, d, _ = run_json(capsys, "equiv", "--left", "x^2-2", "--right", "x^2-3", "--bound", "50", "--mode", "g")
    assert code == 1
    assert d["verdict"] == "distinguished_at" and d["prime"] == 7
    assert (d["left"]["g"], d["right"]["g"]) == (2, 1)


@pytest.mark.parametrize("right", ["x^2+1", "x^2-2x+2"])
def test_equiv_same_field(capsys, right):
    code, d, _ = run_json(capsys, "equiv", "--left", "x^2+1", "--right", right, "--bound", "100", "--mode", "full")
    assert code == 0 and d["verdict"] == "equivalent_up_to" and d["bound"] == 100


def test_equiv_is_symmetric():
    for a, b in [("x^2-2", "x^2-3"), ("x^3-2", "x^3-3"), ("x^2+1", "x^2+3")]:
        K, L = create_field_str(a), create_field_str(b)
        fk, fl = compute_fingerprint(K, 200), compute_fingerprint(L, 200)
        for mode in ("g", "full"):
            v1 = compare_fingerprints(fk, fl, 200, mode)
            v2 = compare_fingerprints(fl, fk, 200, mode)
            assert (v1.equivalent, v1.prime, v1.excluded) == (v2.equivalent, v2.prime, v2.excluded)
            assert (v1.left, v1.right) == (v2.right, v2.left)
        # full refines g: a g-mismatch is also a full mismatch, no later than it
        g, full = compare_fingerprints(fk, fl, 200, "g"), compare_fingerprints(fk, fl, 200, "full")
        if not g.equivalent:
            assert not full.equivalent and full.prime <= g.prime


def create_field_str(text):
    from nfk.numberfield import parse_poly

    return create_field(parse_poly(text))


def test_equiv_reflexive():
    K = create_field_str("x^3-x-1")
    fp = compute_fingerprint(K, 300)
    assert compare_fingerprints(fp, fp, 300, "full").equivalent


def test_jset_commands(capsys):
    code, out, _ = run(capsys, "jset", "independence", "--prime", "2", "--max-val", "3", "--level", "5")
    assert code == 0 and out.startswith("independent")
    code, out, _ = run(capsys, "jset", "filter", "--prime", "2", "--max-val", "2", "--generator", "3")
    assert code == 0 and out.strip() == "filter"
    code, out, _ = run(capsys, "jset", "intersect", "(0 mod 2) ∩ (1 mod 3)")
    assert out.strip() == "4 mod 6"


def test_jset_failures(capsys):
    code, _, err = run(capsys, "jset", "independence", "--prime", "2", "--max-val", "3", "--level", "2")
    assert code == 2 and "level too small" in err
    code, d, _ = run_json(capsys, "jset", "filter", "--prime", "2", "--max-val", "2", "--members", "1,2")
    assert code == 1 and not d["filter"]
    code, d, _ = run_json(capsys, "jset", "independence", "--prime", "2", "--max-val", "1", "--kind", "full", "--additive-only")
    assert code == 1 and "witness" in d


@pytest.mark.parametrize(
    "expr, want",
    [("(0 mod 2) & (1 mod 3)", (4, 6)), ("(1 mod 4) ∩ (3 mod 8)", None), ("(2 mod 4)", (2, 4)), ("(5 mod 1)", (0, 1)), ("(1 mod 2)&(2 mod 3)&(3 mod 5)", (23, 30))],
)
def test_intersect_cosets(expr, want):
    assert intersect_cosets(parse_cosets(expr)) == want


def test_parse_cosets_rejects():
    with pytest.raises(InputError):
        parse_cosets("(0 mod 2) | (1 mod 3)")


def test_plots(tmp_path, capsys):
    inv, eq = tmp_path / "inv.png", tmp_path / "eq.png"
    assert run(capsys, "invariants", "--poly", "x^2+1", "--bound", "60", "--plot", str(inv))[0] == 0
    assert run(capsys, "equiv", "--left", "x^2-2", "--right", "x^2-3", "--bound", "60", "--plot", str(eq))[0] == 1
    for path in (inv, eq):
        assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_jobs_do_not_change_output(capsys):
    one = run(capsys, "--format", "json", "invariants", "--poly", "x^2+1", "--bound", "150")[1]
    three = run(capsys, "--format", "json", "--jobs", "3", "invariants", "--poly", "x^2+1", "--bound", "150")[1]
    assert one == three
    a = run(capsys, "--format", "json", "equiv", "--left", "x^3-2", "--right", "x^3-3", "--bound", "200")[1]
    b = run(capsys, "--format", "json", "--jobs", "2", "equiv", "--left", "x^3-2", "--right", "x^3-3", "--bound", "200")[1]
    assert a == b


def test_global_options_after_subcommand(capsys):
    code, out, _ = run(capsys, "split", "--poly", "x^2+1", "--bound", "5", "--format", "json")
    assert json.loads(out)["bound"] == 5


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "nfk", "jset", "intersect", "(0 mod 2) ∩ (1 mod 3)"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "4 mod 6"


# --- cache ----------------------------------------------------------------------


def test_cache_round_trip(tmp_path):
    store = FingerprintCache(tmp_path / "fp.jsonl")
    K = create_field([1, 0, 1])
    assert store.get(K.key, 50) is None
    fp = compute_fingerprint(K, 50)
    store.put(fp)
    assert store.get(K.key, 50) == fp


def test_cache_truncated_view(tmp_path):
    store = FingerprintCache(tmp_path / "fp.jsonl")
    K = create_field([1, 0, 1])
    store.put(compute_fingerprint(K, 100))
    got = store.get(K.key, 30)
    assert got == compute_fingerprint(K, 30)
    assert store.get(K.key, 101) is None


def test_cache_newest_entry_wins(tmp_path):
    store = FingerprintCache(tmp_path / "fp.jsonl")
    K = create_field([1, 0, 1])
    fp = compute_fingerprint(K, 20)
    store.put(fp)
    altered = compute_fingerprint(K, 20)
    altered.primes[19] = {"g": 99, "ef": []}
    store.put(altered)
    assert store.get(K.key, 20).primes[19]["g"] == 99


def test_cache_skips_corrupt_lines(tmp_path, caplog):
    path = tmp_path / "fp.jsonl"
    store = FingerprintCache(path)
    K = create_field([1, 0, 1])
    store.put(compute_fingerprint(K, 20))
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("{not json\n")
        fh.write(json.dumps({"version": 7, "poly": [1, 0, 1], "bound": 30, "primes": {}}) + "\n")
    with caplog.at_level(logging.WARNING):
        assert store.get(K.key, 20) is not None
    assert sum("corrupt cache line" in r.message for r in caplog.records) == 2
    store.put(compute_fingerprint(K, 25))
    assert store.get(K.key, 25).bound == 25


def test_cached_and_fresh_output_identical(tmp_path, capsys):
    cache = str(tmp_path / "fp.jsonl")
    args = ["--format", "json", "equiv", "--left", "x^3-2", "--right", "x^3-3", "--bound", "300"]
    fresh = run(capsys, *args)[1]
    first = run(capsys, "--cache", cache, *args)[1]
    second = run(capsys, "--cache", cache, *args)[1]
    assert fresh == first == second
    lines = (tmp_path / "fp.jsonl").read_text().splitlines()
    assert len(lines) == 2 and all(json.loads(line)["version"] == 1 for line in lines)
