import pytest

from conftest import field
from nfk.errors import BelowThreshold, ClassDataUnavailable, InsufficientData, NotPurelyImaginary
from nfk.ideals import make_class_data, prime_ideal_from_slot
from nfk.kinvariants import (
    degree_estimate,
    divisibility_bound_check,
    fingerprint,
    rank_pi_star,
    recover_splitting,
    torsion_order,
)
from nfk.numberfield import g_count, split_prime
from nfk.torsion import roots_of_unity


def _setup(name, p, i=0, **kw):
    K = field(name)
    return K, roots_of_unity(K), prime_ideal_from_slot(K, split_prime(K, p), i), make_class_data(K, **kw)


@pytest.mark.parametrize("name, p, expected", [("Q", 5, 2), ("Qi", 5, 1), ("Qsqrt-5", 3, 4)])
def test_torsion_order_examples(name, p, expected):
    assert torsion_order(*_setup(name, p)) == expected


def test_torsion_order_undefined_at_bad_prime():
    assert torsion_order(*_setup("Qi", 2)) is None


@pytest.mark.parametrize("name, p, candidate, ok", [("Qi", 5, 1, True), ("Q", 5, 3, False), ("Qsqrt-5", 3, 0, True), ("Q", 7, 0, True)])
def test_divisibility_bound_check(name, p, candidate, ok):
    assert divisibility_bound_check(*_setup(name, p), candidate) is ok


@pytest.mark.parametrize("name, rank", [("Qi", 2), ("Qsqrt-3", 3), ("Qzeta5", 10), ("Qsqrt-5", 1)])
def test_rank(name, rank):
    K = field(name)
    assert rank_pi_star(K, roots_of_unity(K)) == rank


@pytest.mark.parametrize("name", ["Qsqrt2", "Q"])
def test_rank_needs_purely_imaginary(name):
    K = field(name)
    with pytest.raises(NotPurelyImaginary, match="not purely imaginary"):
        rank_pi_star(K, roots_of_unity(K))


def _fi(name, bound, **kw):
    K = field(name)
    return fingerprint(K, bound, make_class_data(K, **kw))


def test_fingerprint_q():
    fi = _fi("Q", 10)
    ords = {r.p: r.ord for r in fi.records}
    assert ords == {2: None, 3: 1, 5: 2, 7: 3}


def test_fingerprint_gaussian():
    fi = _fi("Qi", 10)
    assert [(r.p, r.ord) for r in fi.records] == [(2, None), (3, 2), (5, 1), (5, 1), (7, 12)]
    assert not fi.records[0].good


def test_fingerprint_sqrt_minus_5():
    fi = _fi("Qsqrt-5", 5, backend="forms")
    above2 = fi.records_above(2)
    assert len(above2) == 1 and above2[0].hp == 2 and above2[0].e == 2
    above3 = fi.records_above(3)
    assert [r.ord for r in above3] == [4, 4] and all(r.hp == 2 for r in above3)
    assert len(fi.records_above(5)) == 1 and fi.records_above(5)[0].e == 2


@pytest.mark.parametrize("name, bound, deg", [("Qi", 20, 2), ("Q", 3, 1), ("Q", 50, 1), ("Qsqrt-5", 30, 2)])
def test_degree_estimate(name, bound, deg):
    assert _fi(name, bound).degree_estimate == deg


def test_degree_estimate_needs_data():
    with pytest.raises(InsufficientData, match="insufficient data"):
        degree_estimate([])
    assert _fi("Q", 2).degree_estimate == "insufficient data"


@pytest.mark.parametrize("p, g", [(17, 2), (29, 2), (31, 1), (37, 2), (97, 2), (103, 1)])
def test_recover_splitting_gaussian(p, g):
    fi = _fi("Qi", 200)
    assert recover_splitting(fi, p) == g == g_count(fi.field, p)


def test_recover_splitting_q():
    assert recover_splitting(_fi("Q", 10), 5) == 1


def test_recover_splitting_below_threshold():
    with pytest.raises(BelowThreshold, match="below recovery threshold"):
        recover_splitting(_fi("Qi", 20), 13)


def test_recover_splitting_needs_class_number():
    K = field("Qzeta5")
    fi = fingerprint(K, 50, make_class_data(K, backend="manual", hp={}))
    with pytest.raises(ClassDataUnavailable, match="class data unavailable"):
        recover_splitting(fi, 41)


def test_records_without_class_data_have_unknown_hp():
    K = field("Qzeta5")
    fi = fingerprint(K, 30, make_class_data(K, backend="manual", h=1, hp={(11, 0): 1}))
    known = [r for r in fi.records if r.hp is not None]
    assert [(r.p, r.slot) for r in known] == [(11, 0)]
    assert known[0].ord == (11 - 1) // 10


def test_zeta5_search_backend():
    fi = _fi("Qzeta5", 200)
    assert fi.degree_estimate == 4
    for r in fi.records:
        if r.good:
            assert r.hp == 1 and r.ord == (r.N - 1) // 10


def test_ord_is_consistent_with_formula_at_every_record():
    for name in ("Q", "Qi", "Qsqrt-3", "Qsqrt-5", "Qsqrt-23"):
        fi = _fi(name, 100)
        m = fi.torsion.m
        for r in fi.records:
            if r.good:
                assert r.ord * m == r.N**r.hp - 1
            else:
                assert r.ord is None
