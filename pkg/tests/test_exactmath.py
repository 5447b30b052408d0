import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nfk.exactmath import (
    EnumerationLimit,
    NotPositiveDefinite,
    discriminant,
    enumerate_bounded,
    factor_mod_p,
    hermite_form,
    real_root_count,
    resultant,
)
from nfk.exactmath import modpoly as M
from nfk.exactmath import poly as P
from nfk.exactmath.lattice import lll_gram
from nfk.exactmath.matrix import determinant, in_row_span, solve_integer

x = sympy.symbols("x")


def to_sympy(f):
    return sum(c * x**i for i, c in enumerate(f))


def sylvester(f, g):
    m, n = len(f) - 1, len(g) - 1
    rows = [[0] * i + list(reversed(f)) + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + list(reversed(g)) + [0] * (m - 1 - i) for i in range(m)]
    return sympy.Matrix(rows)


small_ints = st.integers(-6, 6)
monic = st.lists(small_ints, min_size=1, max_size=5).map(lambda c: tuple(c) + (1,))


# --- integer polynomials ---------------------------------------------------


@pytest.mark.parametrize(
    "f, d",
    [((1, 0, 1), -4), ((-2, 0, 1), 8), ((1, 1, 1), -3), ((1, 1, 1, 1, 1), 125)],
)
def test_discriminant_examples(f, d):
    assert discriminant(f) == d


def test_discriminant_of_constant_rejected():
    with pytest.raises(ValueError):
        discriminant((3,))


@settings(max_examples=60, deadline=None)
@given(monic)
def test_discriminant_matches_sympy(f):
    assert discriminant(f) == int(sympy.discriminant(to_sympy(f), x))


@settings(max_examples=40, deadline=None)
@given(monic, monic)
def test_discriminant_of_product(f, g):
    # disc(fg) = disc(f) disc(g) Res(f,g)^2 for monic f, g
    assert discriminant(P.mul(f, g)) == discriminant(f) * discriminant(g) * resultant(f, g) ** 2


@settings(max_examples=60, deadline=None)
@given(monic, monic)
def test_resultant_matches_sylvester_determinant(f, g):
    assert resultant(f, g) == sylvester(f, g).det()


@pytest.mark.parametrize("f, r", [((1, 0, 1), 0), ((-2, 0, 1), 2), ((0, -1, 0, 1), 3)])
def test_real_root_count_examples(f, r):
    assert real_root_count(f) == r


def test_real_root_count_rejects_repeated_roots():
    with pytest.raises(ValueError, match="not squarefree"):
        real_root_count((1, -2, 1))


@settings(max_examples=60, deadline=None)
@given(monic)
def test_real_root_count_matches_sympy(f):
    if not P.is_squarefree(f):
        return
    assert real_root_count(f) == len(sympy.real_roots(to_sympy(f)))


def test_to_string():
    assert P.to_string((1, -1, 0, 2)) == "2*x^3 - x + 1"
    assert P.to_string((0, 1)) == "x"


# --- polynomials over F_p ----------------------------------------------------


def test_factor_mod_p_examples():
    assert factor_mod_p((1, 0, 1), 5) == [((2, 1), 1), ((3, 1), 1)]
    assert factor_mod_p((1, 0, 1), 3) == [((1, 0, 1), 1)]
    assert factor_mod_p((0, 1), 2) == [((0, 1), 1)]


def test_factor_mod_p_composite_modulus():
    with pytest.raises(ValueError, match="composite modulus"):
        factor_mod_p((1, 0, 1), 6)


def _remultiply(factors, p):
    out = (1,)
    for g, e in factors:
        for _ in range(e):
            out = M.mul(out, g, p)
    return out


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 100), min_size=1, max_size=8), st.sampled_from([2, 3, 5, 7, 11, 101]))
def test_factorization_remultiplies(coeffs, p):
    f = M.normalize(tuple(coeffs) + (1,), p)
    factors = factor_mod_p(f, p)
    assert _remultiply(factors, p) == f
    for g, _ in factors:
        assert g[-1] == 1 and M.is_irreducible(g, p)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 30), min_size=1, max_size=7), st.sampled_from([2, 3, 13, 31]))
def test_factor_degrees_match_sympy(coeffs, p):
    f = M.normalize(tuple(coeffs) + (1,), p)
    ours = sorted((len(g) - 1, e) for g, e in factor_mod_p(f, p))
    _, theirs = sympy.Poly(to_sympy(f), x, modulus=p).factor_list()
    assert ours == sorted((g.degree(), e) for g, e in theirs)


def test_factoring_is_deterministic_across_seeds():
    f = M.normalize((3, 0, 0, 0, 0, 0, 0, 0, 1), 97)
    assert factor_mod_p(f, 97, seed=1) == factor_mod_p(f, 97, seed=2)


# --- matrices --------------------------------------------------------------------


@pytest.mark.parametrize(
    "rows, hnf",
    [
        ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
        ([[2], [4]], [[2], [0]]),
        ([[2, 0], [1, 1]], [[1, 1], [0, 2]]),
    ],
)
def test_hermite_examples(rows, hnf):
    assert hermite_form(rows) == hnf


matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=1, max_size=5)
)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_hermite_idempotent_and_same_lattice(rows):
    h = hermite_form(rows)
    assert hermite_form(h) == h
    nz = [r for r in h if any(r)]
    for r in rows:
        assert in_row_span(nz, r) is not None
    for r in nz:
        assert solve_integer(rows, r) is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()
    assert determinant([[Fraction(c) for c in r] for r in m]) == sympy.Matrix(m).det()


def test_solve_integer():
    rows = [[2, 0], [0, 3]]
    assert solve_integer(rows, [4, 9]) == [2, 3]
    assert solve_integer(rows, [1, 0]) is None


# --- lattice enumeration ---------------------------------------------------------


def test_enumerate_examples():
    assert sorted(enumerate_bounded([[1, 0], [0, 1]], 1)) == sorted([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)])
    assert len(enumerate_bounded([[1, 0], [0, 1]], 2)) == 9
    assert enumerate_bounded([[2, 0], [0, 2]], 1) == [(0, 0)]


def test_enumerate_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        enumerate_bounded([[1, 0], [0, -1]], 1)


def test_enumerate_limit():
    with pytest.raises(EnumerationLimit):
        enumerate_bounded([[1, 0], [0, 1]], 100, limit=10)


@st.composite
def gram_matrices(draw):
    n = draw(st.integers(1, 3))
    b = [[draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(n)]
    if sympy.Matrix(b).det() == 0:
        b = [[int(i == j) + b[i][j] * (i < j) for j in range(n)] for i in range(n)]
    g = [[sum(b[k][i] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return g, Fraction(draw(st.integers(0, 30)), draw(st.integers(1, 3)))


@settings(max_examples=60, deadline=None)
@given(gram_matrices())
def test_enumerate_matches_box_search(data):
    gram, bound = data
    n = len(gram)
    # v^T G v <= B forces |v_i| <= sqrt(B * (G^-1)_ii)
    inv = sympy.Matrix(gram).inv()
    radii = [int(sympy.floor(sympy.sqrt(sympy.Rational(bound.numerator, bound.denominator) * inv[i, i]))) for i in range(n)]
    brute = sorted(
        v
        for v in itertools.product(*(range(-r, r + 1) for r in radii))
        if sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n)) <= bound
    )
    assert sorted(enumerate_bounded(gram, bound)) == brute


@settings(max_examples=60, deadline=None)
@given(gram_matrices())
def test_lll_gram_is_a_unimodular_change_of_basis(data):
    gram, _ = data
    reduced, u = lll_gram(gram)
    assert abs(sympy.Matrix(u).det()) == 1
    U = sympy.Matrix(u)
    assert U * sympy.Matrix(gram) * U.T == sympy.Matrix(reduced)
