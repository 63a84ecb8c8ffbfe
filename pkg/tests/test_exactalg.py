import pickle
from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from stringy_symprod.combinatorics import cycle_type
from stringy_symprod.exactalg import (
    ONE,
    ZERO,
    L,
    LPoly,
    QPoly,
    as_matrix,
    char_poly_in_L,
    det,
    from_columns,
    hermite_normal_form,
    identity,
    kernel_basis,
    matmul,
    matvec,
    quotient_lattice_action,
    rank,
    restricted_lattice_action,
    saturate,
    smith_normal_form,
)
from stringy_symprod.toric import build_C2


def small_matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)
        )
    ).map(as_matrix)


def square_matrices(max_n=4, lo=-5, hi=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=n, max_size=n)
    ).map(as_matrix)


def sympy_charpoly(a) -> LPoly:
    x = sympy.Symbol("x")
    coeffs = sympy.Matrix(a).charpoly(x).all_coeffs()
    return LPoly([int(c) for c in reversed(coeffs)])


# --- polynomials -----------------------------------------------------------


def test_binomial_cube():
    assert (ONE + L) ** 3 == LPoly([1, 3, 3, 1])


def test_untwisted_shape_at_two():
    assert L ** 4 * (1 + L) == LPoly([0, 0, 0, 0, 1, 1])
    assert (L ** 4 * (1 + L)).render() == "L^5 + L^4"
    assert L ** 3 * (1 + L) ** 2 == LPoly([0, 0, 0, 1, 2, 1])


def test_zero_is_additive_identity():
    p = LPoly([3, 0, -2, 7])
    assert ZERO + p == p
    assert p + 0 == p


def test_trailing_zeros_are_trimmed():
    assert LPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert LPoly([0, 0]).degree == -1
    assert not ZERO


def test_render_descending_powers():
    p = LPoly([0, 0, 0, 0, 0, 4, 14, 11, 4, 1])
    assert p.render() == "L^9 + 4L^8 + 11L^7 + 14L^6 + 4L^5"
    assert LPoly([1, -1]).render() == "-L + 1"
    assert ZERO.render() == "0"


def test_evaluation_and_shift():
    p = LPoly([1, 2, 1])
    assert p(1) == 4
    assert p(Fraction(1, 2)) == Fraction(9, 4)
    assert p.shift(3) == LPoly([0, 0, 0, 1, 2, 1])


def test_exact_division():
    assert ((1 + L) ** 4).divexact(1 + L) == (1 + L) ** 3
    with pytest.raises(ArithmeticError):
        LPoly([1, 0, 1]).divexact(LPoly([1, 1]))


def test_lpoly_rejects_non_integers():
    with pytest.raises(TypeError):
        LPoly([Fraction(1, 2)])


def test_qpoly_integrality():
    q = (QPoly([1, 1]) + LPoly([1, 1])) / 2
    assert q.to_lpoly() == LPoly([1, 1])
    with pytest.raises(ArithmeticError):
        (QPoly([1, 1]) / 2).to_lpoly()


@given(st.lists(st.integers(-9, 9), max_size=6), st.lists(st.integers(-9, 9), max_size=6),
       st.integers(-4, 4))
def test_ring_homomorphism_under_evaluation(a, b, x):
    p, q = LPoly(a), LPoly(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)


# --- Hermite normal form ---------------------------------------------------


def test_hnf_of_identity():
    h, u = hermite_normal_form(identity(3))
    assert h == identity(3) and u == identity(3)


def test_hnf_small_example_spans_same_lattice():
    h, u = hermite_normal_form(((2, 4), (1, 3)))
    # pivots 1 and 2; entries above pivots reduced into [0, pivot)
    assert h == ((1, 1), (0, 2))
    # the hand-reduced form ((1,3),(0,2)) spans the same row lattice
    assert hermite_normal_form(((1, 3), (0, 2)))[0] == h


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_c2_has_full_rank(n):
    assert rank(build_C2(n)) == n + 1


def _is_row_hnf(h) -> bool:
    last = -1
    seen_zero = False
    for row in h:
        nz = next((j for j, x in enumerate(row) if x), None)
        if nz is None:
            seen_zero = True
            continue
        if seen_zero or nz <= last or row[nz] <= 0:
            return False
        last = nz
    for i, row in enumerate(h):
        nz = next((j for j, x in enumerate(row) if x), None)
        if nz is None:
            continue
        if any(not 0 <= h[k][nz] < row[nz] for k in range(i)):
            return False
    return True


@settings(max_examples=150)
@given(small_matrices())
def test_hnf_properties(a):
    h, u = hermite_normal_form(a)
    assert matmul(u, a) == h
    assert abs(det(u)) == 1
    assert _is_row_hnf(h)
    assert hermite_normal_form(h)[0] == h


@settings(max_examples=150)
@given(small_matrices(5, 5))
def test_smith_normal_form_properties(a):
    d, u, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    rows, cols = len(a), len(a[0])
    assert all(d[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
    diag = [d[i][i] for i in range(min(rows, cols))]
    nonzero = [x for x in diag if x]
    assert diag[: len(nonzero)] == nonzero and all(x > 0 for x in nonzero)
    assert all(b % c == 0 for c, b in zip(nonzero, nonzero[1:]))
    assert len(nonzero) == sympy.Matrix(a).rank()


@settings(max_examples=100)
@given(small_matrices(3, 5))
def test_kernel_basis_is_saturated_kernel(a):
    k = kernel_basis(a, len(a[0]))
    assert all(not any(matvec(a, row)) for row in k)
    assert len(k) == len(a[0]) - sympy.Matrix(a).rank()
    if k:
        assert saturate(k, len(a[0])) == saturate(saturate(k, len(a[0])), len(a[0]))
        assert rank(k) == len(k)


# --- determinants and characteristic polynomials ---------------------------


@settings(max_examples=100)
@given(square_matrices())
def test_det_matches_sympy(a):
    assert det(a) == int(sympy.Matrix(a).det())


def test_charpoly_examples():
    assert char_poly_in_L(identity(3)) == (L - 1) ** 3
    assert char_poly_in_L(((-1,),)) == L + 1
    assert char_poly_in_L(((0, 1), (1, 0))) == L ** 2 - 1
    assert char_poly_in_L(()) == ONE


@settings(max_examples=100)
@given(square_matrices())
def test_charpoly_matches_sympy(a):
    assert char_poly_in_L(a) == sympy_charpoly(a)


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_charpoly_of_permutation_matrices(r):
    for p in permutations(range(r)):
        m = from_columns([tuple(int(i == p[j]) for i in range(r)) for j in range(r)])
        expected = ONE
        for c in cycle_type(tuple(x + 1 for x in p)):
            expected = expected * (L ** c - 1)
        assert char_poly_in_L(m) == expected


# --- induced lattice actions -----------------------------------------------


def test_quotient_by_full_lattice_is_empty():
    q = quotient_lattice_action(((0, 1), (1, 0)), identity(2))
    assert q == ()
    assert char_poly_in_L(q) == ONE


def test_identity_induces_identity():
    q = quotient_lattice_action(identity(3), [(1, 1, 0)])
    assert q == identity(2)


def test_swap_on_quotient_by_diagonal():
    q = quotient_lattice_action(((0, 1), (1, 0)), [(1, 1)])
    assert q == ((-1,),)
    assert restricted_lattice_action(((0, 1), (1, 0)), [(1, 1)]) == ((1,),)


def test_quotient_action_requires_stable_sublattice():
    with pytest.raises(ValueError):
        quotient_lattice_action(((0, 1), (1, 0)), [(1, 0)])


def test_saturation_of_scaled_vector():
    assert rank(saturate([(2, 4, 6)], 3)) == 1
    (row,) = saturate([(2, 4, 6)], 3)
    assert tuple(abs(x) for x in row) == (1, 2, 3)


def test_polynomials_survive_pickling():
    p = LPoly([0, 3, -1])
    assert pickle.loads(pickle.dumps(p)) == p
    assert hash(pickle.loads(pickle.dumps(p))) == hash(p)
