from itertools import product
from math import comb, factorial

import pytest

from stringy_symprod.combinatorics import partitions_of
from stringy_symprod.exactalg import ONE, L, LPoly
from stringy_symprod.symfun import HExpr, chi_A, component_E, hall_hh, hall_inner, quotient_E

h = HExpr.h
q = LPoly([0, 1])


def brute_hall(mu, nu):
    """Count non-negative integer matrices with row sums mu and column sums nu."""
    count = 0
    for entries in product(*(range(min(a, b) + 1) for a in mu for b in nu)):
        rows = [entries[i * len(nu):(i + 1) * len(nu)] for i in range(len(mu))]
        if all(sum(r) == a for r, a in zip(rows, mu)) and \
                all(sum(r[j] for r in rows) == b for j, b in enumerate(nu)):
            count += 1
    return count


def test_chi_small_cases():
    assert chi_A(1) == h(1)
    assert chi_A(2) == h(2) * (ONE + q)
    assert chi_A(3) == h(3) + (h(1, 2) + h(3)) * q + h(3) * q ** 2
    assert chi_A(4) == (h(4) + (h(2, 2) + h(1, 3) + h(4)) * (q + q ** 2) + h(4) * q ** 3)


def test_chi_rendering():
    assert chi_A(3).render() == "h3 + (h1*h2 + h3)*q + h3*q^2"
    assert chi_A(1).render() == "h1"


def test_hexpr_monomials_are_canonical():
    assert h(2, 1) == h(1, 2)
    assert (h(3) + h(3) * -1).terms == {}
    assert h(1, 2).coefficient(2, 1) == ONE


@pytest.mark.parametrize("n", range(1, 9))
def test_chi_is_homogeneous_and_counts_permutations(n):
    chi = chi_A(n)
    assert chi.degrees() == {n}
    # pairing with h_{1^n} gives E(X(A_{n-1})), whose Euler number is n!
    assert hall_inner((1,) * n, chi)(1) == factorial(n)


def test_hall_pair_examples():
    assert hall_hh((1, 2), (3,)) == 1
    assert hall_hh((1, 2), (1, 2)) == 2
    assert hall_hh((1, 1), (1, 1)) == 2


@pytest.mark.parametrize("r", range(1, 7))
def test_hall_pair_is_symmetric(r):
    parts = partitions_of(r)
    for mu in parts:
        for nu in parts:
            assert hall_hh(mu, nu) == hall_hh(nu, mu)


@pytest.mark.parametrize("r", range(1, 5))
def test_hall_pair_matches_brute_force(r):
    for mu in partitions_of(r):
        for nu in partitions_of(r):
            assert hall_hh(mu, nu) == brute_hall(mu, nu)


def test_hall_inner_rejects_inhomogeneous_input():
    with pytest.raises(ValueError):
        hall_inner((2,), h(2) + h(3))


def test_quotient_examples():
    assert hall_inner((2, 1), chi_A(3)) == 1 + 3 * L + L ** 2
    assert quotient_E(2, (2,)) == 1 + L
    assert quotient_E(3, (1, 2)) == quotient_E(3, (2, 1))
    with pytest.raises(ValueError):
        quotient_E(3, (2, 2))


@pytest.mark.parametrize("n", range(1, 8))
def test_full_symmetric_quotient_is_binomial(n):
    e = quotient_E(n, (n,))
    assert e == (1 + L) ** (n - 1)
    assert list(e.to_list()) == [comb(n - 1, k) for k in range(n)]


@pytest.mark.parametrize("r", range(1, 7))
def test_quotients_are_palindromic(r):
    for mu in partitions_of(r):
        e = quotient_E(r, mu)
        assert e.degree == r - 1
        assert e.is_palindromic()
        assert all(c > 0 for c in e.to_list())


def test_component_products():
    assert component_E([(3, (2, 1))]) == 1 + 3 * L + L ** 2
    assert component_E([(1, (1,))] * 4) == ONE
    assert component_E([(2, (2,)), (2, (2,))]) == (1 + L) ** 2
    assert component_E([]) == ONE
