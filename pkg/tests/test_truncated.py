from itertools import product as iproduct

import pytest
from hypothesis import given

from qsymcell.compositions import compositions
from qsymcell.qsym import L, M
from qsymcell.truncated import (TruncatedPolynomial, comaj, expand_monomial, expand_truncated,
                                is_quasisymmetric, principal_specialization,
                                series_inverse_qfactorial)

from conftest import comps


def test_monomial_in_three_variables():
    p = expand_monomial((2, 1), 3, 3)
    # exponent vectors are reported without trailing zeros
    assert p.terms() == {(2, 1): 1, (2, 0, 1): 1, (0, 2, 1): 1}


def test_fundamental_brute_force():
    # L_alpha(x_1..x_N) sums x_{i_1}...x_{i_n} over i_1 <= ... <= i_n, strict at D(alpha)
    alpha, N = (2, 1), 3
    terms = {}
    for idx in iproduct(range(N), repeat=3):
        if idx[0] <= idx[1] < idx[2]:
            e = [0] * N
            for i in idx:
                e[i] += 1
            while e and e[-1] == 0:
                e.pop()
            terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    assert expand_truncated(L(alpha), N, 3).terms() == terms


@given(comps(1, 4))
def test_expansions_are_quasisymmetric(a):
    n = sum(a)
    assert is_quasisymmetric(expand_truncated(L(a), n + 1, n), n)


def test_detects_non_quasisymmetric():
    # x1^2 x2 alone is not quasisymmetric in three variables
    p = TruncatedPolynomial.from_terms(4, 3, [((2, 1, 0), 1)])
    assert not is_quasisymmetric(p, 3)
    with pytest.raises(ValueError):
        is_quasisymmetric(p, 4)


def test_truncation_drops_high_degrees():
    p = expand_truncated(M((3,)) + M((1,)), 2, 2)
    assert p.terms() == {(1,): 1, (0, 1): 1}


def test_partition_numbers():
    # 1/(q;q)_n for n >= precision counts partitions
    assert series_inverse_qfactorial(10, 10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert series_inverse_qfactorial(1, 5) == [1, 1, 1, 1, 1]


def test_comaj():
    assert comaj((2, 1)) == 1
    assert comaj((1, 1, 1)) == 3
    assert comaj(()) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_specialization_closed_form(n):
    for a in compositions(n):
        assert principal_specialization(a, 12, "closed") == principal_specialization(a, 12, "substitution")


def test_specialization_rejects_bad_input():
    with pytest.raises(ValueError):
        principal_specialization((1,), 0)
    with pytest.raises(ValueError):
        principal_specialization((1,), 4, "guess")


def test_different_spaces_do_not_mix():
    with pytest.raises(ValueError):
        expand_truncated(L((1,)), 2, 2) + expand_truncated(L((1,)), 3, 2)
