from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given

from qsymcell.compositions import compositions, descent_set
from qsymcell.qsym import (L, M, QSymElement, is_L_positive, is_M_positive, multiply, nu, omega,
                           parse, render, shuffles, standard_word, to_fundamental, to_monomial,
                           word_composition)
from qsymcell.truncated import expand_truncated

from conftest import comps


def test_l1_squared():
    assert multiply(L((1,)), L((1,))) == L((2,)) + L((1, 1))
    assert render(multiply(L((1,)), L((1,)))) == "L[2] + L[1,1]"


def test_l_is_sum_over_refinements():
    # L_(2,1) = M_(2,1) + M_(1,1,1) under D(beta) containing D(alpha)
    assert to_monomial(L((2, 1))) == M((2, 1)) + M((1, 1, 1))
    for n in range(1, 6):
        for a in compositions(n):
            Da = set(descent_set(a).elements)
            expected = QSymElement({b: 1 for b in compositions(n)
                                    if Da <= set(descent_set(b).elements)}, "M")
            assert to_monomial(L(a)) == expected


@given(comps(0, 4), comps(0, 4))
def test_product_matches_polynomial_product(a, b):
    n = sum(a) + sum(b)
    N = max(n, 1)
    lhs = expand_truncated(multiply(L(a), L(b)), N, n)
    rhs = expand_truncated(L(a), N, n) * expand_truncated(L(b), N, n)
    assert lhs == rhs


@given(comps(0, 4), comps(0, 4))
def test_product_matches_word_shuffles(a, b):
    u, v = standard_word(a), standard_word(b, sum(a))
    expected = QSymElement([(word_composition(w), 1) for w in shuffles(u, v)])
    assert multiply(L(a), L(b)) == expected
    assert sum(c for _, c in expected.items()) == comb(sum(a) + sum(b), sum(a))


def test_shuffles_brute_force():
    u, v = (2, 1), (4, 3, 5)
    brute = {w for w in permutations(u + v)
             if [x for x in w if x in u] == list(u) and [x for x in w if x in v] == list(v)}
    assert set(shuffles(u, v)) == brute


@given(comps(0, 3), comps(0, 3), comps(0, 3))
def test_associative_and_commutative(a, b, c):
    A, B, C = L(a), L(b), L(c)
    assert multiply(A, B) == multiply(B, A)
    assert multiply(multiply(A, B), C) == multiply(A, multiply(B, C))


@given(comps(0, 6))
def test_basis_round_trip(a):
    assert to_fundamental(to_monomial(L(a))) == L(a)
    assert to_monomial(to_fundamental(M(a))) == M(a)


@given(comps(0, 4), comps(0, 4))
def test_involutions(a, b):
    f, g = L(a), M(b)
    for op in (omega, nu):
        assert op(op(f)) == f
        assert op(multiply(f, g)) == multiply(op(f), op(g))
    assert nu(M(b)) == M(tuple(reversed(b)))


def test_omega_on_fundamental():
    # complementing the descent set: D(2,1) = {2} -> {1} = D(1,2)
    assert omega(L((2, 1))) == L((1, 2))
    assert omega(L((3,))) == L((1, 1, 1))


def test_positivity():
    f = L((2,)) - L((1, 1))
    assert not is_L_positive(f)
    # M positive but not L positive
    g = M((2,))
    assert to_fundamental(g) == L((2,)) - L((1, 1))
    assert is_M_positive(g) and not is_L_positive(g)
    assert is_L_positive(L((2,)) + L((1, 1)))


@pytest.mark.parametrize("text", ["L[2] + L[1,1]", "3 L[1,2] - L[3]", "M[1] - 2 M[]", "0"])
def test_render_parse_round_trip(text):
    f = parse(text)
    assert parse(render(f)) == f
    assert QSymElement.from_json(f.to_json()) == f


@pytest.mark.parametrize("bad", ["L[1", "L[1] M[2]", "L[1] + M[2]", "L[0]", "X[1]"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse(bad)


def test_mixed_basis_arithmetic():
    assert to_monomial(L((2,)) - M((2,))) == M((1, 1))
