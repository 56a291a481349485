import random
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsymcell import posets as ps
from qsymcell.qsym import L, QSymElement, is_L_positive, multiply
from qsymcell.truncated import expand_truncated, is_quasisymmetric


def random_labeled(seed, n):
    rng = random.Random(seed)
    P = ps.random_poset(rng, n, 0.4)
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    return ps.LabeledPoset(P, dict(zip(P.elements, labels)))


def brute_extensions(P):
    return [w for w in permutations(P.elements)
            if all(w.index(s) < w.index(t) for s, t in P.covers)]


# -- finite posets ----------------------------------------------------------------

def test_relations_reduce_to_covers():
    P = ps.FinitePoset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert set(P.covers) == {("a", "b"), ("b", "c")}
    assert P.lt("a", "c") and not P.lt("c", "a")


def test_cycles_and_unknowns_rejected():
    with pytest.raises(ps.PosetError):
        ps.FinitePoset("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(ps.PosetError):
        ps.FinitePoset("ab", [("a", "z")])


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_unlabeled_poset_counts(n, count):
    # OEIS A000112
    assert len(ps.posets_up_to_isomorphism(n)) == count


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_linear_extensions_brute_force(seed, n):
    P = ps.random_poset(random.Random(seed), n)
    exts = list(P.linear_extensions())
    assert sorted(exts) == sorted(brute_extensions(P))
    assert P.count_linear_extensions() == len(exts)


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_convexity_brute_force(seed, n):
    P = ps.random_poset(random.Random(seed), n)
    for m in range(1 << n):
        S = P.members(m)
        convex = all(not (P.lt(a, x) and P.lt(x, b)) or x in S
                     for a in S for b in S for x in P.elements)
        assert P.is_convex_mask(m) == convex


# -- cell transfer -------------------------------------------------------------------

def test_quadrant_ideals():
    P = ps.quadrant(3, 4)
    Q = ps.ConvexSubset(P, ps.partition_cells((4, 1, 1)))
    R = ps.ConvexSubset(P, ps.partition_cells((3, 2)))
    meet, join = ps.cell_transfer(Q, R)
    assert ps.cells_to_partition(meet.members) == (3, 1)
    assert ps.cells_to_partition(join.members) == (4, 2, 1)


def test_non_convex_rejected():
    P = ps.chain(3)
    with pytest.raises(ps.PosetError):
        ps.ConvexSubset(P, {1, 3})


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_cell_transfer_keeps_union_and_intersection(seed, n):
    rng = random.Random(seed)
    P = ps.random_poset(rng, n)
    masks = P.convex_masks()
    for _ in range(10):
        q, r = rng.choice(masks), rng.choice(masks)
        Q, R = ps.ConvexSubset(P, P.members(q)), ps.ConvexSubset(P, P.members(r))
        meet, join = ps.cell_transfer(Q, R)
        assert meet.members | join.members == Q.members | R.members
        assert meet.members & join.members == Q.members & R.members
        assert ps.cell_transfer_masks(P, q, r) == (P.mask(meet.members), P.mask(join.members))


# -- labeled posets and K ----------------------------------------------------------

def test_labels_must_be_injective_and_complete():
    P = ps.chain(2)
    with pytest.raises(ps.PosetError):
        ps.LabeledPoset(P, {1: 1, 2: 1})
    with pytest.raises(ps.PosetError):
        ps.LabeledPoset(P, {1: 1})


def test_chains_and_antichains():
    assert ps.k_p_theta(ps.LabeledPoset(ps.chain(3), {1: 1, 2: 2, 3: 3})) == L((3,))
    assert ps.k_p_theta(ps.LabeledPoset(ps.chain(3), {1: 3, 2: 2, 3: 1})) == L((1, 1, 1))
    anti = ps.LabeledPoset(ps.antichain(3), {1: 1, 2: 2, 3: 3})
    assert ps.k_p_theta(anti) == multiply(multiply(L((1,)), L((1,))), L((1,)))


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_k_matches_words_and_oracle(seed, n):
    LP = random_labeled(seed, n)
    K = ps.k_p_theta(LP)
    assert K == ps.k_p_theta_from_words(LP)
    assert expand_truncated(K, n + 1, n) == ps.k_p_theta_oracle(LP, n + 1, n)


def test_large_disconnected_poset_uses_sparse_path():
    P = ps.FinitePoset(range(12), [(i, i + 1) for i in range(0, 12, 2)])
    LP = ps.LabeledPoset(P, {i: 12 - i for i in range(12)})
    K = ps.k_p_theta(LP)
    expected = QSymElement({(): 1})
    for _ in range(6):
        expected = multiply(expected, L((1, 1)))
    assert K == expected


def test_orientation_without_labeling():
    # a<b weak, b<d weak, a<c strict, c<d strict forces theta(c) < theta(a) < theta(d) < theta(c)
    P = ps.FinitePoset("abcd", [("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")])
    OP = ps.OrientedPoset(P, {("a", "b"): ps.WEAK, ("b", "d"): ps.WEAK,
                              ("a", "c"): ps.STRICT, ("c", "d"): ps.STRICT})
    assert ps.arises_from_labeling(OP) is None
    oracle = ps.k_p_o_oracle(OP, 5, 4)
    assert is_quasisymmetric(oracle, 4)


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_labeling_realizes_orientation(seed, n):
    LP = random_labeled(seed, n)
    back = ps.arises_from_labeling(LP.orientation())
    assert back is not None and back.descents() == LP.descents()


def test_json_round_trips():
    LP = random_labeled(7, 5)
    again = ps.LabeledPoset.from_json(LP.to_json())
    assert again.poset == LP.poset and again.descents() == LP.descents()
    OP = LP.orientation()
    assert ps.OrientedPoset.from_json(OP.to_json()).orientation == OP.orientation


def test_disjoint_sum_multiplies():
    A = random_labeled(1, 3)
    B = random_labeled(2, 3)
    assert ps.k_p_theta(ps.disjoint_sum(A, B)) == multiply(ps.k_p_theta(A), ps.k_p_theta(B))


# -- the cell transfer difference ------------------------------------------------

@given(st.integers(0, 10_000), st.integers(1, 5))
def test_difference_is_positive_with_certificate(seed, n):
    rng = random.Random(seed)
    LP = random_labeled(seed, n)
    P = LP.poset
    masks = P.convex_masks()
    q, r = rng.choice(masks), rng.choice(masks)
    Q, R = ps.ConvexSubset(P, P.members(q)), ps.ConvexSubset(P, P.members(r))
    assert is_L_positive(ps.theorem_main_difference(LP, Q, R))
    stats = ps.verify_injection(LP, Q, R)
    assert stats["collisions"] == stats["descent_mismatches"] == stats["adjacent_swaps"] == 0


def test_worked_transfer_example():
    # omega and sigma read off the extension (A_Q, A_R, B_Q, C_Q, E_Q, B_R, C_R, D_R)
    P = ps.FinitePoset("ABCDE", [("A", "B"), ("A", "C"), ("B", "D"), ("B", "E"),
                                 ("C", "D"), ("C", "E")])
    LP = ps.LabeledPoset(P, {"A": 2, "B": 1, "C": 4, "D": 5, "E": 3})
    Q, R = ps.ConvexSubset(P, set("ABCE")), ps.ConvexSubset(P, set("ABCD"))
    omega = {"A": 1, "B": 3, "C": 4, "E": 5}
    sigma = {"A": 2, "B": 6, "C": 7, "D": 8}
    meet, join, S = ps.cell_transfer_injection(LP, Q, R, omega, sigma)
    assert set(S) == {"B", "C"}
    assert meet == {"A": 1, "B": 6, "C": 7}
    assert join == {"A": 2, "B": 3, "C": 4, "E": 5, "D": 8}
    stats = ps.verify_injection(LP, Q, R)
    assert stats["collisions"] == stats["descent_mismatches"] == 0


def test_oriented_posets_up_to_five_are_quasisymmetric():
    count = 0
    for n in range(1, 6):
        for P in ps.posets_up_to_isomorphism(n):
            for OP in ps.orientations(P):
                count += 1
                assert is_quasisymmetric(ps.k_p_o_oracle(OP, 6, 5), 5)
    assert count == 1409


def test_all_weak_chain_count():
    OP = ps.OrientedPoset(ps.chain(3), {(1, 2): ps.WEAK, (2, 3): ps.WEAK})
    assert sum(ps.k_p_o_oracle(OP, 2, 3).terms().values()) == 4
