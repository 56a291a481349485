import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsymcell import posets as ps
from qsymcell import waveschur as ws
from qsymcell.compositions import FoundInsidePlacement
from qsymcell.posets import STRICT, WEAK
from qsymcell.qsym import L, is_L_positive, multiply, nu, omega
from qsymcell.truncated import expand_truncated, is_quasisymmetric

W, S = WEAK, STRICT
SMALL_SHAPES = [sh for sh in ws.skew_shapes(6)]


def example_63():
    return ws.SkewShape((2, 2, 1)), ws.StrictWeakAssignment(-1, (W, S, W))


def example_66():
    p = ws.StrictWeakAssignment(-3, (S, S, S, W, S, W, W, S, S, W, S, W))
    return ws.SkewShape((7, 6, 6, 4), (2, 2, 1, 0)), p


def shape_and_assignment(seed):
    rng = random.Random(seed)
    sh = rng.choice(SMALL_SHAPES)
    d = sh.diagonals()
    return sh, ws.random_assignment(rng, d.start - 1, d.stop + 1, default=None)


def test_example_63():
    shape, p = example_63()
    expected = L((2, 1, 2)) + L((2, 1, 1, 1)) + L((3, 2)) + L((3, 1, 1)) + L((2, 2, 1))
    assert ws.wave_schur(shape, p) == expected
    assert ws.jacobi_trudi(shape, p) == expected


def test_all_weak_is_ordinary_schur():
    weak = ws.StrictWeakAssignment(-5, (W,) * 11)
    assert ws.wave_schur(ws.SkewShape((2, 1)), weak) == L((2, 1)) + L((1, 2))
    assert ws.wave_schur(ws.SkewShape((2, 2)), weak) == L((2, 2)) + L((1, 2, 1))
    assert ws.wave_schur(ws.SkewShape((3,)), weak) == L((3,))


@given(st.integers(0, 10_000))
def test_wave_schur_matches_tableau_oracle(seed):
    sh, p = shape_and_assignment(seed)
    n = len(sh)
    assert expand_truncated(ws.wave_schur(sh, p), n + 1, n) == ws.wave_schur_oracle(sh, p, n + 1, n)


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_tableau_count_is_coefficient_sum(seed, K):
    sh, p = shape_and_assignment(seed)
    f = expand_truncated(ws.wave_schur(sh, p), K, len(sh))
    assert sum(1 for _ in ws.enumerate_wave_tableaux(sh, p, K)) == sum(f.terms().values())


@given(st.integers(0, 10_000))
def test_theta_p_realizes_edge_labeling(seed):
    sh, p = shape_and_assignment(seed)
    LP = ws.theta_p(sh, p)
    assert LP.descents() == ws.strict_edges(sh, p)


@given(st.integers(0, 10_000))
def test_jacobi_trudi_small(seed):
    sh, p = shape_and_assignment(seed)
    assert ws.jacobi_trudi(sh, p) == ws.wave_schur(sh, p)


@given(st.integers(0, 10_000))
def test_involutions(seed):
    sh, p = shape_and_assignment(seed)
    f = ws.wave_schur(sh, p)
    assert ws.wave_schur(sh, ws.omega_wave(sh, p)) == omega(f)
    rot, q = ws.nu_wave(sh, p)
    assert ws.wave_schur(rot, q) == nu(f)


def test_comaj_specialization():
    shape, p = example_63()
    direct = expand_truncated(ws.wave_schur(shape, p), 12, len(shape)).substitute_q(12)
    assert ws.comaj_specialization(shape, p, 12) == direct


def test_example_66_matrix():
    shape, p = example_66()
    assert ws.jacobi_trudi_matrix(shape, p) == [
        [(2, 1, 2), (3, 1, 2), (2, 3, 1, 2), (1, 1, 2, 3, 1, 2)],
        [(2, 1), (3, 1), (2, 3, 1), (1, 1, 2, 3, 1)],
        [(2,), (3,), (2, 3), (1, 1, 2, 3)],
        [ws.EMPTY_TOKEN, ws.ZERO_TOKEN, (2,), (1, 1, 2)],
    ]


def test_alpha_ij_tokens():
    shape, p = example_66()
    assert ws.alpha_ij(shape.lam, shape.mu, p, 1, 1) == (2, 1, 2)
    assert ws.alpha_ij(shape.lam, shape.mu, p, 4, 1) is ws.EMPTY_TOKEN
    assert ws.alpha_ij(shape.lam, shape.mu, p, 4, 2) == ws.ZERO_TOKEN


def test_two_row_instance():
    alpha, beta = (1, 2, 1, 4, 1), (3,)
    pl = FoundInsidePlacement(4, alpha, beta)
    shape, p = ws.two_row_difference(alpha, beta, pl)
    assert (shape.lam, shape.mu) == ((9, 8), (4, 1))
    assert ws.wave_schur(shape, p) == ws.transfer_difference(alpha, beta, pl)


def test_two_row_rejects_trivial_offsets():
    alpha, beta = (2, 1), (1,)
    with pytest.raises(ValueError):
        ws.two_row_difference(alpha, beta, FoundInsidePlacement(0, alpha, beta))


def test_shape_validation_and_json():
    with pytest.raises(ValueError):
        ws.SkewShape((2, 3))
    with pytest.raises(ValueError):
        ws.SkewShape((2, 1), (1, 2))
    sh = ws.SkewShape((4, 2, 0), (1,))
    assert sh == ws.SkewShape((4, 2), (1, 0))
    assert ws.SkewShape.from_json(sh.to_json()) == sh


def test_assignment_window_and_json():
    p = ws.StrictWeakAssignment(0, (S, W), default=None)
    assert p[0] == S
    with pytest.raises(ValueError):
        p[2]
    with pytest.raises(ValueError):
        ws.StrictWeakAssignment(0, ("loose",))
    assert ws.StrictWeakAssignment.from_json(p.to_json()) == p


def test_disconnected_shape_factorizes():
    sh = ws.SkewShape((3, 1), (1,))
    weak = ws.StrictWeakAssignment(-3, (W,) * 7)
    assert ws.wave_schur(sh, weak) == multiply(L((2,)), L((1,)))


def test_trivial_specializations():
    weak = ws.StrictWeakAssignment(-3, (W,) * 7)
    assert ws.comaj_specialization(ws.SkewShape((1,)), weak, 6) == [1] * 6
    # 1/((1-q)(1-q^2))
    assert ws.comaj_specialization(ws.SkewShape((2,)), weak, 6) == [1, 1, 2, 2, 3, 3]


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (3, 2, 1)])
def test_standard_assignment_is_symmetric(lam):
    weak = ws.StrictWeakAssignment(-5, (W,) * 11)
    n = sum(lam)
    poly = expand_truncated(ws.wave_schur(ws.SkewShape(lam), weak), n + 1, n)
    assert is_quasisymmetric(poly, n)
    for exps, c in poly.terms().items():
        e = list(exps) + [0] * (n + 1 - len(exps))
        for i in range(n):
            swapped = e[:i] + [e[i + 1], e[i]] + e[i + 2:]
            assert poly.coeff(swapped) == c


@given(st.integers(0, 10_000))
def test_skew_cell_transfer_positivity(seed):
    # two skew shapes inside a box are convex subsets of the quadrant
    rng = random.Random(seed)

    def skew():
        lam = sorted((rng.randint(0, 3) for _ in range(3)), reverse=True)
        mu = [rng.randint(0, l) for l in lam]
        mu = sorted(mu, reverse=True)
        mu = [min(m, l) for m, l in zip(mu, lam)]
        return ps.partition_cells(lam) - ps.partition_cells([m for m in mu if m])

    p = ws.random_assignment(rng, -3, 3, default=None)
    strict = ws.strict_edges(ws.SkewShape((3, 3, 3)), p)
    LP = ws.theta_p(ws.SkewShape((3, 3, 3)), p)
    assert LP.descents() == strict
    Q, R = ps.ConvexSubset(LP.poset, skew()), ps.ConvexSubset(LP.poset, skew())
    assert is_L_positive(ps.theorem_main_difference(LP, Q, R))
