"""Acceptance criteria 1-11, one pass/fail line each.

Run with pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import sys
import time

from qsymcell import checks, pcposet
from qsymcell import posets as ps
from qsymcell import waveschur as ws
from qsymcell.compositions import FoundInsidePlacement
from qsymcell.posets import STRICT, WEAK
from qsymcell.qsym import L, is_L_positive, multiply
from qsymcell.truncated import expand_truncated

RESULTS = {}


def line(k):
    ok, detail = RESULTS[k]
    return f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})"


def record(k, ok, detail):
    RESULTS[k] = (bool(ok), detail)
    print(line(k))
    assert ok, detail


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_criterion_01_quadrant_cell_transfer():
    P = ps.quadrant(3, 4)
    lam, mu = ps.partition_cells((4, 1, 1)), ps.partition_cells((3, 2))
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        meet, join = ps.cell_transfer(ps.ConvexSubset(P, lam), ps.ConvexSubset(P, mu))
        best = min(best, time.perf_counter() - t0)
    got = (ps.cells_to_partition(meet.members), ps.cells_to_partition(join.members))
    record(1, got == ((3, 1), (4, 2, 1)) and best < 1e-3,
           f"got {got}, {best * 1e3:.3f} ms")


def test_criterion_02_claw_difference():
    with Timer() as t:
        d = checks.claw_difference()
    expected = (multiply(L((1,)), L((1, 1, 1, 1)) + 2 * L((1, 1, 2)) + 2 * L((1, 2, 1)) + L((1, 3)))
                - multiply(L((1, 1)), L((1, 2)) + L((1, 1, 1))))
    first_parts = {a[0] for a, _ in d.items()}
    ok = d == expected and is_L_positive(d) and first_parts == {1} and t.seconds < 1
    record(2, ok, f"{len(d)} terms, first parts {sorted(first_parts)}, {t.seconds:.3f} s")


def test_criterion_03_counterexample_certification():
    with Timer() as t:
        stats = checks.counterexample_search()
    ok = not stats["matches"] and stats["posets"] == 63 and t.seconds < 300
    record(3, ok, f"{stats['posets']} posets, {stats['unique_minimum']} with unique minimum, "
                  f"{stats['ten_extensions']} with 10 extensions, {stats['labelings']} labelings, "
                  f"{len(stats['matches'])} matches, {t.seconds:.1f} s")


def test_criterion_04_theorem_main_sweep():
    with Timer() as t:
        stats = checks.theorem_main_sweep(6)
    ok = not stats["violations"] and stats["posets"] == 1 + 2 + 5 + 16 + 63 + 318 and t.seconds < 1800
    record(4, ok, f"{stats['posets']} posets, {stats['labelings']} labelings, "
                  f"{stats['pairs']} pairs, {len(stats['violations'])} violations, {t.seconds:.0f} s")


def test_criterion_05_composition_transfer():
    with Timer() as t:
        stats = checks.composition_transfer_sweep(10)
    ok = not stats["violations"] and stats["placements"] > 0 and t.seconds < 600
    record(5, ok, f"{stats['placements']} placements, {len(stats['violations'])} violations, "
                  f"{t.seconds:.1f} s")


def test_criterion_06_example_and_tableau_count():
    shape = ws.SkewShape((2, 2, 1))
    p = ws.StrictWeakAssignment(-1, (WEAK, STRICT, WEAK))
    with Timer() as t:
        f = ws.wave_schur(shape, p)
        count = sum(1 for _ in ws.enumerate_wave_tableaux(shape, p, 4))
    expected = L((2, 1, 2)) + L((2, 1, 1, 1)) + L((3, 2)) + L((3, 1, 1)) + L((2, 2, 1))
    # independent count: the coefficient sum of the expansion in 4 variables
    coefficient_sum = sum(expand_truncated(expected, 4, 5).terms().values())
    ok = f == expected and count == 23 and t.seconds < 1
    record(6, ok, f"L-sum {'exact' if f == expected else 'differs'}; {count} tableaux with "
                  f"entries <= 4 (expected 23; the stated L-sum itself gives {coefficient_sum})")


def test_criterion_07_jacobi_trudi():
    # p_{-3} .. p_8
    p = ws.StrictWeakAssignment(-3, tuple(STRICT if c == "s" else WEAK for c in "ssswswwsswsw"))
    shape = ws.SkewShape((7, 6, 6, 4), (2, 2, 1, 0))
    matrix_ok = ws.jacobi_trudi_matrix(shape, p) == [
        [(2, 1, 2), (3, 1, 2), (2, 3, 1, 2), (1, 1, 2, 3, 1, 2)],
        [(2, 1), (3, 1), (2, 3, 1), (1, 1, 2, 3, 1)],
        [(2,), (3,), (2, 3), (1, 1, 2, 3)],
        [ws.EMPTY_TOKEN, ws.ZERO_TOKEN, (2,), (1, 1, 2)],
    ]
    with Timer() as t:
        stats = checks.jacobi_trudi_sweep(max_cells=10, per_shape=20, seed=0)
    ok = matrix_ok and not stats["mismatches"] and t.seconds < 900
    record(7, ok, f"matrix {'matches' if matrix_ok else 'differs'}; {stats['shapes']} shapes, "
                  f"{stats['assignments']} assignments, {len(stats['mismatches'])} mismatches, "
                  f"{t.seconds:.0f} s")


def test_criterion_08_two_row_shapes():
    alpha, beta = (1, 2, 1, 4, 1), (3,)
    pl = FoundInsidePlacement(4, alpha, beta)
    shape, p = ws.two_row_difference(alpha, beta, pl)
    instance_ok = ((shape.lam, shape.mu) == ((9, 8), (4, 1))
                   and ws.wave_schur(shape, p) == ws.transfer_difference(alpha, beta, pl))
    with Timer() as t:
        stats = checks.two_row_sweep(9)
    ok = instance_ok and not stats["mismatches"] and not stats["matrix_mismatches"] and t.seconds < 300
    record(8, ok, f"(9,8)/(4,1) {'agrees' if instance_ok else 'differs'}; "
                  f"{stats['placements']} placements, {len(stats['mismatches'])} mismatches, "
                  f"{t.seconds:.1f} s")


def test_criterion_09_pc_poset():
    reports = [pcposet.verify_conjecture(n) for n in range(1, 9)]
    ok = all(r["agree"] for r in reports) and reports[-1]["seconds"] < 3600
    counts = ", ".join(str(r["maximal"]) for r in reports)
    record(9, ok, f"n=1..8 agree: {all(r['agree'] for r in reports)}; maximal counts {counts}; "
                  f"n=8 in {reports[-1]['seconds']} s")


def test_criterion_10_oracle_coherence():
    stats = checks.oracle_coherence(trials=500, max_n=7, seed=0)
    ok = not stats["mismatches"] and not stats["not_quasisymmetric"]
    record(10, ok, f"{stats['labeled']} labeled, {stats['oriented']} oriented, "
                   f"{len(stats['mismatches'])} mismatches, "
                   f"{len(stats['not_quasisymmetric'])} not quasisymmetric")


def test_criterion_11_algebra_suite():
    out = checks.algebra_suite(max_deg=4, spec_deg=5, precision=12)
    counts = ", ".join(f"{k}={v}" for k, v in sorted(out["counts"].items()))
    record(11, not out["failures"], f"{counts}; {len(out['failures'])} failures")


def main() -> int:
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError:
            failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
