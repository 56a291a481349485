"""Exhaustive and randomized verification sweeps.

Each sweep returns a plain dict of counts so callers (tests, scripts, the
CLI) can decide how to report.  The heavy sweeps work with dense coefficient
vectors indexed by descent bitmask and precomputed shuffle structure constants.
"""
from __future__ import annotations

import random
import time
from collections import defaultdict
from itertools import product as iproduct

import numpy as np

from . import posets as ps
from .compositions import compositions, found_inside, wedge_vee_at
from .qsym import (QSymElement, L, M, multiply, nu, omega, shuffle_term_count, to_fundamental,
                   to_monomial)
from .truncated import expand_truncated, is_quasisymmetric, principal_specialization
from . import waveschur as ws
from .dense import DENSE_LIMIT, TABLE, basis_rows, to_vector


# -- the claw and its difference ------------------------------------------------------

def claw() -> tuple:
    """The claw ``a < b, c, d`` labelled ``(4, 1, 2, 3)`` with ``Q = {a,b}``, ``R = {a,c,d}``."""
    P = ps.FinitePoset("abcd", [("a", "b"), ("a", "c"), ("a", "d")])
    LP = ps.LabeledPoset(P, {"a": 4, "b": 1, "c": 2, "d": 3})
    return LP, ps.ConvexSubset(P, {"a", "b"}), ps.ConvexSubset(P, {"a", "c", "d"})


def claw_difference() -> QSymElement:
    return ps.theorem_main_difference(*claw())


def counterexample_search() -> dict:
    """Look for a 5-element labeled poset whose ``K`` equals the claw difference.

    The difference has coefficient sum 10 and degree 5, so any such poset has
    5 elements and 10 linear extensions.  Every poset and every labeling
    pattern is checked, not only those with a unique minimal element.
    """
    start = time.perf_counter()
    d = claw_difference()
    target = sum(c for _, c in d.items())
    stats = {"posets": 0, "unique_minimum": 0, "ten_extensions": 0,
             "candidates": 0, "labelings": 0, "matches": [], "coefficient_sum": target}
    for P in ps.posets_up_to_isomorphism(5):
        stats["posets"] += 1
        unique_min = len(P.minimal_elements()) == 1
        stats["unique_minimum"] += unique_min
        if P.count_linear_extensions() != target:
            continue
        stats["ten_extensions"] += 1
        stats["candidates"] += unique_min
        for LP in ps.labeling_patterns(P):
            stats["labelings"] += 1
            if ps.k_p_theta(LP) == d:
                stats["matches"].append(LP.to_json())
    stats["seconds"] = round(time.perf_counter() - start, 3)
    return stats


# -- positivity on labeled posets ----------------------------------------------------

def _transfer_jobs(P: ps.FinitePoset) -> list:
    """Ordered pairs of convex masks covering ``P`` whose transfer is not trivial.

    Pairs with a smaller union are instances on the induced subposet, which is
    itself (up to isomorphism) one of the smaller posets in the sweep.
    """
    full = (1 << len(P)) - 1
    convex = P.convex_masks()
    jobs = []
    for q in convex:
        for r in convex:
            if q | r != full:
                continue
            m, j = ps.cell_transfer_masks(P, q, r)
            if {m, j} != {q, r}:
                jobs.append((q, r, m, j))
    return jobs


def _popcount(x: int) -> int:
    return bin(x).count("1")


def theorem_main_sweep(max_n: int = 6, stop_on_violation: bool = False) -> dict:
    start = time.perf_counter()
    stats = {"posets": 0, "labelings": 0, "pairs": 0, "violations": [], "per_size": {}}
    for n in range(1, max_n + 1):
        size_stats = {"posets": 0, "labelings": 0, "pairs": 0}
        for P in ps.posets_up_to_isomorphism(n):
            size_stats["posets"] += 1
            jobs = _transfer_jobs(P)
            patterns = ps.labeling_patterns(P)
            size_stats["labelings"] += len(patterns)
            if not jobs:
                continue
            masks = sorted({x for job in jobs for x in job})
            kcache = {}
            groups = defaultdict(list)
            for q, r, m, j in jobs:
                groups[(_popcount(m), _popcount(j), _popcount(q), _popcount(r))].append((q, r, m, j))
            for LP in patterns:
                desc = {(P.index[s], P.index[t]) for s, t in LP.descents()}
                vec = {}
                for mask in masks:
                    key = (mask, frozenset(e for e in desc
                                           if mask >> e[0] & 1 and mask >> e[1] & 1))
                    if key not in kcache:
                        K = ps.k_p_theta(LP.restrict(P.members(mask)))
                        kcache[key] = to_vector(K, _popcount(mask))
                    vec[mask] = kcache[key]
                for (a, b, c, d), group in groups.items():
                    new = TABLE.products(a, b, np.array([vec[g[2]] for g in group]),
                                         np.array([vec[g[3]] for g in group]))
                    old = TABLE.products(c, d, np.array([vec[g[0]] for g in group]),
                                         np.array([vec[g[1]] for g in group]))
                    bad = np.nonzero((new - old).min(axis=1) < 0)[0]
                    size_stats["pairs"] += len(group)
                    for k in bad:
                        q, r, _, _ = group[k]
                        stats["violations"].append({"poset": P.to_json(), "labeling": LP.to_json(),
                                                    "Q": sorted(P.members(q), key=repr),
                                                    "R": sorted(P.members(r), key=repr)})
                    if bad.size and stop_on_violation:
                        return stats
        stats["per_size"][n] = size_stats
        for k in ("posets", "labelings", "pairs"):
            stats[k] += size_stats[k]
    stats["seconds"] = round(time.perf_counter() - start, 2)
    return stats


def injection_sweep(max_n: int = 4) -> dict:
    """Run the cell transfer injection on every extension of every small instance.

    Checks injectivity, descent agreement and the adjacency clause, which also
    exercises the least swap set on every pair.
    """
    start = time.perf_counter()
    stats = {"instances": 0, "extensions": 0, "failures": []}
    for n in range(1, max_n + 1):
        for P in ps.posets_up_to_isomorphism(n):
            jobs = _transfer_jobs(P)
            for LP in ps.labeling_patterns(P):
                for q, r, _, _ in jobs:
                    Q = ps.ConvexSubset(P, P.members(q))
                    R = ps.ConvexSubset(P, P.members(r))
                    s = ps.verify_injection(LP, Q, R)
                    stats["instances"] += 1
                    stats["extensions"] += s["extensions"]
                    if s["collisions"] or s["descent_mismatches"] or s["adjacent_swaps"]:
                        stats["failures"].append({"labeling": LP.to_json(),
                                                  "Q": sorted(Q.members, key=repr),
                                                  "R": sorted(R.members, key=repr), **s})
    stats["seconds"] = round(time.perf_counter() - start, 2)
    return stats


# -- positivity on compositions ------------------------------------------------------

def placements(max_total: int):
    """Every ``(α, β, placement)`` with ``|α| + |β| <= max_total``, ``|β| >= 1``."""
    for total in range(2, max_total + 1):
        for b in range(1, total // 2 + 1):
            a = total - b
            for alpha in compositions(a):
                for beta in compositions(b):
                    for pl in found_inside(alpha, beta):
                        yield alpha, beta, pl


def composition_transfer_sweep(max_total: int = 10) -> dict:
    """L-positivity of ``L_{α∧β} L_{α∨β} - L_α L_β`` over all placements."""
    start = time.perf_counter()
    stats = {"placements": 0, "trivial": 0, "violations": []}
    groups = defaultdict(list)
    for alpha, beta, pl in placements(max_total):
        stats["placements"] += 1
        stats["trivial"] += pl.trivial
        wedge, vee = wedge_vee_at(alpha, beta, pl)
        groups[(sum(wedge), sum(vee), sum(alpha), sum(beta))].append((alpha, beta, pl.m, wedge, vee))
    for (a, b, c, d), group in groups.items():
        new = TABLE.products(a, b, basis_rows(a, [g[3] for g in group]),
                             basis_rows(b, [g[4] for g in group]))
        old = TABLE.products(c, d, basis_rows(c, [g[0] for g in group]),
                             basis_rows(d, [g[1] for g in group]))
        for k in np.nonzero((new - old).min(axis=1) < 0)[0]:
            alpha, beta, m, _, _ = group[k]
            stats["violations"].append({"alpha": alpha, "beta": beta, "m": m})
    stats["seconds"] = round(time.perf_counter() - start, 2)
    return stats


def chain_transfer_agreement(max_total: int = 10) -> dict:
    """``wedge_vee_at`` against cell transfer of two windows in a labeled chain.

    The chain carries the word ``standard_word(α)``; ``Q`` is the whole chain and
    ``R`` the window of cells ``m+1 .. m+|β|``, whose word has composition ``β``.
    """
    from .qsym import standard_word, word_composition
    stats = {"placements": 0, "mismatches": []}
    for alpha, beta, pl in placements(max_total):
        a, b, m = sum(alpha), sum(beta), pl.m
        word = standard_word(alpha)
        P = ps.chain(a)
        lab = dict(zip(range(1, a + 1), word))
        Q = ps.ConvexSubset(P, set(range(1, a + 1)))
        R = ps.ConvexSubset(P, set(range(m + 1, m + b + 1)))
        read = lambda S: word_composition([lab[x] for x in sorted(S.members)])
        meet, join = ps.cell_transfer(Q, R)
        stats["placements"] += 1
        if read(R) != tuple(beta) or (read(meet), read(join)) != wedge_vee_at(alpha, beta, pl):
            stats["mismatches"].append((alpha, beta, m))
    return stats


# -- wave Schur sweeps ---------------------------------------------------------------

def assignment_window(shape: ws.SkewShape) -> range:
    """Diagonals of ``p`` that the edge labeling of ``shape`` reads."""
    d = shape.diagonals()
    return range(d.start + 1, d.stop) if len(d) else range(0)


def sample_assignments(rng, shape, count: int) -> list:
    """``count`` distinct assignments on the window, or all of them if fewer exist."""
    win = assignment_window(shape)
    total = 1 << len(win)
    if total <= count:
        codes = range(total)
    else:
        codes = rng.sample(range(total), count)
    return [ws.StrictWeakAssignment(win.start, tuple(ps.STRICT if c >> k & 1 else ps.WEAK
                                                     for k in range(len(win))), None)
            for c in codes]


def jacobi_trudi_sweep(max_cells: int = 10, per_shape: int = 20, seed: int = 0,
                       exhaustive_cells: int = 10, sample_shapes: int | None = None) -> dict:
    """``jacobi_trudi == wave_schur`` on skew shapes.

    Shapes with at most ``exhaustive_cells`` cells are all checked; larger ones
    are sampled (``sample_shapes`` per size) when ``sample_shapes`` is given.
    """
    rng = random.Random(seed)
    start = time.perf_counter()
    stats = {"shapes": 0, "assignments": 0, "mismatches": []}
    by_size = defaultdict(list)
    for sh in ws.skew_shapes(max_cells):
        by_size[len(sh)].append(sh)
    for size in sorted(by_size):
        shapes = by_size[size]
        if size > exhaustive_cells and sample_shapes is not None:
            shapes = rng.sample(shapes, min(sample_shapes, len(shapes)))
        dense_ok = size <= DENSE_LIMIT
        for sh in shapes:
            stats["shapes"] += 1
            for p in sample_assignments(rng, sh, per_shape):
                stats["assignments"] += 1
                if dense_ok and not np.array_equal(ws.jacobi_trudi_vector(sh, p),
                                                   ws.wave_schur_vector(sh, p)):
                    stats["mismatches"].append((sh.to_json(), p.to_json()))
                elif not dense_ok and ws.jacobi_trudi(sh, p) != ws.wave_schur(sh, p):
                    stats["mismatches"].append((sh.to_json(), p.to_json()))
    stats["seconds"] = round(time.perf_counter() - start, 2)
    return stats


def wave_oracle_sweep(max_cells: int = 8, shapes_per_size: int = 8, per_shape: int = 20,
                      seed: int = 0) -> dict:
    """``wave_schur`` against the brute-force tableau generating function."""
    rng = random.Random(seed)
    stats = {"checks": 0, "mismatches": []}
    by_size = defaultdict(list)
    for sh in ws.skew_shapes(max_cells):
        by_size[len(sh)].append(sh)
    for size in sorted(by_size):
        for sh in rng.sample(by_size[size], min(shapes_per_size, len(by_size[size]))):
            for p in sample_assignments(rng, sh, per_shape):
                N = size + 1
                stats["checks"] += 1
                if expand_truncated(ws.wave_schur(sh, p), N, size) != ws.wave_schur_oracle(sh, p, N, size):
                    stats["mismatches"].append((sh.to_json(), p.to_json()))
    return stats


def two_row_sweep(max_total: int = 9) -> dict:
    start = time.perf_counter()
    stats = {"placements": 0, "skipped_trivial": 0, "mismatches": [], "matrix_mismatches": []}
    for alpha, beta, pl in placements(max_total):
        if pl.trivial:
            stats["skipped_trivial"] += 1
            continue
        stats["placements"] += 1
        shape, p = ws.two_row_difference(alpha, beta, pl)
        wedge, vee = wedge_vee_at(alpha, beta, pl)
        got = ws.wave_schur(shape, p)
        if got != ws.transfer_difference(alpha, beta, pl):
            stats["mismatches"].append((alpha, beta, pl.m))
        if ws.jacobi_trudi_matrix(shape, p) != [[vee, tuple(alpha)], [tuple(beta), wedge]]:
            stats["matrix_mismatches"].append((alpha, beta, pl.m))
    stats["seconds"] = round(time.perf_counter() - start, 2)
    return stats


# -- oracle coherence ------------------------------------------------------------------

def random_labeled_poset(rng, n: int) -> ps.LabeledPoset:
    P = ps.random_poset(rng, n, rng.choice((0.2, 0.35, 0.5)))
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    return ps.LabeledPoset(P, dict(zip(P.elements, labels)))


def random_oriented_poset(rng, n: int) -> ps.OrientedPoset:
    P = ps.random_poset(rng, n, rng.choice((0.2, 0.35, 0.5)))
    return ps.OrientedPoset(P, {c: rng.choice((ps.WEAK, ps.STRICT)) for c in P.covers})


def oracle_coherence(trials: int = 500, max_n: int = 7, seed: int = 0) -> dict:
    """K from linear extensions against brute-force P-partition enumeration.

    Half the trials use labeled posets, half oriented posets.  Oriented posets
    that do not arise from a labeling are only checked for quasi-symmetry.
    """
    rng = random.Random(seed)
    stats = {"labeled": 0, "oriented": 0, "oriented_non_labeling": 0,
             "mismatches": [], "not_quasisymmetric": []}
    for t in range(trials):
        n = rng.randint(1, max_n)
        N, deg = n + 1, n
        if t % 2 == 0:
            LP = random_labeled_poset(rng, n)
            stats["labeled"] += 1
            if expand_truncated(ps.k_p_theta(LP), N, deg) != ps.k_p_theta_oracle(LP, N, deg):
                stats["mismatches"].append(LP.to_json())
            continue
        OP = random_oriented_poset(rng, n)
        stats["oriented"] += 1
        oracle = ps.k_p_o_oracle(OP, N, deg)
        if not is_quasisymmetric(oracle, deg):
            stats["not_quasisymmetric"].append(OP.to_json())
        LP = ps.arises_from_labeling(OP)
        if LP is None:
            stats["oriented_non_labeling"] += 1
        elif expand_truncated(ps.k_p_theta(LP), N, deg) != oracle:
            stats["mismatches"].append(OP.to_json())
    return stats


# -- algebra suite ----------------------------------------------------------------

def algebra_suite(max_deg: int = 4, spec_deg: int = 5, precision: int = 12) -> dict:
    """Identities of ω, ν, basis changes, shuffle counts and principal specialization."""
    stats = defaultdict(int)
    fails = []
    comps = [a for n in range(0, max_deg + 1) for a in compositions(n)]
    for a in comps:
        f = L(a)
        stats["basis"] += 1
        if to_fundamental(to_monomial(f)) != f or to_monomial(to_fundamental(M(a))) != M(a):
            fails.append(("round trip", a))
        if omega(omega(f)) != f or nu(nu(f)) != f:
            fails.append(("involution", a))
        if nu(M(a)) != M(tuple(reversed(a))):
            fails.append(("nu on M", a))
    for a, b in iproduct(comps, repeat=2):
        if sum(a) + sum(b) > max_deg + 1:
            continue
        stats["pairs"] += 1
        fa, fb = L(a), L(b)
        prod = multiply(fa, fb)
        if omega(prod) != multiply(omega(fa), omega(fb)):
            fails.append(("omega homomorphism", a, b))
        if nu(prod) != multiply(nu(fa), nu(fb)):
            fails.append(("nu homomorphism", a, b))
        if sum(c for _, c in prod.items()) != shuffle_term_count(a, b):
            fails.append(("shuffle count", a, b))
    for n in range(1, spec_deg + 1):
        for a in compositions(n):
            stats["specializations"] += 1
            if (principal_specialization(a, precision, "closed")
                    != principal_specialization(a, precision, "substitution")):
                fails.append(("principal specialization", a))
    return {"counts": dict(stats), "failures": fails}
