"""Wave Schur functions on skew shapes.

Cells are ``(i, j)`` in English notation, 1-indexed: ``i`` is the row (down),
``j`` the column (right).  The diagonal of a cell is ``j - i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .compositions import Composition, FoundInsidePlacement, descent_set, from_descents, wedge_vee_at
from . import dense
from .dense import TABLE, from_vector, to_vector
from .posets import STRICT, WEAK, FinitePoset, LabeledPoset, generating_function, k_p_theta
from .qsym import QSymElement, multiply
from .truncated import TruncatedPolynomial, series_inverse_qfactorial

FLIP = {WEAK: STRICT, STRICT: WEAK}


@dataclass(frozen=True)
class StrictWeakAssignment:
    """Diagonal ``d`` maps to ``values[d - start]``; outside the window to ``default``.

    ``default=None`` makes any access outside the window an error.
    """

    start: int
    values: tuple
    default: str | None = WEAK

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for v in self.values + ((self.default,) if self.default else ()):
            if v not in (WEAK, STRICT):
                raise ValueError(f"assignment values must be weak/strict, got {v!r}")

    @property
    def stop(self) -> int:
        return self.start + len(self.values) - 1

    def __getitem__(self, d: int) -> str:
        if self.start <= d <= self.stop:
            return self.values[d - self.start]
        if self.default is None:
            raise ValueError(f"diagonal {d} is outside the window [{self.start}, {self.stop}]")
        return self.default

    @classmethod
    def from_dict(cls, mapping: dict, default: str | None = WEAK) -> "StrictWeakAssignment":
        lo, hi = min(mapping), max(mapping)
        return cls(lo, tuple(mapping.get(d, default or WEAK) for d in range(lo, hi + 1)), default)

    @classmethod
    def strict_on(cls, diagonals, lo: int, hi: int, default: str | None = WEAK):
        return cls(lo, tuple(STRICT if d in set(diagonals) else WEAK for d in range(lo, hi + 1)),
                   default)

    def flipped(self) -> "StrictWeakAssignment":
        return StrictWeakAssignment(self.start, tuple(FLIP[v] for v in self.values),
                                    FLIP[self.default] if self.default else None)

    def reflected(self, s: int) -> "StrictWeakAssignment":
        """The assignment ``d -> self[s - d]``."""
        return StrictWeakAssignment(s - self.stop, tuple(reversed(self.values)), self.default)

    def to_json(self) -> dict:
        return {"from": self.start, "to": self.stop, "values": list(self.values),
                "default": self.default}

    @classmethod
    def from_json(cls, data: dict) -> "StrictWeakAssignment":
        values = tuple(data["values"])
        if data["to"] - data["from"] + 1 != len(values):
            raise ValueError("assignment window length does not match its values")
        return cls(data["from"], values, data.get("default", WEAK))


@dataclass(frozen=True)
class SkewShape:
    lam: tuple
    mu: tuple = ()

    def __post_init__(self):
        lam = tuple(self.lam)
        while lam and lam[-1] == 0:
            lam = lam[:-1]
        mu = tuple(self.mu) + (0,) * max(0, len(lam) - len(self.mu))
        if any(mu[len(lam):]):
            raise ValueError(f"mu={self.mu} is not contained in lambda={self.lam}")
        mu = mu[:len(lam)]
        for part in (lam, mu):
            if any(a < b for a, b in zip(part, part[1:])) or any(x < 0 for x in part):
                raise ValueError(f"{part} is not a partition")
        if any(m > l for l, m in zip(lam, mu)):
            raise ValueError(f"mu={self.mu} is not contained in lambda={self.lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def rows(self) -> int:
        return len(self.lam)

    def cells(self) -> list:
        return [(i, j) for i, (l, m) in enumerate(zip(self.lam, self.mu), 1)
                for j in range(m + 1, l + 1)]

    def __len__(self):
        return sum(self.lam) - sum(self.mu)

    def diagonals(self) -> range:
        cells = self.cells()
        if not cells:
            return range(0)
        ds = [j - i for i, j in cells]
        return range(min(ds), max(ds) + 1)

    def poset(self) -> FinitePoset:
        cells = self.cells()
        s = set(cells)
        rel = [((i - 1, j), (i, j)) for i, j in cells if (i - 1, j) in s]
        rel += [((i, j - 1), (i, j)) for i, j in cells if (i, j - 1) in s]
        return FinitePoset(cells, rel)

    def rotated(self) -> "SkewShape":
        c, l = (self.lam[0] if self.lam else 0), self.rows
        lam = tuple(c - self.mu[l - 1 - i] for i in range(l))
        mu = tuple(c - self.lam[l - 1 - i] for i in range(l))
        return SkewShape(lam, mu)

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu)}

    @classmethod
    def from_json(cls, data: dict) -> "SkewShape":
        return cls(tuple(data["lambda"]), tuple(data.get("mu", ())))


def edge_labeling(shape: SkewShape, p: StrictWeakAssignment) -> dict:
    """``{(s, t): weak|strict}`` for every cover ``s ⋖ t`` of the shape."""
    out = {}
    for s, t in shape.poset().covers:
        i, j = t
        if s == (i - 1, j):
            out[(s, t)] = FLIP[p[j - i + 1]]
        else:
            out[(s, t)] = p[j - i]
    return out


def strict_edges(shape: SkewShape, p: StrictWeakAssignment) -> frozenset:
    return frozenset(c for c, k in edge_labeling(shape, p).items() if k == STRICT)


def enumerate_wave_tableaux(shape: SkewShape, p: StrictWeakAssignment,
                            max_entry: int) -> Iterator[dict]:
    """Every wave tableau ``{cell: entry}`` with entries in ``1..max_entry``."""
    labels = edge_labeling(shape, p)
    cells = shape.cells()
    lows = {c: [(s, labels[(s, t)] == STRICT) for s, t in labels if t == c] for c in cells}
    T = {}

    def rec(k):
        if k == len(cells):
            yield dict(T)
            return
        c = cells[k]
        lo = max((T[s] + strict for s, strict in lows[c]), default=1)
        for v in range(lo, max_entry + 1):
            T[c] = v
            yield from rec(k + 1)
        T.pop(c, None)

    yield from rec(0)


def wave_schur_oracle(shape: SkewShape, p: StrictWeakAssignment, N: int,
                      max_deg: int) -> TruncatedPolynomial:
    return generating_function(shape.poset(), strict_edges(shape, p), N, max_deg)


def render_tableau(shape: SkewShape, T: dict) -> str:
    width = max((len(str(v)) for v in T.values()), default=1)
    lines = []
    for i, (l, m) in enumerate(zip(shape.lam, shape.mu), 1):
        row = [" " * width] * m + [str(T[(i, j)]).rjust(width) for j in range(m + 1, l + 1)]
        lines.append(" ".join(row).rstrip())
    return "\n".join(lines)


# -- vertex labeling realizing the edge labeling -------------------------------------

def _components(cells: set) -> list:
    seen, out = set(), []
    for c in sorted(cells):
        if c in seen:
            continue
        stack, comp = [c], set()
        while stack:
            i, j = stack.pop()
            if (i, j) in comp:
                continue
            comp.add((i, j))
            for nb in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                if nb in cells and nb not in comp:
                    stack.append(nb)
        seen |= comp
        out.append(comp)
    return out


def _needs_greater(labels, s, t) -> bool:
    """Whether a strict edge ``s ⋖ t`` forces ``θ(s) > θ(t)``."""
    return labels[(s, t)] == STRICT


def theta_p(shape: SkewShape, p: StrictWeakAssignment) -> LabeledPoset:
    """A vertex labeling whose descents are exactly the strict edges.

    Built by removing outer corners one at a time (largest row first) and
    inserting the removed cell back with a label placed between its
    neighbours; labels are Fractions until the final densification.
    """
    labels = edge_labeling(shape, p)
    lam, mu = list(shape.lam), list(shape.mu)
    order = []
    while sum(lam) > sum(mu):
        i = max(r for r in range(len(lam))
                if lam[r] > mu[r] and (r + 1 == len(lam) or lam[r + 1] < lam[r]))
        order.append((i + 1, lam[i]))
        lam[i] -= 1
    theta: dict = {}
    for cell in reversed(order):
        i, j = cell
        up, left, diag = (i - 1, j), (i, j - 1), (i - 1, j - 1)
        nbrs = [n for n in (up, left) if n in theta]
        bigger = [n for n in nbrs if _needs_greater(labels, n, cell)]
        smaller = [n for n in nbrs if n not in bigger]
        values = list(theta.values())
        if not bigger:
            theta[cell] = (max(values) + 1) if values else Fraction(1)
        elif not smaller:
            theta[cell] = min(values) - 1
        elif diag not in theta:
            # two components meet only at this cell: lift the one that must be bigger
            (big,) = bigger
            comp = next(c for c in _components(set(theta)) if big in c)
            lift = max(values) - min(theta[x] for x in comp) + 2
            for x in comp:
                theta[x] += lift
            top_small = max(theta[x] for x in theta if x not in comp)
            theta[cell] = (top_small + min(theta[x] for x in comp)) / 2
        else:
            # the diagonal cell already sits between the two neighbours
            d = theta[diag]
            above = min((v for v in values if v > d), default=d + 1)
            theta[cell] = (d + above) / 2
        theta[cell] = Fraction(theta[cell])
    LP = LabeledPoset(shape.poset(), theta).densified()
    if LP.descents() != strict_edges(shape, p):
        raise AssertionError("corner construction failed to realize the edge labeling")
    return LP


def connected_pieces(shape: SkewShape) -> list:
    """The connected components of a skew shape, each as its own skew shape.

    A piece is moved along the main diagonal (which keeps every cell's
    diagonal) as far up-left as it goes; empty rows pad it if needed.
    """
    runs, run = [], []
    for i, (l, m) in enumerate(zip(shape.lam, shape.mu)):
        joined = run and l > m and shape.mu[i - 1] < l
        if run and not joined:
            runs.append(run)
            run = []
        if l > m:
            run.append((i + 1, l, m))
    if run:
        runs.append(run)
    out = []
    for run in runs:
        first = run[0][0]
        t = min(first - 1, min(m for _, _, m in run))
        pad = first - 1 - t
        top = run[0][1] - t
        out.append(SkewShape((top,) * pad + tuple(l - t for _, l, _ in run),
                             (top,) * pad + tuple(m - t for _, _, m in run)))
    return out


def _assignment_values(shape: SkewShape, p: StrictWeakAssignment) -> tuple:
    d = shape.diagonals()
    return d.start + 1, tuple(p[a] for a in range(d.start + 1, d.stop))


def _piece_k(shape: SkewShape, start: int, values: tuple) -> QSymElement:
    return k_p_theta(theta_p(shape, StrictWeakAssignment(start, values, None)))


_piece_wave = lru_cache(maxsize=1 << 15)(_piece_k)


@lru_cache(maxsize=1 << 16)
def _piece_vector(shape: SkewShape, start: int, values: tuple):
    return to_vector(_piece_k(shape, start, values), len(shape))


def wave_schur(shape: SkewShape, p: StrictWeakAssignment) -> QSymElement:
    """``K`` of ``θ_p``; the shape's connected pieces are computed separately
    (and cached), then multiplied."""
    out = QSymElement({(): 1})
    for piece in connected_pieces(shape):
        out = dense.product(out, _piece_wave(piece, *_assignment_values(piece, p)))
    return out


def wave_schur_vector(shape: SkewShape, p: StrictWeakAssignment):
    """``wave_schur`` as a dense vector (shapes with at most ``DENSE_LIMIT`` cells)."""
    return dense.product_of_vectors(
        (len(piece), _piece_vector(piece, *_assignment_values(piece, p)))
        for piece in connected_pieces(shape))[1]


# -- Jacobi-Trudi ---------------------------------------------------------------

ZERO_TOKEN = "0"     # L_(0) = 1
EMPTY_TOKEN = None   # L_∅ = 0


def alpha_ij(lam, mu, p: StrictWeakAssignment, i: int, j: int):
    """Composition indexing the ``(i, j)`` Jacobi-Trudi entry.

    Returns a composition, ``ZERO_TOKEN`` (entry 1) or ``EMPTY_TOKEN`` (entry 0).
    """
    lo = mu[j - 1] - j + 1
    hi = lam[i - 1] - i
    if lo < hi:
        D = [a - lo for a in range(lo + 1, hi + 1) if p[a] == STRICT]
        return from_descents(hi - lo + 1, D)
    if lo == hi:
        return (1,)
    if lo == hi + 1:
        return ZERO_TOKEN
    return EMPTY_TOKEN


def entry(token) -> QSymElement:
    if token is EMPTY_TOKEN:
        return QSymElement()
    if token == ZERO_TOKEN:
        return QSymElement({(): 1})
    return QSymElement({token: 1})


def jacobi_trudi_matrix(shape: SkewShape, p: StrictWeakAssignment) -> list:
    n = shape.rows
    return [[alpha_ij(shape.lam, shape.mu, p, i, j) for j in range(1, n + 1)]
            for i in range(1, n + 1)]


def _token_degree(token) -> int:
    return 0 if token == ZERO_TOKEN else sum(token)


def diagonal_blocks(matrix: list) -> list:
    """Split a block upper-triangular matrix into its diagonal blocks.

    A cut after row ``k`` is allowed when every entry below it and left of
    column ``k`` is ``EMPTY_TOKEN``.
    """
    n = len(matrix)
    blocks, start = [], 0
    for k in range(1, n + 1):
        if k == n or all(matrix[i][j] is EMPTY_TOKEN for i in range(k, n) for j in range(start, k)):
            blocks.append(tuple(tuple(row[start:k]) for row in matrix[start:k]))
            start = k
    return blocks


@lru_cache(maxsize=1 << 16)
def _block_vector(block: tuple):
    """Determinant of a homogeneous block as ``(degree, dense vector)``, or ``None``."""
    n = len(block)
    cache = {}

    def minor(row, cols):
        if row == n:
            return 0, ONE
        if cols in cache:
            return cache[cols]
        acc = None
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                continue
            token = block[row][j]
            if token is not EMPTY_TOKEN:
                sub = minor(row + 1, cols | 1 << j)
                if sub is not None:
                    d, v = sub
                    if token != ZERO_TOKEN:
                        v = TABLE.times_basis(token, d, v)
                        d += sum(token)
                    if acc is None:
                        acc = (d, v if sign > 0 else -v)
                    elif acc[0] != d:
                        raise ValueError("determinant of a matrix that is not homogeneous")
                    else:
                        acc = (d, acc[1] + v if sign > 0 else acc[1] - v)
            sign = -sign
        if acc is not None and not acc[1].any():
            acc = None
        cache[cols] = acc
        return acc

    return minor(0, 0)


def _sparse_determinant(block: tuple) -> QSymElement:
    n = len(block)
    cache = {}

    def minor(row, cols):
        if row == n:
            return QSymElement({(): 1})
        if cols in cache:
            return cache[cols]
        acc = QSymElement()
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                continue
            token = block[row][j]
            if token is not EMPTY_TOKEN:
                sub = minor(row + 1, cols | 1 << j)
                if sub:
                    term = sub if token == ZERO_TOKEN else multiply(entry(token), sub)
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        cache[cols] = acc
        return acc

    return minor(0, 0)


def _block_degree(block: tuple) -> int:
    """An upper bound on the degree of any term of the determinant."""
    return sum(max((_token_degree(t) for t in row if t is not EMPTY_TOKEN), default=0)
               for row in block)


def determinant(matrix: list) -> QSymElement:
    """Determinant of a matrix of ``L`` tokens, by memoised Laplace expansion.

    Block upper-triangular matrices are split into diagonal blocks first.
    Blocks of degree at most ``DENSE_LIMIT`` are expanded with dense vectors.
    """
    out = QSymElement({(): 1})
    for block in diagonal_blocks(matrix):
        if _block_degree(block) <= dense.DENSE_LIMIT:
            got = _block_vector(block)
            if got is None:
                return QSymElement()
            factor = from_vector(got[1], got[0])
        else:
            factor = _sparse_determinant(block)
        out = dense.product(out, factor)
        if not out:
            return out
    return out


def determinant_vector(matrix: list):
    """Dense determinant for matrices of total degree at most ``DENSE_LIMIT``."""
    factors = []
    for block in diagonal_blocks(matrix):
        got = _block_vector(block)
        if got is None:
            return None
        factors.append(got)
    return dense.product_of_vectors(factors)[1]


ONE = np.ones(1, dtype=np.int64)


def jacobi_trudi(shape: SkewShape, p: StrictWeakAssignment) -> QSymElement:
    return determinant(jacobi_trudi_matrix(shape, p))


def jacobi_trudi_vector(shape: SkewShape, p: StrictWeakAssignment):
    v = determinant_vector(jacobi_trudi_matrix(shape, p))
    return np.zeros(dense.dim(len(shape)), dtype=np.int64) if v is None else v


# -- two-row shapes for composition cell transfer -------------------------------------

def two_row_difference(alpha: Composition, beta: Composition,
                       placement: FoundInsidePlacement) -> tuple:
    """Shape and assignment whose wave Schur function is
    ``L_{α∧β} L_{α∨β} - L_α L_β`` for the given placement.

    With 0-indexed offset ``m`` this is ``λ = (|α|, m + 1 + |β|)``,
    ``μ = (m, 1)`` and ``p`` strict exactly on ``D(α)``.  The endpoint offsets
    give a zero difference and are rejected.
    """
    wedge_vee_at(alpha, beta, placement)
    a, b, m = sum(alpha), sum(beta), placement.m
    if placement.trivial:
        raise ValueError(f"offset {m} is trivial: the difference is 0")
    shape = SkewShape((a, m + 1 + b), (m, 1))
    p = StrictWeakAssignment.strict_on(descent_set(alpha).elements, 1, a - 1)
    return shape, p


def transfer_difference(alpha, beta, placement) -> QSymElement:
    wedge, vee = wedge_vee_at(alpha, beta, placement)
    L = lambda c: QSymElement({c: 1})
    return multiply(L(wedge), L(vee)) - multiply(L(tuple(alpha)), L(tuple(beta)))


# -- principal specialization ----------------------------------------------------

def comaj_specialization(shape: SkewShape, p: StrictWeakAssignment, precision: int) -> list:
    """``s^p(1, q, q^2, ...)`` mod ``q**precision`` from standard tableaux.

    A standard wave tableau is a bijective filling by ``1..n`` respecting the
    edge labeling, i.e. a linear extension of the cell poset; its descents are
    read through ``θ_p``.
    """
    LP = theta_p(shape, p)
    n = len(shape)
    numer = [0] * precision
    for ext in LP.poset.linear_extensions():
        w = LP.word(ext)
        e = sum(n - i for i in range(1, n) if w[i - 1] > w[i])
        if e < precision:
            numer[e] += 1
    denom = series_inverse_qfactorial(n, precision)
    return [sum(numer[k] * denom[t - k] for k in range(t + 1)) for t in range(precision)]


# -- involutions -----------------------------------------------------------------

def omega_wave(shape: SkewShape, p: StrictWeakAssignment) -> StrictWeakAssignment:
    return p.flipped()


def nu_wave(shape: SkewShape, p: StrictWeakAssignment) -> tuple:
    """180° rotation of the shape with the reflected assignment.

    A cell on diagonal ``d`` lands on diagonal ``c - l - d`` (``c`` columns,
    ``l`` rows), so the assignment becomes ``d -> p[c - l + 1 - d]``; when
    ``c = l + 1`` this is ``d -> p[-d]``.
    """
    c, l = (shape.lam[0] if shape.lam else 0), shape.rows
    return shape.rotated(), p.reflected(c - l + 1)


def random_assignment(rng, lo: int, hi: int, default=None) -> StrictWeakAssignment:
    return StrictWeakAssignment(lo, tuple(rng.choice((WEAK, STRICT)) for _ in range(lo, hi + 1)),
                                default)


def skew_shapes(max_cells: int) -> Iterator[SkewShape]:
    """Skew shapes with ``1..max_cells`` cells, normalised.

    Every row is nonempty, some row starts in column 1, and consecutive rows
    share a column or touch at a corner (``μ_i <= λ_{i+1}``).  Every skew
    shape is a translate of one of these up to empty rows and columns.
    """
    def rows_from(prev_lam, prev_mu, cells_left):
        yield ()
        for mu_i in range(0, prev_mu + 1):
            if mu_i > prev_lam:
                continue
            for lam_i in range(max(mu_i + 1, 1), prev_lam + 1):
                if prev_mu > lam_i:
                    continue
                if lam_i - mu_i > cells_left:
                    break
                for rest in rows_from(lam_i, mu_i, cells_left - (lam_i - mu_i)):
                    yield ((lam_i, mu_i),) + rest

    for lam1 in range(1, max_cells + 1):
        for mu1 in range(0, lam1):
            if lam1 - mu1 > max_cells:
                continue
            for rest in rows_from(lam1, mu1, max_cells - (lam1 - mu1)):
                rows = ((lam1, mu1),) + rest
                if rows[-1][1] != 0:
                    continue
                yield SkewShape(tuple(r[0] for r in rows), tuple(r[1] for r in rows))
