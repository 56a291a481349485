"""Finite posets, convex subsets, cell transfer and P-partition generating functions."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from itertools import combinations, permutations, product
from typing import Hashable, Iterable, Iterator

import numpy as np

from . import dense
from .compositions import from_descents, from_mask
from .qsym import QSymElement, multiply
from .truncated import TruncatedPolynomial

WEAK = "weak"
STRICT = "strict"


class PosetError(ValueError):
    pass


class FinitePoset:
    """A finite poset on hashable element ids, stored by its cover relation.

    ``relations`` may be any list of pairs ``(s, t)`` meaning ``s < t``; they
    are closed transitively and reduced to covers.  Cycles are rejected.
    """

    def __init__(self, elements: Iterable[Hashable], relations: Iterable = ()):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise PosetError("duplicate element ids")
        n = len(self.elements)
        succ = [0] * n
        for s, t in relations:
            if s not in self.index or t not in self.index:
                raise PosetError(f"relation {(s, t)} mentions an unknown element")
            succ[self.index[s]] |= 1 << self.index[t]
        # above[i]: bitmask of elements strictly greater than element i
        above = list(succ)
        for _ in range(n):
            changed = False
            for i in range(n):
                new = above[i]
                m = above[i]
                while m:
                    j = (m & -m).bit_length() - 1
                    new |= above[j]
                    m &= m - 1
                if new != above[i]:
                    above[i], changed = new, True
            if not changed:
                break
        for i in range(n):
            if above[i] >> i & 1:
                raise PosetError(f"relations contain a cycle through {self.elements[i]!r}")
        below = [0] * n
        for i in range(n):
            m = above[i]
            while m:
                j = (m & -m).bit_length() - 1
                below[j] |= 1 << i
                m &= m - 1
        self.above, self.below = above, below
        covers = []
        for i in range(n):
            m = above[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if not any(above[i] >> k & 1 and above[k] >> j & 1 for k in range(n)):
                    covers.append((self.elements[i], self.elements[j]))
        self.covers = tuple(covers)

    # basic queries ----------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        return (isinstance(other, FinitePoset) and set(self.elements) == set(other.elements)
                and set(self.covers) == set(other.covers))

    def __hash__(self):
        return hash((frozenset(self.elements), frozenset(self.covers)))

    def __repr__(self):
        return f"FinitePoset({list(self.elements)!r}, covers={list(self.covers)!r})"

    def lt(self, s, t) -> bool:
        return bool(self.above[self.index[s]] >> self.index[t] & 1)

    def leq(self, s, t) -> bool:
        return s == t or self.lt(s, t)

    def comparable(self, s, t) -> bool:
        return self.leq(s, t) or self.leq(t, s)

    def mask(self, members) -> int:
        m = 0
        for x in members:
            m |= 1 << self.index[x]
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def upper_covers(self, x) -> list:
        return [t for s, t in self.covers if s == x]

    def lower_covers(self, x) -> list:
        return [s for s, t in self.covers if t == x]

    def minimal_elements(self) -> list:
        return [e for i, e in enumerate(self.elements) if not self.below[i]]

    def maximal_elements(self) -> list:
        return [e for i, e in enumerate(self.elements) if not self.above[i]]

    # subsets ------------------------------------------------------------------

    def is_convex_mask(self, m: int) -> bool:
        up = down = 0
        x = m
        while x:
            i = (x & -x).bit_length() - 1
            up |= self.above[i]
            down |= self.below[i]
            x &= x - 1
        return (up & down) & ~m == 0

    def is_convex(self, members) -> bool:
        return self.is_convex_mask(self.mask(members))

    def is_order_ideal(self, members) -> bool:
        m = self.mask(members)
        return all(self.below[i] & ~m == 0 for i in range(len(self)) if m >> i & 1)

    def convex_masks(self) -> list:
        return [m for m in range(1 << len(self)) if self.is_convex_mask(m)]

    def convex_subsets(self) -> list:
        return [self.members(m) for m in self.convex_masks()]

    def ideal_masks(self) -> list:
        n = len(self)
        return [m for m in range(1 << n)
                if all(self.below[i] & ~m == 0 for i in range(n) if m >> i & 1)]

    def induced(self, members) -> "FinitePoset":
        keep = [e for e in self.elements if e in set(members)]
        return FinitePoset(keep, [(s, t) for s in keep for t in keep if self.lt(s, t)])

    def components(self) -> list:
        parent = {e: e for e in self.elements}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t in self.covers:
            parent[find(s)] = find(t)
        groups = defaultdict(list)
        for e in self.elements:
            groups[find(e)].append(e)
        return [tuple(g) for g in groups.values()]

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.elements, [(t, s) for s, t in self.covers])

    # linear extensions ------------------------------------------------------

    def linear_extensions(self) -> Iterator[tuple]:
        """Each linear extension ``e`` as the sequence ``e^{-1}(1), ..., e^{-1}(n)``."""
        n, below = len(self), self.below
        seq = []

        def rec(placed):
            if len(seq) == n:
                yield tuple(self.elements[i] for i in seq)
                return
            for i in range(n):
                if not placed >> i & 1 and below[i] & ~placed == 0:
                    seq.append(i)
                    yield from rec(placed | 1 << i)
                    seq.pop()

        yield from rec(0)

    def count_linear_extensions(self) -> int:
        n, below = len(self), self.below
        counts = {0: 1}
        for _ in range(n):
            nxt = defaultdict(int)
            for placed, c in counts.items():
                for i in range(n):
                    if not placed >> i & 1 and below[i] & ~placed == 0:
                        nxt[placed | 1 << i] += c
            counts = nxt
        return sum(counts.values())

    # serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data: dict) -> "FinitePoset":
        elements = [_hashable(e) for e in data["elements"]]
        return cls(elements, [(_hashable(s), _hashable(t)) for s, t in data.get("covers", [])])


def _hashable(x):
    return tuple(_hashable(y) for y in x) if isinstance(x, list) else x


def chain(n: int, start: int = 1) -> FinitePoset:
    return FinitePoset(range(start, start + n), [(i, i + 1) for i in range(start, start + n - 1)])


def antichain(n: int) -> FinitePoset:
    return FinitePoset(range(1, n + 1))


def quadrant(rows: int, cols: int) -> FinitePoset:
    """The box ``[rows] x [cols]`` of the quadrant poset, cells ``(i, j)`` 1-indexed."""
    cells = [(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]
    rel = [((i - 1, j), (i, j)) for i, j in cells if i > 1]
    rel += [((i, j - 1), (i, j)) for i, j in cells if j > 1]
    return FinitePoset(cells, rel)


def partition_cells(lam) -> frozenset:
    return frozenset((i, j) for i, row in enumerate(lam, 1) for j in range(1, row + 1))


def cells_to_partition(cells) -> tuple:
    rows = defaultdict(int)
    for i, j in cells:
        rows[i] = max(rows[i], j)
    return tuple(rows[i] for i in sorted(rows) if rows[i])


# -- convex subsets and cell transfer ---------------------------------------------

@dataclass(frozen=True)
class ConvexSubset:
    parent: FinitePoset
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        unknown = [x for x in self.members if x not in self.parent]
        if unknown:
            raise PosetError(f"elements {unknown} are not in the poset")
        if not self.parent.is_convex(self.members):
            raise PosetError(f"{sorted(self.members, key=repr)} is not convex")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.members

    def __repr__(self):
        return f"ConvexSubset({sorted(self.members, key=repr)!r})"


def _rel(P: FinitePoset, s, X: frozenset) -> str:
    """``'<'``, ``'>'`` or ``'~'`` for ``s`` against the convex set ``X``."""
    if s in X:
        return "~"
    if any(P.lt(s, t) for t in X):
        return "<"
    if any(P.lt(t, s) for t in X):
        return ">"
    return "~"


def cell_transfer(Q: ConvexSubset, R: ConvexSubset) -> tuple:
    if Q.parent is not R.parent and Q.parent != R.parent:
        raise PosetError("convex subsets of different posets")
    P, q, r = Q.parent, Q.members, R.members
    meet = {s for s in r if _rel(P, s, q) == "<"}
    meet |= {s for s in q if _rel(P, s, r) in "~<"}
    join = {s for s in q if _rel(P, s, r) == ">"}
    join |= {s for s in r if _rel(P, s, q) in "~>"}
    return ConvexSubset(P, frozenset(meet)), ConvexSubset(P, frozenset(join))


def cell_transfer_masks(P: FinitePoset, q: int, r: int) -> tuple:
    """Bitmask version of :func:`cell_transfer` for tight loops."""
    def rel_masks(X):
        up = down = 0
        x = X
        while x:
            i = (x & -x).bit_length() - 1
            up |= P.above[i]
            down |= P.below[i]
            x &= x - 1
        below_X = down & ~X     # s < X
        above_X = up & ~X       # s > X
        return below_X, above_X

    qb, qa = rel_masks(q)
    rb, ra = rel_masks(r)
    meet = (r & qb) | (q & ~ra)
    join = (q & ra) | (r & ~qb)
    return meet, join


# -- labeled and oriented posets ---------------------------------------------

class LabeledPoset:
    """A poset with an injective labeling.

    Labels only need to be mutually comparable: ints, ``(value, primed)``
    tokens or Fractions all work.  ``densified()`` gives labels ``1..n``.
    """

    def __init__(self, poset: FinitePoset, theta: dict):
        self.poset = poset
        missing = [x for x in poset.elements if x not in theta]
        if missing:
            raise PosetError(f"unlabeled elements {missing}")
        self.theta = {x: theta[x] for x in poset.elements}
        if len(set(self.theta.values())) != len(self.theta):
            raise PosetError("labeling is not injective")

    def __len__(self):
        return len(self.poset)

    def __repr__(self):
        return f"LabeledPoset({self.poset!r}, {self.theta!r})"

    def descents(self) -> frozenset:
        return frozenset((s, t) for s, t in self.poset.covers if self.theta[s] > self.theta[t])

    def equivalent(self, other: "LabeledPoset") -> bool:
        return self.poset == other.poset and self.descents() == other.descents()

    def restrict(self, members) -> "LabeledPoset":
        sub = self.poset.induced(members)
        return LabeledPoset(sub, {x: self.theta[x] for x in sub.elements})

    def densified(self) -> "LabeledPoset":
        ranked = sorted(self.poset.elements, key=lambda x: self.theta[x])
        return LabeledPoset(self.poset, {x: i for i, x in enumerate(ranked, 1)})

    def word(self, extension) -> tuple:
        return tuple(self.theta[x] for x in extension)

    def orientation(self) -> "OrientedPoset":
        d = self.descents()
        return OrientedPoset(self.poset, {c: STRICT if c in d else WEAK for c in self.poset.covers})

    def to_json(self) -> dict:
        data = self.densified().poset.to_json()
        data["labels"] = {str(x): v for x, v in self.densified().theta.items()}
        return data

    @classmethod
    def from_json(cls, data: dict) -> "LabeledPoset":
        P = FinitePoset.from_json(data)
        if "labels" not in data:
            raise PosetError("poset JSON has no labels")
        labels = data["labels"]
        theta = {x: int(labels[str(x)]) for x in P.elements if str(x) in labels}
        if any(v < 1 for v in theta.values()):
            raise PosetError("labels must be positive integers")
        return cls(P, theta)


class OrientedPoset:
    """A poset whose covers are marked weak or strict."""

    def __init__(self, poset: FinitePoset, orientation: dict):
        self.poset = poset
        self.orientation = {}
        for c in poset.covers:
            kind = orientation.get(c)
            if kind not in (WEAK, STRICT):
                raise PosetError(f"cover {c} has no weak/strict orientation")
            self.orientation[c] = kind
        extra = set(orientation) - set(poset.covers)
        if extra:
            raise PosetError(f"orientation given for non-covers {sorted(extra, key=repr)}")

    def strict_covers(self) -> frozenset:
        return frozenset(c for c, k in self.orientation.items() if k == STRICT)

    def to_json(self) -> dict:
        data = self.poset.to_json()
        data["orientation"] = {f"{s}->{t}": k for (s, t), k in self.orientation.items()}
        return data

    @classmethod
    def from_json(cls, data: dict) -> "OrientedPoset":
        P = FinitePoset.from_json(data)
        raw = data.get("orientation", {})
        by_name = {f"{s}->{t}": (s, t) for s, t in P.covers}
        unknown = set(raw) - set(by_name)
        if unknown:
            raise PosetError(f"orientation keys {sorted(unknown)} are not covers")
        return cls(P, {by_name[k]: v for k, v in raw.items()})


def arises_from_labeling(OP: OrientedPoset):
    """A labeling whose descents are exactly the strict covers, or ``None``."""
    ts = TopologicalSorter({x: set() for x in OP.poset.elements})
    for (s, t), kind in OP.orientation.items():
        if kind == WEAK:
            ts.add(t, s)    # theta(s) < theta(t)
        else:
            ts.add(s, t)    # theta(t) < theta(s)
    try:
        order = list(ts.static_order())
    except CycleError:
        return None
    return LabeledPoset(OP.poset, {x: i for i, x in enumerate(order, 1)})


def disjoint_sum(LP1: LabeledPoset, LP2: LabeledPoset) -> LabeledPoset:
    """``(P ⊕ Q, θ^⊕)`` with ``LP2``'s labels shifted above ``LP1``'s.

    Element ids are kept when disjoint and tagged ``(0, x)``/``(1, x)`` otherwise.
    """
    a, b = LP1.densified(), LP2.densified()
    clash = set(a.poset.elements) & set(b.poset.elements)
    tag1 = (lambda x: (0, x)) if clash else (lambda x: x)
    tag2 = (lambda x: (1, x)) if clash else (lambda x: x)
    elements = [tag1(x) for x in a.poset.elements] + [tag2(x) for x in b.poset.elements]
    covers = [(tag1(s), tag1(t)) for s, t in a.poset.covers]
    covers += [(tag2(s), tag2(t)) for s, t in b.poset.covers]
    theta = {tag1(x): v for x, v in a.theta.items()}
    theta.update({tag2(x): v + len(a) for x, v in b.theta.items()})
    return LabeledPoset(FinitePoset(elements, covers), theta)


# -- P-partitions ---------------------------------------------------------------

def _strict_flags(poset: FinitePoset, strict: frozenset) -> dict:
    return {c: c in strict for c in poset.covers}


def p_partitions(poset: FinitePoset, strict: frozenset, N: int) -> Iterator[dict]:
    """Every map ``σ: P -> [N]`` with ``σ(s) < σ(t)`` on strict covers and ``<=`` on weak ones."""
    order = next(poset.linear_extensions(), ())
    flags = _strict_flags(poset, strict)
    lows = {y: [(x, flags[(x, y)]) for x in poset.lower_covers(y)] for y in order}
    sigma = {}

    def rec(k):
        if k == len(order):
            yield dict(sigma)
            return
        y = order[k]
        lo = max((sigma[x] + s for x, s in lows[y]), default=1)
        for v in range(lo, N + 1):
            sigma[y] = v
            yield from rec(k + 1)
        sigma.pop(y, None)

    yield from rec(0)


def weight(sigma: dict, N: int) -> tuple:
    w = [0] * N
    for v in sigma.values():
        w[v - 1] += 1
    while w and not w[-1]:
        w.pop()
    return tuple(w)


def generating_function(poset: FinitePoset, strict: frozenset, N: int,
                        max_deg: int) -> TruncatedPolynomial:
    """Weight generating function of strict/weak P-partitions with values ``<= N``.

    Exact enumeration organised as a sweep along a linear extension, keeping
    only the values of elements that still have an unplaced upper cover.
    """
    out = TruncatedPolynomial(N, max_deg)
    if len(poset) > max_deg:
        return out
    order = next(poset.linear_extensions(), ())
    pos = {x: k for k, x in enumerate(order)}
    flags = _strict_flags(poset, strict)
    last_use = {x: max((pos[t] for t in poset.upper_covers(x)), default=-1) for x in order}
    shift = [out.base ** v for v in range(N)]
    frontier: list = []
    states = {(): {0: 1}}
    for k, y in enumerate(order):
        lows = [(frontier.index(x), 1 if flags[(x, y)] else 0) for x in poset.lower_covers(y)]
        keep = [i for i, x in enumerate(frontier) if last_use[x] > k]
        track_y = last_use[y] > k
        new_states = defaultdict(lambda: defaultdict(int))
        for vals, poly in states.items():
            lo = max((vals[i] + s for i, s in lows), default=1)
            base_vals = tuple(vals[i] for i in keep)
            for v in range(lo, N + 1):
                target = new_states[base_vals + (v,) if track_y else base_vals]
                add = shift[v - 1]
                for key, c in poly.items():
                    target[key + add] += c
        frontier = [frontier[i] for i in keep] + ([y] if track_y else [])
        states = new_states
    acc = defaultdict(int)
    for poly in states.values():
        for key, c in poly.items():
            acc[key] += c
    out.packed = {k: c for k, c in acc.items() if c}
    return out


def k_p_theta_oracle(LP: LabeledPoset, N: int, max_deg: int) -> TruncatedPolynomial:
    return generating_function(LP.poset, LP.descents(), N, max_deg)


def k_p_o_oracle(OP: OrientedPoset, N: int, max_deg: int) -> TruncatedPolynomial:
    return generating_function(OP.poset, OP.strict_covers(), N, max_deg)


def jordan_holder_set(LP: LabeledPoset) -> list:
    return [LP.word(e) for e in LP.poset.linear_extensions()]


def word_composition(word) -> tuple:
    return from_descents(len(word), [i for i in range(1, len(word)) if word[i - 1] > word[i]])


def k_p_theta_from_words(LP: LabeledPoset) -> QSymElement:
    """``K_{P,θ}`` as the sum of ``L_{C(w)}`` over the Jordan-Hölder set."""
    acc = defaultdict(int)
    for w in jordan_holder_set(LP):
        acc[word_composition(w)] += 1
    return QSymElement(acc)


def _component_masks(poset: FinitePoset, theta: dict, members) -> dict:
    """Descent-mask distribution over linear extensions, by DP on order ideals."""
    idx = [poset.index[x] for x in members]
    local = {g: i for i, g in enumerate(idx)}
    k = len(idx)
    below = []
    for g in idx:
        m, b = 0, poset.below[g]
        for h, i in local.items():
            if b >> h & 1:
                m |= 1 << i
        below.append(m)
    labels = [theta[poset.elements[g]] for g in idx]
    layer = {}
    for i in range(k):
        if not below[i]:
            layer[(1 << i, i)] = {0: 1}
    for size in range(1, k):
        nxt = defaultdict(lambda: defaultdict(int))
        bit = 1 << (size - 1)
        for (placed, last), dist in layer.items():
            for y in range(k):
                if not placed >> y & 1 and below[y] & ~placed == 0:
                    d = bit if labels[last] > labels[y] else 0
                    target = nxt[(placed | 1 << y, y)]
                    for mask, c in dist.items():
                        target[mask | d] += c
        layer = nxt
    acc = defaultdict(int)
    for dist in layer.values():
        for mask, c in dist.items():
            acc[mask] += c
    return acc


def k_p_theta(LP: LabeledPoset) -> QSymElement:
    """``K_{P,θ}`` in the fundamental basis.

    Connected components are handled separately and multiplied, which is the
    same sum over the Jordan-Hölder set, just organised so disconnected posets
    stay cheap.
    """
    parts = [(len(c), _component_masks(LP.poset, LP.theta, c)) for c in LP.poset.components()]
    if len(LP) <= dense.DENSE_LIMIT:
        vectors = []
        for k, dist in parts:
            v = np.zeros(dense.dim(k), dtype=np.int64)
            for mask, c in dist.items():
                v[mask] = c
            vectors.append((k, v))
        degree, v = dense.product_of_vectors(vectors)
        return dense.from_vector(v, degree)
    out = QSymElement({(): 1})
    for k, dist in sorted(parts, key=lambda t: t[0]):
        out = multiply(out, QSymElement._raw({from_mask(k, m): c for m, c in dist.items()}))
    return out


# -- cell transfer on labeled posets -------------------------------------------

def duplicated_sum_labelings(LP: LabeledPoset, Q: ConvexSubset, R: ConvexSubset) -> tuple:
    """``(Q ⊕ R, θ^⊕)`` and ``((Q∧R) ⊕ (Q∨R), θ^{∨∧})`` with primed duplicate labels.

    Elements are tagged ``(x, "Q")``, ``(x, "R")``, ``(x, "meet")``, ``(x, "join")``.
    Labels are tokens ``(θ(x), primed)``, ordered ``1 < 1' < 2 < ...``.
    """
    for S in (Q, R):
        if S.parent != LP.poset:
            raise PosetError("convex subsets must come from the labeled poset")
    meet, join = cell_transfer(Q, R)
    both = Q.members & R.members
    theta = LP.theta

    def tagged(parts):
        elements, covers, labels = [], [], {}
        for S, tag, primed in parts:
            sub = LP.poset.induced(S.members)
            elements += [(x, tag) for x in sub.elements]
            covers += [((s, tag), (t, tag)) for s, t in sub.covers]
            for x in sub.elements:
                labels[(x, tag)] = (theta[x], 1 if primed and x in both else 0)
        return LabeledPoset(FinitePoset(elements, covers), labels)

    plus = tagged([(Q, "Q", True), (R, "R", False)])
    vee_wedge = tagged([(meet, "meet", True), (join, "join", False)])
    return plus, vee_wedge


def is_p_partition(LP: LabeledPoset, members, sigma: dict) -> bool:
    members = set(members)
    for s, t in LP.poset.covers:
        if s in members and t in members:
            if LP.theta[s] < LP.theta[t]:
                if sigma[s] > sigma[t]:
                    return False
            elif sigma[s] >= sigma[t]:
                return False
    return True


def _transfer_maps(Q, R, meet, join, omega, sigma, S):
    q, r = Q.members, R.members
    w = {x: sigma[x] if (x in r and x not in q) or x in S else omega[x] for x in meet.members}
    v = {x: omega[x] if (x in q and x not in r) or x in S else sigma[x] for x in join.members}
    return w, v


def cell_transfer_injection(LP: LabeledPoset, Q: ConvexSubset, R: ConvexSubset,
                            omega: dict, sigma: dict) -> tuple:
    """The weight-preserving map ``η(ω, σ) = ((ω∧σ)_S, (ω∨σ)_S)``.

    ``S`` is the least subset of ``Q ∩ R`` making both outputs P-partitions.
    Returns ``(meet_partition, join_partition, S)``.  Elements where ``ω`` and
    ``σ`` agree never need swapping, so only the others are searched.
    """
    if not is_p_partition(LP, Q.members, omega) or not is_p_partition(LP, R.members, sigma):
        raise PosetError("inputs are not P-partitions of Q and R")
    meet, join = cell_transfer(Q, R)
    free = sorted((x for x in Q.members & R.members if omega[x] != sigma[x]), key=repr)
    valid = []
    for k in range(len(free) + 1):
        for S in combinations(free, k):
            S = frozenset(S)
            if any(v <= S for v in valid):
                continue
            w, v = _transfer_maps(Q, R, meet, join, omega, sigma, S)
            if is_p_partition(LP, meet.members, w) and is_p_partition(LP, join.members, v):
                valid.append(S)
    if len(valid) != 1:
        raise AssertionError(f"no unique least swap set: minimal candidates {valid}")
    S = valid[0]
    w, v = _transfer_maps(Q, R, meet, join, omega, sigma, S)
    return w, v, S


def theorem_main_difference(LP: LabeledPoset, Q: ConvexSubset, R: ConvexSubset) -> QSymElement:
    """``K_{Q∧R,θ} K_{Q∨R,θ} - K_{Q,θ} K_{R,θ}`` in the fundamental basis."""
    meet, join = cell_transfer(Q, R)
    K = lambda S: k_p_theta(LP.restrict(S.members))
    return multiply(K(meet), K(join)) - multiply(K(Q), K(R))


def verify_injection(LP: LabeledPoset, Q: ConvexSubset, R: ConvexSubset) -> dict:
    """Run η over every linear extension of ``Q ⊕ R``.

    Checks that each image is a linear extension of ``(Q∧R) ⊕ (Q∨R)``, that the
    words ``a_α`` and ``b_β`` share a descent set, that the map is injective,
    and the adjacency clause (adjacent values are never swapped).
    """
    plus, vee_wedge = duplicated_sum_labelings(LP, Q, R)
    images = set()
    stats = {"extensions": 0, "descent_mismatches": 0, "adjacent_swaps": 0, "collisions": 0}
    for ext in plus.poset.linear_extensions():
        pos = {x: i for i, x in enumerate(ext, 1)}
        omega = {x: pos[(x, "Q")] for x in Q.members}
        sigma = {x: pos[(x, "R")] for x in R.members}
        w, v, S = cell_transfer_injection(LP, Q, R, omega, sigma)
        beta = {(x, "meet"): val for x, val in w.items()}
        beta.update({(x, "join"): val for x, val in v.items()})
        assert sorted(beta.values()) == list(range(1, len(ext) + 1))
        image = tuple(sorted(beta, key=beta.get))
        if image in images:
            stats["collisions"] += 1
        images.add(image)
        if word_descent_set(plus.word(ext)) != word_descent_set(vee_wedge.word(image)):
            stats["descent_mismatches"] += 1
        stats["adjacent_swaps"] += sum(1 for x in S if abs(omega[x] - sigma[x]) == 1)
        stats["extensions"] += 1
    return stats


def word_descent_set(word) -> tuple:
    return tuple(i for i in range(1, len(word)) if word[i - 1] > word[i])


# -- enumeration of small posets ---------------------------------------------------

def _canonical(below: tuple) -> tuple:
    """Lexicographically least relabelling of a naturally labelled poset."""
    n = len(below)
    best = None
    seq = []

    def rec(placed):
        nonlocal best
        if len(seq) == n:
            where = {old: new for new, old in enumerate(seq)}
            relabelled = tuple(sum(1 << where[j] for j in range(n) if below[old] >> j & 1)
                               for old in seq)
            if best is None or relabelled < best:
                best = relabelled
            return
        for i in range(n):
            if not placed >> i & 1 and below[i] & ~placed == 0:
                seq.append(i)
                rec(placed | 1 << i)
                seq.pop()

    rec(0)
    return best


def posets_up_to_isomorphism(n: int) -> list:
    """One representative of every poset on ``n`` elements, elements ``0..n-1``."""
    classes = {()}
    for k in range(n):
        grown = set()
        for below in classes:
            for ideal in range(1 << k):
                if all(below[i] & ~ideal == 0 for i in range(k) if ideal >> i & 1):
                    grown.add(_canonical(below + (ideal,)))
        classes = grown
    out = []
    for below in sorted(classes):
        rel = [(j, i) for i in range(n) for j in range(n) if below[i] >> j & 1]
        out.append(FinitePoset(range(n), rel))
    return out


def labeling_patterns(P: FinitePoset) -> list:
    """One labeling for each realizable descent pattern of ``P``."""
    seen = {}
    for perm in permutations(range(1, len(P) + 1)):
        LP = LabeledPoset(P, dict(zip(P.elements, perm)))
        seen.setdefault(LP.descents(), LP)
    return [seen[k] for k in sorted(seen, key=lambda d: sorted(map(repr, d)))]


def orientations(P: FinitePoset) -> Iterator[OrientedPoset]:
    for kinds in product((WEAK, STRICT), repeat=len(P.covers)):
        yield OrientedPoset(P, dict(zip(P.covers, kinds)))


def random_poset(rng, n: int, density: float = 0.35) -> FinitePoset:
    rel = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    perm = list(range(n))
    rng.shuffle(perm)
    return FinitePoset(range(n), [(perm[i], perm[j]) for i, j in rel])


def dumps(obj) -> str:
    return json.dumps(obj.to_json())
