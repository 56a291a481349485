"""The poset PC_n of unordered composition pairs ordered by L-positivity.

``{α, β} <= {γ, δ}`` when ``L_γ L_δ - L_α L_β`` is L-nonnegative.  Pairs with
an empty member are included, with ``L_() = 1``.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .compositions import Composition, canonical_pair, compositions, ordered_pair
from .qsym import QSymElement, product_L


@dataclass(frozen=True)
class CompositionPair:
    first: Composition
    second: Composition

    def __post_init__(self):
        a, b = ordered_pair(tuple(self.first), tuple(self.second))
        object.__setattr__(self, "first", a)
        object.__setattr__(self, "second", b)

    @property
    def n(self) -> int:
        return sum(self.first) + sum(self.second)

    def product(self) -> QSymElement:
        return QSymElement(dict(product_L(self.first, self.second)))

    @property
    def is_fixed(self) -> bool:
        return canonical_pair(self.first, self.second) == (self.first, self.second)

    def to_json(self) -> list:
        return [list(self.first), list(self.second)]

    @classmethod
    def from_json(cls, data) -> "CompositionPair":
        return cls(tuple(data[0]), tuple(data[1]))

    def __str__(self):
        show = lambda c: "(" + ",".join(map(str, c)) + ")" if c else "∅"
        return "{" + show(self.first) + ", " + show(self.second) + "}"


def composition_pairs(n: int) -> list:
    seen, out = set(), []
    for k in range(n + 1):
        for a in compositions(k):
            for b in compositions(n - k):
                pair = CompositionPair(a, b)
                if pair not in seen:
                    seen.add(pair)
                    out.append(pair)
    return out


@dataclass
class PCPoset:
    n: int
    nodes: list
    leq: np.ndarray                  # leq[i, j]: nodes[i] <= nodes[j]
    comparisons: int = 0
    seconds: float = 0.0
    index: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {p: i for i, p in enumerate(self.nodes)}

    def le(self, p: CompositionPair, q: CompositionPair) -> bool:
        return bool(self.leq[self.index[p], self.index[q]])

    def maximal_elements(self) -> set:
        strict = self.leq & ~np.eye(len(self.nodes), dtype=bool)
        return {p for i, p in enumerate(self.nodes) if not strict[i].any()}

    def hasse_covers(self) -> list:
        strict = self.leq & ~np.eye(len(self.nodes), dtype=bool)
        s = strict.astype(np.int32)
        # i < j is a cover when no k has i < k < j
        between = (s @ s) > 0
        cover = strict & ~between
        return [(self.nodes[i], self.nodes[j]) for i, j in zip(*np.nonzero(cover))]

    def to_json(self) -> dict:
        idx = lambda p: self.index[p]
        return {
            "n": self.n,
            "nodes": [p.to_json() for p in self.nodes],
            "relation": [[int(i), int(j)] for i, j in zip(*np.nonzero(self.leq)) if i != j],
            "hasse": [[idx(a), idx(b)] for a, b in self.hasse_covers()],
            "maximal": sorted(idx(p) for p in self.maximal_elements()),
            "fixed": sorted(idx(p) for p in fixed_pairs(self.n)),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PCPoset":
        nodes = [CompositionPair.from_json(x) for x in data["nodes"]]
        leq = np.eye(len(nodes), dtype=bool)
        for i, j in data["relation"]:
            leq[i, j] = True
        return cls(data["n"], nodes, leq)

    def to_dot(self) -> str:
        lines = ["digraph PC {", "  rankdir=BT;"]
        for i, p in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{p}"];')
        for a, b in self.hasse_covers():
            lines.append(f"  n{self.index[a]} -> n{self.index[b]};")
        lines.append("}")
        return "\n".join(lines)


def product_matrix(nodes: list, n: int) -> np.ndarray:
    cols = {c: k for k, c in enumerate(compositions(n))}
    mat = np.zeros((len(nodes), len(cols)), dtype=np.int64)
    for i, p in enumerate(nodes):
        for gamma, c in product_L(p.first, p.second):
            mat[i, cols[gamma]] += c
    return mat


def build_pc_poset(n: int) -> PCPoset:
    if n < 1:
        raise ValueError("n must be positive")
    start = time.perf_counter()
    nodes = composition_pairs(n)
    mat = product_matrix(nodes, n)
    m = len(nodes)
    leq = np.zeros((m, m), dtype=bool)
    for i in range(m):
        leq[i] = (mat >= mat[i]).all(axis=1)
    both = leq & leq.T
    if not (both == np.eye(m, dtype=bool)).all():
        i, j = next((i, j) for i, j in zip(*np.nonzero(both)) if i != j)
        raise AssertionError(f"equal products for distinct pairs {nodes[i]} and {nodes[j]}")
    return PCPoset(n, nodes, leq, comparisons=m * m, seconds=time.perf_counter() - start)


def maximal_elements(P: PCPoset) -> set:
    return P.maximal_elements()


def fixed_pairs(n: int) -> set:
    return {p for p in composition_pairs(n) if p.is_fixed}


def verify_conjecture(n: int) -> dict:
    P = build_pc_poset(n)
    maximal, fixed = P.maximal_elements(), fixed_pairs(n)
    witnesses = sorted(maximal ^ fixed, key=lambda p: (p.first, p.second))
    return {
        "n": n,
        "agree": not witnesses,
        "witnesses": [{"pair": p.to_json(), "maximal": p in maximal, "fixed": p in fixed}
                      for p in witnesses],
        "nodes": len(P.nodes),
        "maximal": len(maximal),
        "fixed": len(fixed),
        "comparisons": P.comparisons,
        "seconds": round(P.seconds, 3),
    }


def dumps(P: PCPoset) -> str:
    return json.dumps(P.to_json())
