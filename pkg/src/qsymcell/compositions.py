"""Compositions, descent sets and cell transfer on compositions.

A composition is a plain tuple of positive integers.  The empty tuple is the
unique composition of 0.
"""
from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate, combinations
from typing import Iterator, NamedTuple

Composition = tuple


class DescentSet(NamedTuple):
    n: int
    elements: tuple

    def to_json(self) -> dict:
        return {"n": self.n, "set": list(self.elements)}

    @classmethod
    def from_json(cls, data: dict) -> "DescentSet":
        return make_descent_set(data["n"], data["set"])


def make_descent_set(n: int, elements) -> DescentSet:
    elements = tuple(sorted(set(elements)))
    if n < 0 or any(not 1 <= e <= n - 1 for e in elements):
        raise ValueError(f"descent set {elements} is not a subset of [1, {n - 1}]")
    return DescentSet(n, elements)


def composition(parts) -> Composition:
    try:
        parts = tuple(operator.index(p) for p in parts)
    except TypeError:
        raise ValueError(f"composition parts must be integers: {parts}") from None
    if any(p < 1 for p in parts):
        raise ValueError(f"composition parts must be positive: {parts}")
    return parts


def descent_set(alpha: Composition) -> DescentSet:
    sums = list(accumulate(alpha))
    n = sums[-1] if sums else 0
    return DescentSet(n, tuple(sums[:-1]))


def from_descent_set(S: DescentSet) -> Composition:
    if S.n == 0:
        return ()
    cuts = (0,) + tuple(S.elements) + (S.n,)
    return tuple(b - a for a, b in zip(cuts, cuts[1:]))


def from_descents(n: int, elements) -> Composition:
    return from_descent_set(make_descent_set(n, elements))


@lru_cache(maxsize=None)
def from_mask(n: int, mask: int) -> Composition:
    """The composition of ``n`` whose descent set has bit ``t`` set for descent ``t+1``."""
    out, last = [], 0
    for t in range(n - 1):
        if mask >> t & 1:
            out.append(t + 1 - last)
            last = t + 1
    if n:
        out.append(n - last)
    return tuple(out)


def to_mask(alpha: Composition) -> int:
    return sum(1 << (d - 1) for d in descent_set(alpha).elements)


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of ``n``, in order of their descent sets by size."""
    if n == 0:
        yield ()
        return
    for k in range(n):
        for cut in combinations(range(1, n), k):
            yield from_descent_set(DescentSet(n, cut))


def complement(alpha: Composition) -> Composition:
    if not alpha:
        raise ValueError("the empty composition has no complement")
    n, D = descent_set(alpha)
    return from_descent_set(DescentSet(n, tuple(i for i in range(1, n) if i not in D)))


def reverse(alpha: Composition) -> Composition:
    return tuple(reversed(alpha))


@dataclass(frozen=True)
class FoundInsidePlacement:
    """``beta`` sits inside ``alpha`` shifted by ``m`` (0-indexed offset)."""

    m: int
    alpha: Composition
    beta: Composition

    def __post_init__(self):
        if not is_found_at(self.alpha, self.beta, self.m):
            raise ValueError(f"{self.beta} cannot be found inside {self.alpha} at {self.m}")

    @property
    def trivial(self) -> bool:
        return self.m == 0 or self.m == sum(self.alpha) - sum(self.beta)


def is_found_at(alpha: Composition, beta: Composition, m: int) -> bool:
    a, b = sum(alpha), sum(beta)
    if not 0 <= m <= a - b:
        return False
    window = set(range(m + 1, m + b))
    return {d + m for d in descent_set(beta).elements} == window & set(descent_set(alpha).elements)


def found_inside(alpha: Composition, beta: Composition) -> list:
    a, b = sum(alpha), sum(beta)
    return [FoundInsidePlacement(m, alpha, beta)
            for m in range(a - b + 1) if is_found_at(alpha, beta, m)]


def prefix_take(alpha: Composition, x: int) -> Composition:
    """The composition of ``x`` obtained by keeping the first ``x`` cells of ``alpha``."""
    n = sum(alpha)
    if not 0 <= x <= n:
        raise ValueError(f"x={x} outside [0, {n}]")
    out = []
    for part in alpha:
        if x <= 0:
            break
        out.append(min(part, x))
        x -= part
    return tuple(out)


def suffix_take(alpha: Composition, x: int) -> Composition:
    """The composition of ``x`` obtained by keeping the last ``x`` cells of ``alpha``."""
    return reverse(prefix_take(reverse(alpha), x))


def wedge_vee_at(alpha: Composition, beta: Composition,
                 placement: FoundInsidePlacement) -> tuple:
    if (placement.alpha, placement.beta) != (tuple(alpha), tuple(beta)):
        raise ValueError("placement was computed for a different pair")
    m = placement.m
    return prefix_take(alpha, m + sum(beta)), suffix_take(alpha, sum(alpha) - m)


def canonical_pair(alpha: Composition, beta: Composition) -> tuple:
    """The unordered pair ``{alpha ∧ beta, alpha ∨ beta}``, larger composition first.

    The transfer uses the smallest offset strictly inside ``(0, |alpha| - |beta|)``;
    the two endpoint offsets give back ``{alpha, beta}`` and are ignored.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    if sum(alpha) < sum(beta) or (sum(alpha) == sum(beta) and alpha < beta):
        alpha, beta = beta, alpha
    for m in range(1, sum(alpha) - sum(beta)):
        if is_found_at(alpha, beta, m):
            pair = wedge_vee_at(alpha, beta, FoundInsidePlacement(m, alpha, beta))
            return ordered_pair(*pair)
    return ordered_pair(alpha, beta)


def ordered_pair(alpha: Composition, beta: Composition) -> tuple:
    """Canonical ordering of an unordered pair: lexicographically larger first."""
    return (alpha, beta) if alpha >= beta else (beta, alpha)


def dumps(alpha: Composition) -> str:
    return json.dumps(list(alpha))


def loads(text: str) -> Composition:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError(f"expected a JSON array, got {text!r}")
    return composition(data)
