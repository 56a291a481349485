"""Exact arithmetic in the ring of quasi-symmetric functions.

Elements are finitely supported integer combinations of monomial (``M``) or
fundamental (``L``) basis functions indexed by compositions.  Coefficients are
Python ints, so nothing overflows.

Basis convention: ``L_alpha = sum of M_beta over beta refining alpha``, i.e.
over ``D(beta) ⊇ D(alpha)``.  This is the convention under which the shuffle
rule, P-partition generating functions and principal specialization agree.
"""
from __future__ import annotations

import json
import re
from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .compositions import (Composition, complement, composition, compositions,
                           descent_set, from_descents, from_mask, reverse)

MONOMIAL = "M"
FUNDAMENTAL = "L"


class QSymElement:
    """An element of QSym stored in one basis.

    Instances are treated as immutable values; arithmetic returns new objects.
    """

    __slots__ = ("basis", "_terms")

    def __init__(self, terms: Mapping | Iterable = (), basis: str = FUNDAMENTAL):
        if basis not in (MONOMIAL, FUNDAMENTAL):
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        acc = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for alpha, c in items:
            acc[composition(alpha)] += c
        self._terms = {a: c for a, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: dict, basis: str = FUNDAMENTAL) -> "QSymElement":
        """Trusted constructor: keys are already valid compositions."""
        out = object.__new__(cls)
        out.basis = basis
        out._terms = {a: c for a, c in terms.items() if c}
        return out

    # -- container-ish ------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, alpha) -> int:
        return self._terms.get(tuple(alpha), 0)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> list:
        return sorted({sum(a) for a in self._terms})

    def homogeneous(self, degree: int) -> "QSymElement":
        return QSymElement({a: c for a, c in self._terms.items() if sum(a) == degree}, self.basis)

    def in_basis(self, basis: str) -> "QSymElement":
        return to_fundamental(self) if basis == FUNDAMENTAL else to_monomial(self)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "QSymElement":
        if isinstance(other, QSymElement):
            return other.in_basis(self.basis)
        if isinstance(other, int):
            return QSymElement({(): other}, self.basis)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for a, c in other._terms.items():
            acc[a] = acc.get(a, 0) + c
        return QSymElement._raw(acc, self.basis)

    __radd__ = __add__

    def __neg__(self):
        return QSymElement._raw({a: -c for a, c in self._terms.items()}, self.basis)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QSymElement._raw({a: c * other for a, c in self._terms.items()}, self.basis)
        if isinstance(other, QSymElement):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = QSymElement({(): 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = QSymElement({(): other} if other else {}, self.basis)
        if not isinstance(other, QSymElement):
            return NotImplemented
        return self._terms == other.in_basis(self.basis)._terms

    def __hash__(self):
        return hash(frozenset(to_fundamental(self)._terms.items()))

    def __repr__(self):
        return f"QSymElement({render(self)!r})"

    def __str__(self):
        return render(self)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"basis": self.basis,
                "terms": [{"comp": list(a), "coeff": c} for a, c in sorted_terms(self)]}

    @classmethod
    def from_json(cls, data: dict) -> "QSymElement":
        return cls(((tuple(t["comp"]), int(t["coeff"])) for t in data["terms"]), data["basis"])


def sorted_terms(f: QSymElement) -> list:
    """Terms by increasing degree, then lexicographically decreasing composition."""
    return sorted(f.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0]), len(t[0])))


def render(f: QSymElement) -> str:
    if not f:
        return "0"
    out = []
    for alpha, c in sorted_terms(f):
        sign = "-" if c < 0 else "+"
        body = f"{f.basis}[{','.join(map(str, alpha))}]"
        if abs(c) != 1:
            body = f"{abs(c)} {body}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([LM])\[([\d,\s]*)\]\s*")


def parse(text: str) -> QSymElement:
    """Parse the text rendering (``"L[1,2] - 3 L[2]"``) or the JSON form."""
    text = text.strip()
    if text.startswith("{"):
        return QSymElement.from_json(json.loads(text))
    if text == "0":
        return QSymElement()
    pos, terms, basis = 0, [], None
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse QSym element at {text[pos:]!r}")
        if terms and m.group(1) is None:
            raise ValueError(f"missing operator before {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        if basis is not None and m.group(3) != basis:
            raise ValueError("mixed bases in one expression")
        basis = m.group(3)
        parts = [p for p in m.group(4).replace(" ", "").split(",") if p]
        terms.append((tuple(int(p) for p in parts), sign * coeff))
        pos = m.end()
    return QSymElement(terms, basis)


def L(alpha=()) -> QSymElement:
    return QSymElement({tuple(alpha): 1}, FUNDAMENTAL)


def M(alpha=()) -> QSymElement:
    return QSymElement({tuple(alpha): 1}, MONOMIAL)


fundamental_basis_element = L
monomial_basis_element = M


# -- basis change -------------------------------------------------------------

def _refinements(alpha: Composition):
    n, D = descent_set(alpha)
    rest = [i for i in range(1, n) if i not in D]
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            yield from_descents(n, D + extra), k


def to_monomial(f: QSymElement) -> QSymElement:
    if f.basis == MONOMIAL:
        return f
    acc = defaultdict(int)
    for alpha, c in f.items():
        for beta, _ in _refinements(alpha):
            acc[beta] += c
    return QSymElement._raw(acc, MONOMIAL)


def to_fundamental(f: QSymElement) -> QSymElement:
    if f.basis == FUNDAMENTAL:
        return f
    acc = defaultdict(int)
    for alpha, c in f.items():
        for beta, k in _refinements(alpha):
            acc[beta] += -c if k % 2 else c
    return QSymElement._raw(acc, FUNDAMENTAL)


# -- shuffle product ----------------------------------------------------------

def standard_word(alpha: Composition, offset: int = 0) -> tuple:
    """A word on ``offset+1 .. offset+|alpha|`` with descent set ``D(alpha)``.

    Runs are increasing and each run uses smaller letters than the previous one.
    """
    n = sum(alpha)
    word, top = [], n
    for part in alpha:
        word.extend(range(top - part + 1, top + 1))
        top -= part
    return tuple(x + offset for x in word)


def word_descents(word) -> tuple:
    return tuple(i + 1 for i in range(len(word) - 1) if word[i] > word[i + 1])


def word_composition(word) -> Composition:
    return from_descents(len(word), word_descents(word))


def shuffles(u, v):
    """All shuffles of the words ``u`` and ``v``."""
    n = len(u) + len(v)
    for positions in combinations(range(n), len(u)):
        pos = set(positions)
        iu, iv = iter(u), iter(v)
        yield tuple(next(iu) if i in pos else next(iv) for i in range(n))


def shuffle_descent_counts(u, v) -> dict:
    """Multiset of descent sets over ``u ⊙ v``, as ``{descent bitmask: count}``.

    Bit ``t`` of a mask marks a descent between positions ``t+1`` and ``t+2``.
    """
    k, l = len(u), len(v)

    @lru_cache(maxsize=None)
    def rest(i, j, last):
        if i == k and j == l:
            return ((0, 1),)
        acc = defaultdict(int)
        for nxt, state in ((u[i], (i + 1, j)) if i < k else (None, None),
                           (v[j], (i, j + 1)) if j < l else (None, None)):
            if nxt is None:
                continue
            d = 1 if last > nxt else 0
            for mask, c in rest(*state, nxt):
                acc[d | (mask << 1)] += c
        return tuple(acc.items())

    acc = defaultdict(int)
    if k:
        for mask, c in rest(1, 0, u[0]):
            acc[mask] += c
    if l:
        for mask, c in rest(0, 1, v[0]):
            acc[mask] += c
    if not k and not l:
        acc[0] = 1
    rest.cache_clear()
    return dict(acc)


@lru_cache(maxsize=200_000)
def _product_L(alpha: Composition, beta: Composition) -> tuple:
    n = sum(alpha) + sum(beta)
    u = standard_word(alpha)
    v = standard_word(beta, offset=sum(alpha))
    return tuple((from_mask(n, mask), c) for mask, c in shuffle_descent_counts(u, v).items())


def product_L(alpha: Composition, beta: Composition) -> tuple:
    """Structure constants of ``L_alpha * L_beta`` as ``((gamma, c), ...)``."""
    alpha, beta = tuple(alpha), tuple(beta)
    if alpha > beta:
        alpha, beta = beta, alpha
    return _product_L(alpha, beta)


def multiply(f: QSymElement, g: QSymElement) -> QSymElement:
    f, g = to_fundamental(f), to_fundamental(g)
    acc = defaultdict(int)
    for alpha, a in f.items():
        for beta, b in g.items():
            ab = a * b
            for gamma, c in product_L(alpha, beta):
                acc[gamma] += ab * c
    return QSymElement._raw(acc, FUNDAMENTAL)


# -- involutions and positivity -----------------------------------------------

def omega(f: QSymElement) -> QSymElement:
    f = to_fundamental(f)
    return QSymElement({(complement(a) if a else a): c for a, c in f.items()}, FUNDAMENTAL)


def nu(f: QSymElement) -> QSymElement:
    return QSymElement({reverse(a): c for a, c in f.items()}, f.basis)


def is_L_positive(f: QSymElement) -> bool:
    return all(c >= 0 for c in to_fundamental(f)._terms.values())


def is_M_positive(f: QSymElement) -> bool:
    return all(c >= 0 for c in to_monomial(f)._terms.values())


def shuffle_term_count(alpha: Composition, beta: Composition) -> int:
    return comb(sum(alpha) + sum(beta), sum(alpha))


def basis_elements(n: int, basis: str = FUNDAMENTAL) -> list:
    return [QSymElement({a: 1}, basis) for a in compositions(n)]
