"""Truncated polynomials in finitely many variables.

This is the brute-force side of every cross-check: a quasi-symmetric function
``f`` is represented by ``f(x_1, ..., x_N, 0, 0, ...)`` with all terms of total
degree above ``max_deg`` dropped.  Exponent vectors are packed into a single
int (base ``max_deg + 1``), which keeps products cheap.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .compositions import Composition, compositions, descent_set
from .qsym import QSymElement, to_monomial


@dataclass
class TruncatedPolynomial:
    num_vars: int
    max_deg: int
    packed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        self.packed = {k: c for k, c in self.packed.items() if c}

    @property
    def base(self) -> int:
        return self.max_deg + 1

    # packing ------------------------------------------------------------------

    def pack(self, exponents) -> int:
        key, b = 0, 1
        for e in exponents:
            key += e * b
            b *= self.base
        return key

    def unpack(self, key: int) -> tuple:
        out = []
        while key:
            key, e = divmod(key, self.base)
            out.append(e)
        return tuple(out)

    def degree_of(self, key: int) -> int:
        return sum(self.unpack(key))

    @classmethod
    def from_terms(cls, num_vars: int, max_deg: int, terms) -> "TruncatedPolynomial":
        p = cls(num_vars, max_deg)
        acc = defaultdict(int)
        items = terms.items() if isinstance(terms, dict) else terms
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) > num_vars and any(exps[num_vars:]):
                raise ValueError(f"exponent vector {exps} uses more than {num_vars} variables")
            if sum(exps) <= max_deg:
                acc[p.pack(exps)] += c
        p.packed = {k: c for k, c in acc.items() if c}
        return p

    def terms(self) -> dict:
        """``{exponent vector without trailing zeros: coefficient}``."""
        return {self.unpack(k): c for k, c in self.packed.items()}

    def coeff(self, exponents) -> int:
        return self.packed.get(self.pack(exponents), 0)

    # arithmetic ---------------------------------------------------------------

    def _check(self, other):
        if (self.num_vars, self.max_deg) != (other.num_vars, other.max_deg):
            raise ValueError("truncated polynomials live in different spaces")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.packed)
        for k, c in other.packed.items():
            acc[k] = acc.get(k, 0) + c
        return TruncatedPolynomial(self.num_vars, self.max_deg, acc)

    def __neg__(self):
        return TruncatedPolynomial(self.num_vars, self.max_deg,
                                   {k: -c for k, c in self.packed.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        top = self.max_deg
        right = [(k, self.degree_of(k), c) for k, c in other.packed.items()]
        acc = defaultdict(int)
        for k1, c1 in self.packed.items():
            d1 = self.degree_of(k1)
            for k2, d2, c2 in right:
                if d1 + d2 <= top:
                    acc[k1 + k2] += c1 * c2
        return TruncatedPolynomial(self.num_vars, self.max_deg, acc)

    def __eq__(self, other):
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        self._check(other)
        return self.packed == other.packed

    def restrict_degree(self, max_deg: int) -> "TruncatedPolynomial":
        return TruncatedPolynomial.from_terms(
            self.num_vars, max_deg, ((e, c) for e, c in self.terms().items() if sum(e) <= max_deg))

    def substitute_q(self, precision: int) -> list:
        """Coefficients of ``p(1, q, q^2, ...)`` modulo ``q**precision``."""
        out = [0] * precision
        for exps, c in self.terms().items():
            power = sum(i * e for i, e in enumerate(exps))
            if power < precision:
                out[power] += c
        return out

    def __repr__(self):
        return f"TruncatedPolynomial(N={self.num_vars}, max_deg={self.max_deg}, {len(self.packed)} terms)"


def one(num_vars: int, max_deg: int) -> TruncatedPolynomial:
    return TruncatedPolynomial(num_vars, max_deg, {0: 1})


def expand_monomial(alpha: Composition, num_vars: int, max_deg: int) -> TruncatedPolynomial:
    p = TruncatedPolynomial(num_vars, max_deg)
    if sum(alpha) > max_deg:
        return p
    for idx in combinations(range(num_vars), len(alpha)):
        exps = [0] * num_vars
        for i, a in zip(idx, alpha):
            exps[i] = a
        p.packed[p.pack(exps)] = 1
    return p


def expand_truncated(f: QSymElement, num_vars: int, max_deg: int) -> TruncatedPolynomial:
    if num_vars < 1:
        raise ValueError("need at least one variable")
    acc = TruncatedPolynomial(num_vars, max_deg)
    for alpha, c in to_monomial(f).items():
        for k, v in expand_monomial(alpha, num_vars, max_deg).packed.items():
            acc.packed[k] = acc.packed.get(k, 0) + c * v
    acc.packed = {k: c for k, c in acc.packed.items() if c}
    return acc


def is_quasisymmetric(p: TruncatedPolynomial, degree_bound: int) -> bool:
    """Coefficient of ``x_{i_1}^{c_1}...x_{i_k}^{c_k}`` depends only on ``c``.

    Checked for every monomial shape of total degree at most ``degree_bound``
    and every increasing choice of indices among the ``N`` variables.
    """
    if p.num_vars <= degree_bound:
        raise ValueError(f"need more than {degree_bound} variables, have {p.num_vars}")
    degree_bound = min(degree_bound, p.max_deg)
    seen = defaultdict(dict)
    for exps, c in p.terms().items():
        if sum(exps) > degree_bound:
            continue
        shape = tuple(e for e in exps if e)
        seen[shape][exps] = c
    for shape, found in seen.items():
        if len(found) != comb(p.num_vars, len(shape)) or len(set(found.values())) != 1:
            return False
    return True


# -- principal specialization -------------------------------------------------

def comaj(alpha: Composition) -> int:
    n, D = descent_set(alpha)
    return sum(n - i for i in D)


def series_inverse_qfactorial(n: int, precision: int) -> list:
    """Coefficients of ``1 / ((1-q)(1-q^2)...(1-q^n))`` mod ``q**precision``."""
    out = [1] + [0] * (precision - 1)
    for i in range(1, n + 1):
        for k in range(i, precision):
            out[k] += out[k - i]
    return out


def principal_specialization(alpha: Composition, precision: int,
                             method: str = "closed") -> list:
    """``L_alpha(1, q, q^2, ...)`` modulo ``q**precision``.

    ``method="closed"`` uses ``q^comaj / (q;q)_n``; ``method="substitution"``
    expands ``L_alpha`` in ``precision`` variables and sets ``x_i = q^(i-1)``,
    which is exact modulo ``q**precision``.
    """
    if precision < 1:
        raise ValueError("precision must be positive")
    alpha = tuple(alpha)
    if method == "closed":
        e = comaj(alpha)
        base = series_inverse_qfactorial(sum(alpha), precision)
        return [0] * min(e, precision) + base[: max(precision - e, 0)]
    if method == "substitution":
        f = QSymElement({alpha: 1})
        return expand_truncated(f, precision, sum(alpha)).substitute_q(precision)
    raise ValueError(f"unknown method {method!r}")


def all_compositions_up_to(n: int):
    for k in range(n + 1):
        yield from compositions(k)
