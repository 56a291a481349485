"""Dense coefficient vectors for homogeneous QSym elements.

A degree ``n`` element is an int64 vector of length ``2**(n-1)`` indexed by
descent bitmask.  Products go through cached shuffle structure constants.
"""
from __future__ import annotations

import numpy as np

from .compositions import from_mask, to_mask
from .qsym import QSymElement, multiply, product_L, to_fundamental


def dim(n: int) -> int:
    return 1 << max(n - 1, 0)


def to_vector(f: QSymElement, n: int) -> np.ndarray:
    v = np.zeros(dim(n), dtype=np.int64)
    for alpha, c in to_fundamental(f).items():
        if sum(alpha) != n:
            raise ValueError(f"term {alpha} is not of degree {n}")
        v[to_mask(alpha)] = c
    return v


def from_vector(v: np.ndarray, n: int) -> QSymElement:
    return QSymElement._raw({from_mask(n, int(m)): int(v[m]) for m in np.flatnonzero(v)})


def basis_rows(n: int, comps) -> np.ndarray:
    rows = np.zeros((len(comps), dim(n)), dtype=np.int64)
    for i, c in enumerate(comps):
        rows[i, to_mask(c)] = 1
    return rows


class ProductTable:
    """``table[a, b]`` has shape ``(dim a, dim b, dim (a+b))``: ``L_α L_β`` by masks."""

    def __init__(self):
        self._tables = {}

    def __getitem__(self, key):
        if key not in self._tables:
            a, b = key
            T = np.zeros((dim(a), dim(b), dim(a + b)), dtype=np.int64)
            for i in range(dim(a)):
                alpha = from_mask(a, i)
                for j in range(dim(b)):
                    for gamma, c in product_L(alpha, from_mask(b, j)):
                        T[i, j, to_mask(gamma)] += c
            self._tables[key] = T
        return self._tables[key]

    def products(self, a: int, b: int, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Row-wise products of stacked vectors ``left`` (``k x dim a``) and ``right``."""
        outer = (left[:, :, None] * right[:, None, :]).reshape(len(left), -1)
        return outer @ self[a, b].reshape(dim(a) * dim(b), -1)

    def product_vector(self, a: int, b: int, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Product of two single vectors, touching only their nonzero entries."""
        iu, iv = np.flatnonzero(u), np.flatnonzero(v)
        block = self[a, b][iu[:, None], iv[None, :]]
        return np.tensordot(np.outer(u[iu], v[iv]), block, axes=2)

    def times_basis(self, alpha, b: int, v: np.ndarray) -> np.ndarray:
        """``L_α`` times the degree ``b`` vector ``v``."""
        return v @ self[sum(alpha), b][to_mask(alpha)]


TABLE = ProductTable()


DENSE_LIMIT = 10


def product(f: QSymElement, g: QSymElement) -> QSymElement:
    """``f * g``, through the dense tables when both factors are homogeneous
    and the product has degree at most ``DENSE_LIMIT``."""
    df, dg = f.degrees(), g.degrees()
    if len(df) != 1 or len(dg) != 1 or df[0] + dg[0] > DENSE_LIMIT or len(f) * len(g) < 4:
        return multiply(f, g)
    a, b = df[0], dg[0]
    return from_vector(TABLE.product_vector(a, b, to_vector(f, a), to_vector(g, b)), a + b)


def product_of_vectors(factors) -> tuple:
    """``(degree, vector)`` of a product of ``(degree, vector)`` factors."""
    d, acc = 0, ONE
    for b, v in factors:
        acc = TABLE.product_vector(d, b, acc, v)
        d += b
    return d, acc


ONE = np.ones(1, dtype=np.int64)
