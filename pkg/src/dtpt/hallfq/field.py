"""Finite fields with at most nine elements as flat lookup tables.

Elements are the integers ``0..q-1``.  For prime ``q`` they are residues; for
``q = p^k`` an element encodes the coefficient vector of a polynomial in a
root of a fixed irreducible polynomial (base-``p`` digits, low degree first).
Tables are flat so that ``add[a * q + b]`` is ``a + b``; this is the layout
the counting kernels consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = ["GF", "gf", "SUPPORTED_Q"]

# irreducible polynomial per prime power, low coefficient first, monic
_MODULUS = {
    4: (2, (1, 1, 1)),  # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, (1, 0, 1)),  # x^2 + 1
}
SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)


@dataclass(frozen=True)
class GF:
    q: int
    p: int
    add: tuple
    mul: tuple
    neg: tuple
    inv: tuple  # inv[0] is 0 and never used

    def sub(self, a: int, b: int) -> int:
        return self.add[a * self.q + self.neg[b]]

    def dot(self, u, v) -> int:
        q, add, mul = self.q, self.add, self.mul
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = add[acc * q + mul[a * q + b]]
        return acc

    def axpy(self, c: int, x, y) -> list[int]:
        """``c * x + y`` for vectors."""
        q, add, mul = self.q, self.add, self.mul
        return [add[b * q + mul[c * q + a]] if a else b for a, b in zip(x, y)]

    def rank(self, rows) -> int:
        return len(self.rref(rows)[0])

    def rref(self, rows):
        """Reduced row echelon basis and pivot columns of the span of ``rows``."""
        q, mul, inv = self.q, self.mul, self.inv
        basis: list[list[int]] = []
        pivots: list[int] = []
        for row in rows:
            v = self.reduce(row, basis, pivots)
            lead = next((i for i, a in enumerate(v) if a), None)
            if lead is None:
                continue
            s = inv[v[lead]]
            v = [mul[s * q + a] for a in v]
            for k, b in enumerate(basis):
                c = b[lead]
                if c:
                    basis[k] = self.axpy(self.neg[c], v, b)
            basis.append(v)
            pivots.append(lead)
        order = sorted(range(len(pivots)), key=pivots.__getitem__)
        return [basis[i] for i in order], [pivots[i] for i in order]

    def reduce(self, row, basis, pivots) -> list[int]:
        v = list(row)
        for b, c in zip(basis, pivots):
            a = v[c]
            if a:
                v = self.axpy(self.neg[a], b, v)
        return v


def _prime_field(p: int) -> GF:
    add = tuple((a + b) % p for a in range(p) for b in range(p))
    mul = tuple((a * b) % p for a in range(p) for b in range(p))
    neg = tuple((-a) % p for a in range(p))
    inv = (0,) + tuple(pow(a, p - 2, p) for a in range(1, p))
    return GF(p, p, add, mul, neg, inv)


def _extension_field(q: int) -> GF:
    p, modulus = _MODULUS[q]
    k = len(modulus) - 1

    def digits(a):
        return [(a // p**i) % p for i in range(k)]

    def encode(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    def polymul(a, b):
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(digits(a)):
            for j, y in enumerate(digits(b)):
                prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                for i, m in enumerate(modulus):
                    prod[top - k + i] = (prod[top - k + i] - c * m) % p
        return encode(prod[:k])

    add = tuple(encode([(x + y) % p for x, y in zip(digits(a), digits(b))])
                for a in range(q) for b in range(q))
    mul = tuple(polymul(a, b) for a in range(q) for b in range(q))
    neg = tuple(encode([(-x) % p for x in digits(a)]) for a in range(q))
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if mul[a * q + b] == 1)
    return GF(q, p, add, mul, neg, tuple(inv))


@lru_cache(maxsize=None)
def gf(q: int) -> GF:
    """The field with ``q`` elements (``q`` in ``SUPPORTED_Q``)."""
    if q not in SUPPORTED_Q:
        raise ValueError(f"unsupported field size {q}; choose from {SUPPORTED_Q}")
    if q in _MODULUS:
        return _extension_field(q)
    return _prime_field(q)
