"""Exact matrices over the rationals (lists of lists of Fraction)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(inner):
            c = row[k]
            if c:
                brow = b[k]
                for j in range(cols):
                    if brow[j]:
                        orow[j] += c * brow[j]
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def mat_pow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    for _ in range(k):
        result = mat_mul(result, a)
    return result


def block_matrix(blocks: Sequence[Sequence[Matrix]], block_rows: int, block_cols: int) -> Matrix:
    """Assemble a matrix from a grid of equally sized blocks."""
    nbr = len(blocks)
    nbc = len(blocks[0]) if blocks else 0
    out = zeros(nbr * block_rows, nbc * block_cols)
    for bi, brow in enumerate(blocks):
        for bj, blk in enumerate(brow):
            for i in range(block_rows):
                src = blk[i]
                dst = out[bi * block_rows + i]
                for j in range(block_cols):
                    if src[j]:
                        dst[bj * block_cols + j] = src[j]
    return out


def rank(a: Matrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on an integer copy.

    Rows are first scaled by the lcm of their denominators, which does not
    change the rank; all later arithmetic is exact integer division.
    """
    if not a or not a[0]:
        return 0
    m = []
    for row in a:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        m.append([int(Fraction(x) * den) for x in row])
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[c]
            mr = m[r]
            for j in range(c + 1, ncols):
                mi[j] = (p * mi[j] - f * mr[j]) // prev
            mi[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r
