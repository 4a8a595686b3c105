"""Pure-Python hot loops; the Cython module ``_ckernels`` mirrors these
signatures exactly and must return identical results.

Field elements are integers ``0..q-1`` with arithmetic given by flat lookup
tables (``add[a*q+b]``, ``mul[a*q+b]``, ``neg[a]``, ``inv[a]``).  Matrices are
flat row-major lists acting on column vectors.
"""

from __future__ import annotations

BACKEND = "python"


# --- order ideals -----------------------------------------------------------


def count_order_ideals(n: int, legs_mask: int, bound: int) -> list[int]:
    """Counts of finite box sets of size ``0..n`` relative to the given legs.

    ``legs_mask`` bit 0/1/2 means a one-box leg along the x/y/z axis.  Box sets
    are built by adding boxes in strictly increasing lexicographic order; every
    downward-closed set has exactly one such build sequence, so the search
    visits each configuration once.
    """
    B = bound
    total = B * B * B
    on_leg = [False] * total
    preds: list[list[int]] = [[] for _ in range(total)]
    leg_pred: list[int] = [0] * total  # predecessors satisfied by legs
    for x in range(B):
        for y in range(B):
            for z in range(B):
                idx = (x * B + y) * B + z
                on_leg[idx] = (
                    (legs_mask & 1 and y == 0 and z == 0)
                    or (legs_mask & 2 and x == 0 and z == 0)
                    or (legs_mask & 4 and x == 0 and y == 0)
                )
    for idx in range(total):
        x, rem = divmod(idx, B * B)
        y, z = divmod(rem, B)
        for p, ok in (
            ((x - 1, y, z), x > 0),
            ((x, y - 1, z), y > 0),
            ((x, y, z - 1), z > 0),
        ):
            if not ok:
                continue
            j = (p[0] * B + p[1]) * B + p[2]
            if on_leg[j]:
                leg_pred[idx] += 1
            else:
                preds[idx].append(j)

    counts = [0] * (n + 1)
    present = [False] * total

    def rec(last: int, size: int) -> None:
        counts[size] += 1
        if size == n:
            return
        for idx in range(last + 1, total):
            if on_leg[idx] or present[idx]:
                continue
            ok = True
            for j in preds[idx]:
                if not present[j]:
                    ok = False
                    break
            if not ok:
                continue
            present[idx] = True
            rec(idx, size + 1)
            present[idx] = False

    rec(-1, 0)
    return counts


# --- linear algebra over GF(q) via tables ------------------------------------


def _rank(vectors: list[list[int]], d: int, q: int, add, mul, neg, inv) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    for col in range(d):
        piv = -1
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pinv = inv[prow[col]]
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            c = row[col]
            if c:
                f = neg[mul[c * q + pinv]]
                for k in range(col, d):
                    if prow[k]:
                        row[k] = add[row[k] * q + mul[f * q + prow[k]]]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _matvec(m, v, d, q, add, mul):
    out = [0] * d
    for i in range(d):
        acc = 0
        base = i * d
        for j in range(d):
            a = m[base + j]
            if a and v[j]:
                acc = add[acc * q + mul[a * q + v[j]]]
        out[i] = acc
    return out


def subspace_type_counts(d, q, add, mul, neg, inv, npows):
    """Enumerate the ``N``-invariant subspaces ``S`` of ``GF(q)^d``.

    ``npows[j-1]`` is the flat matrix ``N^j`` for ``j = 1..d``.  Returns a dict
    ``(sub_ranks, quot_ranks) -> count`` where ``sub_ranks[j] = dim N^j S`` and
    ``quot_ranks[j] = dim N^j (M/S)`` for ``j = 0..d``.
    """
    from itertools import combinations

    N = npows[0]
    cols_of_pow = []
    for P in npows:
        cols_of_pow.append([[P[i * d + j] for i in range(d)] for j in range(d)])
    result: dict = {}
    for k in range(d + 1):
        for pivots in combinations(range(d), k):
            pivset = set(pivots)
            free = []  # (row, col) positions that range over the field
            for r, c in enumerate(pivots):
                for col in range(c + 1, d):
                    if col not in pivset:
                        free.append((r, col))
            nfree = len(free)
            digits = [0] * nfree
            while True:
                basis = [[0] * d for _ in range(k)]
                for r, c in enumerate(pivots):
                    basis[r][c] = 1
                for (r, col), val in zip(free, digits):
                    basis[r][col] = val
                if _invariant(basis, pivots, N, d, q, add, mul, neg):
                    key = _type_key(basis, k, d, q, add, mul, neg, inv, npows, cols_of_pow)
                    result[key] = result.get(key, 0) + 1
                # advance the mixed-radix counter
                pos = 0
                while pos < nfree:
                    digits[pos] += 1
                    if digits[pos] < q:
                        break
                    digits[pos] = 0
                    pos += 1
                if pos == nfree:
                    break
    return result


def _invariant(basis, pivots, N, d, q, add, mul, neg) -> bool:
    # basis is in RREF, so v lies in the span iff v - sum v[c_r] b_r == 0
    for b in basis:
        v = _matvec(N, b, d, q, add, mul)
        for r, c in enumerate(pivots):
            coef = v[c]
            if coef:
                f = neg[coef]
                row = basis[r]
                for k in range(d):
                    if row[k]:
                        v[k] = add[v[k] * q + mul[f * q + row[k]]]
        if any(v):
            return False
    return True


def _type_key(basis, k, d, q, add, mul, neg, inv, npows, cols_of_pow):
    sub = [k]
    quot = [d - k]
    for j, P in enumerate(npows):
        imgs = [_matvec(P, b, d, q, add, mul) for b in basis]
        sub.append(_rank(imgs, d, q, add, mul, neg, inv) if k else 0)
        quot.append(_rank(cols_of_pow[j] + basis, d, q, add, mul, neg, inv) - k)
    return tuple(sub), tuple(quot)


# --- literal intertwiner search ----------------------------------------------


def count_linear_solutions(nvars, q, add, mul, eqs):
    """Count assignments in ``GF(q)^nvars`` satisfying homogeneous equations.

    ``eqs`` is a list of sparse rows ``[(var, coef), ...]``.  Depth-first search
    over variables in index order; an equation is tested as soon as its last
    variable is assigned.  Deliberately brute force: this is an oracle.
    """
    by_last: list[list] = [[] for _ in range(nvars)]
    for row in eqs:
        row = [(v, c) for v, c in row if c]
        if not row:
            continue
        last = max(v for v, _ in row)
        by_last[last].append(row)
    values = [0] * nvars

    def rec(v: int) -> int:
        if v == nvars:
            return 1
        total = 0
        for a in range(q):
            values[v] = a
            ok = True
            for row in by_last[v]:
                acc = 0
                for var, c in row:
                    x = values[var]
                    if x:
                        acc = add[acc * q + mul[c * q + x]]
                if acc:
                    ok = False
                    break
            if ok:
                total += rec(v + 1)
        values[v] = 0
        return total

    return rec(0)
