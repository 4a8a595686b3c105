# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_kernels_py``; same signatures, same results."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy

BACKEND = "cython"

cdef enum:
    MAXD = 8
    MAXQ = 16


# --- order ideals -----------------------------------------------------------

cdef void _rec_ideals(int last, int size, int n, int total, char* on_leg,
                      char* present, int* preds, int* npreds, long long* counts):
    cdef int idx, k, ok
    counts[size] += 1
    if size == n:
        return
    for idx in range(last + 1, total):
        if on_leg[idx] or present[idx]:
            continue
        ok = 1
        for k in range(npreds[idx]):
            if not present[preds[3 * idx + k]]:
                ok = 0
                break
        if not ok:
            continue
        present[idx] = 1
        _rec_ideals(idx, size + 1, n, total, on_leg, present, preds, npreds, counts)
        present[idx] = 0


def count_order_ideals(int n, int legs_mask, int bound):
    cdef int B = bound
    cdef int total = B * B * B
    cdef int x, y, z, idx, j, px, py, pz, axis
    cdef char* on_leg = <char*>malloc(total)
    cdef char* present = <char*>malloc(total)
    cdef int* preds = <int*>malloc(3 * total * sizeof(int))
    cdef int* npreds = <int*>malloc(total * sizeof(int))
    cdef long long* counts = <long long*>malloc((n + 1) * sizeof(long long))
    try:
        memset(present, 0, total)
        memset(counts, 0, (n + 1) * sizeof(long long))
        for x in range(B):
            for y in range(B):
                for z in range(B):
                    idx = (x * B + y) * B + z
                    on_leg[idx] = ((legs_mask & 1 and y == 0 and z == 0)
                                   or (legs_mask & 2 and x == 0 and z == 0)
                                   or (legs_mask & 4 and x == 0 and y == 0))
        for x in range(B):
            for y in range(B):
                for z in range(B):
                    idx = (x * B + y) * B + z
                    npreds[idx] = 0
                    for axis in range(3):
                        px, py, pz = x, y, z
                        if axis == 0:
                            px -= 1
                        elif axis == 1:
                            py -= 1
                        else:
                            pz -= 1
                        if px < 0 or py < 0 or pz < 0:
                            continue
                        j = (px * B + py) * B + pz
                        if not on_leg[j]:
                            preds[3 * idx + npreds[idx]] = j
                            npreds[idx] += 1
        _rec_ideals(-1, 0, n, total, on_leg, present, preds, npreds, counts)
        return [counts[k] for k in range(n + 1)]
    finally:
        free(on_leg)
        free(present)
        free(preds)
        free(npreds)
        free(counts)


# --- GF(q) linear algebra -----------------------------------------------------

cdef int _rank(int* rows, int nrows, int d, int q, int* add, int* mul, int* neg, int* inv):
    """Rank of ``nrows`` vectors stored row-major in ``rows`` (destroyed)."""
    cdef int rank = 0, col, r, piv, k, c, f, pinv
    cdef int tmp[MAXD]
    for col in range(d):
        piv = -1
        for r in range(rank, nrows):
            if rows[r * d + col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            memcpy(tmp, &rows[rank * d], d * sizeof(int))
            memcpy(&rows[rank * d], &rows[piv * d], d * sizeof(int))
            memcpy(&rows[piv * d], tmp, d * sizeof(int))
        pinv = inv[rows[rank * d + col]]
        for r in range(rank + 1, nrows):
            c = rows[r * d + col]
            if c:
                f = neg[mul[c * q + pinv]]
                for k in range(col, d):
                    if rows[rank * d + k]:
                        rows[r * d + k] = add[rows[r * d + k] * q + mul[f * q + rows[rank * d + k]]]
        rank += 1
        if rank == nrows:
            break
    return rank


cdef inline void _matvec(int* m, int* v, int* out, int d, int q, int* add, int* mul):
    cdef int i, j, acc, a
    for i in range(d):
        acc = 0
        for j in range(d):
            a = m[i * d + j]
            if a and v[j]:
                acc = add[acc * q + mul[a * q + v[j]]]
        out[i] = acc


def subspace_type_counts(int d, int q, add, mul, neg, inv, npows):
    if d > MAXD or q > MAXQ:
        raise ValueError("subspace_type_counts: size outside compiled limits")
    cdef int qq = q * q
    cdef int c_add[MAXQ * MAXQ]
    cdef int c_mul[MAXQ * MAXQ]
    cdef int c_neg[MAXQ]
    cdef int c_inv[MAXQ]
    cdef int c_pow[MAXD * MAXD * MAXD]
    cdef int basis[MAXD * MAXD]
    cdef int work[2 * MAXD * MAXD]
    cdef int v[MAXD]
    cdef int pivots[MAXD]
    cdef int is_piv[MAXD]
    cdef int free_r[MAXD * MAXD]
    cdef int free_c[MAXD * MAXD]
    cdef int digits[MAXD * MAXD]
    cdef int i, j, k, r, c, nfree, pos, ok, coef, f, t, nrow, jp
    cdef int sub_key[MAXD + 1]
    cdef int quot_key[MAXD + 1]
    for i in range(qq):
        c_add[i] = add[i]
        c_mul[i] = mul[i]
    for i in range(q):
        c_neg[i] = neg[i]
        c_inv[i] = inv[i]
    for t in range(d):
        P = npows[t]
        for i in range(d * d):
            c_pow[t * d * d + i] = P[i]
    cdef int* N = c_pow
    result = {}
    from itertools import combinations
    for k in range(d + 1):
        for piv_tuple in combinations(range(d), k):
            for i in range(d):
                is_piv[i] = 0
            for r in range(k):
                pivots[r] = piv_tuple[r]
                is_piv[pivots[r]] = 1
            nfree = 0
            for r in range(k):
                for c in range(pivots[r] + 1, d):
                    if not is_piv[c]:
                        free_r[nfree] = r
                        free_c[nfree] = c
                        nfree += 1
            for i in range(nfree):
                digits[i] = 0
            while True:
                memset(basis, 0, k * d * sizeof(int))
                for r in range(k):
                    basis[r * d + pivots[r]] = 1
                for i in range(nfree):
                    basis[free_r[i] * d + free_c[i]] = digits[i]
                ok = 1
                for r in range(k):
                    _matvec(N, &basis[r * d], v, d, q, c_add, c_mul)
                    for i in range(k):
                        coef = v[pivots[i]]
                        if coef:
                            f = c_neg[coef]
                            for j in range(d):
                                if basis[i * d + j]:
                                    v[j] = c_add[v[j] * q + c_mul[f * q + basis[i * d + j]]]
                    for j in range(d):
                        if v[j]:
                            ok = 0
                            break
                    if not ok:
                        break
                if ok:
                    sub_key[0] = k
                    quot_key[0] = d - k
                    for t in range(d):
                        if k:
                            for r in range(k):
                                _matvec(&c_pow[t * d * d], &basis[r * d], &work[r * d], d, q, c_add, c_mul)
                            sub_key[t + 1] = _rank(work, k, d, q, c_add, c_mul, c_neg, c_inv)
                        else:
                            sub_key[t + 1] = 0
                        nrow = 0
                        for jp in range(d):
                            for i in range(d):
                                work[nrow * d + i] = c_pow[t * d * d + i * d + jp]
                            nrow += 1
                        for r in range(k):
                            memcpy(&work[nrow * d], &basis[r * d], d * sizeof(int))
                            nrow += 1
                        quot_key[t + 1] = _rank(work, nrow, d, q, c_add, c_mul, c_neg, c_inv) - k
                    key = (tuple([sub_key[i] for i in range(d + 1)]),
                           tuple([quot_key[i] for i in range(d + 1)]))
                    result[key] = result.get(key, 0) + 1
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


# --- literal intertwiner search ----------------------------------------------

cdef long long _rec_solve(int v, int nvars, int q, int* add, int* mul, int* values,
                          int* eq_start, int* eq_len, int* eq_vars, int* eq_coefs,
                          int* last_start, int* last_count, int* last_eqs):
    cdef long long total = 0
    cdef int a, e, ei, k, acc, x, ok
    if v == nvars:
        return 1
    for a in range(q):
        values[v] = a
        ok = 1
        for e in range(last_count[v]):
            ei = last_eqs[last_start[v] + e]
            acc = 0
            for k in range(eq_start[ei], eq_start[ei] + eq_len[ei]):
                x = values[eq_vars[k]]
                if x:
                    acc = add[acc * q + mul[eq_coefs[k] * q + x]]
            if acc:
                ok = 0
                break
        if ok:
            total += _rec_solve(v + 1, nvars, q, add, mul, values, eq_start, eq_len,
                                eq_vars, eq_coefs, last_start, last_count, last_eqs)
    values[v] = 0
    return total


def count_linear_solutions(int nvars, int q, add, mul, eqs):
    rows = []
    for row in eqs:
        row = [(var, c) for var, c in row if c]
        if row:
            rows.append(row)
    cdef int neq = len(rows)
    cdef int nterms = sum(len(r) for r in rows)
    cdef int* c_add = <int*>malloc(q * q * sizeof(int))
    cdef int* c_mul = <int*>malloc(q * q * sizeof(int))
    cdef int* values = <int*>malloc((nvars + 1) * sizeof(int))
    cdef int* eq_start = <int*>malloc((neq + 1) * sizeof(int))
    cdef int* eq_len = <int*>malloc((neq + 1) * sizeof(int))
    cdef int* eq_vars = <int*>malloc((nterms + 1) * sizeof(int))
    cdef int* eq_coefs = <int*>malloc((nterms + 1) * sizeof(int))
    cdef int* last_start = <int*>malloc((nvars + 1) * sizeof(int))
    cdef int* last_count = <int*>malloc((nvars + 1) * sizeof(int))
    cdef int* last_eqs = <int*>malloc((neq + 1) * sizeof(int))
    cdef int i, pos = 0, e
    try:
        for i in range(q * q):
            c_add[i] = add[i]
            c_mul[i] = mul[i]
        for i in range(nvars):
            values[i] = 0
            last_count[i] = 0
        lasts = []
        for e, row in enumerate(rows):
            eq_start[e] = pos
            eq_len[e] = len(row)
            for var, c in row:
                eq_vars[pos] = var
                eq_coefs[pos] = c
                pos += 1
            lasts.append(max(var for var, _ in row))
        pos = 0
        for i in range(nvars):
            last_start[i] = pos
            for e in range(neq):
                if lasts[e] == i:
                    last_eqs[pos] = e
                    pos += 1
                    last_count[i] += 1
        return _rec_solve(0, nvars, q, c_add, c_mul, values, eq_start, eq_len, eq_vars,
                          eq_coefs, last_start, last_count, last_eqs)
    finally:
        free(c_add)
        free(c_mul)
        free(values)
        free(eq_start)
        free(eq_len)
        free(eq_vars)
        free(eq_coefs)
        free(last_start)
        free(last_count)
        free(last_eqs)
