"""Finite-length modules over a discrete valuation ring with residue field
``GF(q)``, and the counts the Hall algebra is built from.

A module of type ``λ`` is realised as ``GF(q)^{|λ|}`` with a nilpotent Jordan
matrix: block ``i`` has basis ``b(i,0), ..., b(i,λ_i - 1)`` and the uniformiser
acts by ``b(i,k) -> b(i,k+1)`` (and kills the last vector).  The generators
``b(i,0)`` give a basis of the top ``M / πM``.

Every count here is obtained by enumeration at a concrete ``q``.  The closed
forms (``aut_poly``, ``onto_poly``, ``hom_exponent``) are the formal versions
used once ``q`` becomes a variable, and the test-suite cross-checks the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator

from .. import cache, kernels
from ..poly import Poly, interpolate
from .field import GF, gf

__all__ = [
    "Partition",
    "Free",
    "FqModule",
    "partitions_of",
    "partitions_upto",
    "count_hom",
    "count_hom_literal",
    "count_onto",
    "count_aut",
    "count_end",
    "submodule_types",
    "hall_number",
    "hall_polynomial",
    "hom_exponent",
    "aut_poly",
    "onto_poly",
    "gl_order",
    "InterpolationError",
    "GuardError",
    "MAX_DIM",
    "FIT_Q",
    "CHECK_Q",
]

MAX_DIM = 6
FIT_Q = (2, 3, 4, 5, 7)
CHECK_Q = (8, 9)
# enumeration budget (number of candidate vectors or tuples) per count
_BUDGET = 2_000_000


class GuardError(ValueError):
    """A size guard was exceeded."""


class InterpolationError(ArithmeticError):
    """Brute-force counts do not fit a polynomial of the expected degree."""


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def n(self) -> int:
        """``sum (i-1) λ_i``; ``q^{n(λ)}`` measures how spread out ``λ`` is."""
        return sum(i * p for i, p in enumerate(self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    @classmethod
    def from_ranks(cls, ranks) -> "Partition":
        """Type of a nilpotent operator from ``ranks[j] = rank N^j``."""
        conj = [ranks[j] - ranks[j + 1] for j in range(len(ranks) - 1)]
        conj = [c for c in conj if c]
        return cls(tuple(conj)).conjugate() if conj else cls()

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def key(self) -> str:
        return ",".join(map(str, self.parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()[]")
        return cls.of(*(int(t) for t in text.split(",") if t.strip()))


@dataclass(frozen=True)
class Free:
    """The free module of rank ``rank`` (the source in onto-counts)."""

    rank: int = 1

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")


def partitions_of(n: int) -> list[Partition]:
    """Partitions of ``n`` in reverse lexicographic order."""

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail

    return [Partition(p) for p in rec(n, n)]


def partitions_upto(n: int) -> list[Partition]:
    return [p for k in range(n + 1) for p in partitions_of(k)]


# --- concrete witnesses -----------------------------------------------------


@dataclass(frozen=True)
class FqModule:
    """A module given by a nilpotent matrix over ``GF(q)`` (row-major)."""

    q: int
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        d = len(m)
        if d > MAX_DIM:
            raise GuardError(f"dimension {d} exceeds {MAX_DIM}")
        if any(len(row) != d for row in m):
            raise ValueError("matrix must be square")
        field = gf(self.q)
        if any(not 0 <= x < self.q for row in m for x in row):
            raise ValueError("entries must be field elements")
        if d and any(any(row) for row in _mat_pow(field, m, d)):
            raise ValueError("matrix is not nilpotent")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def field(self) -> GF:
        return gf(self.q)

    @classmethod
    def from_partition(cls, lam: Partition, q: int) -> "FqModule":
        d = lam.size
        if d > MAX_DIM:
            raise GuardError(f"dimension {d} exceeds {MAX_DIM}")
        m = [[0] * d for _ in range(d)]
        for start, length in _blocks(lam):
            for k in range(length - 1):
                m[start + k + 1][start + k] = 1
        return cls(q, tuple(map(tuple, m)))

    def power(self, j: int) -> tuple:
        return _mat_pow(self.field, self.matrix, j)

    def jordan_type(self) -> Partition:
        f = self.field
        ranks = [self.dim] + [f.rank(self.power(j)) for j in range(1, self.dim + 1)]
        return Partition.from_ranks(ranks)

    def apply(self, v) -> list[int]:
        f = self.field
        return [f.dot(row, v) for row in self.matrix]

    def conjugated(self, p) -> "FqModule":
        """``P N P^{-1}`` for an invertible ``p`` (same iso class)."""
        f = self.field
        pinv = _mat_inv(f, p)
        return FqModule(self.q, _mat_mul(f, _mat_mul(f, p, self.matrix), pinv))


def _blocks(lam: Partition):
    start = 0
    for p in lam.parts:
        yield start, p
        start += p


def _mat_mul(f: GF, a, b):
    n, m = len(a), len(b[0]) if b else 0
    cols = list(zip(*b))
    return tuple(tuple(f.dot(a[i], cols[j]) for j in range(m)) for i in range(n))


def _mat_pow(f: GF, a, k: int):
    d = len(a)
    out = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    for _ in range(k):
        out = _mat_mul(f, out, a)
    return out


def _mat_inv(f: GF, a):
    d = len(a)
    aug = [list(row) + [int(i == j) for j in range(d)] for i, row in enumerate(a)]
    basis, pivots = f.rref(aug)
    if pivots[:d] != list(range(d)) or len(basis) < d:
        raise ValueError("matrix is singular")
    return tuple(tuple(row[d:]) for row in basis)


# --- counting by enumeration -------------------------------------------------


def _check_budget(n: int, what: str) -> None:
    if n > _BUDGET:
        raise GuardError(f"{what}: {n} candidates exceed the enumeration budget")


def _kernel_vectors(lam: Partition, q: int, j: int) -> list[tuple]:
    """Every vector of the type-``λ`` witness killed by ``N^j``, by enumeration."""
    d = lam.size
    _check_budget(q**d, "kernel enumeration")
    shift = [None] * d  # shift[i] = index of N^j b_i or None
    for start, length in _blocks(lam):
        for k in range(length):
            shift[start + k] = start + k + j if k + j < length else None
    out = []
    for v in product(range(q), repeat=d):
        # N^j v = sum v_i N^j b_i; the images are distinct basis vectors
        if all(v[i] == 0 for i in range(d) if shift[i] is not None):
            out.append(v)
    return out


def _source_parts(src) -> list[int | None]:
    """Generator annihilator exponents; ``None`` for a free generator."""
    if isinstance(src, Free):
        return [None] * src.rank
    return list(src.parts)


def count_hom(src, tgt: Partition, q: int) -> int:
    """``#Hom(src, tgt)`` by enumeration of generator images.

    A map is fixed by the images of the generators of ``src``; the image of a
    generator with annihilator ``π^k`` must be killed by ``N^k``.
    """
    if tgt.size > MAX_DIM or (isinstance(src, Partition) and src.size > MAX_DIM):
        raise GuardError(f"modules larger than {MAX_DIM} are out of range")
    total = 1
    for k in _source_parts(src):
        if k is None:
            total *= q**tgt.size
            _check_budget(q**tgt.size, "free generator images")
        else:
            total *= len(_kernel_vectors(tgt, q, k))
    return total


def count_end(lam: Partition, q: int) -> int:
    return count_hom(lam, lam, q)


def count_hom_literal(src: Partition, tgt: Partition, q: int, backend: str | None = None) -> int:
    """``#Hom`` as the number of matrices ``X`` with ``X A = B X``.

    The intertwining equations are solved by depth-first search in the
    selected kernel backend; this route shares nothing with ``count_hom``.
    """
    f = gf(q)
    a = FqModule.from_partition(src, q).matrix
    b = FqModule.from_partition(tgt, q).matrix
    m, n = tgt.size, src.size  # X is m x n, variable x[i][j] -> i * n + j
    _check_budget(q ** (m * n), "intertwiner search")
    eqs = []
    for i in range(m):
        for j in range(n):
            row: dict[int, int] = {}
            # (X A)[i][j] - (B X)[i][j]
            for k in range(n):
                if a[k][j]:
                    v = i * n + k
                    row[v] = f.add[row.get(v, 0) * q + a[k][j]]
            for k in range(m):
                if b[i][k]:
                    v = k * n + j
                    row[v] = f.add[row.get(v, 0) * q + f.neg[b[i][k]]]
            eqs.append(sorted((v, c) for v, c in row.items() if c))
    kern = kernels.get_backend(backend)
    return int(kern.count_linear_solutions(m * n, q, list(f.add), list(f.mul), eqs))


def _top(lam: Partition, v) -> list[int]:
    return [v[start] for start, _ in _blocks(lam)]


def _count_spanning(lam: Partition, q: int, choices: list[list[tuple]], need: int | None) -> int:
    """Count tuples ``(v_1, ..)`` with ``v_i`` drawn from ``choices[i]`` whose
    images in the top of ``λ`` span a space of dimension ``need`` (default:
    the whole top).  Dynamic programme over the running span."""
    f = gf(q)
    ell = lam.length
    need = ell if need is None else need
    tops = [
        _tally(tuple(_top(lam, v)) for v in c) for c in choices
    ]
    states = {(): 1}  # RREF basis of the span -> number of prefixes
    for remaining, tally in zip(range(len(tops) - 1, -1, -1), tops):
        nxt: dict = {}
        for basis, cnt in states.items():
            rows = [list(r) for r in basis]
            for t, mult in tally.items():
                if f.rank(rows + [list(t)]) > len(rows):
                    new, _ = f.rref(rows + [list(t)])
                    key = tuple(map(tuple, new))
                else:
                    key = basis
                if len(key) + remaining < need:
                    continue
                nxt[key] = nxt.get(key, 0) + cnt * mult
        states = nxt
    return sum(c for b, c in states.items() if len(b) == need)


def _tally(items) -> dict:
    out: dict = {}
    for it in items:
        out[it] = out.get(it, 0) + 1
    return out


def count_aut(lam: Partition, q: int) -> int:
    """``#Aut(λ)``: endomorphisms that are onto the top (Nakayama)."""
    if lam.size > MAX_DIM:
        raise GuardError(f"modules larger than {MAX_DIM} are out of range")
    choices = [_kernel_vectors(lam, q, k) for k in lam.parts]
    return _count_spanning(lam, q, choices, None)


def count_onto(src, tgt: Partition, q: int) -> int:
    """Number of surjections ``src -> tgt`` (``src`` a ``Free`` or a
    ``Partition``), counted as generator images spanning the top of ``tgt``."""
    if tgt.size > MAX_DIM:
        raise GuardError(f"modules larger than {MAX_DIM} are out of range")
    if isinstance(src, int):
        src = Free(src)
    choices = []
    for k in _source_parts(src):
        if k is None:
            _check_budget(q**tgt.size, "free generator images")
            choices.append(list(product(range(q), repeat=tgt.size)))
        else:
            choices.append(_kernel_vectors(tgt, q, k))
    if tgt.length > len(choices):
        return 0
    if not choices:
        return 1
    return _count_spanning(tgt, q, choices, None)


# --- submodules and Hall numbers ---------------------------------------------


def _npows(lam: Partition, q: int) -> list[list[int]]:
    w = FqModule.from_partition(lam, q)
    return [[x for row in w.power(j) for x in row] for j in range(1, lam.size + 1)]


def submodule_types(lam: Partition, q: int, backend: str | None = None) -> dict:
    """``{(μ, ν): count}`` over submodules of the type-``λ`` witness, where
    ``μ`` is the type of the submodule and ``ν`` of the quotient."""
    if lam.size > MAX_DIM:
        raise GuardError(f"modules larger than {MAX_DIM} are out of range")
    f = gf(q)
    d = lam.size
    if d == 0:
        return {(Partition(), Partition()): 1}
    _check_budget(sum(q ** (k * (d - k)) for k in range(d + 1)), "subspace enumeration")

    def compute():
        kern = kernels.get_backend(backend)
        raw = kern.subspace_type_counts(
            d, q, list(f.add), list(f.mul), list(f.neg), list(f.inv), _npows(lam, q)
        )
        out = []
        for (sub, quot), c in raw.items():
            out.append([Partition.from_ranks(sub).key(), Partition.from_ranks(quot).key(), c])
        return sorted(out)

    if backend is None:
        rows = cache.cached(
            "hall-types",
            {"lambda": lam.key(), "q": q},
            compute,
            validate=lambda v: isinstance(v, list) and all(len(r) == 3 for r in v),
        )
    else:
        rows = compute()
    return {(Partition.parse(m), Partition.parse(n)): c for m, n, c in rows}


def hall_number(lam: Partition, mu: Partition, nu: Partition, q: int) -> int:
    """``F^λ_{μν}(q)``: submodules of type ``μ`` with quotient of type ``ν``."""
    if lam.size != mu.size + nu.size:
        return 0
    return submodule_types(lam, q).get((mu, nu), 0)


@lru_cache(maxsize=None)
def hall_polynomial(lam: Partition, mu: Partition, nu: Partition) -> Poly:
    """``F^λ_{μν}`` as a polynomial in ``q``.

    Fitted through the counts at ``FIT_Q`` and confirmed at ``CHECK_Q``; the
    degree must not exceed ``n(λ) - n(μ) - n(ν)``.
    """
    if lam.size != mu.size + nu.size:
        return Poly()
    pts = [(q, hall_number(lam, mu, nu, q)) for q in FIT_Q]
    if all(v == 0 for _, v in pts):
        poly = Poly()
    else:
        poly = interpolate(pts)
        cap = lam.n() - mu.n() - nu.n()
        if poly.degree > cap:
            raise InterpolationError(
                f"F^{lam}_{mu},{nu}: degree {poly.degree} exceeds the bound {cap}"
            )
    for q in CHECK_Q:
        if poly(Fraction(q)) != hall_number(lam, mu, nu, q):
            raise InterpolationError(f"F^{lam}_{mu},{nu}: fitted polynomial fails at q={q}")
    if any(c.denominator != 1 for c in poly.coeffs):
        raise InterpolationError(f"F^{lam}_{mu},{nu}: non-integral coefficients")
    return poly


# --- closed forms (formal q) -------------------------------------------------


def hom_exponent(src, tgt: Partition) -> int:
    """``log_q #Hom(src, tgt)``."""
    total = 0
    for k in _source_parts(src):
        total += tgt.size if k is None else sum(min(k, p) for p in tgt.parts)
    return total


def _q_minus(j: int) -> Poly:
    return Poly.monomial(j) - 1


def aut_poly(lam: Partition) -> Poly:
    """``#Aut(λ) = q^{|λ|+2n(λ)} prod_i prod_{j<=m_i} (1 - q^{-j})`` as a polynomial."""
    mults = lam.multiplicities()
    shift = lam.size + 2 * lam.n() - sum(m * (m + 1) // 2 for m in mults.values())
    out = Poly.monomial(shift)
    for m in mults.values():
        for j in range(1, m + 1):
            out = out * _q_minus(j)
    return out


def onto_poly(src, tgt: Partition) -> Poly:
    """Surjections from a free module of rank ``r`` onto ``tgt``:
    ``q^{r(|μ| - ℓ)} prod_{i<ℓ} (q^r - q^i)``."""
    r = src.rank if isinstance(src, Free) else int(src)
    ell = tgt.length
    if ell > r:
        return Poly()
    out = Poly.monomial(r * (tgt.size - ell))
    for i in range(ell):
        out = out * (Poly.monomial(r) - Poly.monomial(i))
    return out


def gl_order(d: int, q: int) -> int:
    out = 1
    for i in range(d):
        out *= q**d - q**i
    return out
