"""Hom and Ext from monomial curve ideals into finite-length modules.

Everything is finite linear algebra over the rationals.  A module ``T`` of
finite length supported at the origin of ``A^3`` is a vector space with three
commuting nilpotent matrices; ``Ext^i(I, T)`` is the cohomology of
``Hom(F_., T)`` for the Taylor resolution ``F_.`` of ``I``.

Polynomials in ``x, y, z`` are dicts ``{(a, b, c): Fraction}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from . import linalg
from .linalg import Matrix
from .partitions import BoxSet, LegConfig, iter_box_sets

__all__ = [
    "MonIdeal",
    "FinMod",
    "FreeRes",
    "taylor_resolution",
    "koszul_resolution",
    "ext_dims",
    "hom_dim",
    "ext1_dim",
    "verify_rr",
    "two_point_profile",
    "monomial_modules",
    "CURVE_IDEALS",
]

Exp = tuple[int, int, int]
Poly3 = dict  # {Exp: Fraction}

MAX_TAYLOR_GENS = 6


# --- polynomials in three variables -------------------------------------------


def _mono(e: Exp, c=1) -> Poly3:
    return {tuple(e): Fraction(c)} if c else {}


def _padd(a: Poly3, b: Poly3) -> Poly3:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pmul(a: Poly3, b: Poly3) -> Poly3:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def shift_poly(p: Poly3, point: Sequence[Fraction]) -> Poly3:
    """Substitute ``x_i -> x_i + a_i`` and re-expand."""
    out: Poly3 = {}
    for e, c in p.items():
        term: Poly3 = {(0, 0, 0): Fraction(c)}
        for axis in range(3):
            k = e[axis]
            a = Fraction(point[axis])
            factor: Poly3 = {}
            for j in range(k + 1):
                coef = comb(k, j) * a ** (k - j)
                if coef:
                    ex = [0, 0, 0]
                    ex[axis] = j
                    factor[tuple(ex)] = Fraction(coef)
            term = _pmul(term, factor)
        out = _padd(out, term)
    return out


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(exps: Iterable[Exp]) -> Exp:
    exps = list(exps)
    return tuple(max(e[i] for e in exps) for i in range(3)) if exps else (0, 0, 0)


# --- monomial ideals ----------------------------------------------------------


@dataclass(frozen=True)
class MonIdeal:
    """Monomial ideal in ``Q[x, y, z]`` given by minimal generators."""

    gens: tuple

    def __post_init__(self):
        gens = sorted({tuple(int(v) for v in g) for g in self.gens})
        if not gens:
            raise ValueError("the zero ideal is not accepted")
        minimal = [g for g in gens if not any(h != g and _divides(h, g) for h in gens)]
        object.__setattr__(self, "gens", tuple(minimal))

    @classmethod
    def parse(cls, text: str) -> "MonIdeal":
        """Parse ``"xy,yz,zx"`` or ``"y, z^2"`` style generator lists."""
        gens = []
        for word in text.replace(" ", "").strip("()").split(","):
            e = [0, 0, 0]
            i = 0
            while i < len(word):
                axis = "xyz".index(word[i])
                i += 1
                power = 1
                if i < len(word) and word[i] == "^":
                    j = i + 1
                    while j < len(word) and word[j].isdigit():
                        j += 1
                    power = int(word[i + 1:j])
                    i = j
                e[axis] += power
            gens.append(tuple(e))
        return cls(tuple(gens))

    def __str__(self) -> str:
        def fmt(g):
            s = "".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip("xyz", g) if k
            )
            return s or "1"

        return "(" + ",".join(fmt(g) for g in self.gens) + ")"

    def contains(self, e: Exp) -> bool:
        return any(_divides(g, e) for g in self.gens)

    def intersect(self, other: "MonIdeal") -> "MonIdeal":
        return MonIdeal(tuple(_lcm([a, b]) for a in self.gens for b in other.gens))

    def minimal_primes(self) -> list[frozenset]:
        """Minimal primes of the radical, as sets of variable indices."""
        supports = [frozenset(i for i in range(3) if g[i]) for g in self.gens]
        covers = []
        for k in range(4):
            for s in combinations(range(3), k):
                s = frozenset(s)
                if all(s & sup for sup in supports) and not any(c <= s for c in covers):
                    covers.append(s)
        return covers

    def is_saturated(self) -> bool:
        """No embedded component at the origin: ``I : m^inf == I``."""
        K = max(max(g) for g in self.gens) + 1
        for e in product(range(K + 1), repeat=3):
            if self.contains(e):
                continue
            if all(
                self.contains(tuple(e[i] + (K if i == axis else 0) for i in range(3)))
                for axis in range(3)
            ):
                return False
        return True

    def is_cm_curve(self) -> bool:
        """Pure one-dimensional support made of coordinate axes, no embedded points."""
        primes = self.minimal_primes()
        return bool(primes) and all(len(p) == 2 for p in primes) and self.is_saturated()


CURVE_IDEALS = {
    "axis": MonIdeal(((0, 1, 0), (0, 0, 1))),
    "three-axes": MonIdeal(((1, 1, 0), (0, 1, 1), (1, 0, 1))),
    "two-axes": MonIdeal(((0, 1, 0), (0, 0, 1))).intersect(MonIdeal(((1, 0, 0), (0, 0, 1)))),
}


# --- resolutions ----------------------------------------------------------------


@dataclass
class FreeRes:
    """``0 -> F_n -> ... -> F_0 -> I``.

    ``diffs[k]`` is the ``rank(F_k) x rank(F_{k+1})`` matrix of polynomials of
    ``d_{k+1}: F_{k+1} -> F_k`` (acting on column vectors); ``augment`` is the
    generator row ``F_0 -> I``.
    """

    ranks: list[int]
    diffs: list[list[list[Poly3]]]
    augment: list[Poly3]
    multidegrees: list[list[Exp]] = field(default_factory=list)

    def shifted(self, point: Sequence[Fraction]) -> "FreeRes":
        """Apply the ring automorphism ``x_i -> x_i + a_i`` to every entry."""
        return FreeRes(
            list(self.ranks),
            [[[shift_poly(p, point) for p in row] for row in d] for d in self.diffs],
            [shift_poly(p, point) for p in self.augment],
            [],
        )

    def composites_vanish(self) -> bool:
        mats = [[self.augment]] + self.diffs
        for a, b in zip(mats, mats[1:]):
            for i in range(len(a)):
                for j in range(len(b[0]) if b else 0):
                    acc: Poly3 = {}
                    for k in range(len(b)):
                        acc = _padd(acc, _pmul(a[i][k], b[k][j]))
                    if acc:
                        return False
        return True


def taylor_resolution(I: MonIdeal) -> FreeRes:
    """Taylor complex: ``F_k`` has a basis indexed by ``(k+1)``-subsets of generators."""
    g = len(I.gens)
    if g > MAX_TAYLOR_GENS:
        raise ValueError(f"Taylor resolution guard: {g} > {MAX_TAYLOR_GENS} generators")
    subsets = [list(combinations(range(g), k + 1)) for k in range(g)]
    index = [{s: i for i, s in enumerate(level)} for level in subsets]
    lcms = [[_lcm(I.gens[j] for j in s) for s in level] for level in subsets]
    diffs = []
    for k in range(1, g):
        rows, cols = len(subsets[k - 1]), len(subsets[k])
        d = [[{} for _ in range(cols)] for _ in range(rows)]
        for col, s in enumerate(subsets[k]):
            m_s = lcms[k][col]
            for pos, j in enumerate(s):
                face = tuple(v for v in s if v != j)
                row = index[k - 1][face]
                m_f = lcms[k - 1][row]
                quot = tuple(a - b for a, b in zip(m_s, m_f))
                d[row][col] = _mono(quot, (-1) ** pos)
        diffs.append(d)
    augment = [_mono(gen) for gen in I.gens]
    return FreeRes([len(level) for level in subsets], diffs, augment, lcms)


def koszul_resolution(I: MonIdeal) -> FreeRes:
    """Hand-written ``0 -> R -> R^2 -> I`` for two coprime monomial generators."""
    if len(I.gens) != 2:
        raise ValueError("koszul_resolution needs exactly two generators")
    a, b = I.gens
    if any(x and y for x, y in zip(a, b)):
        raise ValueError("generators must be coprime")
    d1 = [[_mono(b)], [_mono(a, -1)]]
    return FreeRes([2, 1], [d1], [_mono(a), _mono(b)], [[a, b], [_lcm([a, b])]])


def check_exact(res: FreeRes, I: MonIdeal, box: int) -> bool:
    """Exactness of a monomial resolution, one multidegree at a time.

    In multidegree ``alpha`` the piece of ``F_k`` has basis the generators whose
    multidegree divides ``x^alpha``; the complex of these vector spaces must be
    exact in positive degree with ``H_0`` equal to the piece of ``I``.
    """
    for alpha in product(range(box + 1), repeat=3):
        live = [[i for i, m in enumerate(level) if _divides(m, alpha)] for level in res.multidegrees]
        ranks = []
        for k, d in enumerate(res.diffs):
            rows, cols = live[k], live[k + 1]
            mat = [[_scalar(d[i][j]) for j in cols] for i in rows]
            ranks.append(linalg.rank(mat) if rows and cols else 0)
        # H_0 = F_0 / im d_1 must map isomorphically onto I_alpha
        h0 = len(live[0]) - (ranks[0] if ranks else 0)
        if h0 != (1 if I.contains(alpha) else 0):
            return False
        for k in range(1, len(res.ranks)):
            incoming = ranks[k] if k < len(ranks) else 0
            if len(live[k]) - ranks[k - 1] - incoming != 0:
                return False
    return True


def _scalar(p: Poly3) -> Fraction:
    # entries are single monomials; in a fixed multidegree only the coefficient survives
    return sum(p.values(), Fraction(0))


# --- finite-length modules -----------------------------------------------------


@dataclass(frozen=True)
class FinMod:
    """Finite-dimensional module: commuting nilpotent ``X, Y, Z`` (column convention)."""

    dim: int
    mats: tuple
    label: str = ""

    def __post_init__(self):
        mats = tuple(tuple(tuple(Fraction(v) for v in row) for row in m) for m in self.mats)
        if len(mats) != 3:
            raise ValueError("three variable actions required")
        for m in mats:
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ValueError("action matrices must be dim x dim")
        object.__setattr__(self, "mats", mats)
        lists = [self.matrix(i) for i in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                if linalg.mat_mul(lists[i], lists[j]) != linalg.mat_mul(lists[j], lists[i]):
                    raise ValueError("actions do not commute")
            if self.dim and not linalg.is_zero(linalg.mat_pow(lists[i], self.dim)):
                raise ValueError("action is not nilpotent")

    def matrix(self, i: int) -> Matrix:
        return [list(row) for row in self.mats[i]]

    @classmethod
    def point(cls) -> "FinMod":
        return cls(1, ([[0]], [[0]], [[0]]), "O_p")

    @classmethod
    def from_cells(cls, cells: Iterable[Exp], label: str = "") -> "FinMod":
        """Monomial module on a convex cell set: ``x_i`` moves a cell by ``e_i``."""
        cells = sorted(set(tuple(c) for c in cells))
        idx = {c: k for k, c in enumerate(cells)}
        n = len(cells)
        mats = []
        for axis in range(3):
            m = linalg.zeros(n, n)
            for c, k in idx.items():
                t = list(c)
                t[axis] += 1
                j = idx.get(tuple(t))
                if j is not None:
                    m[j][k] = Fraction(1)
            mats.append(m)
        return cls(n, tuple(mats), label or f"cells{tuple(cells)}")

    @classmethod
    def from_boxset(cls, b: BoxSet) -> "FinMod":
        if b.legs.count:
            raise ValueError("only finite box sets give finite-length modules")
        return cls.from_cells(b.boxes)

    @classmethod
    def double_point(cls, v: Sequence) -> "FinMod":
        """``O_{2x}`` at the origin with tangent direction ``v``: basis ``(1, eps)``."""
        if all(Fraction(c) == 0 for c in v):
            raise ValueError("tangent direction must be nonzero")
        mats = tuple([[0, 0], [Fraction(c), 0]] for c in v)
        return cls(2, mats, f"O_2x{tuple(str(Fraction(c)) for c in v)}")

    def direct_sum(self, other: "FinMod") -> "FinMod":
        n = self.dim + other.dim
        mats = []
        for i in range(3):
            m = linalg.zeros(n, n)
            for r in range(self.dim):
                m[r][: self.dim] = list(self.mats[i][r])
            for r in range(other.dim):
                m[self.dim + r][self.dim:] = list(other.mats[i][r])
            mats.append(m)
        return FinMod(n, tuple(mats), f"{self.label}+{other.label}")

    def evaluate(self, p: Poly3) -> Matrix:
        """The matrix ``p(X, Y, Z)``."""
        n = self.dim
        out = linalg.zeros(n, n)
        cache: dict = {}

        def power(axis, k):
            key = (axis, k)
            if key not in cache:
                cache[key] = linalg.mat_pow(self.matrix(axis), k)
            return cache[key]

        for e, c in p.items():
            if any(k >= n for k in e) and n:
                continue  # nilpotent: X^n = 0
            term = linalg.mat_mul(linalg.mat_mul(power(0, e[0]), power(1, e[1])), power(2, e[2]))
            out = linalg.mat_add(out, linalg.mat_scale(term, c))
        return out


# --- Hom / Ext -------------------------------------------------------------------


def _induced(d: list[list[Poly3]], T: FinMod) -> Matrix:
    """Matrix of ``Hom(F_{k-1}, T) -> Hom(F_k, T)``, ``phi -> phi o d_k``.

    ``Hom(F, T) = T^rank`` with ``phi_i`` the image of the ``i``-th basis element;
    ``(phi o d)_j = sum_i d[i][j](X, Y, Z) phi_i``.
    """
    rows, cols = len(d), len(d[0])
    n = T.dim
    zero = linalg.zeros(n, n)
    blocks = [[T.evaluate(d[i][j]) if d[i][j] else zero for i in range(rows)] for j in range(cols)]
    return linalg.block_matrix(blocks, n, n)


def ext_dims(res: FreeRes, T: FinMod) -> list[int]:
    """``[dim Ext^0, dim Ext^1, ...]`` from the cochain complex ``Hom(F_., T)``."""
    n = T.dim
    ranks = [linalg.rank(_induced(d, T)) if n else 0 for d in res.diffs]
    out = []
    for k, r in enumerate(res.ranks):
        outgoing = ranks[k] if k < len(ranks) else 0
        incoming = ranks[k - 1] if k >= 1 else 0
        out.append(r * n - outgoing - incoming)
    return out


def _resolution_at(I: MonIdeal, point, resolution: FreeRes | None) -> FreeRes:
    res = resolution or taylor_resolution(I)
    if point is not None and any(Fraction(a) != 0 for a in point):
        # T sits at ``point``; move it to the origin by translating the ideal
        res = res.shifted([Fraction(a) for a in point])
    return res


def hom_dim(I: MonIdeal, T: FinMod, point=None, resolution: FreeRes | None = None) -> int:
    """``dim Hom(I, T)`` with ``T`` supported at ``point`` (default the origin)."""
    return ext_dims(_resolution_at(I, point, resolution), T)[0]


def ext1_dim(I: MonIdeal, T: FinMod, point=None, resolution: FreeRes | None = None) -> int:
    dims = ext_dims(_resolution_at(I, point, resolution), T)
    return dims[1] if len(dims) > 1 else 0


def verify_rr(I: MonIdeal, T: FinMod, point=None) -> dict:
    """Check ``hom - ext^1 = length`` and vanishing of higher Ext."""
    dims = ext_dims(_resolution_at(I, point, None), T)
    h = dims[0]
    e = dims[1] if len(dims) > 1 else 0
    higher = dims[2:]
    ok = (h - e == T.dim) and all(v == 0 for v in higher)
    return {
        "ideal": str(I),
        "module": T.label,
        "point": None if point is None else [str(Fraction(a)) for a in point],
        "hom": h,
        "ext1": e,
        "higher_ext": higher,
        "length": T.dim,
        "status": "pass" if ok else "fail",
    }


# --- the length-two profile --------------------------------------------------------


TORUS_DIRECTIONS = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def _profile_at(res: FreeRes, v) -> dict:
    T2 = FinMod.double_point(v)
    d2 = ext_dims(res, T2)
    d1 = ext_dims(res, FinMod.point())
    # m_x is the socle line of O_2x, isomorphic to O_x as a module
    h2x, e2x = d2[0], (d2[1] if len(d2) > 1 else 0)
    hx, ex = d1[0], (d1[1] if len(d1) > 1 else 0)
    return {
        "direction": [str(Fraction(c)) for c in v],
        "h_2x": h2x,
        "e_2x": e2x,
        "h_mx": hx,
        "e_x": ex,
        "rr_2x": h2x - e2x == 2,
        "rr_mx": hx - ex == 1,
        "difference": (h2x - hx) - (e2x - ex),
    }


def two_point_profile(I: MonIdeal, direction_samples: int = 3, seed: int = 0) -> dict:
    """Values of ``h_2x, h_mx, e_2x, e_x`` for length-2 structures at the origin.

    Torus-fixed directions are computed exactly; the generic stratum is probed at
    ``direction_samples`` seeded random rational directions and must agree, or it
    is reported as ambiguous.
    """
    if not I.is_cm_curve():
        raise ValueError(f"{I} is not a Cohen-Macaulay monomial curve")
    if I.contains((0, 0, 0)):
        raise ValueError("ideal must vanish at the origin")
    res = taylor_resolution(I)
    rng = random.Random(seed)
    strata = {name: _profile_at(res, v) for name, v in TORUS_DIRECTIONS.items()}
    samples = []
    for _ in range(direction_samples):
        v = tuple(Fraction(rng.randint(1, 97), rng.randint(1, 13)) * rng.choice((1, -1)) for _ in range(3))
        samples.append(_profile_at(res, v))
    keys = ("h_2x", "e_2x", "h_mx", "e_x")
    generic_values = {tuple(s[k] for k in keys) for s in samples}
    generic = dict(samples[0]) if samples else None
    ambiguous = len(generic_values) > 1
    everything = list(strata.values()) + samples
    ok = all(p["rr_2x"] and p["rr_mx"] and p["difference"] == 1 for p in everything)
    return {
        "ideal": str(I),
        "torus_strata": strata,
        "generic": generic,
        "generic_samples": samples,
        "ambiguous": ambiguous,
        "status": "pass" if ok and not ambiguous else "fail",
    }


# --- exhaustive monomial modules ----------------------------------------------------


def _convex(cells: set) -> bool:
    for p in cells:
        for s in cells:
            if p != s and _divides(p, s):
                for r in product(*(range(p[i], s[i] + 1) for i in range(3))):
                    if r not in cells:
                        return False
    return True


def _normalise(cells) -> tuple:
    lo = [min(c[i] for c in cells) for i in range(3)]
    return tuple(sorted(tuple(c[i] - lo[i] for i in range(3)) for c in cells))


def connected_monomial_shapes(max_len: int) -> list[tuple]:
    """Connected convex cell sets up to translation, sizes ``1..max_len``.

    A convex cell set ``D`` is a difference ``A \\ A'`` of order ideals, i.e. the
    module ``J'/J`` for monomial ideals ``J <= J'``; disconnected sets split as
    direct sums and are generated separately.
    """
    shapes = {_normalise([(0, 0, 0)])}
    frontier = set(shapes)
    for _ in range(max_len - 1):
        new = set()
        for shape in frontier:
            cells = set(shape)
            for c in shape:
                for axis in range(3):
                    for step in (1, -1):
                        t = list(c)
                        t[axis] += step
                        t = tuple(t)
                        if t in cells:
                            continue
                        grown = cells | {t}
                        if _convex(grown):
                            new.add(_normalise(grown))
        new -= shapes
        shapes |= new
        frontier = new
    return sorted(shapes, key=lambda s: (len(s), s))


def monomial_modules(max_len: int, include_sums: bool = True) -> list[FinMod]:
    """All monomial modules of length ``<= max_len`` (connected shapes and sums)."""
    shapes = connected_monomial_shapes(max_len)
    mods = [FinMod.from_cells(s) for s in shapes]
    if not include_sums:
        return mods
    out = list(mods)

    def sums(start, remaining, acc):
        for i in range(start, len(mods)):
            m = mods[i]
            if m.dim > remaining:
                continue
            total = m if acc is None else acc.direct_sum(m)
            if acc is not None:
                out.append(total)
            sums(i, remaining - m.dim, total)

    sums(0, max_len, None)
    return out


def plane_partition_modules(max_len: int) -> list[FinMod]:
    """Cyclic modules ``R/J`` from 3D partitions of size ``1..max_len``."""
    return [
        FinMod.from_boxset(b)
        for n in range(1, max_len + 1)
        for b in iter_box_sets(LegConfig(), n)
    ]
