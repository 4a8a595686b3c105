"""Parametric identities for the one- and two-point wall-crossing fibres.

Expressions in ``q`` whose exponents are integer linear forms in named
parameters (``h_x``, ``e_x``, ...) are checked by exact evaluation at every
point of a finite grid.  Each identity comes with its grid; every grid has at
least 100 points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Mapping, Sequence

from .poly import Poly
from .series import PoleError, QRat, macmahon_euler_product, series_pow

__all__ = [
    "LinForm",
    "ParamExpr",
    "Const",
    "Param",
    "QPow",
    "QSum",
    "Binom",
    "GridSpec",
    "expr_equal",
    "serre_case_a",
    "serre_case_b",
    "serre_case_c",
    "euler_diffs_len2",
    "reorder_check",
    "assemble_two_point",
    "specialize_two_point",
    "default_grids",
    "PARAMETERS",
]

PARAMETERS = ("h_x", "e_x", "h_y", "e_y", "h_2x", "h_mx", "e_2x", "ext_yx", "hom_yx")

Assignment = Mapping[str, int]


# --- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class LinForm:
    """``const + sum coef_p * p`` over parameter names."""

    terms: tuple = ()
    const: int = 0

    @classmethod
    def of(cls, const: int = 0, **coefs: int) -> "LinForm":
        return cls(tuple(sorted((k, v) for k, v in coefs.items() if v)), const)

    def params(self) -> set[str]:
        return {k for k, _ in self.terms}

    def __call__(self, env: Assignment) -> int:
        return self.const + sum(c * env[k] for k, c in self.terms)

    def __str__(self) -> str:
        parts = [f"{'' if c == 1 else c}{k}" for k, c in self.terms]
        if self.const or not parts:
            parts.append(str(self.const))
        return "+".join(parts).replace("+-", "-")


def _lin(x) -> LinForm:
    if isinstance(x, LinForm):
        return x
    if isinstance(x, int):
        return LinForm.of(x)
    if isinstance(x, str):
        return LinForm.of(0, **{x: 1})
    raise TypeError(f"not a linear form: {x!r}")


class ParamExpr:
    """Base class; subclasses implement ``evaluate`` and ``params``."""

    def evaluate(self, env: Assignment) -> QRat:
        raise NotImplementedError

    def params(self) -> set[str]:
        raise NotImplementedError

    def __add__(self, other):
        return _Bin("+", self, _wrap(other))

    def __radd__(self, other):
        return _Bin("+", _wrap(other), self)

    def __sub__(self, other):
        return _Bin("-", self, _wrap(other))

    def __rsub__(self, other):
        return _Bin("-", _wrap(other), self)

    def __mul__(self, other):
        return _Bin("*", self, _wrap(other))

    def __rmul__(self, other):
        return _Bin("*", _wrap(other), self)

    def __truediv__(self, other):
        return _Bin("/", self, _wrap(other))

    def __rtruediv__(self, other):
        return _Bin("/", _wrap(other), self)

    def __neg__(self):
        return _Bin("-", Const(0), self)


def _wrap(x) -> ParamExpr:
    if isinstance(x, ParamExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return Const(x)
    raise TypeError(f"cannot use {x!r} in an expression")


@dataclass(frozen=True, eq=False)
class Const(ParamExpr):
    value: Fraction

    def evaluate(self, env):
        return QRat.coerce(Fraction(self.value))

    def params(self):
        return set()

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, eq=False)
class Param(ParamExpr):
    """The integer value of a parameter (used in Euler-characteristic identities)."""

    name: str

    def evaluate(self, env):
        return QRat.coerce(env[self.name])

    def params(self):
        return {self.name}

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=False)
class QPow(ParamExpr):
    """``q^L`` for an integer linear form ``L`` (negative exponents allowed)."""

    exponent: LinForm

    def __init__(self, exponent):
        object.__setattr__(self, "exponent", _lin(exponent))

    def evaluate(self, env):
        return QRat.q_pow(self.exponent(env))

    def params(self):
        return self.exponent.params()

    def __str__(self):
        return f"q^({self.exponent})"


@dataclass(frozen=True, eq=False)
class QSum(ParamExpr):
    """``q^lo + q^(lo+1) + ... + q^hi`` (empty, hence 0, when ``hi < lo``)."""

    lo: LinForm
    hi: LinForm

    def __init__(self, lo, hi):
        object.__setattr__(self, "lo", _lin(lo))
        object.__setattr__(self, "hi", _lin(hi))

    def evaluate(self, env):
        lo, hi = self.lo(env), self.hi(env)
        if hi < lo:
            return QRat()
        coeffs = [0] * (2 * (hi - lo) + 1)
        coeffs[::2] = [1] * (hi - lo + 1)
        return QRat(Poly(coeffs)) * QRat.q_pow(lo)

    def params(self):
        return self.lo.params() | self.hi.params()

    def __str__(self):
        return f"sum_{{k={self.lo}}}^{{{self.hi}}} q^k"


@dataclass(frozen=True, eq=False)
class Binom(ParamExpr):
    """Integer binomial coefficient ``C(L, k)``."""

    top: LinForm
    k: int

    def __init__(self, top, k: int):
        object.__setattr__(self, "top", _lin(top))
        object.__setattr__(self, "k", k)

    def evaluate(self, env):
        n = self.top(env)
        return QRat.coerce(comb(n, self.k) if n >= 0 else 0)

    def params(self):
        return self.top.params()

    def __str__(self):
        return f"C({self.top},{self.k})"


@dataclass(frozen=True, eq=False)
class _Bin(ParamExpr):
    op: str
    a: ParamExpr
    b: ParamExpr

    def evaluate(self, env):
        x, y = self.a.evaluate(env), self.b.evaluate(env)
        if self.op == "+":
            return x + y
        if self.op == "-":
            return x - y
        if self.op == "*":
            return x * y
        if y.is_zero():
            raise ZeroDivisionError(f"division by zero in {self}")
        return x / y

    def params(self):
        return self.a.params() | self.b.params()

    def __str__(self):
        return f"({self.a} {self.op} {self.b})"


Q = QPow(1)


# --- grids ---------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Integer ranges for free parameters, derived parameters and constraints.

    ``derived`` maps a parameter to a linear form in the free ones (e.g.
    ``e_x = h_x - 1``); ``constraints`` are predicates on a full assignment.
    """

    ranges: tuple
    derived: tuple = ()
    constraints: tuple = ()
    name: str = ""

    @classmethod
    def make(cls, ranges: Mapping[str, Sequence[int]], derived: Mapping[str, LinForm] | None = None,
             constraints: Sequence[tuple[str, Callable]] = (), name: str = "") -> "GridSpec":
        return cls(
            tuple((k, tuple(v)) for k, v in ranges.items()),
            tuple((derived or {}).items()),
            tuple(constraints),
            name,
        )

    def points(self):
        names = [k for k, _ in self.ranges]
        for values in itertools.product(*(v for _, v in self.ranges)):
            env = dict(zip(names, values))
            for k, form in self.derived:
                env[k] = form(env)
            if all(pred(env) for _, pred in self.constraints):
                yield env

    def size(self) -> int:
        return sum(1 for _ in self.points())

    def describe(self) -> dict:
        return {
            "ranges": {k: [min(v), max(v)] for k, v in self.ranges},
            "derived": {k: str(f) for k, f in self.derived},
            "constraints": [label for label, _ in self.constraints],
            "points": self.size(),
        }


def expr_equal(a: ParamExpr, b: ParamExpr, grid: GridSpec) -> dict:
    """Exact comparison at every grid point; returns the first counterexample."""
    checked = 0
    for env in grid.points():
        try:
            va, vb = a.evaluate(env), b.evaluate(env)
        except ZeroDivisionError as exc:
            return {"equal": False, "checked": checked, "counterexample": dict(env),
                    "error": str(exc)}
        checked += 1
        if va != vb:
            return {"equal": False, "checked": checked, "counterexample": dict(env),
                    "lhs": str(va), "rhs": str(vb)}
    return {"equal": True, "checked": checked, "counterexample": None}


def limit_equal(a: ParamExpr, b: ParamExpr, grid: GridSpec) -> dict:
    """Compare the ``q -> 1`` limit of ``a`` with the q-free value of ``b``."""
    checked = 0
    for env in grid.points():
        try:
            la = a.evaluate(env).limit_q1()
        except PoleError as exc:
            return {"equal": False, "checked": checked, "counterexample": dict(env), "error": str(exc)}
        lb = b.evaluate(env).limit_q1()
        checked += 1
        if la != lb:
            return {"equal": False, "checked": checked, "counterexample": dict(env),
                    "lhs": str(la), "rhs": str(lb)}
    return {"equal": True, "checked": checked, "counterexample": None}


def poles_everywhere(a: ParamExpr, grid: GridSpec) -> dict:
    """Assert that ``a`` has a pole at ``q = 1`` at every grid point."""
    checked = 0
    for env in grid.points():
        try:
            value = a.evaluate(env).limit_q1()
        except PoleError:
            checked += 1
            continue
        return {"equal": False, "checked": checked, "counterexample": dict(env),
                "lhs": f"finite limit {value}"}
    return {"equal": True, "checked": checked, "counterexample": None}


def _report(identity: str, grid: GridSpec, checks: dict[str, dict]) -> dict:
    ok = all(c["equal"] for c in checks.values())
    return {
        "identity": identity,
        "grid": grid.describe(),
        "status": "pass" if ok else "fail",
        "checks": {k: {kk: (str(vv) if kk in ("lhs", "rhs") else vv) for kk, vv in c.items()}
                   for k, c in checks.items()},
        "counterexample": next((c["counterexample"] for c in checks.values() if not c["equal"]), None),
    }


# --- the identities ----------------------------------------------------------------


def _r(lo: int, hi: int) -> range:
    return range(lo, hi + 1)


def default_grids() -> dict[str, GridSpec]:
    ge = lambda a, b: (f"{a}>={b}", lambda env: env[a] >= env[b] if isinstance(b, str) else env[a] >= b)
    return {
        "a": GridSpec.make({"h_x": _r(1, 10), "h_y": _r(1, 10)}, name="h_x,h_y in [1,10]"),
        "b": GridSpec.make({"h_x": _r(2, 101)}, name="h_x in [2,101]"),
        "c": GridSpec.make(
            {"h_2x": _r(2, 16), "h_mx": _r(1, 15)},
            constraints=[("h_2x>h_mx", lambda env: env["h_2x"] > env["h_mx"])],
            name="1<=h_mx<h_2x<=16",
        ),
        "len2": GridSpec.make(
            {"e_x": _r(0, 10), "e_y": _r(0, 10), "e_2x": _r(0, 4)},
            derived={
                "h_x": LinForm.of(1, e_x=1),
                "h_y": LinForm.of(1, e_y=1),
                "h_mx": LinForm.of(1, e_x=1),
                "h_2x": LinForm.of(2, e_2x=1),
            },
            constraints=[ge("e_2x", "e_x")],
            name="e_x,e_y in [0,10], e_2x in [e_x,4], h=e+1, h_2x=e_2x+2",
        ),
        "serre": GridSpec.make(
            {"h_x": _r(1, 12), "ext_yx": _r(0, 4), "hom_yx": _r(0, 2)},
            name="h_x in [1,12], ext in [0,4], hom in [0,2]",
        ),
        "point": GridSpec.make(
            {"h_x": _r(1, 120)},
            derived={"h_mx": LinForm.of(0, h_x=1), "ext_yx": LinForm.of(3), "hom_yx": LinForm.of(1)},
            name="coincident points: ext=3, hom=1, h_mx=h_x, h_x in [1,120]",
        ),
        "distinct": GridSpec.make(
            {"h_x": _r(1, 120)},
            derived={"ext_yx": LinForm.of(0), "hom_yx": LinForm.of(0)},
            name="distinct points: ext=hom=0, h_x in [1,120]",
        ),
    }


def cyclotomic(h) -> ParamExpr:
    """``1 + q + ... + q^(h-1)``."""
    return QSum(0, LinForm.of(-1, **{h: 1}) if isinstance(h, str) else _lin(h))


def a_serre_lhs() -> ParamExpr:
    return (QPow(LinForm.of(0, h_x=1, h_y=1)) - QPow("h_x") - QPow("h_y") + 1) / ((Q - 1) * (Q - 1))


def b_serre_lhs() -> ParamExpr:
    return ((QPow(LinForm.of(0, h_x=2)) - 1) - (Q + 1) * (QPow("h_x") - 1)) / (
        (QPow(2) - 1) * (QPow(2) - Q)
    )


def c_serre_lhs() -> ParamExpr:
    return (QPow("h_2x") - QPow("h_mx")) / (Q * (Q - 1))


def serre_case_a(grid: GridSpec | None = None) -> dict:
    grid = grid or default_grids()["a"]
    rhs = cyclotomic("h_x") * cyclotomic("h_y")
    return _report("aSerre", grid, {
        "closed-form": expr_equal(a_serre_lhs(), rhs, grid),
        "limit": limit_equal(a_serre_lhs(), Param("h_x") * Param("h_y"), grid),
    })


def serre_case_b(grid: GridSpec | None = None) -> dict:
    grid = grid or default_grids()["b"]
    rhs = cyclotomic("h_x") * QSum(0, LinForm.of(-2, h_x=1)) / (Q + 1)
    limit = Binom("h_x", 2)
    return _report("bSerre", grid, {
        "closed-form": expr_equal(b_serre_lhs(), rhs, grid),
        "limit": limit_equal(b_serre_lhs(), limit, grid),
    })


def serre_case_c(grid: GridSpec | None = None) -> dict:
    grid = grid or default_grids()["c"]
    rhs = QSum(LinForm.of(-1, h_mx=1), LinForm.of(-2, h_2x=1))
    return _report("cSerre", grid, {
        "closed-form": expr_equal(c_serre_lhs(), rhs, grid),
        "limit": limit_equal(c_serre_lhs(), Param("h_2x") - Param("h_mx"), grid),
    })


def euler_diffs_len2(grid: GridSpec | None = None) -> dict:
    grid = grid or default_grids()["len2"]
    hx, ex, hy, ey = Param("h_x"), Param("e_x"), Param("h_y"), Param("e_y")
    h2, hm, e2 = Param("h_2x"), Param("h_mx"), Param("e_2x")
    return _report("len2-euler", grid, {
        "xy1": expr_equal(hx * hy - ex * ey, ex + ey + 1, grid),
        "xxex": expr_equal(Binom("h_x", 2) - Binom("e_x", 2), ex, grid),
        "2x1": expr_equal((h2 - hm) - (e2 - ex), Const(1), grid),
        "2x1-split": expr_equal((h2 - e2) - (hm - ex), Const(2) - 1, grid),
    })


def serre_term() -> ParamExpr:
    """Second inclusion-exclusion term for an extension of ``O_y`` by ``O_x``."""
    return -QPow("h_x") * QPow("ext_yx") / (QPow("hom_yx") * (Q - 1) * (Q - 1))


def serre2_terms() -> tuple[ParamExpr, ParamExpr]:
    zero_ext = -QPow("h_x") / (QPow("hom_yx") * (Q - 1) * (Q - 1))
    nonzero = -QPow("h_x") * (QPow("ext_yx") - 1) / (QPow("hom_yx") * (Q - 1) * (Q - 1))
    return zero_ext, nonzero


def reorder_check(grids: Mapping[str, GridSpec] | None = None) -> dict:
    grids = dict(grids or default_grids())
    g_serre, g_point, g_dist = grids["serre"], grids["point"], grids["distinct"]
    zero_ext, nonzero = serre2_terms()
    mess_closed = -QPow("h_x") * (QPow(3) - 1) / (Q * (Q - 1) * (Q - 1))
    mess_reduced = -QPow("h_x") * (QPow(2) + Q + 1) / (Q * (Q - 1))
    neg_c_term = -QPow("h_mx") / (Q * (Q - 1))
    checks = {
        "serre=serre2": expr_equal(serre_term(), zero_ext + nonzero, g_serre),
        # zero extension between distinct points: the -q^h_x/(q-1)^2 piece of aSerre
        "zero-ext-distinct": expr_equal(zero_ext, -QPow("h_x") / ((Q - 1) * (Q - 1)), g_dist),
        # zero extension at one point: the -(q+1)q^h_x piece of bSerre
        "zero-ext-point": expr_equal(
            zero_ext, -(Q + 1) * QPow("h_x") / ((QPow(2) - 1) * (QPow(2) - Q)), g_point
        ),
        "zero-ext-point-short": expr_equal(zero_ext, -QPow("h_x") / (Q * (Q - 1) * (Q - 1)), g_point),
        "mess": expr_equal(nonzero, mess_closed, g_point),
        "mess-reduced": expr_equal(mess_closed, mess_reduced, g_point),
        "mess=P2*cSerre": expr_equal((QPow(2) + Q + 1) * neg_c_term, mess_reduced, g_point),
        "serre-poles": poles_everywhere(serre_term(), g_serre),
        "zero-ext-poles": poles_everywhere(zero_ext, g_serre),
        "mess-poles": poles_everywhere(nonzero, g_point),
    }
    report = _report("reorder", g_serre, checks)
    report["grids"] = {k: grids[k].describe() for k in ("serre", "point", "distinct")}
    return report


# --- the two-point assembly ------------------------------------------------------------

# Domains: pairs of distinct unordered points, the diagonal, the punctual Hilbert
# scheme strata, ordered distinct pairs, X x X, X, and Hilb^2 X.  Integrands are
# linear combinations of the atoms "1", "e_x", "e_y".


@dataclass
class TermState:
    terms: dict = field(default_factory=dict)  # (domain, atom) -> Fraction
    symbols: dict = field(default_factory=dict)  # monomial in {eX, P1C, eHilb2} -> Fraction
    log: list = field(default_factory=list)

    def add(self, domain: str, atom: str, coef) -> None:
        key = (domain, atom)
        v = self.terms.get(key, Fraction(0)) + Fraction(coef)
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def take(self, domain: str, atom: str) -> Fraction:
        return self.terms.pop((domain, atom), Fraction(0))

    def add_symbol(self, name: str, coef) -> None:
        v = self.symbols.get(name, Fraction(0)) + Fraction(coef)
        if v:
            self.symbols[name] = v
        else:
            self.symbols.pop(name, None)

    def snapshot(self, rule: str) -> None:
        self.log.append({
            "rule": rule,
            "terms": {f"int_{d} {a}": str(c) for (d, a), c in sorted(self.terms.items())},
            "symbols": {k: str(v) for k, v in sorted(self.symbols.items())},
        })


def assemble_two_point() -> dict:
    """Integrate the length-two Euler differences into ``I_2 - P_2``.

    Starts from the three case differences and applies scissor additivity,
    the double cover, symmetry, the point rule ``int_X e_x = P_1`` and Fubini.
    The result must be exactly ``e(X) P_1 + e(Hilb^2 X)``.
    """
    st = TermState()
    # case (a): T = O_x + O_y, x != y, difference e_x + e_y + 1
    for atom in ("e_x", "e_y", "1"):
        st.add("Sym2-offdiag", atom, 1)
    # case (b): T = O_x + O_x on the diagonal, difference e_x
    st.add("diag", "e_x", 1)
    # case (c): T = O_2x, difference 1
    st.add("Hilb2-punctual", "1", 1)
    st.snapshot("case differences")

    # scissor: Sym2 off the diagonal and the punctual strata cover Hilb^2 X
    c1 = st.take("Sym2-offdiag", "1")
    c2 = st.take("Hilb2-punctual", "1")
    if c1 != c2:
        raise AssertionError("the constant pieces do not cover Hilb^2 uniformly")
    st.add_symbol("eHilb2", c1)
    st.snapshot("scissor over Hilb^2")

    # double cover: integral over unordered pairs = half the integral over ordered pairs
    for atom in ("e_x", "e_y"):
        c = st.take("Sym2-offdiag", atom)
        st.add("X2-offdiag", atom, c / 2)
    st.snapshot("double cover")

    # symmetry swapping the factors
    st.add("X2-offdiag", "e_x", st.take("X2-offdiag", "e_y"))
    st.snapshot("symmetry")

    # scissor: X x X = off-diagonal + diagonal, for the weight e_x
    off = st.take("X2-offdiag", "e_x")
    diag = st.take("diag", "e_x")
    if off != diag:
        raise AssertionError("diagonal and off-diagonal weights differ")
    st.add("XxX", "e_x", off)
    st.snapshot("scissor over X x X")

    # Fubini plus the point rule int_X e_x = P_1
    st.add_symbol("eX*P1C", st.take("XxX", "e_x"))
    st.snapshot("Fubini")

    expected = {"eX*P1C": Fraction(1), "eHilb2": Fraction(1)}
    ok = not st.terms and st.symbols == expected
    return {
        "identity": "I_2 - P_2 = e(X) P_1 + e(Hilb^2 X)",
        "result": {k: str(v) for k, v in sorted(st.symbols.items())},
        "leftover": {f"{d}:{a}": str(c) for (d, a), c in st.terms.items()},
        "steps": st.log,
        "status": "pass" if ok else "fail",
    }


def specialize_two_point(weights: Sequence[int]) -> dict:
    """Evaluate both sides on ``X`` = finitely many points of a threefold.

    ``weights[i]`` plays ``e_x`` at the ``i``-th point.  Each point carries a
    projective plane of length-two structures (Euler characteristic 3).
    """
    chi = len(weights)
    p1 = sum(weights)
    # left side: integrate the case differences directly
    lhs = Fraction(0)
    for i in range(chi):
        for j in range(i + 1, chi):
            lhs += weights[i] + weights[j] + 1  # case (a)
        lhs += weights[i]  # case (b)
        lhs += 3 * 1  # case (c): P^2 of double points
    e_hilb2 = Fraction(comb(chi, 2) + 3 * chi)
    rhs = chi * p1 + e_hilb2
    series_coeff = series_pow(macmahon_euler_product(2), chi)[2] if chi else Fraction(0)
    return {
        "chi": chi,
        "P1": p1,
        "lhs": str(lhs),
        "rhs": str(rhs),
        "e_hilb2": str(e_hilb2),
        "macmahon_t2": str(series_coeff),
        "status": "pass" if lhs == rhs and series_coeff == e_hilb2 else "fail",
    }
