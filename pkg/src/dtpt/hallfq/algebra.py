"""Hall algebra of finite-length modules over a discrete valuation ring.

Product convention: ``[μ] * [ν] = sum_λ F^λ_{μν} [λ]`` where ``F^λ_{μν}``
counts submodules of type ``μ`` with quotient of type ``ν`` (sub on the
left).  Integration sends ``[λ]`` to ``t^{|λ|} / #Aut(λ)``.  With these two
choices ``integrate(a * b)`` counts filtrations with stack measure,
``Hom = Onto * 1_T`` holds term by term, and because the Euler pairing of
torsion modules vanishes, integration is multiplicative.

Elements are *formal* (coefficients in ``Q(q^{1/2})``, structure constants
from interpolated Hall polynomials, degree at most ``MAX_FORMAL``) or
*concrete* (a fixed prime power ``q``, rational coefficients, structure
constants counted directly).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from ..series import PoleError, QRat, TruncSeries, limit_q1, series_mul, series_scale_t
from .modules import (
    Free,
    GuardError,
    Partition,
    aut_poly,
    count_aut,
    count_hom,
    count_onto,
    hall_number,
    hall_polynomial,
    onto_poly,
    partitions_of,
    partitions_upto,
    submodule_types,
)

__all__ = [
    "HallElt",
    "hall_mul",
    "one_T",
    "unit",
    "basis",
    "weighted",
    "hom_element",
    "onto_element",
    "invert_one_T",
    "hall_inverse",
    "verify_onto_from_hom",
    "integrate",
    "verify_reineke",
    "verify_associativity",
    "verify_inverse",
    "verify_commutation",
    "verify_euler_pairing",
    "verify_limit_factorization",
    "twisted_commutation",
    "substitute_qt",
    "MAX_FORMAL",
    "MAX_CONCRETE",
]

MAX_FORMAL = 4
MAX_CONCRETE = 5


def _zero(q):
    return QRat() if q is None else Fraction(0)


def _coerce(c, q):
    if q is None:
        return QRat.coerce(c)
    if isinstance(c, QRat):
        raise TypeError("concrete elements take rational coefficients")
    return Fraction(c)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, QRat) else c == 0


class HallElt:
    """Finite sum ``sum c_λ [λ]`` truncated at ``|λ| <= bound``."""

    __slots__ = ("terms", "bound", "q")

    def __init__(self, terms: Mapping | Iterable = (), bound: int = MAX_FORMAL, q: int | None = None):
        limit = MAX_FORMAL if q is None else MAX_CONCRETE
        if not 0 <= bound <= limit:
            raise GuardError(f"degree bound {bound} outside 0..{limit}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Partition, object] = {}
        for lam, c in items:
            if not isinstance(lam, Partition):
                lam = Partition.of(*lam)
            if lam.size > bound:
                continue
            c = _coerce(c, q)
            acc = clean.get(lam, _zero(q)) + c
            if _is_zero(acc):
                clean.pop(lam, None)
            else:
                clean[lam] = acc
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("HallElt is immutable")

    def _compatible(self, other: "HallElt") -> int:
        if not isinstance(other, HallElt):
            raise TypeError("expected a HallElt")
        if self.q != other.q:
            raise ValueError(f"mixing q={self.q} with q={other.q}")
        return min(self.bound, other.bound)

    def coeff(self, lam: Partition):
        return self.terms.get(lam, _zero(self.q))

    def __add__(self, other):
        b = self._compatible(other)
        return HallElt(list(self.terms.items()) + list(other.terms.items()), b, self.q)

    def __neg__(self):
        return HallElt({k: -v for k, v in self.terms.items()}, self.bound, self.q)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HallElt":
        c = _coerce(c, self.q)
        return HallElt({k: c * v for k, v in self.terms.items()}, self.bound, self.q)

    def __mul__(self, other):
        if isinstance(other, HallElt):
            return hall_mul(self, other)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HallElt):
            return NotImplemented
        return self.q == other.q and self.bound == other.bound and self.terms == other.terms

    def agrees_with(self, other: "HallElt", bound: int | None = None) -> bool:
        """Equality of all terms of degree ``<= bound``."""
        b = self._compatible(other) if bound is None else bound
        keys = {k for k in self.terms if k.size <= b} | {k for k in other.terms if k.size <= b}
        return all(self.coeff(k) == other.coeff(k) for k in keys)

    def truncate(self, bound: int) -> "HallElt":
        return HallElt(self.terms, min(bound, self.bound), self.q)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"({c})*[{lam.key()}]" for lam, c in sorted(self.terms.items())]
        return " + ".join(parts)


def _structure_constant(lam, mu, nu, q):
    if q is None:
        return QRat.from_q_poly(hall_polynomial(lam, mu, nu))
    return Fraction(hall_number(lam, mu, nu, q))


def hall_mul(a: HallElt, b: HallElt) -> HallElt:
    """Convolution product, truncated at the smaller bound."""
    bound = a._compatible(b)
    q = a.q
    out: dict[Partition, object] = {}
    for mu, cm in a.terms.items():
        for nu, cn in b.terms.items():
            n = mu.size + nu.size
            if n > bound:
                continue
            c = cm * cn
            for lam in partitions_of(n):
                f = _structure_constant(lam, mu, nu, q)
                if not _is_zero(f):
                    out[lam] = out.get(lam, _zero(q)) + c * f
    return HallElt(out, bound, q)


def unit(bound: int = MAX_FORMAL, q: int | None = None) -> HallElt:
    """``1_0 = [0]``, the identity."""
    return HallElt({Partition(): 1}, bound, q)


def basis(lam: Partition, bound: int = MAX_FORMAL, q: int | None = None) -> HallElt:
    return HallElt({lam: 1}, bound, q)


def weighted(fn: Callable[[Partition], object], bound: int = MAX_FORMAL, q: int | None = None,
             skip_zero: bool = False) -> HallElt:
    """``sum_λ fn(λ) [λ]`` over all ``|λ| <= bound``."""
    lams = [lam for lam in partitions_upto(bound) if not (skip_zero and lam.size == 0)]
    return HallElt({lam: fn(lam) for lam in lams}, bound, q)


def one_T(bound: int = MAX_FORMAL, q: int | None = None, nonzero: bool = False) -> HallElt:
    """Sum of every iso class (``nonzero=True`` drops ``[0]``)."""
    return weighted(lambda lam: 1, bound, q, skip_zero=nonzero)


def hom_element(rank: int, bound: int = MAX_FORMAL, q: int | None = None) -> HallElt:
    """``sum #Hom(R^rank, λ) [λ]``; the rank-1 case is the ``q^{|λ|}`` weighting."""
    if q is None:
        return weighted(lambda lam: QRat.q_pow(rank * lam.size), bound)
    return weighted(lambda lam: count_hom(Free(rank), lam, q), bound, q)


def onto_element(rank: int, bound: int = MAX_FORMAL, q: int | None = None) -> HallElt:
    """``sum #Onto(R^rank, λ) [λ]``."""
    if q is None:
        return weighted(lambda lam: QRat.from_q_poly(onto_poly(Free(rank), lam)), bound)
    return weighted(lambda lam: count_onto(Free(rank), lam, q), bound, q)


def _alternating(rest: HallElt) -> HallElt:
    """``1_0 - r + r*r - ...`` for ``r`` without a degree-0 term."""
    result = unit(rest.bound, rest.q)
    power = unit(rest.bound, rest.q)
    for k in range(1, rest.bound + 1):
        power = hall_mul(power, rest)
        result = result + power if k % 2 == 0 else result - power
    return result


def hall_inverse(a: HallElt) -> HallElt:
    """Two-sided inverse of an element whose ``[0]`` coefficient is 1."""
    if a.coeff(Partition()) != 1:
        raise ValueError("only elements with [0]-coefficient 1 are inverted")
    return _alternating(a - unit(a.bound, a.q))


def invert_one_T(bound: int, q: int | None = None) -> HallElt:
    """``1_T^{-1} = 1_0 - 1_T' + 1_T' * 1_T' - ...`` with ``T'`` the nonzero
    classes; the series stops because ``(1_T')^{*k}`` starts in degree ``k``.
    The result is checked to be a two-sided inverse up to ``bound``."""
    result = _alternating(one_T(bound, q, nonzero=True))
    one = one_T(bound, q)
    ident = unit(bound, q)
    if not (hall_mul(one, result) == ident and hall_mul(result, one) == ident):
        raise ArithmeticError("alternating series failed to invert 1_T")
    return result


def _aut(lam: Partition, q: int | None):
    if q is None:
        return QRat.from_q_poly(aut_poly(lam))
    return Fraction(count_aut(lam, q))


def integrate(a: HallElt) -> TruncSeries:
    """``sum c_λ / #Aut(λ) t^{|λ|}``; over ``Q(q^{1/2})`` for formal
    elements, over ``Q`` for concrete ones."""
    coeffs = [_zero(a.q) for _ in range(a.bound + 1)]
    for lam, c in a.terms.items():
        coeffs[lam.size] = coeffs[lam.size] + c / _aut(lam, a.q)
    return TruncSeries(tuple(coeffs), "Q" if a.q is not None else "QRat")


# --- identity checks -------------------------------------------------------


def verify_reineke(source, targets: Iterable[Partition], q: int) -> dict:
    """``#Hom(R, T) = sum_{S <= T} #Onto(R, S)`` over all submodules ``S``.

    ``source`` is a ``Free`` module (or its rank) or a ``Partition``.
    """
    if isinstance(source, int):
        source = Free(source)
    failures = []
    checked = 0
    for tgt in targets:
        lhs = count_hom(source, tgt, q)
        rhs = 0
        for (sub, _quot), n in submodule_types(tgt, q).items():
            rhs += n * count_onto(source, sub, q)
        checked += 1
        if lhs != rhs:
            failures.append({"target": tgt.key(), "hom": lhs, "sum_onto": rhs})
    return {"check": "reineke", "q": q, "checked": checked,
            "status": "fail" if failures else "pass", "failures": failures}


def verify_onto_from_hom(rank: int, bound: int, q: int | None = None) -> dict:
    """``Onto = Hom * 1_T^{-1}``, i.e. ``Hom - Hom*1_T' + Hom*1_T'*1_T' - ...``.

    At a concrete ``q`` the ``[T]`` coefficient of ``Hom * (1_T')^{*k}`` sums
    ``#Hom(R, T_1)`` over strict chains ``T_1 < ... < T``, so this is the
    inclusion-exclusion over submodule chains.
    """
    lhs = hall_mul(hom_element(rank, bound, q), invert_one_T(bound, q))
    rhs = onto_element(rank, bound, q)
    bad = sorted(lam.key() for lam in set(lhs.terms) | set(rhs.terms)
                 if lhs.coeff(lam) != rhs.coeff(lam))
    return {"check": "onto-from-hom", "rank": rank, "bound": bound, "q": q,
            "status": "fail" if bad else "pass", "mismatched": bad}


def verify_associativity(max_total: int = 4, q: int | None = None) -> dict:
    """``([a] * [b]) * [c] = [a] * ([b] * [c])`` for generators of total size
    ``<= max_total``."""
    lams = [lam for lam in partitions_upto(max_total)]
    failures = []
    checked = 0
    for x in lams:
        for y in lams:
            for z in lams:
                if x.size + y.size + z.size > max_total:
                    continue
                a, b, c = (basis(p, max_total, q) for p in (x, y, z))
                checked += 1
                if hall_mul(hall_mul(a, b), c) != hall_mul(a, hall_mul(b, c)):
                    failures.append([x.key(), y.key(), z.key()])
    return {"check": "associativity", "checked": checked,
            "status": "fail" if failures else "pass", "failures": failures}


def verify_inverse(bound: int = 3, q: int | None = None) -> dict:
    try:
        inv = invert_one_T(bound, q)
    except ArithmeticError as exc:
        return {"check": "one_T-inverse", "bound": bound, "status": "fail", "error": str(exc)}
    return {"check": "one_T-inverse", "bound": bound, "status": "pass", "terms": len(inv.terms)}


def twisted_commutation(p_ab: TruncSeries, p_ba: TruncSeries, m: int) -> bool:
    """``P(U*V) = q^m P(V*U)`` coefficientwise."""
    return tuple(p_ab.coeffs) == tuple(c * QRat.q_pow(m) for c in p_ba.coeffs)


def verify_commutation(a: HallElt, b: HallElt, m: int = 0) -> dict:
    """``integrate(a*b) = q^m integrate(b*a)``; the Euler pairing of the
    model vanishes, so ``m = 0`` here."""
    ab = integrate(hall_mul(a, b))
    ba = integrate(hall_mul(b, a))
    if a.q is None:
        ok = twisted_commutation(ab.to_qrat(), ba.to_qrat(), m)
    else:
        ok = tuple(ab.coeffs) == tuple(c * Fraction(a.q) ** m for c in ba.coeffs)
    return {"check": "commutation", "twist": m, "status": "pass" if ok else "fail",
            "ab": str(ab), "ba": str(ba)}


def verify_euler_pairing(q: int, max_size: int = 3) -> dict:
    """The pairing ``hom - ext^1`` vanishes on torsion modules.

    Two routes: ``#Hom(μ, ν) = #Hom(ν, μ)`` by enumeration, and the
    filtration count ``sum_λ F^λ_{μν} #Aut(μ) #Aut(ν) / #Aut(λ)``, which
    equals ``#Ext^1(ν, μ) / #Hom(ν, μ)``, is 1.
    """
    failures = []
    lams = partitions_upto(max_size)
    for mu in lams:
        for nu in lams:
            if count_hom(mu, nu, q) != count_hom(nu, mu, q):
                failures.append({"pair": [mu.key(), nu.key()], "route": "hom-symmetry"})
            if mu.size + nu.size > max_size + 1:
                continue
            total = Fraction(0)
            for lam in partitions_of(mu.size + nu.size):
                f = hall_number(lam, mu, nu, q)
                if f:
                    total += Fraction(f * count_aut(mu, q) * count_aut(nu, q), count_aut(lam, q))
            if total != 1:
                failures.append({"pair": [mu.key(), nu.key()], "route": "filtrations",
                                 "value": str(total)})
    return {"check": "euler-pairing", "q": q, "status": "fail" if failures else "pass",
            "failures": failures}


def verify_limit_factorization(a: HallElt, b: HallElt) -> dict:
    """``lim_{q->1} P(a*b) = lim P(a) * lim P(b)``.

    Raises ``PoleError`` when either factor has no limit: that is a failed
    precondition, not a counterexample.
    """
    if a.q is not None or b.q is not None:
        raise ValueError("limits need formal elements")
    try:
        la = limit_q1(integrate(a))
    except PoleError as exc:
        raise PoleError(f"precondition: first factor has no q -> 1 limit ({exc})", exc.index) from exc
    try:
        lb = limit_q1(integrate(b))
    except PoleError as exc:
        raise PoleError(f"precondition: second factor has no q -> 1 limit ({exc})", exc.index) from exc
    lab = limit_q1(integrate(hall_mul(a, b)))
    prod = series_mul(la, lb)
    ok = lab.truncate(prod.order).coeffs == prod.truncate(lab.order).coeffs
    return {"check": "limit-factorization", "status": "pass" if ok else "fail",
            "limit_ab": str(lab), "limit_a_times_limit_b": str(prod)}


def substitute_qt(s: TruncSeries) -> TruncSeries:
    """``t -> q t`` on a series over ``Q(q^{1/2})``."""
    return series_scale_t(s.to_qrat(), 2)

