"""Truncated power series in ``t`` over exact coefficient rings.

Two coefficient rings are supported:

``"Q"``
    Python :class:`fractions.Fraction`.
``"QRat"``
    :class:`QRat`, rational functions in ``s = q^{1/2}``.  Polynomials are
    stored on the half-integer exponent grid of ``q`` using integer
    *twice-exponents*, i.e. as ordinary polynomials in ``s``.

Arithmetic between series of different truncation orders truncates to the
smaller order (formal-completion semantics); mixing rings is an error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .poly import Poly, poly_gcd

__all__ = [
    "QRat",
    "TruncSeries",
    "PoleError",
    "RingMismatchError",
    "NonUnitError",
    "series_mul",
    "series_inv",
    "series_pow",
    "series_scale_t",
    "limit_q1",
    "macmahon_euler_product",
    "geometric_series",
]


class PoleError(ValueError):
    """A coefficient has a pole at ``q = 1``."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class RingMismatchError(TypeError):
    pass


class NonUnitError(ValueError):
    pass


def _frac_str(c: Fraction) -> str:
    return str(c)


def _parse_frac(v) -> Fraction:
    if isinstance(v, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise TypeError(f"cannot parse rational from {v!r}")


class QRat:
    """Element of Q(s) with s = q^(1/2), kept in canonical reduced form.

    Canonical form: ``gcd(num, den) = 1`` and ``den`` monic, so equality is
    structural equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | int | Fraction = 0, den: Poly | int | Fraction = 1):
        num = num if isinstance(num, Poly) else Poly([num])
        den = den if isinstance(den, Poly) else Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.lead
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QRat is immutable")

    # constructors -------------------------------------------------------

    @classmethod
    def s_pow(cls, k: int) -> "QRat":
        """``s^k = q^(k/2)`` for any integer ``k``."""
        if k >= 0:
            return cls(Poly.monomial(k))
        return cls(Poly([1]), Poly.monomial(-k))

    @classmethod
    def q_pow(cls, k: int) -> "QRat":
        return cls.s_pow(2 * k)

    @classmethod
    def q(cls) -> "QRat":
        return cls.s_pow(2)

    @classmethod
    def from_q_poly(cls, p: Poly) -> "QRat":
        """Embed a polynomial in ``q`` (substitute ``q = s^2``)."""
        coeffs: list = [0] * (2 * len(p.coeffs))
        for k, c in enumerate(p.coeffs):
            coeffs[2 * k] = c
        return cls(Poly(coeffs))

    @classmethod
    def coerce(cls, x) -> "QRat":
        if isinstance(x, QRat):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Poly([x]))
        raise TypeError(f"cannot coerce {type(x).__name__} to QRat")

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            o = QRat.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return QRat(self.num + o.num, self.den)
        return QRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QRat(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = QRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return QRat.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QRat.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return QRat()
        return QRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = QRat.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("QRat division by zero")
        return QRat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return QRat.coerce(other) / self

    def __pow__(self, k: int):
        if k >= 0:
            return QRat(self.num ** k, self.den ** k)
        if self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return QRat(self.den ** (-k), self.num ** (-k))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        try:
            o = QRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash(("QRat", self.num, self.den))

    def __repr__(self) -> str:
        return f"QRat({self})"

    def __str__(self) -> str:
        n = self.num.pretty("s")
        if self.den == Poly([1]):
            return n
        return f"({n})/({self.den.pretty('s')})"

    # evaluation ---------------------------------------------------------

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def at_s(self, s: Fraction | int) -> Fraction:
        """Exact value at ``s`` (so ``q = s^2``)."""
        d = self.den(Fraction(s))
        if d == 0:
            raise PoleError(f"pole at s={s}")
        return self.num(Fraction(s)) / d

    def at_q(self, q: int) -> Fraction:
        """Exact value at an integer ``q`` that is a perfect square or when
        only even powers of ``s`` occur."""
        if all(c == 0 for c in self.num.coeffs[1::2]) and all(
            c == 0 for c in self.den.coeffs[1::2]
        ):
            num = Poly(self.num.coeffs[0::2])
            den = Poly(self.den.coeffs[0::2])
            d = den(Fraction(q))
            if d == 0:
                raise PoleError(f"pole at q={q}")
            return num(Fraction(q)) / d
        root = int(round(q ** 0.5))
        if root * root != q:
            raise ValueError(f"odd powers of q^(1/2) cannot be evaluated at q={q}")
        return self.at_s(root)

    def limit_q1(self) -> Fraction:
        """Value at ``q = 1`` (``s = 1``); raises :class:`PoleError` on a pole."""
        d = self.den(Fraction(1))
        if d == 0:
            raise PoleError(f"{self} has a pole at q=1")
        return self.num(Fraction(1)) / d

    # serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "num": [_frac_str(c) for c in self.num.coeffs],
            "den": [_frac_str(c) for c in self.den.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QRat":
        return cls(
            Poly([_parse_frac(c) for c in obj["num"]]),
            Poly([_parse_frac(c) for c in obj["den"]]),
        )


Coeff = Union[Fraction, QRat]
_RINGS = ("Q", "QRat")


def _coerce_coeff(c, ring: str) -> Coeff:
    if ring == "Q":
        if isinstance(c, QRat):
            raise RingMismatchError("QRat coefficient in a Q series")
        if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
            raise TypeError(f"bad rational coefficient {c!r}")
        return Fraction(c)
    return QRat.coerce(c)


@dataclass(frozen=True)
class TruncSeries:
    """``c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))``."""

    coeffs: tuple
    ring: str = "Q"
    var: str = "t"

    def __post_init__(self):
        if self.ring not in _RINGS:
            raise ValueError(f"unknown coefficient ring {self.ring!r}")
        if len(self.coeffs) == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(
            self, "coeffs", tuple(_coerce_coeff(c, self.ring) for c in self.coeffs)
        )

    @classmethod
    def from_list(cls, coeffs: Iterable, ring: str = "Q", var: str = "t") -> "TruncSeries":
        return cls(tuple(coeffs), ring, var)

    @classmethod
    def one(cls, order: int, ring: str = "Q") -> "TruncSeries":
        return cls((1,) + (0,) * order, ring)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Coeff:
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[: order + 1], self.ring, self.var)

    def _check(self, other: "TruncSeries") -> int:
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a TruncSeries")
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = self._check(other)
        return TruncSeries(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)), self.ring, self.var
        )

    def __neg__(self):
        return TruncSeries(tuple(-c for c in self.coeffs), self.ring, self.var)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction, QRat)):
            c = _coerce_coeff(other, self.ring)
            return TruncSeries(tuple(c * a for a in self.coeffs), self.ring, self.var)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QRat)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        return series_pow(self, k)

    def to_qrat(self) -> "TruncSeries":
        if self.ring == "QRat":
            return self
        return TruncSeries(tuple(QRat(c) for c in self.coeffs), "QRat", self.var)

    def as_ints(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if self.ring != "Q" or c.denominator != 1:
                raise ValueError(f"coefficient {c} is not an integer")
            out.append(int(c))
        return out

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = str(c)
            if self.ring == "QRat" and not c.is_polynomial():
                cs = f"[{cs}]"
            elif self.ring == "QRat" and len([x for x in c.num.coeffs if x]) > 1:
                cs = f"({cs})"
            parts.append(cs if not mono else (mono if cs == "1" else f"{cs}*{mono}"))
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{self.order + 1})"

    # serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        if self.ring == "Q":
            coeffs = [_frac_str(c) for c in self.coeffs]
        else:
            coeffs = [c.to_json() for c in self.coeffs]
        return {"var": self.var, "trunc": self.order, "coeffs": coeffs}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "TruncSeries":
        coeffs = obj["coeffs"]
        if len(coeffs) != obj["trunc"] + 1:
            raise ValueError("trunc does not match the number of coefficients")
        kinds = {isinstance(c, dict) for c in coeffs}
        if kinds == {True}:
            return cls(tuple(QRat.from_json(c) for c in coeffs), "QRat", obj.get("var", "t"))
        if kinds == {False}:
            return cls(tuple(_parse_frac(c) for c in coeffs), "Q", obj.get("var", "t"))
        raise ValueError("mixed coefficient encodings")

    @classmethod
    def loads(cls, text: str) -> "TruncSeries":
        return cls.from_json(json.loads(text))


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    n = a._check(b)
    zero = Fraction(0) if a.ring == "Q" else QRat()
    out = [zero] * (n + 1)
    for i in range(n + 1):
        ai = a.coeffs[i]
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj != 0:
                out[i + j] = out[i + j] + ai * bj
    return TruncSeries(tuple(out), a.ring, a.var)


def series_inv(a: TruncSeries) -> TruncSeries:
    c0 = a.coeffs[0]
    if c0 == 0:
        raise NonUnitError("constant term is not a unit")
    inv0 = 1 / c0
    out = [inv0]
    for n in range(1, a.order + 1):
        acc = a.coeffs[n] * out[0]
        for k in range(1, n):
            acc = acc + a.coeffs[n - k] * out[k]
        out.append(-acc * inv0)
    return TruncSeries(tuple(out), a.ring, a.var)


def series_pow(a: TruncSeries, k: int) -> TruncSeries:
    if k < 0:
        return series_pow(series_inv(a), -k)
    result = TruncSeries.one(a.order, a.ring)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        base = series_mul(base, base)
        k >>= 1
    return result


def series_scale_t(a: TruncSeries, halfpowers: int) -> TruncSeries:
    """Multiply ``c_n`` by ``q^(n*halfpowers/2)``; ``halfpowers=2`` is ``t -> q t``."""
    if a.ring != "QRat":
        raise RingMismatchError("t-rescaling needs QRat coefficients")
    return TruncSeries(
        tuple(c * QRat.s_pow(n * halfpowers) for n, c in enumerate(a.coeffs)), "QRat", a.var
    )


def limit_q1(a: TruncSeries) -> TruncSeries:
    if a.ring != "QRat":
        raise RingMismatchError("q -> 1 limit needs QRat coefficients")
    out = []
    for n, c in enumerate(a.coeffs):
        try:
            out.append(c.limit_q1())
        except PoleError as exc:
            raise PoleError(f"coefficient of t^{n} has a pole at q=1: {c}", index=n) from exc
    return TruncSeries(tuple(out), "Q", a.var)


def geometric_series(order: int, ring: str = "Q") -> TruncSeries:
    """``1/(1-t)`` truncated at ``order``."""
    return TruncSeries((1,) * (order + 1), ring)


def macmahon_euler_product(order: int) -> TruncSeries:
    """``prod_{k>=1} (1 - t^k)^(-k)`` truncated at ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    c = [0] * (order + 1)
    c[0] = 1
    for k in range(1, order + 1):
        for _ in range(k):
            # multiply in place by 1/(1 - t^k)
            for n in range(k, order + 1):
                c[n] += c[n - k]
    return TruncSeries(tuple(c), "Q")


def series_from_ints(values: Sequence[int]) -> TruncSeries:
    return TruncSeries(tuple(values), "Q")
