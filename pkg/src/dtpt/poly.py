"""Dense univariate polynomials with exact rational coefficients.

Used as the numerator/denominator type of :class:`dtpt.series.QRat` (variable
``s = q^{1/2}``) and as the weight polynomials in ``l`` of :mod:`dtpt.gitwall`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial ``c[0] + c[1] x + ... + c[n] x^n`` over the rationals.

    Instances are immutable and hashable. The zero polynomial has no
    coefficients and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(
            self, "coeffs", _strip([c if type(c) is Fraction else Fraction(c) for c in coeffs])
        )

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        if k < 0:
            raise ValueError(f"negative exponent {k}")
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.pretty("x")

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(c)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                if c == 1:
                    body = mono
                elif c == -1:
                    body = "-" + mono
                else:
                    body = f"{c}*{mono}"
            terms.append(body)
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        raise TypeError(f"cannot coerce {type(other).__name__} to Poly")

    def __add__(self, other) -> "Poly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[k] + o[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly()
        if all(c.denominator == 1 for c in self.coeffs + o.coeffs):
            # integer fast path: plain int arithmetic is much cheaper than Fraction
            ia = [c.numerator for c in self.coeffs]
            ib = [c.numerator for c in o.coeffs]
            acc = [0] * (len(ia) + len(ib) - 1)
            for i, a in enumerate(ia):
                if a:
                    for j, b in enumerate(ib):
                        if b:
                            acc[i + j] += a * b
            return Poly(acc)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([c * a for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x^k`` (k >= 0)."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other) -> "Poly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> "Poly":
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(1 / self.lead)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, int) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        """Return ``self(other(x))``."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def valuation(self) -> int:
        """Exponent of the lowest nonzero term; ``-1`` for zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (``gcd(0, 0) = 0``)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def interpolate(points: Sequence[tuple[int, int]]) -> Poly:
    """Lagrange interpolation through ``(x, y)`` pairs with distinct ``x``."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result = Poly()
    for i, (xi, yi) in enumerate(points):
        basis = Poly([1])
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = basis * Poly([-xj, 1])
            denom *= Fraction(xi) - Fraction(xj)
        result = result + basis.scale(Fraction(yi) / denom)
    return result
