"""Hilbert-Mumford weights for the pairs/ideal-sheaf GIT problem.

Destabilising data is reduced to its numerical shadow (:class:`SubspaceData`).
Weights are linear polynomials in the symbolic twist ``l``; stability is read
off in the regime ``l >> m`` from the sign of the leading coefficient, with the
constant term breaking ties.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .poly import Poly

__all__ = [
    "LinPair",
    "SubspaceData",
    "FiltrationData",
    "RatL",
    "mu_weight",
    "hm_weight_filtration",
    "interpolated_weight",
    "critical_t",
    "closed_form_ratio",
    "closed_form_tstar",
    "family_grid",
    "realistic_grid",
    "Layer",
    "scenario_from_file",
    "family_one",
    "family_two",
    "family_of",
    "verify_tstar_universal",
    "scan_out_of_family",
    "classify",
    "chamber_scan",
    "strata_labels",
    "load_scenario",
    "scan_scenario",
]

L = Poly([0, 1])  # the formal variable l


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def asymptotic_sign(p: Poly) -> int:
    """Sign of ``p(l)`` as ``l -> oo``: leading coefficient, then lower terms."""
    return _sign(p.lead) if not p.is_zero() else 0


@dataclass(frozen=True)
class RatL:
    """A rational function ``num(l)/den(l)`` in lowest terms, ``den`` monic."""

    num: Poly
    den: Poly

    def __post_init__(self):
        from .poly import poly_gcd

        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = self.num, self.den
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.lead
        object.__setattr__(self, "num", num.scale(1 / lead))
        object.__setattr__(self, "den", den.scale(1 / lead))

    @classmethod
    def coerce(cls, x) -> "RatL":
        if isinstance(x, RatL):
            return x
        if isinstance(x, Poly):
            return cls(x, Poly([1]))
        return cls(Poly([Fraction(x)]), Poly([1]))

    def __add__(self, o):
        o = RatL.coerce(o)
        return RatL(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatL(-self.num, self.den)

    def __sub__(self, o):
        return self + (-RatL.coerce(o))

    def __rsub__(self, o):
        return RatL.coerce(o) - self

    def __mul__(self, o):
        o = RatL.coerce(o)
        return RatL(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RatL.coerce(o)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatL(self.num * o.den, self.den * o.num)

    def __eq__(self, o):
        try:
            o = RatL.coerce(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def at(self, l) -> Fraction:
        d = self.den(Fraction(l))
        if d == 0:
            raise ZeroDivisionError(f"pole at l={l}")
        return self.num(Fraction(l)) / d

    def sign_at_infinity(self) -> int:
        return asymptotic_sign(self.num) * asymptotic_sign(self.den)

    def limit_at_infinity(self) -> Fraction | None:
        """Finite limit as ``l -> oo`` (None if it diverges)."""
        if self.num.degree > self.den.degree:
            return None
        if self.num.degree < self.den.degree:
            return Fraction(0)
        return self.num.lead / self.den.lead

    def __str__(self):
        if self.den == Poly([1]):
            return self.num.pretty("l")
        return f"({self.num.pretty('l')})/({self.den.pretty('l')})"


Value = Union[Fraction, RatL]


@dataclass(frozen=True)
class LinPair:
    """Linearisation constants with ``0 < c_0 < 1/r < c_1``."""

    c0: Fraction
    c1: Fraction
    r: int

    def __post_init__(self):
        c0, c1 = Fraction(self.c0), Fraction(self.c1)
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        if self.r < 1:
            raise ValueError("multiplicity r must be positive")
        if not (0 < c0 < Fraction(1, self.r) < c1):
            raise ValueError(f"need 0 < c_0 < 1/r < c_1, got c0={c0}, c1={c1}, r={self.r}")

    def c(self, which: int) -> Fraction:
        if which not in (0, 1):
            raise ValueError("which must be 0 or 1")
        return self.c0 if which == 0 else self.c1


@dataclass(frozen=True)
class SubspaceData:
    """Numerical shadow of ``(V' <= V, F' <= F, Phi' <= Phi)``."""

    m: int
    r: int
    r_sub: int
    chiF: int
    chiF_sub: int
    dimV_sub: int
    dimPhi_sub: int

    def __post_init__(self):
        if not 0 <= self.r_sub <= self.r:
            raise ValueError("need 0 <= r' <= r")
        if self.dimPhi_sub not in (0, 1):
            raise ValueError("dim Phi' must be 0 or 1")
        if not 0 < self.dimV_sub < self.dimV:
            raise ValueError(f"need 0 < dim V' < dim V = {self.dimV}, got {self.dimV_sub}")

    @property
    def dimV(self) -> int:
        return self.r * self.m + self.chiF

    def P_F(self) -> Poly:
        return Poly([self.chiF, self.r])

    def P_F_sub(self) -> Poly:
        return Poly([self.chiF_sub, self.r_sub])


def mu_weight(sd: SubspaceData, which: int, lp: LinPair) -> Poly:
    """``dim V (c_i P_F'(l) - dim Phi' l) - dim V' (c_i P_F(l) - l)``."""
    if lp.r != sd.r:
        raise ValueError("linearisation and data disagree on r")
    c = lp.c(which)
    return (sd.P_F_sub().scale(c) - L.scale(sd.dimPhi_sub)).scale(sd.dimV) - (
        sd.P_F().scale(c) - L
    ).scale(sd.dimV_sub)


def interpolated_weight(sd: SubspaceData, lp: LinPair, t) -> Value:
    """Weight for ``L_t = (1-t) L_0 + t L_1``; ``t`` may be a number or a ``RatL``."""
    mu0, mu1 = mu_weight(sd, 0, lp), mu_weight(sd, 1, lp)
    if isinstance(t, RatL):
        return (1 - t) * RatL.coerce(mu0) + t * RatL.coerce(mu1)
    t = Fraction(t)
    return mu0.scale(1 - t) + mu1.scale(t)


# --- filtrations -------------------------------------------------------------------


@dataclass(frozen=True)
class Layer:
    weight: int
    dimV: int
    r: int
    chiF: int
    dimPhi: int


@dataclass(frozen=True)
class FiltrationData:
    """Weighted filtration by layers ``(V_<=k, F_<=k, Phi_<=k)``; top is everything."""

    layers: tuple

    def __post_init__(self):
        layers = tuple(sorted(self.layers, key=lambda x: x.weight))
        object.__setattr__(self, "layers", layers)
        if not layers:
            raise ValueError("a filtration needs at least the top layer")
        if len({x.weight for x in layers}) != len(layers):
            raise ValueError("layer weights must be distinct")
        for a, b in zip(layers, layers[1:]):
            if not (a.dimV <= b.dimV and a.dimPhi <= b.dimPhi and a.r <= b.r):
                raise ValueError("filtration must be increasing")
        top = layers[-1]
        if top.dimPhi != 1:
            raise ValueError("top layer must contain the section")

    @classmethod
    def two_step(cls, sd: SubspaceData, low: int = 0, high: int = 1) -> "FiltrationData":
        return cls((
            Layer(low, sd.dimV_sub, sd.r_sub, sd.chiF_sub, sd.dimPhi_sub),
            Layer(high, sd.dimV, sd.r, sd.chiF, 1),
        ))


def hm_weight_filtration(f: FiltrationData, which: int, lp: LinPair) -> Poly:
    """``(1/dim V) sum_k [dim V (c_i P_<=k - dim Phi_<=k l) - dim V_<=k (c_i P_F - l)]``.

    The sum runs over every integer ``k``; layers below the lowest weight are
    zero and from the top weight on every summand vanishes.
    """
    top = f.layers[-1]
    c = lp.c(which)
    P_F = Poly([top.chiF, top.r])
    total = Poly()
    layers = f.layers
    for idx in range(len(layers) - 1):
        lay = layers[idx]
        span = layers[idx + 1].weight - lay.weight  # the layer is V_<=k for this many k
        P_k = Poly([lay.chiF, lay.r])
        term = (P_k.scale(c) - L.scale(lay.dimPhi)).scale(top.dimV) - (P_F.scale(c) - L).scale(lay.dimV)
        total = total + term.scale(span)
    return total.scale(Fraction(1, top.dimV))


# --- critical values --------------------------------------------------------------


def critical_t(sd: SubspaceData, lp: LinPair, l_value=None) -> Value:
    """Unique ``t`` with ``(1-t) mu^0 + t mu^1 = 0``.

    With ``l_value=None`` the answer is a :class:`RatL` in ``l`` and the
    opposite-sign condition is checked asymptotically.
    """
    mu0, mu1 = mu_weight(sd, 0, lp), mu_weight(sd, 1, lp)
    if l_value is None:
        if asymptotic_sign(mu0) * asymptotic_sign(mu1) >= 0:
            raise ValueError("weights do not have opposite signs: no wall for this subgroup")
        r0, r1 = RatL.coerce(mu0), RatL.coerce(mu1)
        return r0 / (r0 - r1)
    a, b = mu0(Fraction(l_value)), mu1(Fraction(l_value))
    if a * b >= 0:
        raise ValueError("weights do not have opposite signs: no wall for this subgroup")
    return a / (a - b)


def closed_form_ratio(lp: LinPair, m: int) -> RatL:
    """``(r m c_0 - (c_0 r - 1) l) / (r m c_1 - (c_1 r - 1) l)``."""
    r = lp.r

    def side(c):
        return Poly([r * m * c, -(c * r - 1)])

    return RatL(side(lp.c0), side(lp.c1))


def closed_form_tstar(lp: LinPair, m: int) -> RatL:
    ratio = closed_form_ratio(lp, m)
    return RatL.coerce(1) / (RatL.coerce(1) - RatL.coerce(1) / ratio)


def family_one(m: int, r: int, chiF: int, chiF_sub: int) -> SubspaceData:
    """Zero-dimensional ``F'`` with ``Phi' = 0``: ``dim V' = chi(F')``."""
    return SubspaceData(m, r, 0, chiF, chiF_sub, chiF_sub, 0)


def family_two(m: int, r: int, chiF: int, chiF_sub: int) -> SubspaceData:
    """``F'`` of full rank containing the section: ``dim V' = r m + chi(F')``."""
    return SubspaceData(m, r, r, chiF, chiF_sub, r * m + chiF_sub, 1)


def family_of(sd: SubspaceData) -> int | None:
    if sd.r_sub == 0 and sd.dimPhi_sub == 0 and sd.dimV_sub == sd.chiF_sub:
        return 1
    if sd.r_sub == sd.r and sd.dimPhi_sub == 1 and sd.dimV_sub == sd.r * sd.m + sd.chiF_sub:
        return 2
    return None


def family_grid(family: int, lp: LinPair, m: int, chi_range: Iterable[int]) -> list[SubspaceData]:
    out = []
    chis = list(chi_range)
    for chiF in chis:
        for chiF_sub in chis:
            try:
                if family == 1:
                    if chiF_sub <= 0:
                        continue
                    out.append(family_one(m, lp.r, chiF, chiF_sub))
                else:
                    if chiF_sub >= chiF:
                        continue
                    out.append(family_two(m, lp.r, chiF, chiF_sub))
            except ValueError:
                continue  # dim V' outside (0, dim V)
    return out


def verify_tstar_universal(lp: LinPair, m: int, grid: dict[int, list[SubspaceData]]) -> dict:
    """Check ``mu^0/mu^1`` against the closed form for every member of both families."""
    target = closed_form_ratio(lp, m)
    tstar = closed_form_tstar(lp, m)
    counts = {}
    failures = []
    for fam, members in grid.items():
        counts[fam] = 0
        for sd in members:
            if family_of(sd) != fam:
                failures.append({"sd": asdict(sd), "reason": f"not in family {fam}"})
                continue
            mu0, mu1 = mu_weight(sd, 0, lp), mu_weight(sd, 1, lp)
            ratio = RatL(mu0, mu1)
            if ratio != target:
                failures.append({"sd": asdict(sd), "reason": "ratio", "got": str(ratio)})
            elif critical_t(sd, lp) != tstar:
                failures.append({"sd": asdict(sd), "reason": "t*"})
            counts[fam] += 1
    return {
        "r": lp.r,
        "m": m,
        "c0": str(lp.c0),
        "c1": str(lp.c1),
        "ratio": str(target),
        "t_star": str(tstar),
        "t_star_limit": str(tstar.limit_at_infinity()),
        "instances": {str(k): v for k, v in counts.items()},
        "failures": failures[:5],
        "status": "pass" if not failures else "fail",
    }


def realistic_grid(lp: LinPair, m: int, chi_range: Iterable[int]) -> list[SubspaceData]:
    """Data with ``dim V' = r' m + chi(F')`` (so ``V' = H^0(F'(m))`` for ``m >> 0``)."""
    chis = list(chi_range)
    out = []
    for chiF in chis:
        for r_sub in range(lp.r + 1):
            for chiF_sub in chis:
                for phi in (0, 1):
                    dimV_sub = r_sub * m + chiF_sub
                    try:
                        out.append(SubspaceData(m, lp.r, r_sub, chiF, chiF_sub, dimV_sub, phi))
                    except ValueError:
                        continue
    return out


def scan_out_of_family(lp: LinPair, m: int, chi_range: Iterable[int]) -> dict:
    """Every opposite-sign member of the realistic grid must lie in family 1 or 2."""
    grid = realistic_grid(lp, m, chi_range)
    offenders = []
    flips = 0
    for sd in grid:
        s0 = asymptotic_sign(mu_weight(sd, 0, lp))
        s1 = asymptotic_sign(mu_weight(sd, 1, lp))
        if s0 * s1 < 0:
            flips += 1
            if family_of(sd) is None:
                offenders.append(asdict(sd))
    return {
        "scanned": len(grid),
        "opposite_sign": flips,
        "outside_families": offenders[:5],
        "status": "pass" if not offenders else "fail",
    }


# --- classification and walls --------------------------------------------------------


def _value_sign(v, l_value) -> int:
    if l_value is not None:
        return _sign(v.at(l_value) if isinstance(v, RatL) else v(Fraction(l_value)))
    if isinstance(v, RatL):
        return v.sign_at_infinity()
    return asymptotic_sign(v)


def classify(config: Sequence[SubspaceData], lp: LinPair, t, l_value=None) -> str:
    """Stable / strictly-semistable / unstable for ``L_t``.

    The minimum over the destabilising candidates of the interpolated weight is
    compared with zero, asymptotically in ``l`` unless ``l_value`` is given.
    """
    if not isinstance(t, RatL) and not 0 <= Fraction(t) <= 1:
        raise ValueError("t must lie in [0, 1]")
    worst = 1
    for sd in config:
        worst = min(worst, _value_sign(interpolated_weight(sd, lp, t), l_value))
    return {1: "stable", 0: "strictly-semistable", -1: "unstable"}[worst]


def chamber_scan(config: Sequence[SubspaceData], lp: LinPair, resolution: int = 64) -> dict:
    """Walls in ``(0, 1)`` where some member's interpolated weight changes sign.

    Walls are collected exactly (as rational functions of ``l``) from every
    member with opposite-sign endpoint weights; a sampled sweep over
    ``t = k/resolution`` cross-checks that the classification changes only
    across those walls.
    """
    walls: dict = {}
    for i, sd in enumerate(config):
        s0 = asymptotic_sign(mu_weight(sd, 0, lp))
        s1 = asymptotic_sign(mu_weight(sd, 1, lp))
        if s0 * s1 < 0:
            ts = critical_t(sd, lp)
            walls.setdefault(ts, []).append(i)
    samples = []
    for k in range(resolution + 1):
        t = Fraction(k, resolution)
        samples.append((t, classify(config, lp, t)))
    changes = [
        [str(a[0]), str(b[0])] for a, b in zip(samples, samples[1:]) if a[1] != b[1]
    ]
    limits = sorted(w.limit_at_infinity() for w in walls)
    consistent = all(
        any(Fraction(lo) <= lim <= Fraction(hi) for lim in limits) for lo, hi in changes
    )
    return {
        "walls": [
            {"t_star": str(w), "limit": str(w.limit_at_infinity()), "members": members}
            for w, members in walls.items()
        ],
        "count": len(walls),
        "sample_changes": changes,
        "sweep_consistent": consistent,
        "classification": {str(t): c for t, c in samples},
    }


def strata_labels(n: int) -> list[str]:
    """Labels of the strata of the semistable locus: ``I^pur_{n-k} x S^k X``."""
    return [f"I^pur_{n - k} x S^{k} X" for k in range(n + 1)]


# --- scenario files -------------------------------------------------------------------


def load_scenario(obj: dict) -> tuple[LinPair, list[SubspaceData]]:
    lp = LinPair(Fraction(obj["c0"]), Fraction(obj["c1"]), int(obj["r"]))
    m = int(obj["m"])
    config = []
    for item in obj.get("config", []):
        fam = item.get("family")
        if fam == 1:
            config.append(family_one(m, lp.r, int(item["chiF"]), int(item["chiF_sub"])))
        elif fam == 2:
            config.append(family_two(m, lp.r, int(item["chiF"]), int(item["chiF_sub"])))
        else:
            config.append(SubspaceData(
                m, lp.r, int(item["r_sub"]), int(item["chiF"]), int(item["chiF_sub"]),
                int(item["dimV_sub"]), int(item["dimPhi_sub"]),
            ))
    return lp, config


def scan_scenario(obj: dict) -> dict:
    lp, config = load_scenario(obj)
    result = chamber_scan(config, lp, int(obj.get("resolution", 64)))
    result["scenario"] = {"r": lp.r, "m": int(obj["m"]), "c0": str(lp.c0), "c1": str(lp.c1),
                          "members": len(config)}
    result["closed_form_t_star"] = str(closed_form_tstar(lp, int(obj["m"])))
    return result


def scenario_from_file(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
