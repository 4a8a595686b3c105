from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dtpt.poly import Poly, interpolate, poly_gcd
from dtpt.series import (
    NonUnitError,
    PoleError,
    QRat,
    RingMismatchError,
    TruncSeries,
    geometric_series,
    limit_q1,
    macmahon_euler_product,
    series_inv,
    series_mul,
    series_pow,
    series_scale_t,
)

small = st.integers(-6, 6)
polys = st.lists(small, max_size=5).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
qrats = st.builds(QRat, polys, nonzero_polys)
q_series = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=7).map(
    lambda cs: TruncSeries(tuple(cs), "Q")
)


def plane_partitions_by_hand(n):
    """Count 3D partitions of n as stacks of weakly decreasing 2D partitions."""

    def partitions(k, cap):
        if k == 0:
            yield ()
            return
        for p in range(min(k, cap), 0, -1):
            for rest in partitions(k - p, p):
                yield (p,) + rest

    def dominated(a, b):
        return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))

    def layers(k, above):
        if k == 0:
            return 1
        total = 0
        for size in range(1, k + 1):
            for lam in partitions(size, size):
                if above is None or dominated(lam, above):
                    total += layers(k - size, lam)
        return total

    return layers(n, None)


def test_macmahon_frozen():
    assert macmahon_euler_product(8).as_ints() == [1, 1, 3, 6, 13, 24, 48, 86, 160]


def test_macmahon_against_layer_count():
    m = macmahon_euler_product(7).as_ints()
    assert m == [plane_partitions_by_hand(n) for n in range(8)]


def test_macmahon_order_zero_and_negative():
    assert macmahon_euler_product(0).as_ints() == [1]
    with pytest.raises(ValueError):
        macmahon_euler_product(-1)


def test_qrat_canonical_form():
    s = QRat.s_pow(1)
    x = (QRat.q() - 1) / (s - 1)
    assert x == s + 1
    assert x.den == Poly([1])
    assert QRat(Poly([0, 2]), Poly([0, 4])) == QRat(Fraction(1, 2))


def test_qrat_limit_and_pole():
    assert ((QRat.q() - 1) / (QRat.q() - 1)).limit_q1() == 1
    with pytest.raises(PoleError):
        (1 / (QRat.q() - 1)).limit_q1()


def test_qrat_evaluation():
    x = (QRat.q_pow(2) + 1) / (QRat.q() - 1)
    assert x.at_q(3) == Fraction(10, 2)
    assert QRat.s_pow(1).at_q(4) == 2
    with pytest.raises(ValueError):
        QRat.s_pow(1).at_q(2)


@given(qrats, qrats, qrats)
@settings(max_examples=60, deadline=None)
def test_qrat_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a


@given(qrats)
@settings(max_examples=40, deadline=None)
def test_qrat_json_roundtrip(a):
    assert QRat.from_json(a.to_json()) == a


@given(polys, nonzero_polys)
@settings(max_examples=60, deadline=None)
def test_poly_divmod(a, b):
    quo, rem = a.divmod(b)
    assert quo * b + rem == a
    assert rem.is_zero() or rem.degree < b.degree


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=40, deadline=None)
def test_poly_gcd_divides(a, b):
    g = poly_gcd(a, b)
    assert (a % g).is_zero() and (b % g).is_zero()


def test_interpolate_recovers_polynomial():
    p = Poly([1, -2, 0, 3])
    assert interpolate([(x, int(p(Fraction(x)))) for x in range(4)]) == p


@given(q_series, q_series, q_series)
@settings(max_examples=60, deadline=None)
def test_series_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(q_series)
@settings(max_examples=60, deadline=None)
def test_series_inverse(a):
    if a[0] == 0:
        with pytest.raises(NonUnitError):
            series_inv(a)
    else:
        assert series_mul(a, series_inv(a)) == TruncSeries.one(a.order)


@given(q_series, st.integers(-3, 4))
@settings(max_examples=40, deadline=None)
def test_series_pow_matches_repeated_product(a, k):
    if k < 0 and a[0] == 0:
        return
    expected = TruncSeries.one(a.order)
    base = a if k >= 0 else series_inv(a)
    for _ in range(abs(k)):
        expected = expected * base
    assert series_pow(a, k) == expected


@given(q_series)
@settings(max_examples=40, deadline=None)
def test_series_json_roundtrip(a):
    assert TruncSeries.loads(a.dumps()) == a
    assert TruncSeries.loads(a.to_qrat().dumps()) == a.to_qrat()


def test_truncation_to_smaller_order():
    a = geometric_series(5)
    b = geometric_series(2)
    assert (a + b).order == 2
    assert (a * b).as_ints() == [1, 2, 3]


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        geometric_series(3) + geometric_series(3, "QRat")
    with pytest.raises(RingMismatchError):
        series_scale_t(geometric_series(3), 2)


def test_scale_t_and_limit():
    a = geometric_series(3, "QRat")
    b = series_scale_t(a, 2)
    assert b.coeffs[3] == QRat.q_pow(3)
    assert limit_q1(b) == geometric_series(3)


def test_limit_reports_pole_index():
    bad = TruncSeries((1, 1, 1 / (QRat.q() - 1)), "QRat")
    with pytest.raises(PoleError) as exc:
        limit_q1(bad)
    assert exc.value.index == 2


def test_json_schema():
    obj = TruncSeries((1, Fraction(1, 2)), "Q").to_json()
    assert obj == {"var": "t", "trunc": 1, "coeffs": ["1", "1/2"]}
    with pytest.raises(ValueError):
        TruncSeries.from_json({"var": "t", "trunc": 3, "coeffs": ["1"]})
