from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from dtpt import linalg
from dtpt.localext import (
    CURVE_IDEALS,
    FinMod,
    MonIdeal,
    check_exact,
    connected_monomial_shapes,
    ext1_dim,
    ext_dims,
    hom_dim,
    koszul_resolution,
    monomial_modules,
    plane_partition_modules,
    taylor_resolution,
    two_point_profile,
    verify_rr,
)


def hom_by_generator_images(I: MonIdeal, T: FinMod) -> int:
    """Hom(I, T) as generator images subject to the pairwise lcm relations."""
    gens = I.gens
    n = T.dim
    rows = []
    for i, j in combinations(range(len(gens)), 2):
        lcm = tuple(max(a, b) for a, b in zip(gens[i], gens[j]))
        ui = T.evaluate({tuple(a - b for a, b in zip(lcm, gens[i])): Fraction(1)})
        uj = T.evaluate({tuple(a - b for a, b in zip(lcm, gens[j])): Fraction(1)})
        for r in range(n):
            row = [Fraction(0)] * (n * len(gens))
            for c in range(n):
                row[i * n + c] += ui[r][c]
                row[j * n + c] -= uj[r][c]
            rows.append(row)
    return n * len(gens) - (linalg.rank(rows) if rows else 0)


def test_ideal_parsing_and_printing():
    assert str(MonIdeal.parse("xy, yz, zx")) == str(CURVE_IDEALS["three-axes"])
    assert MonIdeal.parse("y,y^2,z").gens == ((0, 0, 1), (0, 1, 0))


def test_cross_ideal_is_z_xy():
    assert CURVE_IDEALS["two-axes"] == MonIdeal.parse("z,xy")


@pytest.mark.parametrize("name", sorted(CURVE_IDEALS))
def test_curve_ideals_are_cohen_macaulay(name):
    assert CURVE_IDEALS[name].is_cm_curve()


def test_thickened_line_is_cohen_macaulay():
    assert MonIdeal.parse("y^2,z").is_cm_curve()


def test_non_cm_ideals_rejected():
    assert not MonIdeal.parse("x,y,z").is_cm_curve()  # a point
    embedded = MonIdeal.parse("y,z").intersect(MonIdeal.parse("x^2,y^2,z^2"))
    assert not embedded.is_saturated()
    assert not embedded.is_cm_curve()
    assert not MonIdeal.parse("x").is_cm_curve()  # a surface


@pytest.mark.parametrize("name", sorted(CURVE_IDEALS))
def test_taylor_resolution_is_a_resolution(name):
    I = CURVE_IDEALS[name]
    res = taylor_resolution(I)
    assert res.composites_vanish()
    assert check_exact(res, I, 3)


def test_koszul_agrees_with_taylor():
    I = CURVE_IDEALS["axis"]
    kz = koszul_resolution(I)
    assert check_exact(kz, I, 3)
    for T in monomial_modules(3):
        assert ext_dims(kz, T)[:2] == ext_dims(taylor_resolution(I), T)[:2]


def test_broken_resolution_detected():
    I = CURVE_IDEALS["axis"]
    res = taylor_resolution(I)
    res.diffs[0][0][0] = {(0, 0, 2): Fraction(1)}
    assert not res.composites_vanish()


def test_module_enumeration_sizes():
    assert len(connected_monomial_shapes(5)) == 162
    assert len(monomial_modules(5)) == 264
    assert len(plane_partition_modules(4)) == 1 + 3 + 6 + 13


def test_module_validation():
    with pytest.raises(ValueError):
        FinMod(2, ([[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 0]]))  # do not commute
    with pytest.raises(ValueError):
        FinMod(1, ([[1]], [[0]], [[0]]))  # not nilpotent
    with pytest.raises(ValueError):
        FinMod.double_point((0, 0, 0))


@pytest.mark.parametrize("name,h,e", [("axis", 2, 1), ("three-axes", 3, 2), ("two-axes", 2, 1)])
def test_point_at_origin(name, h, e):
    I = CURVE_IDEALS[name]
    assert hom_dim(I, FinMod.point()) == h
    assert ext1_dim(I, FinMod.point()) == e


@pytest.mark.parametrize("name", sorted(CURVE_IDEALS))
def test_point_off_the_curve(name):
    I = CURVE_IDEALS[name]
    assert hom_dim(I, FinMod.point(), point=(1, 1, 1)) == 1
    assert ext1_dim(I, FinMod.point(), point=(1, 1, 1)) == 0


def test_point_elsewhere_on_the_axis():
    # a smooth point of the x-axis behaves like a point of a smooth curve
    I = CURVE_IDEALS["three-axes"]
    assert (hom_dim(I, FinMod.point(), point=(2, 0, 0)), ext1_dim(I, FinMod.point(), point=(2, 0, 0))) == (2, 1)


@pytest.mark.parametrize("name", sorted(CURVE_IDEALS))
def test_riemann_roch_all_monomial_modules(name):
    I = CURVE_IDEALS[name]
    for T in monomial_modules(5):
        r = verify_rr(I, T)
        assert r["status"] == "pass", r


@pytest.mark.parametrize("name", sorted(CURVE_IDEALS))
def test_hom_matches_generator_image_count(name):
    I = CURVE_IDEALS[name]
    for T in monomial_modules(4):
        assert hom_dim(I, T) == hom_by_generator_images(I, T)


@given(st.tuples(*(st.fractions(min_value=-5, max_value=5, max_denominator=3) for _ in range(3))))
@settings(max_examples=25, deadline=None)
def test_riemann_roch_double_points_any_direction(v):
    if all(c == 0 for c in v):
        return
    T = FinMod.double_point(v)
    for I in CURVE_IDEALS.values():
        assert verify_rr(I, T)["status"] == "pass"


@given(st.sampled_from(sorted(CURVE_IDEALS)),
       st.tuples(*(st.integers(-2, 2) for _ in range(3))))
@settings(max_examples=25, deadline=None)
def test_riemann_roch_translated_points(name, p):
    assert verify_rr(CURVE_IDEALS[name], FinMod.point(), point=p)["status"] == "pass"


def test_two_point_profile_axis():
    prof = two_point_profile(CURVE_IDEALS["axis"])
    assert prof["status"] == "pass"
    along = prof["torus_strata"]["x"]
    assert (along["h_2x"], along["e_2x"], along["h_mx"], along["e_x"]) == (4, 2, 2, 1)
    across = prof["torus_strata"]["y"]
    assert (across["h_2x"], across["e_2x"]) == (3, 1)
    assert prof["generic"]["h_2x"] == 3
    assert all(p["difference"] == 1 for p in prof["torus_strata"].values())


@pytest.mark.parametrize("name", sorted(CURVE_IDEALS))
def test_two_point_profile_all_ideals(name):
    prof = two_point_profile(CURVE_IDEALS[name], direction_samples=2, seed=7)
    assert prof["status"] == "pass"
    assert not prof["ambiguous"]


def test_profile_rejects_bad_input():
    with pytest.raises(ValueError):
        two_point_profile(MonIdeal.parse("x,y,z"))
