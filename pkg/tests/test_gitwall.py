import json
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from dtpt.gitwall import (
    FiltrationData,
    Layer,
    LinPair,
    RatL,
    SubspaceData,
    chamber_scan,
    classify,
    closed_form_ratio,
    closed_form_tstar,
    critical_t,
    family_grid,
    family_of,
    family_one,
    family_two,
    hm_weight_filtration,
    interpolated_weight,
    mu_weight,
    scan_out_of_family,
    scan_scenario,
    strata_labels,
    verify_tstar_universal,
)
from dtpt.poly import Poly

LP = LinPair(F(1, 4), F(3, 4), 2)
M = 10
CHOICES = [(2, 10, F(1, 4), F(3, 4)), (3, 20, F(1, 6), F(1, 2)), (1, 50, F(1, 2), F(2))]


def direct_weight(sd, c, l):
    """The weight evaluated straight from the dimension data at a numeric ``l``."""
    dimV = sd.r * sd.m + sd.chiF
    p_sub = sd.chiF_sub + sd.r_sub * l
    p = sd.chiF + sd.r * l
    return dimV * (c * p_sub - sd.dimPhi_sub * l) - sd.dimV_sub * (c * p - l)


def test_mu_weight_example():
    sd = family_one(M, 2, 0, 3)
    assert mu_weight(sd, 0, LP) == Poly([15, F(3, 2)])


def test_closed_form_tstar_example():
    expected = RatL(Poly([5, F(1, 2)]), Poly([-10, 1]))
    assert closed_form_tstar(LP, M) == expected
    assert expected.limit_at_infinity() == F(1, 2)


@pytest.mark.parametrize("r,m,c0,c1", CHOICES)
def test_both_families_share_tstar(r, m, c0, c1):
    lp = LinPair(c0, c1, r)
    grid = {fam: family_grid(fam, lp, m, range(-10, 11)) for fam in (1, 2)}
    res = verify_tstar_universal(lp, m, grid)
    assert res["status"] == "pass", res["failures"]
    assert all(n >= 100 for n in res["instances"].values())


@pytest.mark.parametrize("r,m,c0,c1", CHOICES)
def test_no_flip_outside_families(r, m, c0, c1):
    res = scan_out_of_family(LinPair(c0, c1, r), m, range(-10, 11))
    assert res["status"] == "pass", res["outside_families"]
    assert res["opposite_sign"] > 0


@given(st.integers(-10, 10), st.integers(-10, 10), st.integers(0, 1),
       st.integers(0, 2), st.integers(1, 40), st.integers(-30, 30))
@settings(max_examples=200, deadline=None)
def test_weight_matches_direct_formula(chiF, chiF_sub, phi, r_sub, dimV_sub, l):
    try:
        sd = SubspaceData(M, 2, r_sub, chiF, chiF_sub, dimV_sub, phi)
    except ValueError:
        assume(False)
    for which, c in ((0, LP.c0), (1, LP.c1)):
        assert mu_weight(sd, which, LP)(F(l)) == direct_weight(sd, c, l)


@given(st.sampled_from([1, 2]), st.integers(-10, 10), st.integers(-10, 10), st.integers(31, 200))
@settings(max_examples=100, deadline=None)
def test_family_members_vanish_at_closed_form(fam, chiF, chiF_sub, l):
    make = family_one if fam == 1 else family_two
    try:
        sd = make(M, 2, chiF, chiF_sub)
    except ValueError:
        assume(False)
    assume(chiF_sub != (0 if fam == 1 else chiF))
    assert family_of(sd) == fam
    t = closed_form_tstar(LP, M).at(l)
    assert interpolated_weight(sd, LP, t)(F(l)) == 0
    assert critical_t(sd, LP, l) == t


def test_ratio_oracle():
    # mu^0 / mu^1 from the factorised weights chi' (c_i r m - (c_i r - 1) l)
    for l in (11, 40, 1000):
        expected = (2 * M * LP.c0 - (2 * LP.c0 - 1) * l) / (2 * M * LP.c1 - (2 * LP.c1 - 1) * l)
        assert closed_form_ratio(LP, M).at(l) == expected


def test_critical_t_requires_opposite_signs():
    sd = SubspaceData(M, 2, 1, 0, 0, 10, 1)
    if mu_weight(sd, 0, LP).lead * mu_weight(sd, 1, LP).lead < 0:
        pytest.skip("example has opposite signs")
    with pytest.raises(ValueError):
        critical_t(sd, LP)


def test_two_step_filtration_equals_subspace_weight():
    sd = family_two(M, 2, 3, -2)
    f = FiltrationData.two_step(sd)
    for which in (0, 1):
        dimV = sd.dimV
        assert hm_weight_filtration(f, which, LP) == mu_weight(sd, which, LP).scale(F(1, dimV))


def test_filtration_validation():
    with pytest.raises(ValueError):
        FiltrationData(())
    with pytest.raises(ValueError):
        FiltrationData((Layer(0, 5, 2, 0, 1), Layer(1, 3, 2, 0, 1)))
    with pytest.raises(ValueError):
        FiltrationData((Layer(0, 5, 2, 0, 0),))


@pytest.mark.parametrize("bad", [(F(1, 2), F(3, 4), 2), (F(1, 8), F(1, 4), 2), (F(0), F(1), 2),
                                 (F(1, 4), F(3, 4), 0)])
def test_linpair_bounds(bad):
    with pytest.raises(ValueError):
        LinPair(*bad)


def test_subspace_validation():
    with pytest.raises(ValueError):
        SubspaceData(M, 2, 3, 0, 0, 1, 0)
    with pytest.raises(ValueError):
        SubspaceData(M, 2, 0, 0, 0, 1, 2)
    with pytest.raises(ValueError):
        SubspaceData(M, 2, 0, 0, 0, 20, 0)


def test_chamber_scan_and_classification():
    config = [family_one(M, 2, 0, 3), family_two(M, 2, 0, -2)]
    res = chamber_scan(config, LP, resolution=32)
    assert res["count"] == 1
    assert res["walls"][0]["limit"] == "1/2"
    assert res["sweep_consistent"]
    tstar = closed_form_tstar(LP, M)
    assert classify(config, LP, tstar) == "strictly-semistable"
    sides = {classify(config, LP, F(1, 4)), classify(config, LP, F(3, 4))}
    assert sides == {"unstable"} or len(sides) == 2


def test_classify_rejects_t_out_of_range():
    with pytest.raises(ValueError):
        classify([family_one(M, 2, 0, 3)], LP, F(3, 2))


def test_scan_scenario_roundtrip(tmp_path):
    obj = {"r": 2, "m": 10, "c0": "1/4", "c1": "3/4", "resolution": 16,
           "config": [{"family": 1, "chiF": 0, "chiF_sub": 3},
                      {"r_sub": 2, "chiF": 0, "chiF_sub": -2, "dimV_sub": 18, "dimPhi_sub": 1}]}
    res = scan_scenario(json.loads(json.dumps(obj)))
    assert res["count"] == 1
    assert res["closed_form_t_star"] == str(closed_form_tstar(LP, M))
    assert res["scenario"]["members"] == 2


def test_strata_labels():
    assert strata_labels(2) == ["I^pur_2 x S^0 X", "I^pur_1 x S^1 X", "I^pur_0 x S^2 X"]


def test_ratl_arithmetic():
    a = RatL(Poly([1, 1]), Poly([2, 2]))
    assert a == RatL.coerce(F(1, 2))
    assert a.limit_at_infinity() == F(1, 2)
    assert RatL(Poly([0, 0, 1]), Poly([1])).limit_at_infinity() is None
    with pytest.raises(ZeroDivisionError):
        RatL(Poly([1]), Poly([-3, 1])).at(3)
