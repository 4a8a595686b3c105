import time
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from dtpt.hallfq.field import gf
from dtpt.series import PoleError
from dtpt.wallcases import (
    Binom,
    Const,
    GridSpec,
    LinForm,
    Param,
    QPow,
    QSum,
    a_serre_lhs,
    assemble_two_point,
    b_serre_lhs,
    c_serre_lhs,
    default_grids,
    euler_diffs_len2,
    expr_equal,
    reorder_check,
    serre2_terms,
    serre_case_a,
    serre_case_b,
    serre_case_c,
    serre_term,
    specialize_two_point,
)

Q = QPow(1)


def count_subspaces(q: int, h: int, k: int) -> int:
    """k-dimensional subspaces of GF(q)^h by enumerating spanning tuples."""
    f = gf(q)
    seen = set()
    for vecs in product(product(range(q), repeat=h), repeat=k):
        basis, _ = f.rref([list(v) for v in vecs])
        if len(basis) == k:
            seen.add(tuple(map(tuple, basis)))
    return len(seen)


@pytest.mark.parametrize("name", sorted(default_grids()))
def test_grids_have_at_least_100_points(name):
    assert default_grids()[name].size() >= 100


@pytest.mark.parametrize("fn", [serre_case_a, serre_case_b, serre_case_c, euler_diffs_len2])
def test_case_identities(fn):
    r = fn()
    assert r["status"] == "pass", r["counterexample"]


def test_reorder_identities():
    r = reorder_check()
    assert r["status"] == "pass", r["counterexample"]
    assert set(r["checks"]) >= {"serre=serre2", "mess", "mess=P2*cSerre", "serre-poles"}


@pytest.mark.parametrize("q,h", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_a_serre_counts_lines(q, h):
    lines = count_subspaces(q, h, 1)
    env = {"h_x": h, "h_y": h}
    assert a_serre_lhs().evaluate(env).at_q(q) == lines * lines


@pytest.mark.parametrize("q,h", [(2, 2), (2, 3), (3, 3), (2, 4)])
def test_b_serre_counts_planes(q, h):
    assert b_serre_lhs().evaluate({"h_x": h}).at_q(q) == count_subspaces(q, h, 2)


def test_c_serre_limit():
    assert c_serre_lhs().evaluate({"h_2x": 5, "h_mx": 2}).limit_q1() == 3


def test_hall_terms_pole_at_one():
    env = {"h_x": 3, "ext_yx": 3, "hom_yx": 1, "h_mx": 3}
    with pytest.raises(PoleError):
        serre_term().evaluate(env).limit_q1()
    zero_ext, nonzero = serre2_terms()
    with pytest.raises(PoleError):
        zero_ext.evaluate(env).limit_q1()
    with pytest.raises(PoleError):
        nonzero.evaluate(env).limit_q1()
    # while the case contributions are pole-free
    a_serre_lhs().evaluate({"h_x": 3, "h_y": 2}).limit_q1()


@given(st.integers(1, 30), st.integers(0, 6), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_serre_split_any_point(h, ext, hom):
    env = {"h_x": h, "ext_yx": ext, "hom_yx": hom}
    zero_ext, nonzero = serre2_terms()
    assert serre_term().evaluate(env) == zero_ext.evaluate(env) + nonzero.evaluate(env)


def test_wrong_identity_gives_counterexample():
    grid = GridSpec.make({"h_x": range(1, 5)})
    r = expr_equal(QPow("h_x"), QPow("h_x") + 1 - Q + Const(Fraction(0)), grid)
    assert not r["equal"]
    assert r["counterexample"] == {"h_x": 1}


def test_expression_building_blocks():
    env = {"h_x": 4, "e_x": 2}
    assert QSum(0, LinForm.of(-1, h_x=1)).evaluate(env) == QPow(0).evaluate(env) + Q.evaluate(env) \
        + QPow(2).evaluate(env) + QPow(3).evaluate(env)
    assert Binom("h_x", 2).evaluate(env) == 6
    assert (Param("h_x") - Param("e_x")).evaluate(env) == 2


def test_two_point_assembly():
    r = assemble_two_point()
    assert r["status"] == "pass"
    assert r["result"] == {"eHilb2": "1", "eX*P1C": "1"}
    assert [s["rule"] for s in r["steps"]][0] == "case differences"


@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
@settings(max_examples=30, deadline=None)
def test_two_point_specialisation(weights):
    assert specialize_two_point(weights)["status"] == "pass"


def test_runtime_budget():
    t0 = time.perf_counter()
    for fn in (serre_case_a, serre_case_b, serre_case_c, euler_diffs_len2, reorder_check):
        fn()
    assert time.perf_counter() - t0 < 60
