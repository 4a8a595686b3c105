import json

import pytest
from hypothesis import given, settings, strategies as st

from dtpt import cache
from dtpt.partitions import (
    BoxSet,
    LegConfig,
    MAX_PLANE,
    dt_punctual_series,
    enum_leg_configs,
    enum_plane_partitions,
    iter_box_sets,
)
from dtpt.series import geometric_series, macmahon_euler_product, series_mul

PERMS = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]


def grow_by_bfs(legs: LegConfig, n: int) -> list[int]:
    """Independent count: grow sets one addable box at a time, deduplicating."""
    level = {frozenset()}
    counts = [1]
    for _ in range(n):
        nxt = set()
        for s in level:
            cands = {(0, 0, 0)} | {tuple(b[i] + (i == k) for i in range(3)) for b in s for k in range(3)}
            for leg_axis, k in (("x", 0), ("y", 1), ("z", 2)):
                if leg_axis in legs.axes:
                    # boxes next to the leg
                    for a in range(n + 1):
                        base = [0, 0, 0]
                        base[k] = a
                        for j in range(3):
                            if j != k:
                                c = list(base)
                                c[j] += 1
                                cands.add(tuple(c))
            for c in cands:
                if c in s or legs.contains(c):
                    continue
                try:
                    BoxSet(s | {c}, legs)
                except ValueError:
                    continue
                nxt.add(s | {c})
        level = nxt
        counts.append(len(level))
    return counts


def test_plane_partition_counts_frozen():
    assert [enum_plane_partitions(n) for n in range(9)] == [1, 1, 3, 6, 13, 24, 48, 86, 160]


def test_plane_partitions_match_euler_product():
    assert dt_punctual_series(LegConfig(), 8) == macmahon_euler_product(8)


def test_one_leg_counts_frozen():
    assert dt_punctual_series(LegConfig.standard(1), 8).as_ints() == [1, 2, 5, 11, 24, 48, 96, 182, 342]


def test_one_leg_equals_macmahon_over_one_minus_t():
    assert dt_punctual_series(LegConfig.standard(1), 8) == series_mul(macmahon_euler_product(8), geometric_series(8))


@pytest.mark.parametrize("k,expected", [
    (0, [1, 1, 3, 6, 13]),
    (1, [1, 2, 5, 11, 24]),
    (2, [1, 2, 6, 14, 32]),
    (3, [1, 3, 9, 22, 52]),
])
def test_counts_against_bfs(k, expected):
    legs = LegConfig.standard(k)
    assert grow_by_bfs(legs, 4) == expected
    assert dt_punctual_series(legs, 4).as_ints() == expected


@pytest.mark.parametrize("k", range(4))
def test_iterator_matches_counts(k):
    legs = LegConfig.standard(k)
    for n in range(5):
        sets = list(iter_box_sets(legs, n))
        assert len(sets) == enum_leg_configs(legs, n)
        assert len(set(sets)) == len(sets)


def test_counts_depend_only_on_number_of_legs():
    for axes in ({"y"}, {"z"}):
        assert enum_leg_configs(LegConfig(frozenset(axes)), 5) == enum_leg_configs(LegConfig.standard(1), 5)
    assert enum_leg_configs(LegConfig(frozenset({"y", "z"})), 5) == enum_leg_configs(LegConfig.standard(2), 5)


@given(st.integers(0, 3), st.integers(0, 5), st.sampled_from(PERMS))
@settings(max_examples=30, deadline=None)
def test_permutation_preserves_validity(k, n, perm):
    legs = LegConfig.standard(k)
    for b in iter_box_sets(legs, n):
        p = b.permuted(perm)
        assert len(p) == n
        assert len(p.legs.axes) == k


def test_boxset_validation():
    with pytest.raises(ValueError):
        BoxSet({(1, 0, 0)})  # missing origin
    with pytest.raises(ValueError):
        BoxSet({(0, 0, 0)}, LegConfig.standard(1))  # origin lies on the x leg
    BoxSet({(0, 1, 0)}, LegConfig.standard(1))
    with pytest.raises(ValueError):
        BoxSet({(-1, 0, 0)})


def test_guards():
    with pytest.raises(ValueError):
        enum_plane_partitions(MAX_PLANE + 1)
    with pytest.raises(ValueError):
        enum_plane_partitions(-1)
    with pytest.raises(ValueError):
        LegConfig(frozenset({"w"}))
    with pytest.raises(ValueError):
        LegConfig.standard(4)


def test_bound_too_small_changes_nothing_beyond_it():
    # boxes of a size-3 configuration fit in [0, 3)
    assert enum_leg_configs(LegConfig(), 3, bound=3) == 6


def test_cache_roundtrip_and_corruption(tmp_path):
    legs = LegConfig.standard(1)
    first = dt_punctual_series(legs, 6)
    files = list(cache.cache_dir().glob("**/*.json"))
    assert files
    for f in files:
        f.write_text("{ not json")
    assert dt_punctual_series(legs, 6) == first
    for f in cache.cache_dir().glob("**/*.json"):
        rec = json.loads(f.read_text())
        rec["value"] = [0] * len(rec["value"])
        f.write_text(json.dumps(rec))
    assert dt_punctual_series(legs, 6) == first


def test_cache_version_mismatch_is_a_miss(monkeypatch):
    legs = LegConfig.standard(2)
    first = dt_punctual_series(legs, 4)
    for f in cache.cache_dir().glob("**/*.json"):
        rec = json.loads(f.read_text())
        rec["code_version"] = "0.0.0-other"
        rec["value"] = [1] * len(rec["value"])
        f.write_text(json.dumps(rec))
    assert dt_punctual_series(legs, 4) == first
