"""Box configurations in the octant: 3D partitions and monomial ideals along
coordinate-axis curves.

A configuration is measured against a set of one-box legs along coordinate
axes (the curve).  Its finite part is the set of boxes off the legs, and the
union of boxes and legs must be downward closed.  With no legs these are plain
3D partitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import cache, kernels
from .series import TruncSeries

__all__ = [
    "LegConfig",
    "BoxSet",
    "enum_plane_partitions",
    "enum_leg_configs",
    "dt_punctual_series",
    "iter_box_sets",
    "MAX_PLANE",
    "MAX_LEGS",
]

MAX_PLANE = 12
MAX_LEGS = 10
_AXES = ("x", "y", "z")


@dataclass(frozen=True)
class LegConfig:
    """Subset of the coordinate axes carrying a single-box leg."""

    axes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        axes = frozenset(self.axes)
        if not axes <= set(_AXES):
            raise ValueError(f"legs must be drawn from {_AXES}, got {sorted(axes)}")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def standard(cls, k: int) -> "LegConfig":
        """The first ``k`` axes: none, x, x+y, or x+y+z."""
        if not 0 <= k <= 3:
            raise ValueError("between 0 and 3 legs")
        return cls(frozenset(_AXES[:k]))

    @property
    def count(self) -> int:
        return len(self.axes)

    @property
    def mask(self) -> int:
        return sum(1 << i for i, a in enumerate(_AXES) if a in self.axes)

    def contains(self, p: tuple[int, int, int]) -> bool:
        x, y, z = p
        return (
            ("x" in self.axes and y == 0 and z == 0)
            or ("y" in self.axes and x == 0 and z == 0)
            or ("z" in self.axes and x == 0 and y == 0)
        )

    def label(self) -> str:
        return "".join(a for a in _AXES if a in self.axes) or "none"


@dataclass(frozen=True)
class BoxSet:
    """Finite boxes of a configuration measured against ``legs``."""

    boxes: frozenset
    legs: LegConfig = field(default_factory=LegConfig)

    def __post_init__(self):
        boxes = frozenset(tuple(int(c) for c in b) for b in self.boxes)
        object.__setattr__(self, "boxes", boxes)
        for b in boxes:
            if len(b) != 3 or min(b) < 0:
                raise ValueError(f"box {b} is not in the octant")
            if self.legs.contains(b):
                raise ValueError(f"box {b} lies on a leg")
            for i in range(3):
                if b[i] == 0:
                    continue
                p = list(b)
                p[i] -= 1
                p = tuple(p)
                if p not in boxes and not self.legs.contains(p):
                    raise ValueError(f"not downward closed: {b} needs {p}")

    def __len__(self) -> int:
        return len(self.boxes)

    def permuted(self, perm: tuple[int, int, int]) -> "BoxSet":
        """Apply a coordinate permutation to boxes and legs."""
        boxes = frozenset(tuple(b[perm[i]] for i in range(3)) for b in self.boxes)
        legs = frozenset(_AXES[i] for i in range(3) if _AXES[perm[i]] in self.legs.axes)
        return BoxSet(boxes, LegConfig(legs))


def _guard(n: int, limit: int, what: str) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"{what}: size must be a non-negative integer")
    if n > limit:
        raise ValueError(f"{what}: n={n} exceeds the size guard {limit}")


def _counts(legs: LegConfig, n: int, bound: int) -> list[int]:
    params = {"legs": legs.label(), "n": n, "box_bound": bound}

    def compute():
        return kernels.count_order_ideals(n, legs.mask, bound)

    return cache.cached(
        "leg-configs",
        params,
        compute,
        validate=lambda v: isinstance(v, list) and len(v) == n + 1
        and all(isinstance(c, int) and c >= 1 for c in v),
    )


def enum_leg_configs(legs: LegConfig, n: int, bound: int | None = None) -> int:
    """Number of box sets with ``n`` boxes off ``legs``.

    ``bound`` is the side of the search box (default ``n + 1``, always large
    enough since a box coordinate never exceeds ``n - 1``).
    """
    limit = MAX_PLANE if legs.count == 0 else MAX_LEGS
    _guard(n, limit, "enum_leg_configs")
    bound = n + 1 if bound is None else bound
    return _counts(legs, n, bound)[n]


def enum_plane_partitions(n: int, bound: int | None = None) -> int:
    """Number of 3D partitions with ``n`` boxes."""
    _guard(n, MAX_PLANE, "enum_plane_partitions")
    return enum_leg_configs(LegConfig(), n, bound)


def dt_punctual_series(legs: LegConfig, N: int) -> TruncSeries:
    """Series whose ``t^n`` coefficient counts box sets of size ``n``."""
    limit = MAX_PLANE if legs.count == 0 else MAX_LEGS
    _guard(N, limit, "dt_punctual_series")
    return TruncSeries(tuple(_counts(legs, N, N + 1)), "Q")


def iter_box_sets(legs: LegConfig, n: int) -> Iterator[BoxSet]:
    """Yield every box set of size exactly ``n`` (deterministic order)."""
    _guard(n, MAX_LEGS, "iter_box_sets")
    B = n + 1
    order = [(x, y, z) for x in range(B) for y in range(B) for z in range(B)]
    cells = [p for p in order if not legs.contains(p)]

    def addable(p, chosen):
        for i in range(3):
            if p[i]:
                r = list(p)
                r[i] -= 1
                r = tuple(r)
                if r not in chosen and not legs.contains(r):
                    return False
        return True

    def rec(start, chosen):
        if len(chosen) == n:
            yield BoxSet(frozenset(chosen), legs)
            return
        for k in range(start, len(cells)):
            p = cells[k]
            if addable(p, chosen):
                chosen.add(p)
                yield from rec(k + 1, chosen)
                chosen.discard(p)

    yield from rec(0, set())
