"""Backend selection for the integer hot loops.

The compiled extension is used when it imports; ``DTPT_PURE_PYTHON=1`` forces
the pure-Python twin.  Both expose ``count_order_ideals``,
``subspace_type_counts`` and ``count_linear_solutions``.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}

try:
    from . import _ckernels  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if os.environ.get("DTPT_PURE_PYTHON") == "1" or _ckernels is None:
    _active = _kernels_py
else:
    _active = _ckernels

BACKEND: str = _active.BACKEND


def get_backend(name: str | None = None):
    """Return the kernel module called ``name`` (default: the active one)."""
    if name is None:
        return _active
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None


def count_order_ideals(n: int, legs_mask: int, bound: int) -> list[int]:
    return list(_active.count_order_ideals(n, legs_mask, bound))


def subspace_type_counts(d, q, add, mul, neg, inv, npows) -> dict:
    return _active.subspace_type_counts(d, q, add, mul, neg, inv, npows)


def count_linear_solutions(nvars, q, add, mul, eqs) -> int:
    return int(_active.count_linear_solutions(nvars, q, add, mul, eqs))
