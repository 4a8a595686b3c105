import pytest

from dtpt import kernels
from dtpt.hallfq.field import gf
from dtpt.hallfq.modules import FqModule, Partition, partitions_upto


def test_python_backend_always_present():
    assert "python" in kernels.BACKENDS
    assert kernels.get_backend("python").BACKEND == "python"
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.parametrize("mask", range(8))
def test_order_ideals_agree_across_backends(mask):
    results = {name: list(mod.count_order_ideals(6, mask, 7)) for name, mod in kernels.BACKENDS.items()}
    assert len({tuple(v) for v in results.values()}) == 1


@pytest.mark.parametrize("q", [2, 3, 4])
def test_subspace_counts_agree_across_backends(q):
    f = gf(q)
    for lam in partitions_upto(3):
        if lam.size == 0:
            continue
        w = FqModule.from_partition(lam, q)
        npows = [[x for row in w.power(j) for x in row] for j in range(1, lam.size + 1)]
        args = (lam.size, q, list(f.add), list(f.mul), list(f.neg), list(f.inv), npows)
        results = [dict(mod.subspace_type_counts(*args)) for mod in kernels.BACKENDS.values()]
        assert all(r == results[0] for r in results)


def test_linear_solutions(backend):
    f = gf(3)
    mod = kernels.get_backend(backend)
    # x0 + x1 = 0 and x2 = 0 over GF(3): 3 solutions out of 27
    eqs = [[(0, 1), (1, 1)], [(2, 1)]]
    assert mod.count_linear_solutions(3, 3, list(f.add), list(f.mul), eqs) == 3
    assert mod.count_linear_solutions(2, 3, list(f.add), list(f.mul), []) == 9


def test_subspace_total_is_invariant_subspace_count(backend):
    # the zero operator on GF(2)^3: every subspace is invariant (1 + 7 + 7 + 1)
    f = gf(2)
    zero = [0] * 9
    mod = kernels.get_backend(backend)
    counts = mod.subspace_type_counts(3, 2, list(f.add), list(f.mul), list(f.neg), list(f.inv), [zero] * 3)
    assert sum(counts.values()) == 16
