import pytest

from assocind.algebra import (
    base_field,
    catalog,
    direct_sum,
    mat,
    seaweed3,
    truncated_poly,
    two_dim,
    upper_triangular,
)
from assocind.index import (
    index_randomized,
    index_symbolic,
    kernel_dims_randomized,
    sample_functional,
)
from assocind.scalars import DEFAULT_PRIME, PrimeField

CATALOG = catalog()


@pytest.mark.parametrize("sc, expected", [
    (mat(2), 2), (two_dim(), 0), (truncated_poly(3), 3), (seaweed3(), 1),
    (upper_triangular(2), 1), (mat(3), 3),
])
def test_index_examples_both_modes(sc, expected):
    assert index_randomized(sc).index == expected
    assert index_symbolic(sc).index == expected


@pytest.mark.parametrize("sc", CATALOG, ids=lambda s: s.name)
def test_randomized_equals_symbolic_and_rank_even(sc):
    r = index_randomized(sc, trials=5, seed=0)
    s = index_symbolic(sc)
    assert r.index == s.index
    assert r.generic_rank % 2 == 0 and s.generic_rank % 2 == 0
    assert r.index == r.dim - r.generic_rank


def test_report_fields():
    r = index_randomized(mat(2), trials=3, seed=9)
    assert r.to_json() == {"dim": 4, "generic_rank": 2, "index": 2, "mode": "randomized",
                           "trials": 3, "seed": 9, "prime": DEFAULT_PRIME}


def test_deterministic_given_seed():
    sc = seaweed3()
    K = PrimeField()
    assert sample_functional(5, K, 4, 2) == sample_functional(5, K, 4, 2)
    assert sample_functional(5, K, 4, 2) != sample_functional(5, K, 4, 3)
    assert index_randomized(sc, 4, 4) == index_randomized(sc, 4, 4)


def test_more_trials_never_increase_index():
    K_small = 101  # a small prime makes degenerate draws likely
    for sc in CATALOG:
        dims = kernel_dims_randomized(sc, 12, 1, K_small)
        running = [min(dims[: t + 1]) for t in range(len(dims))]
        assert running == sorted(running, reverse=True)
        assert index_randomized(sc, 12, 1, K_small).index == running[-1]


def test_direct_sum_index_is_additive():
    for a in CATALOG[:5]:
        for b in CATALOG[:5]:
            assert (index_randomized(direct_sum(a, b)).index
                    == index_randomized(a).index + index_randomized(b).index)


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        index_randomized(mat(2), trials=0)


def test_symbolic_cap():
    with pytest.raises(ValueError, match="randomized"):
        index_symbolic(mat(4))
    assert index_symbolic(mat(3), cap=9).index == 3


def test_mat_n_randomized_up_to_five():
    assert [index_randomized(mat(n)).index for n in range(1, 6)] == [1, 2, 3, 4, 5]
    assert index_randomized(base_field()).index == 1
