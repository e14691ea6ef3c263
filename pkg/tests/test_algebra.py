from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from assocind.algebra import (
    CATALOG_SPECS,
    AlgebraError,
    AssociativityError,
    Functional,
    NotClosedError,
    StructureConstants,
    UnknownBuilderError,
    build_named,
    catalog,
    check_associative,
    commutator_matrix_at,
    direct_sum,
    find_unit,
    from_matrix_basis,
    mat,
    mult_matrix_at,
    seaweed3,
    tensor_algebra,
    truncated_poly,
    two_dim,
    validate_associativity,
)
from assocind.index import sample_functional
from assocind.linalg import kronecker
from assocind.scalars import PrimeField

from oracles import mult_table_oracle

K = PrimeField()
CATALOG = catalog()


def product_letter(sc, i, j):
    """The basis label of ``e_i e_j`` when it is a single basis element, ``0`` if zero."""
    vec = sc.table[i][j]
    nz = [k for k, c in enumerate(vec) if c]
    if not nz:
        return "0"
    assert len(nz) == 1 and vec[nz[0]] == 1
    return sc.labels[nz[0]]


def assert_table(sc, rows):
    got = [[product_letter(sc, i, j) for j in range(sc.dim)] for i in range(sc.dim)]
    assert got == [r.split() for r in rows]


def test_seaweed3_table():
    assert_table(seaweed3(), ["a b 0 0 0",
                              "0 0 b 0 0",
                              "0 0 c 0 0",
                              "0 0 d 0 0",
                              "0 0 0 d e"])


def test_mat2_table():
    assert_table(mat(2), ["E11 E12 0 0",
                          "0 0 E11 E12",
                          "E21 E22 0 0",
                          "0 0 E21 E22"])


def test_two_dim_table():
    assert_table(two_dim(), ["a b", "a b"])


def test_truncated_poly_products():
    sc = truncated_poly(3)
    assert_table(sc, ["1 x x2", "x x2 0", "x2 0 0"])


def test_catalog_is_associative_and_units_correct():
    assert len(CATALOG) == len(CATALOG_SPECS) == 11
    for sc in CATALOG:
        assert validate_associativity(sc) is None, sc.name
        u = find_unit(sc)
        assert (u is None) == (sc.unit is None), sc.name
        if u is not None:
            assert tuple(u) == sc.unit


def test_associativity_oracle_brute_force():
    # sum_m c[i][j][m] c[m][k][l] == sum_m c[j][k][m] c[i][m][l]
    for sc in CATALOG[:8]:
        n, c = sc.dim, sc.table
        for i, j, k, l in product(range(n), repeat=4):
            assert (sum(c[i][j][m] * c[m][k][l] for m in range(n))
                    == sum(c[j][k][m] * c[i][m][l] for m in range(n)))


def test_perturbed_two_dim_violation_witness():
    table = [[list(v) for v in row] for row in two_dim().table]
    table[0][1][1] = Fraction(2)
    v = validate_associativity(StructureConstants(table))
    assert (v.i, v.j, v.k) == (0, 0, 1)
    assert v.lhs != v.rhs
    with pytest.raises(AssociativityError):
        check_associative(StructureConstants(table))


def test_find_unit_examples():
    assert find_unit(mat(2)) == (1, 0, 0, 1)
    assert find_unit(two_dim()) is None
    assert find_unit(truncated_poly(3)) == (1, 0, 0)


def test_declared_wrong_unit_rejected():
    with pytest.raises(AlgebraError):
        check_associative(StructureConstants(two_dim().table, unit=[1, 0]))


def test_mult_matrix_two_dim_symbolic():
    sc = two_dim()
    F = Functional.symbolic(sc)
    a, b = F.coords
    assert mult_matrix_at(sc, F).tolist() == [[a, b], [a, b]]
    assert commutator_matrix_at(sc, F).tolist() == [[0, b - a], [a - b, 0]]


def test_mult_matrix_mat2_diag():
    F = Functional.of([1, 0, 0, 2])
    A = mult_matrix_at(mat(2), F)
    # E12 E21 = E11, E21 E12 = E22
    assert A.tolist() == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 2, 0, 0], [0, 0, 0, 2]]
    B = commutator_matrix_at(mat(2), F)
    assert B.rank() == 2 and B.is_skew_symmetric()


def test_mult_matrix_against_dense_oracle():
    rng = np.random.default_rng(2)
    for sc in CATALOG:
        coords = [Fraction(int(x)) for x in rng.integers(-9, 10, size=sc.dim)]
        assert mult_matrix_at(sc, Functional.of(coords)).tolist() == mult_table_oracle(sc, coords)


def test_mult_matrix_at_zero_functional():
    for sc in CATALOG:
        assert mult_matrix_at(sc, Functional.zero(sc.dim)).is_zero()


def test_dimension_mismatch():
    with pytest.raises(AlgebraError):
        mult_matrix_at(mat(2), Functional.zero(3))


@pytest.mark.parametrize("sc", CATALOG, ids=lambda s: s.name)
def test_mult_matrix_linear_and_commutator_skew(sc):
    for t in range(3):
        F1 = sample_functional(sc.dim, K, 7, 2 * t)
        F2 = sample_functional(sc.dim, K, 7, 2 * t + 1)
        assert mult_matrix_at(sc, F1 + F2) == mult_matrix_at(sc, F1) + mult_matrix_at(sc, F2)
        assert commutator_matrix_at(sc, F1).is_skew_symmetric()


def test_commutative_algebra_commutator_vanishes():
    sc = truncated_poly(4)
    assert commutator_matrix_at(sc, sample_functional(4, K, 0, 0)).is_zero()


def test_tensor_basics():
    assert tensor_algebra(two_dim(), seaweed3()).dim == 10
    u = tensor_algebra(mat(2), mat(2)).unit
    I2 = [1, 0, 0, 1]
    assert list(u) == [a * b for a in I2 for b in I2]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CATALOG[:8]), st.sampled_from(CATALOG[:8]))
def test_tensor_of_catalog_pair_associative(a, b):
    if a.dim * b.dim > 36:
        return
    assert validate_associativity(tensor_algebra(a, b)) is None


@pytest.mark.parametrize("pair", [(0, 1), (1, 2), (4, 1), (6, 7), (2, 9)])
def test_tensor_mult_matrix_at_rank_one_is_kronecker(pair):
    a, b = CATALOG[pair[0]], CATALOG[pair[1]]
    f, g = sample_functional(a.dim, K, 3, 0), sample_functional(b.dim, K, 3, 1)
    lhs = mult_matrix_at(tensor_algebra(a, b), Functional.rank_one(f, g))
    assert lhs == kronecker(mult_matrix_at(a, f), mult_matrix_at(b, g))


def test_from_matrix_basis_mat2_matches_builder():
    units = [[[int((r, c) == (i, j)) for c in range(2)] for r in range(2)]
             for i in range(2) for j in range(2)]
    assert from_matrix_basis(units) == mat(2)


def test_from_matrix_basis_not_closed():
    E11, E12, E21 = ([[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]])
    with pytest.raises(NotClosedError):
        from_matrix_basis([E11, E12, E21])


def test_from_matrix_basis_dependent():
    with pytest.raises(AlgebraError, match="dependent"):
        from_matrix_basis([[[1, 0], [0, 0]], [[2, 0], [0, 0]]])


def test_seaweed3_has_unit_a_plus_c_plus_e():
    assert seaweed3().unit == (1, 0, 1, 0, 1)


def test_build_named_errors_and_nesting():
    with pytest.raises(UnknownBuilderError):
        build_named("nope")
    with pytest.raises(AlgebraError):
        build_named({"builder": "mat"})
    sc = build_named({"builder": "tensor", "a": {"builder": "two_dim"},
                      "b": {"builder": "mat", "n": 2}})
    assert sc.dim == 8
    ds = build_named({"builder": "direct_sum", "a": {"builder": "field"},
                      "b": {"builder": "two_dim"}})
    assert ds == direct_sum(build_named("field"), two_dim())


def test_structure_constants_json_round_trip():
    sc = StructureConstants([[["2/3"]]], name="scaled")
    doc = sc.to_json()
    assert doc["table"] == [[["2/3"]]]
    assert StructureConstants(doc["table"]) == sc

