from fractions import Fraction

import numpy as np
import pytest
import sympy

from assocind.algebra import (
    AlgebraError,
    Functional,
    StructureConstants,
    base_field,
    catalog,
    mat,
    seaweed3,
    tensor_algebra,
    two_dim,
    upper_triangular,
)
from assocind.charpoly import (
    IllConditioned,
    adjoint_operator,
    basis_change_check,
    charpoly_at,
    charpoly_symbolic,
    coadjoint_apply,
    ext_cayley_check,
    ext_cayley_experiment,
    ext_cayley_residual,
    generalized_resultant,
    invert_element,
    matn_charpoly_reference,
    matn_functional,
    multiplicity_profile,
    quasi_invariance_check,
)
from assocind.index import sample_functional, trial_rng
from assocind.linalg import Matrix
from assocind.scalars import INFINITE, QQ, DomainError, PrimeField

from oracles import LAM, MU, bipoly_to_sympy, nonzero_rational_ratio, pencil_det_sympy

K = PrimeField()
CATALOG = catalog()


def symbols_for(sc):
    return sympy.symbols([f"f_{lab}" for lab in sc.labels])


# -- symbolic characteristic polynomials ---------------------------------------------


def test_two_dim_symbolic():
    a, b = symbols_for(two_dim())
    got = bipoly_to_sympy(charpoly_symbolic(two_dim()), (a, b))
    assert sympy.expand(got + LAM * MU * (a - b) ** 2) == 0


def test_seaweed3_symbolic_matches_published_formula():
    a, b, c, d, e = symbols_for(seaweed3())
    got = bipoly_to_sympy(charpoly_symbolic(seaweed3()), (a, b, c, d, e))
    expected = LAM**2 * MU**2 * (LAM + MU) * b**2 * d**2 * (a + c + e)
    assert nonzero_rational_ratio(got, expected) is not None


def test_gl2_symbolic_matches_published_formula():
    a, b, c, d = symbols_for(mat(2))  # E11, E12, E21, E22
    got = bipoly_to_sympy(charpoly_symbolic(mat(2)), (a, b, c, d))
    det = a * d - b * c
    expected = -(LAM + MU) ** 2 * det * ((LAM - MU) ** 2 * det + LAM * MU * (a + d) ** 2)
    assert nonzero_rational_ratio(got, expected) is not None


def test_field_symbolic():
    (f,) = symbols_for(base_field())
    assert bipoly_to_sympy(charpoly_symbolic(base_field()), (f,)) == sympy.expand((LAM + MU) * f)


def test_symbolic_cap():
    with pytest.raises(ValueError):
        charpoly_symbolic(mat(3))


# -- evaluated characteristic polynomials ----------------------------------------------


def test_mat2_at_diag():
    P = charpoly_at(mat(2), Functional.of([1, 0, 0, 2]))
    expected = -2 * (LAM + MU) ** 2 * (LAM + 2 * MU) * (2 * LAM + MU)
    assert sympy.expand(bipoly_to_sympy(P) - expected) == 0


@pytest.mark.parametrize("sc", [s for s in CATALOG if s.dim <= 6], ids=lambda s: s.name)
def test_charpoly_at_matches_sympy_determinant(sc):
    rng = np.random.default_rng(sc.dim)
    coords = [Fraction(int(x)) for x in rng.integers(-4, 5, size=sc.dim)]
    F = Functional.of(coords)
    A = [[F(sc.multiply(sc.basis_vector(i), sc.basis_vector(j))) for j in range(sc.dim)]
         for i in range(sc.dim)]
    assert sympy.expand(bipoly_to_sympy(charpoly_at(sc, F)) - pencil_det_sympy(A)) == 0


@pytest.mark.parametrize("sc", CATALOG, ids=lambda s: s.name)
def test_charpoly_is_homogeneous_of_dim(sc):
    for t in range(3):
        P = charpoly_at(sc, sample_functional(sc.dim, K, 0, t))
        assert P.is_zero() or P.is_homogeneous(sc.dim)


def test_basis_change_scales_by_det_squared():
    rng = trial_rng(0, 77)
    for sc in (mat(2), seaweed3(), upper_triangular(2), two_dim()):
        for _ in range(5):
            F = Functional.random(sc.dim, K, rng)
            C = Matrix([[K.random_element(rng) for _ in range(sc.dim)] for _ in range(sc.dim)], K)
            r = basis_change_check(sc, F, C)
            assert r.passed, sc.name
            assert r.details["scalar"] == r.details["det_C_squared"]


# -- multiplicities --------------------------------------------------------------------


def test_profile_examples():
    assert multiplicity_profile(mat(2)).as_tuple() == (0, 0, 2)
    assert multiplicity_profile(seaweed3()).as_tuple() == (2, 2, 1)


def test_profile_of_zero_product_is_infinite():
    zero = StructureConstants([[[0, 0], [0, 0]], [[0, 0], [0, 0]]], name="zero2")
    assert multiplicity_profile(zero).as_tuple() == (INFINITE,) * 3


@pytest.mark.parametrize("sc", CATALOG, ids=lambda s: s.name)
def test_profile_invariants(sc):
    p = multiplicity_profile(sc)
    assert p.m_lambda == p.m_mu
    assert p.m_lambda == p.dim_ker_A_generic
    assert p.m_sum >= p.index


SEAWEED_SQUARE = tensor_algebra(seaweed3(), seaweed3())


def test_seaweed_square_charpoly_vanishes_at_rank_one_functionals():
    for t in range(20):
        F = Functional.rank_one(sample_functional(5, K, 3, 2 * t), sample_functional(5, K, 3, 2 * t + 1))
        assert charpoly_at(SEAWEED_SQUARE, F).is_zero()


def test_seaweed_square_charpoly_generic_is_not_null():
    # the Kronecker-pencil argument covers rank-one F only
    assert multiplicity_profile(SEAWEED_SQUARE, trials=2).as_tuple() == (12, 12, 1)
    coords = [Fraction(int(x)) for x in np.random.default_rng(5).integers(1, 20, size=25)]
    A = [[coords_dot(SEAWEED_SQUARE, coords, i, j) for j in range(25)] for i in range(25)]
    At = sympy.Matrix(A).T
    assert (sympy.Matrix(A) + 2 * At).det() != 0
    assert not charpoly_at(SEAWEED_SQUARE, Functional.of(coords)).is_zero()


def coords_dot(sc, coords, i, j):
    return sum(c * x for c, x in zip(sc.table[i][j], coords))


def test_profile_requires_trials():
    with pytest.raises(ValueError):
        multiplicity_profile(mat(2), trials=0)


# -- coadjoint action -------------------------------------------------------------------


def test_coadjoint_swap_on_mat2():
    F = Functional.of([1, 0, 0, 2])
    swapped = coadjoint_apply(mat(2), [0, 1, 1, 0], F)
    assert swapped.coords == (2, 0, 0, 1)


def test_coadjoint_by_unit_is_identity():
    for sc in (mat(2), upper_triangular(3), seaweed3()):
        F = sample_functional(sc.dim, K, 0, 0)
        assert coadjoint_apply(sc, sc.unit, F) == F


def test_coadjoint_diag_on_upper_triangular():
    sc = upper_triangular(2)  # E11, E12, E22
    rng = trial_rng(5, 0)
    for _ in range(5):
        s, t = (K.random_element(rng) or 1 for _ in range(2))
        F = sample_functional(3, K, 5, 1)
        G = coadjoint_apply(sc, [s, 0, t], F)
        assert G.coords[0] == F.coords[0] and G.coords[2] == F.coords[2]
        assert G.coords[1] == K.mul(F.coords[1], K.div(t, s))


def test_adjoint_determinants():
    sc = upper_triangular(2)
    ad = adjoint_operator(sc, [3, 0, 5], QQ)
    assert ad.det == Fraction(3, 5)
    g = [2, 1, 7, 3]
    assert adjoint_operator(mat(2), g, QQ).det == 1
    ginv = invert_element(mat(2), g, QQ)
    back = adjoint_operator(mat(2), ginv, QQ).matrix @ adjoint_operator(mat(2), g, QQ).matrix
    assert back == Matrix.identity(4, QQ)


def test_quasi_invariance_examples():
    sc = upper_triangular(2)
    F = Functional.of([2, 3, 7])
    r = quasi_invariance_check(sc, [3, 0, 5], F)
    assert r.passed and r.details["det_ad"] == "3/5"
    F = sample_functional(4, K, 0, 0)
    assert quasi_invariance_check(mat(2), [1, 0, 0, 1], F).passed


def test_coadjoint_errors():
    with pytest.raises(AlgebraError, match="invertible"):
        coadjoint_apply(mat(2), [1, 0, 0, 0], Functional.of([1, 0, 0, 1]))
    with pytest.raises(AlgebraError, match="unit"):
        coadjoint_apply(two_dim(), [1, 0], Functional.of([1, 1]))


# -- generalized resultant and the Mat_n formula -----------------------------------------


def test_generalized_resultant_examples():
    assert generalized_resultant([2, -3, 1], 1, 1) == 72
    assert generalized_resultant([-5, 1], 2, 3) == 25
    assert generalized_resultant([1, 0, 1], 1, 1) == 0


def test_generalized_resultant_on_axes():
    # roots 1, 2: lam = 0 gives prod mu alpha_j = mu^4 (1*2)^2
    assert generalized_resultant([2, -3, 1], 0, 3) == 3**4 * 4
    assert generalized_resultant([2, -3, 1], 3, 0) == 3**4 * 4


def test_generalized_resultant_matches_root_product():
    rng = np.random.default_rng(3)
    for _ in range(15):
        roots = [Fraction(int(x)) for x in rng.integers(-5, 6, size=int(rng.integers(1, 5)))]
        x = sympy.Symbol("x")
        p = sympy.Poly(sympy.prod([x - r for r in roots]), x).all_coeffs()[::-1]
        lam, mu = (Fraction(int(v)) for v in rng.integers(-4, 5, size=2))
        if lam == mu == 0:
            continue
        expected = sympy.prod([lam * a + mu * b for a in roots for b in roots])
        assert generalized_resultant([Fraction(int(c)) for c in p], lam, mu) == expected


def test_generalized_resultant_errors():
    with pytest.raises(DomainError, match="monic"):
        generalized_resultant([1, 2], 1, 1)
    with pytest.raises(DomainError, match="both zero"):
        generalized_resultant([1, 1], 0, 0)


def test_matn_reference_examples():
    P = matn_charpoly_reference(2, [[1, 0], [0, 2]])
    assert sympy.expand(bipoly_to_sympy(P) + 2 * (LAM + MU) ** 2 * (LAM + 2 * MU) * (2 * LAM + MU)) == 0
    assert matn_charpoly_reference(2, [[0, 1], [0, 0]]).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_matn_reference_matches_product_formula_on_diagonal(n):
    alphas = [2, -1, 5][:n]
    expected = (-1) ** (n * (n - 1) // 2) * sympy.prod(alphas) * (LAM + MU) ** n * sympy.prod(
        [LAM * alphas[i] + MU * alphas[j] for i in range(n) for j in range(n) if i != j])
    F = [[alphas[i] if i == j else 0 for j in range(n)] for i in range(n)]
    assert sympy.expand(bipoly_to_sympy(matn_charpoly_reference(n, F)) - expected) == 0
    assert sympy.expand(bipoly_to_sympy(charpoly_at(mat(n), matn_functional(F))) - expected) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_matn_reference_equals_charpoly_at(n):
    sc = mat(n)
    for t in range(5):
        F = sample_functional(n * n, K, 1, t)
        Fmat = [list(F.coords[i * n:(i + 1) * n]) for i in range(n)]
        assert charpoly_at(sc, F) == matn_charpoly_reference(n, Fmat, K)


# -- extended Cayley (floating point) -----------------------------------------------------


def test_ext_cayley_diagonal_closed_form():
    A, C = np.eye(2), np.eye(3)
    B, D = np.diag([2.0, -1.0]), np.diag([0.5, 3.0, 1.0])
    assert ext_cayley_residual(A, B, C, D) < 1e-14


@pytest.mark.parametrize("size", [2, 3])
def test_ext_cayley_random(size):
    rng = np.random.default_rng([0, size])
    for _ in range(5):
        mats = [rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
                for _ in range(4)]
        assert ext_cayley_check(*mats).passed


def test_ext_cayley_rejects_singular_a():
    with pytest.raises(IllConditioned):
        ext_cayley_residual(np.zeros((2, 2)), np.eye(2), np.eye(2), np.eye(2))


def test_ext_cayley_experiment_deterministic():
    a = [r.details["residual"] for r in ext_cayley_experiment(5, seed=3)]
    b = [r.details["residual"] for r in ext_cayley_experiment(5, seed=3)]
    assert a == b
