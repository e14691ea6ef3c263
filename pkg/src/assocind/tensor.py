"""Kronecker products and the index inequalities for tensor products of algebras."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .algebra import (
    Functional,
    StructureConstants,
    commutator_matrix_at,
    mult_matrix_at,
    tensor_algebra,
    two_dim,
)
from .index import DEFAULT_SEED, DEFAULT_TRIALS, index_randomized, sample_functional, trial_rng
from .linalg import Matrix, ShapeError, kronecker
from .report import VerificationReport
from .scalars.fields import DEFAULT_PRIME, PrimeField

__all__ = [
    "kronecker", "KroneckerCheckRecord", "det_tensor_identity_check", "kernel_sum_dim",
    "commutator_decomposition_check", "convexity_check",
    "two_dim_tensor_check", "two_dim_tensor_rank_one_check", "generic_kernel_dim_of_table", "kernel_theorem_experiment",
    "random_matrix", "random_rank_deficient",
]


@dataclass(frozen=True)
class KroneckerCheckRecord:
    """``achieved = dim ker(B1 (x) A2 + A1 (x) B2)`` against ``bound = dim ker B1 * dim ker B2``."""

    size: int
    dim_ker_b1: int
    dim_ker_b2: int
    bound: int
    achieved: int
    equality: bool

    def to_json(self):
        return asdict(self)


def random_matrix(nrows, ncols, K: PrimeField, rng) -> Matrix:
    return Matrix([[K.random_element(rng) for _ in range(ncols)] for _ in range(nrows)], K,
                  convert=False)


def random_rank_deficient(n, rank, K: PrimeField, rng) -> Matrix:
    """``n x n`` product of ``n x rank`` and ``rank x n`` random factors (rank <= ``rank``)."""
    if rank == 0:
        return Matrix.zeros(n, n, K)
    return random_matrix(n, rank, K, rng) @ random_matrix(rank, n, K, rng)


def det_tensor_identity_check(A: Matrix, B: Matrix) -> VerificationReport:
    """``det(A (x) B) == det(A)^n * det(B)^k`` for ``A`` of size ``k`` and ``B`` of size ``n``."""
    if not (A.is_square() and B.is_square()):
        raise ShapeError("det identity needs square matrices")
    K = A.domain
    k, n = A.nrows, B.nrows
    lhs = kronecker(A, B).det()
    rhs = K.mul(K.pow(A.det(), n), K.pow(B.det(), k))
    return VerificationReport("thm.det-kron", lhs == rhs,
                              {"k": k, "n": n, "lhs": K.to_json(lhs), "rhs": K.to_json(rhs)})


def kernel_sum_dim(B1: Matrix, A2: Matrix, A1: Matrix, B2: Matrix) -> KroneckerCheckRecord:
    if B1.shape != A1.shape or A2.shape != B2.shape:
        raise ShapeError("kernel_sum_dim: B1/A1 and A2/B2 must have matching shapes")
    if not (B1.is_square() and B2.is_square()):
        raise ShapeError("kernel_sum_dim needs square matrices")
    M = kronecker(B1, A2) + kronecker(A1, B2)
    kb1 = B1.ncols - B1.rank()
    kb2 = B2.ncols - B2.rank()
    achieved = M.ncols - M.rank()
    bound = kb1 * kb2
    return KroneckerCheckRecord(size=M.ncols, dim_ker_b1=kb1, dim_ker_b2=kb2, bound=bound,
                                achieved=achieved, equality=achieved == bound)


def commutator_decomposition_check(sc1: StructureConstants, sc2: StructureConstants,
                                   f: Functional, g: Functional,
                                   prod: StructureConstants | None = None) -> VerificationReport:
    """Bracket form of ``A (x) B`` at ``f (x) g`` equals ``B1 (x) A2 + A1^T (x) B2``.

    ``prod`` may carry a prebuilt ``tensor_algebra(sc1, sc2)``.
    """
    if f.domain != g.domain:
        raise ValueError("f and g must share a domain")
    prod = prod if prod is not None else tensor_algebra(sc1, sc2)
    lhs = commutator_matrix_at(prod, Functional.rank_one(f, g))
    A1, A2 = mult_matrix_at(sc1, f), mult_matrix_at(sc2, g)
    B1, B2 = A1 - A1.T, A2 - A2.T
    rhs = kronecker(B1, A2) + kronecker(A1.T, B2)
    details = {"algebras": [sc1.name, sc2.name]}
    ok = lhs == rhs
    if not ok:
        details["f"] = f.to_json()
        details["g"] = g.to_json()
        bad = next((i, j) for i in range(lhs.nrows) for j in range(lhs.ncols)
                   if lhs[i, j] != rhs[i, j])
        details["first_mismatch"] = list(bad)
    return VerificationReport("thm.commutator-decomposition", ok, details)


def convexity_check(sc1: StructureConstants, sc2: StructureConstants, seed: int = DEFAULT_SEED,
                    trials: int = DEFAULT_TRIALS, prime: int = DEFAULT_PRIME) -> VerificationReport:
    """``ind(A (x) B) >= ind A * ind B`` with all three indices randomized."""
    i1 = index_randomized(sc1, trials, seed, prime).index
    i2 = index_randomized(sc2, trials, seed, prime).index
    i12 = index_randomized(tensor_algebra(sc1, sc2), trials, seed, prime).index
    bound = i1 * i2
    return VerificationReport("thm.convexity", i12 >= bound,
                              {"algebras": [sc1.name, sc2.name], "index_a": i1, "index_b": i2,
                               "index_tensor": i12, "bound": bound, "slack": i12 - bound})


def generic_kernel_dim_of_table(sc: StructureConstants, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                                prime=DEFAULT_PRIME) -> int:
    """Minimum over seeded functionals of ``dim ker A(F)``."""
    K = PrimeField(prime)
    return min(sc.dim - mult_matrix_at(sc, sample_functional(sc.dim, K, seed, t)).rank()
               for t in range(trials))


def two_dim_tensor_check(sc: StructureConstants, seed=DEFAULT_SEED, trials=DEFAULT_TRIALS,
                         prime=DEFAULT_PRIME) -> VerificationReport:
    """``ind(two_dim (x) B) == 2 * dim ker`` of B's table at a generic point."""
    kd = generic_kernel_dim_of_table(sc, trials, seed, prime)
    prod = tensor_algebra(two_dim(), sc)
    ind = index_randomized(prod, trials, seed, prime).index
    details = {"algebra": sc.name, "index_tensor": ind, "generic_kernel_dim": kd}
    if ind != 2 * kd:
        K = PrimeField(prime)
        F = sample_functional(prod.dim, K, seed, 0)
        details["F"] = F.to_json()
        details["kernel_dim_at_F"] = prod.dim - commutator_matrix_at(prod, F).rank()
    return VerificationReport("ex.two-dim-tensor", ind == 2 * kd, details)


def two_dim_tensor_rank_one_check(sc: StructureConstants, seed=DEFAULT_SEED, trials=DEFAULT_TRIALS,
                                  prime=DEFAULT_PRIME) -> VerificationReport:
    """At ``F = (a, b) (x) g`` the bracket kernel of ``two_dim (x) B`` has dimension ``2 dim ker A(g)``.

    Rank-one functionals are not generic, so this is weaker than a statement
    about the index of the product.
    """
    K = PrimeField(prime)
    prod = tensor_algebra(two_dim(), sc)
    dims = []
    ok = True
    for t in range(trials):
        f = sample_functional(2, K, seed, 2 * t)
        g = sample_functional(sc.dim, K, seed, 2 * t + 1)
        kg = sc.dim - mult_matrix_at(sc, g).rank()
        kb = prod.dim - commutator_matrix_at(prod, Functional.rank_one(f, g)).rank()
        dims.append([kb, kg])
        if ok and kb != 2 * kg:
            ok = False
            witness = {"f": f.to_json(), "g": g.to_json()}
    details = {"algebra": sc.name, "kernel_dims": dims}
    if not ok:
        details["witness"] = witness
    return VerificationReport("ex.two-dim-tensor-rank-one", ok, details)


def kernel_theorem_experiment(count: int = 100, seed: int = DEFAULT_SEED,
                              prime: int = DEFAULT_PRIME, max_size: int = 4):
    """Seeded quadruples: rank-deficient ``B1, B2``, uniform ``A1, A2``."""
    K = PrimeField(prime)
    records = []
    for t in range(count):
        rng = trial_rng(seed, 1_000_000 + t)
        n1 = int(rng.integers(1, max_size + 1))
        n2 = int(rng.integers(1, max_size + 1))
        r1 = int(rng.integers(0, n1))
        r2 = int(rng.integers(0, n2))
        B1 = random_rank_deficient(n1, r1, K, rng)
        B2 = random_rank_deficient(n2, r2, K, rng)
        A1 = random_matrix(n1, n1, K, rng)
        A2 = random_matrix(n2, n2, K, rng)
        records.append(kernel_sum_dim(B1, A2, A1, B2))
    return records

