"""The stabilizer ``Stab_F = {a : F(ax) = F(xa) for all x}`` and the form ``Q_F(a, b) = F(ab)``.

``Stab_F`` is the kernel of the commutator form at ``F``, so at a generic
functional its dimension is the index.  ``Q_F`` restricted to it is
non-degenerate exactly when the ``(lam + mu)``-multiplicity of the
characteristic polynomial equals the index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Functional, StructureConstants, commutator_matrix_at, mat, tensor_algebra
from .charpoly import multiplicity_profile
from .index import DEFAULT_SEED, DEFAULT_TRIALS, index_randomized, sample_functional
from .linalg import Matrix
from .report import VerificationReport
from .scalars.fields import DEFAULT_PRIME, PrimeField

#: largest ``Mat_N (x) A`` dimension the tensor index check will build
MAX_TENSOR_DIM = 256


@dataclass(frozen=True)
class StabilizerData:
    F: Functional
    basis: tuple
    gram: Matrix
    nondegenerate: bool
    closed: bool
    closure_witness: tuple | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self):
        K = self.F.domain
        return {"dim": self.dim, "nondegenerate": self.nondegenerate, "closed": self.closed,
                "basis": [[K.to_json(c) for c in v] for v in self.basis],
                "closure_witness": list(self.closure_witness) if self.closure_witness else None}


def _in_stabilizer(B: Matrix, v) -> bool:
    return all(B.domain.is_zero(c) for c in B.apply(v))


def stab_basis(sc: StructureConstants, F: Functional) -> StabilizerData:
    K = F.domain
    B = commutator_matrix_at(sc, F)
    basis = tuple(tuple(v) for v in B.kernel())
    k = len(basis)
    products = {}
    witness = None
    for i in range(k):
        for j in range(k):
            p = sc.multiply(basis[i], basis[j], K)
            products[i, j] = p
            if witness is None and not _in_stabilizer(B, p):
                witness = (i, j)
    gram = Matrix([[F(products[i, j]) for j in range(k)] for i in range(k)], K, convert=False)
    # the empty Gram matrix has determinant 1
    nondegenerate = k == 0 or not K.is_zero(gram.det())
    return StabilizerData(F, basis, gram, nondegenerate, witness is None, witness)


def _ad(sc, c, a, K):
    ca, ac = sc.multiply(c, a, K), sc.multiply(a, c, K)
    return [K.sub(x, y) for x, y in zip(ca, ac)]


def qf_property_check(sc: StructureConstants, F: Functional,
                      data: StabilizerData | None = None) -> VerificationReport:
    """Symmetry, closure, ad-invariance for ``c`` in ``Stab_F``, and unit membership."""
    K = F.domain
    data = data or stab_basis(sc, F)
    S = data.basis
    details = {"algebra": sc.name, "stab_dim": data.dim}
    symmetric = data.gram.is_symmetric()
    bad_ad = None
    for c in S:
        ad_c = [_ad(sc, c, a, K) for a in S]
        for ia, a in enumerate(S):
            for ib, b in enumerate(S):
                lhs = F(sc.multiply(ad_c[ia], b, K))
                rhs = K.neg(F(sc.multiply(a, ad_c[ib], K)))
                if lhs != rhs:
                    bad_ad = (S.index(c), ia, ib)
                    break
            if bad_ad:
                break
        if bad_ad:
            break
    unit_ok = True
    if sc.unit is not None:
        unit_ok = _in_stabilizer(commutator_matrix_at(sc, F), [K.convert(c) for c in sc.unit])
    details.update(symmetric=symmetric, closed=data.closed, ad_invariant=bad_ad is None,
                   unit_in_stabilizer=unit_ok if sc.unit is not None else None)
    passed = symmetric and data.closed and bad_ad is None and unit_ok
    if not passed:
        details["F"] = F.to_json()
        details["closure_witness"] = data.closure_witness
        details["ad_witness"] = bad_ad
    return VerificationReport("thm.qf-properties", passed, details)


@dataclass(frozen=True)
class AgreementRecord:
    """``agree`` is ``N_sum == index``; ``consistent`` is ``agree == q_nondegenerate``."""

    N_sum: float | int
    index: int
    q_nondegenerate: bool
    agree: bool
    consistent: bool
    stab_dim: int

    def to_json(self):
        return {"N_sum": self.N_sum, "index": self.index, "q_nondegenerate": self.q_nondegenerate,
                "agree": self.agree, "consistent": self.consistent, "stab_dim": self.stab_dim}


def generic_stabilizer(sc: StructureConstants, index: int, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                       prime=DEFAULT_PRIME) -> StabilizerData:
    """Stabilizer at the first sampled functional whose stabilizer has dimension ``index``."""
    K = PrimeField(prime)
    for t in range(trials):
        data = stab_basis(sc, sample_functional(sc.dim, K, seed, t))
        if data.dim == index:
            return data
    raise ArithmeticError("no sampled functional reached the generic stabilizer dimension")


def index_charpoly_agreement(sc: StructureConstants, seed=DEFAULT_SEED, trials=DEFAULT_TRIALS,
                             prime=DEFAULT_PRIME) -> AgreementRecord:
    profile = multiplicity_profile(sc, trials, seed, prime)
    index = index_randomized(sc, trials, seed, prime).index
    data = generic_stabilizer(sc, index, trials, seed, prime)
    agree = profile.m_sum == index
    return AgreementRecord(profile.m_sum, index, data.nondegenerate, agree,
                           agree == data.nondegenerate, data.dim)


def agreement_check(sc: StructureConstants, **kw) -> VerificationReport:
    rec = index_charpoly_agreement(sc, **kw)
    return VerificationReport("thm.qf-criterion", rec.consistent,
                              {"algebra": sc.name, **rec.to_json()})


def matN_tensor_index_check(sc: StructureConstants, N: int, seed=DEFAULT_SEED,
                            trials=DEFAULT_TRIALS, prime=DEFAULT_PRIME) -> VerificationReport:
    """``ind(Mat_N (x) A) == N * ind A`` when the ``(lam + mu)``-multiplicity of A is its index."""
    tag = "thm.matN-tensor-index"
    if N < 1:
        raise ValueError("N must be positive")
    if N * N * sc.dim > MAX_TENSOR_DIM:
        raise ValueError(f"Mat_{N} (x) {sc.name} has dimension {N * N * sc.dim} "
                         f"above the budget {MAX_TENSOR_DIM}")
    rec = index_charpoly_agreement(sc, seed, trials, prime)
    details = {"algebra": sc.name, "N": N, "N_sum": rec.N_sum, "index_a": rec.index}
    if not rec.agree:
        details["reason"] = "(lam+mu)-multiplicity differs from the index"
        return VerificationReport(tag, False, details, applicable=False)
    ind = index_randomized(tensor_algebra(mat(N), sc), trials, seed, prime).index
    details.update(index_tensor=ind, expected=N * rec.index)
    return VerificationReport(tag, ind == N * rec.index, details)


__all__ = [
    "StabilizerData", "stab_basis", "qf_property_check", "AgreementRecord", "generic_stabilizer",
    "index_charpoly_agreement", "agreement_check", "matN_tensor_index_check", "MAX_TENSOR_DIM",
]
