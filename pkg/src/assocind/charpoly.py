"""The bivariate characteristic polynomial ``det(lam*A + mu*A^T)`` of an algebra.

``A`` is the multiplication table evaluated at a functional ``F``.  Over a
scalar field the determinant is evaluated at ``dim + 1`` points and
interpolated (the degree is known); the fully symbolic variant eliminates
over ``QQ[f..., lam, mu]`` directly.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .algebra import (
    AlgebraError,
    Functional,
    StructureConstants,
    commutator_matrix_at,
    mult_matrix_at,
)
from .index import DEFAULT_SEED, DEFAULT_TRIALS, sample_functional
from .linalg import Matrix, determinant, solve
from .report import VerificationReport
from .scalars.bipoly import (
    INFINITE,
    BiPoly,
    bipoly_equal_up_to_scalar,
    interpolate_homogeneous,
    linear_form_multiplicity,
)
from .scalars.fields import DEFAULT_PRIME, QQ, DomainError, PrimeField
from .scalars.multipoly import PolyRing
from .scalars.univariate import char_poly, resultant, trim

SYMBOLIC_CHARPOLY_CAP = 6


def _scalar_field(K):
    return QQ if isinstance(K, PolyRing) else K


def pencil_det(A: Matrix, B: Matrix) -> BiPoly:
    """``det(lam*A + mu*B)`` as a homogeneous BiPoly of degree ``n`` (or zero)."""
    if A.shape != B.shape or not A.is_square():
        raise ValueError("pencil_det needs two square matrices of one shape")
    K = A.domain
    field = _scalar_field(K)
    n = A.nrows

    def at(lam, mu):
        l, m = K.convert(lam), K.convert(mu)
        rows = [[K.add(K.mul(l, a), K.mul(m, b)) for a, b in zip(ra, rb)]
                for ra, rb in zip(A.rows, B.rows)]
        return determinant(rows, K)

    P = interpolate_homogeneous(at, n, K, field)
    # one point off the interpolation set
    t = field.convert(n + 1)
    if P.evaluate(K.convert(field.one), K.convert(t)) != at(field.one, t):
        raise ArithmeticError("pencil determinant failed the off-grid consistency check")
    return P


def charpoly_at(sc: StructureConstants, F: Functional) -> BiPoly:
    """``chi(lam, mu, F)``; coefficients live in ``F``'s domain."""
    A = mult_matrix_at(sc, F)
    P = pencil_det(A, A.T)
    if not P.is_homogeneous(sc.dim):
        raise ArithmeticError("characteristic polynomial is not homogeneous of degree dim")
    return P


def charpoly_symbolic(sc: StructureConstants, cap: int = SYMBOLIC_CHARPOLY_CAP) -> BiPoly:
    """``chi`` with indeterminate ``F``: a BiPoly with coefficients in ``QQ[f...]``."""
    if sc.dim > cap:
        raise ValueError(f"dimension {sc.dim} exceeds the symbolic charpoly cap {cap}")
    fnames = [f"f_{lab}" for lab in sc.labels]
    big = PolyRing(fnames + ["lam", "mu"])
    gens = big.gens()
    lam, mu = gens[-2], gens[-1]
    F = Functional(tuple(gens[:-2]), big)
    A = mult_matrix_at(sc, F)
    n = sc.dim
    rows = [[lam * A[i, j] + mu * A[j, i] for j in range(n)] for i in range(n)]
    d = determinant(rows, big)
    coeff_ring = PolyRing(fnames)
    P = BiPoly.from_multipoly(d, n, n + 1, coeff_ring)
    if not P.is_homogeneous(n):
        raise ArithmeticError("symbolic characteristic polynomial is not homogeneous")
    return P


# -- multiplicities ------------------------------------------------------------


@dataclass(frozen=True)
class MultiplicityProfile:
    """Generic multiplicities of ``lam``, ``mu`` and ``lam + mu`` in ``chi``."""

    m_lambda: float | int
    m_mu: float | int
    m_sum: float | int
    dim_ker_A_generic: int
    index: int

    def as_tuple(self):
        return (self.m_lambda, self.m_mu, self.m_sum)

    def to_json(self):
        return asdict(self)


def multiplicities(P: BiPoly):
    return (linear_form_multiplicity(P, 1, 0), linear_form_multiplicity(P, 0, 1),
            linear_form_multiplicity(P, 1, 1))


def multiplicity_profile(sc: StructureConstants, trials: int = DEFAULT_TRIALS,
                         seed: int = DEFAULT_SEED, prime: int = DEFAULT_PRIME) -> MultiplicityProfile:
    if trials < 1:
        raise ValueError("multiplicity_profile needs trials >= 1")
    K = PrimeField(prime)
    best = [INFINITE, INFINITE, INFINITE]
    kerA = index = sc.dim
    for t in range(trials):
        F = sample_functional(sc.dim, K, seed, t)
        P = charpoly_at(sc, F)
        best = [min(b, m) for b, m in zip(best, multiplicities(P))]
        A = mult_matrix_at(sc, F)
        kerA = min(kerA, sc.dim - A.rank())
        index = min(index, sc.dim - (A - A.T).rank())
    return MultiplicityProfile(*best, dim_ker_A_generic=kerA, index=index)


# -- coadjoint action ----------------------------------------------------------


@dataclass(frozen=True)
class AdjointOperator:
    """Matrix of ``Y -> g Y g^-1`` in the algebra basis."""

    matrix: Matrix
    det: object


def _unit_in(sc: StructureConstants, K):
    if sc.unit is None:
        raise AlgebraError("coadjoint action needs an algebra with unit")
    return [K.convert(c) for c in sc.unit]


def invert_element(sc: StructureConstants, g: Sequence, K=QQ) -> list:
    """``g^-1`` from ``L_g x = 1``; raises if ``g`` is not invertible."""
    unit = _unit_in(sc, K)
    g = [K.convert(c) for c in g]
    L = sc.left_mult_matrix(g, K)
    if L.rank() < sc.dim:
        raise AlgebraError("element is not invertible")
    x = solve(L, unit)
    if sc.multiply(x, g, K) != unit:
        raise ArithmeticError("left inverse is not a right inverse")
    return x


def adjoint_operator(sc: StructureConstants, g: Sequence, K=QQ) -> AdjointOperator:
    g = [K.convert(c) for c in g]
    ginv = invert_element(sc, g, K)
    cols = [sc.multiply(sc.multiply(g, sc.basis_vector(j, K), K), ginv, K) for j in range(sc.dim)]
    M = Matrix([[cols[j][i] for j in range(sc.dim)] for i in range(sc.dim)], K, convert=False)
    return AdjointOperator(M, M.det())


def coadjoint_apply(sc: StructureConstants, g: Sequence, F: Functional) -> Functional:
    """``(coAd_g F)(Y) = F(g^-1 Y g)``."""
    K = F.domain
    g = [K.convert(c) for c in g]
    ginv = invert_element(sc, g, K)
    coords = []
    for k in range(sc.dim):
        y = sc.multiply(sc.multiply(ginv, sc.basis_vector(k, K), K), g, K)
        coords.append(F(y))
    return Functional(tuple(coords), K)


def quasi_invariance_check(sc: StructureConstants, g: Sequence, F: Functional) -> VerificationReport:
    """``chi(coAd_g F) == det(Ad_g)^-2 * chi(F)``, compared coefficientwise."""
    K = F.domain
    ad = adjoint_operator(sc, g, K)
    lhs = charpoly_at(sc, coadjoint_apply(sc, g, F))
    factor = K.inv(K.mul(ad.det, ad.det))
    rhs = charpoly_at(sc, F) * factor
    details = {"algebra": sc.name, "det_ad": K.to_json(ad.det)}
    if lhs != rhs:
        details["g"] = [K.to_json(c) for c in g]
        details["F"] = F.to_json()
    return VerificationReport("thm.quasi-invariance", lhs == rhs, details)


def basis_change_check(sc: StructureConstants, F: Functional, C: Matrix) -> VerificationReport:
    """``det(lam C A C^T + mu C A^T C^T) == det(C)^2 * chi`` for invertible ``C``."""
    K = F.domain
    A = mult_matrix_at(sc, F)
    P = pencil_det(C @ A @ C.T, C @ A.T @ C.T)
    Q = charpoly_at(sc, F)
    dc = C.det()
    ok, c = bipoly_equal_up_to_scalar(P, Q)
    expected = K.mul(dc, dc)
    passed = (ok and c == expected) or (P.is_zero() and Q.is_zero())
    return VerificationReport("lem.charpoly-scalar", passed,
                              {"algebra": sc.name, "scalar": K.to_json(c) if ok else None,
                               "det_C_squared": K.to_json(expected)})


# -- generalized resultant and Mat_n -----------------------------------------


def generalized_resultant(p: Sequence, lam, mu, K=QQ):
    """``prod_{i,j} (lam*alpha_i + mu*alpha_j)`` over the roots of monic ``p``.

    Realized as ``Res(p, s)`` with ``s(x) = (-lam)^n p(-mu x / lam)``, whose
    coefficients ``p_k (-lam)^(n-k) mu^k`` need no division, so ``lam = 0``
    is handled by the same formula.
    """
    p = trim([K.convert(c) for c in p], K)
    if not p:
        raise DomainError("generalized resultant of the zero polynomial")
    if p[-1] != K.one:
        raise DomainError("generalized resultant needs a monic polynomial")
    lam, mu = K.convert(lam), K.convert(mu)
    if K.is_zero(lam) and K.is_zero(mu):
        raise DomainError("lam and mu are both zero")
    n = len(p) - 1
    neg_lam = K.neg(lam)
    s = [K.mul(c, K.mul(K.pow(neg_lam, n - k), K.pow(mu, k))) for k, c in enumerate(p)]
    return resultant(p, s, K)


def matn_charpoly_reference(n: int, Fmat: Sequence[Sequence], K=QQ) -> BiPoly:
    """``(-1)^(n(n-1)/2) * R(lam, mu)`` for ``R`` the generalized resultant of ``det(xI - F)``.

    ``Fmat[i][j]`` is the functional's value on the matrix unit ``E_ij``.
    """
    rows = [[K.convert(x) for x in r] for r in Fmat]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("Fmat must be n x n")
    p = char_poly(rows, K)
    sign = K.one if (n * (n - 1) // 2) % 2 == 0 else K.neg(K.one)

    def at(lam, mu):
        return K.mul(sign, generalized_resultant(p, lam, mu, K))

    return interpolate_homogeneous(at, n * n, K, K)


def matn_functional(Fmat: Sequence[Sequence], K=QQ) -> Functional:
    """Row-major ``F(E_ij) = Fmat[i][j]`` for the ``mat(n)`` basis."""
    return Functional(tuple(K.convert(x) for r in Fmat for x in r), K)


# -- extended Cayley (floating point) ------------------------------------------


class IllConditioned(ValueError):
    pass


def ext_cayley_residual(A, B, C, D, lam0=0.7 + 0.3j, mu0=-0.4 + 1.1j, cond_bound=1e8) -> float:
    """Relative residual between ``det(lam A(x)C + mu B(x)D)`` and the factored form.

    The factored side is ``det(A)^m * prod_i det(lam C + mu g_i D)`` with
    ``g_i`` the eigenvalues of ``A^-1 B``; factor order is irrelevant.
    """
    A, B, C, D = (np.asarray(X, dtype=complex) for X in (A, B, C, D))
    m = C.shape[0]
    if np.linalg.cond(A) > cond_bound:
        raise IllConditioned("A is numerically singular; resample the inputs")
    lhs = np.linalg.det(lam0 * np.kron(A, C) + mu0 * np.kron(B, D))
    gammas = np.linalg.eigvals(np.linalg.solve(A, B))
    rhs = np.linalg.det(A) ** m
    for g in gammas:
        rhs *= np.linalg.det(lam0 * C + mu0 * g * D)
    scale = max(abs(lhs), abs(rhs), np.finfo(float).tiny)
    return float(abs(lhs - rhs) / scale)


def ext_cayley_check(A, B, C, D, tol=1e-8, **kw) -> VerificationReport:
    r = ext_cayley_residual(A, B, C, D, **kw)
    return VerificationReport("thm.ext-cayley", r < tol, {"residual": r, "tolerance": tol,
                                                          "n": len(A), "m": len(C)})


def random_complex_matrix(n, rng) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def ext_cayley_experiment(count=50, seed=DEFAULT_SEED, max_size=3, tol=1e-8):
    """Seeded random complex quadruples; ill-conditioned ``A`` is resampled."""
    out = []
    for t in range(count):
        rng = np.random.default_rng([seed, 2_000_000 + t])
        n = int(rng.integers(1, max_size + 1))
        m = int(rng.integers(1, max_size + 1))
        while True:
            A, B = random_complex_matrix(n, rng), random_complex_matrix(n, rng)
            C, D = random_complex_matrix(m, rng), random_complex_matrix(m, rng)
            try:
                out.append(ext_cayley_check(A, B, C, D, tol=tol))
                break
            except IllConditioned:
                continue
    return out


__all__ = [
    "pencil_det", "charpoly_at", "charpoly_symbolic", "MultiplicityProfile", "multiplicities",
    "multiplicity_profile", "AdjointOperator", "invert_element", "adjoint_operator",
    "coadjoint_apply", "quasi_invariance_check", "basis_change_check", "generalized_resultant",
    "matn_charpoly_reference", "matn_functional", "ext_cayley_residual", "ext_cayley_check",
    "ext_cayley_experiment", "IllConditioned", "commutator_matrix_at",
]
