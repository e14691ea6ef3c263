"""Dense exact matrices and elimination kernels.

Over fields (``QQ``, ``PrimeField``) elimination is ordinary Gauss-Jordan;
the prime-field path is specialised to raw ``int`` arithmetic because it is
the hot loop of every randomized computation.  Over polynomial rings,
fraction-free Bareiss elimination is used: after pivot step ``k`` every
entry is a ``(k+1)``-minor of the input, so the division by the previous
pivot is exact.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars.fields import PrimeField


class ShapeError(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over a domain (``QQ``, ``PrimeField``, ``PolyRing``)."""

    __slots__ = ("rows", "domain", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], domain, *, convert=True):
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeError("ragged rows")
        else:
            width = 0
        if convert:
            rows = [[domain.convert(x) for x in r] for r in rows]
        self.rows = tuple(tuple(r) for r in rows)
        self.domain = domain
        self.nrows = len(rows)
        self.ncols = width

    @classmethod
    def zeros(cls, nrows, ncols, domain):
        z = domain.zero
        return cls([[z] * ncols for _ in range(nrows)], domain, convert=False)

    @classmethod
    def identity(cls, n, domain):
        z, o = domain.zero, domain.one
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], domain, convert=False)

    @classmethod
    def diag(cls, values, domain):
        vals = [domain.convert(v) for v in values]
        n = len(vals)
        z = domain.zero
        return cls([[vals[i] if i == j else z for j in range(n)] for i in range(n)], domain,
                   convert=False)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.tolist()!r}, {self.domain!r})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    # arithmetic --------------------------------------------------------

    def _check_same(self, other):
        if self.domain != other.domain:
            raise ShapeError(f"domain mismatch: {self.domain} vs {other.domain}")
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    @property
    def T(self) -> "Matrix":
        return Matrix([[r[j] for r in self.rows] for j in range(self.ncols)], self.domain,
                      convert=False)

    def transpose(self) -> "Matrix":
        return self.T

    def __add__(self, other):
        self._check_same(other)
        add = self.domain.add
        return Matrix([[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.domain, convert=False)

    def __sub__(self, other):
        self._check_same(other)
        sub = self.domain.sub
        return Matrix([[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.domain, convert=False)

    def __neg__(self):
        neg = self.domain.neg
        return Matrix([[neg(a) for a in r] for r in self.rows], self.domain, convert=False)

    def scale(self, c) -> "Matrix":
        K = self.domain
        c = K.convert(c)
        return Matrix([[K.mul(c, a) for a in r] for r in self.rows], K, convert=False)

    def __matmul__(self, other):
        if self.domain != other.domain:
            raise ShapeError(f"domain mismatch: {self.domain} vs {other.domain}")
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        K = self.domain
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = K.zero
                for a, b in zip(r, col):
                    if not K.is_zero(a) and not K.is_zero(b):
                        acc = K.add(acc, K.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(out, K, convert=False)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product."""
        K = self.domain
        if len(vec) != self.ncols:
            raise ShapeError("vector length mismatch")
        out = []
        for r in self.rows:
            acc = K.zero
            for a, b in zip(r, vec):
                if not K.is_zero(a) and not K.is_zero(b):
                    acc = K.add(acc, K.mul(a, b))
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        z = self.domain.is_zero
        return all(z(x) for r in self.rows for x in r)

    def is_skew_symmetric(self) -> bool:
        if not self.is_square():
            return False
        K = self.domain
        n = self.nrows
        return all(K.is_zero(K.add(self.rows[i][j], self.rows[j][i]))
                   for i in range(n) for j in range(i, n))

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i))

    # elimination -------------------------------------------------------

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        K = self.domain
        if isinstance(K, PrimeField):
            return _rank_modp([list(r) for r in self.rows], K.p)
        if K.is_field:
            return len(_rref_field([list(r) for r in self.rows], K)[1])
        return len(_bareiss([list(r) for r in self.rows], K)[1])

    def rank_and_kernel(self) -> tuple[int, list[list]]:
        """Rank and a kernel basis; every basis vector is checked against ``M v = 0``."""
        rank, basis = _rank_and_kernel(self)
        for v in basis:
            if not all(self.domain.is_zero(x) for x in self.apply(v)):
                raise ArithmeticError("kernel vector failed verification")
        return rank, basis

    def kernel(self) -> list[list]:
        return self.rank_and_kernel()[1]

    def det(self):
        if not self.is_square():
            raise ShapeError("determinant of a non-square matrix")
        return determinant([list(r) for r in self.rows], self.domain)

    def kron(self, other) -> "Matrix":
        return kronecker(self, other)


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    """Block matrix whose block ``(i, j)`` is ``A[i, j] * B``."""
    if A.domain != B.domain:
        raise ShapeError(f"domain mismatch: {A.domain} vs {B.domain}")
    K = A.domain
    mul = K.mul
    out = []
    for ra in A.rows:
        for rb in B.rows:
            out.append([mul(a, b) for a in ra for b in rb])
    return Matrix(out, K, convert=False)


# -- prime field fast paths -------------------------------------------------


def _rank_modp(R: list[list[int]], p: int) -> int:
    m, n = len(R), len(R[0])
    k = 0
    for c in range(n):
        piv = None
        for r in range(k, m):
            if R[r][c]:
                piv = r
                break
        if piv is None:
            continue
        R[k], R[piv] = R[piv], R[k]
        rk = R[k]
        inv = pow(rk[c], -1, p)
        rk = R[k] = [x * inv % p for x in rk]
        for r in range(k + 1, m):
            a = R[r][c]
            if a:
                R[r] = [(x - a * y) % p for x, y in zip(R[r], rk)]
        k += 1
        if k == m:
            break
    return k


def _rref_modp(R: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m, n = len(R), len(R[0])
    pivots = []
    k = 0
    for c in range(n):
        if k == m:
            break
        piv = None
        for r in range(k, m):
            if R[r][c]:
                piv = r
                break
        if piv is None:
            continue
        R[k], R[piv] = R[piv], R[k]
        inv = pow(R[k][c], -1, p)
        rk = R[k] = [x * inv % p for x in R[k]]
        for r in range(m):
            if r != k:
                a = R[r][c]
                if a:
                    R[r] = [(x - a * y) % p for x, y in zip(R[r], rk)]
        pivots.append(c)
        k += 1
    return R[:k], pivots


def _det_modp(R: list[list[int]], p: int) -> int:
    n = len(R)
    det = 1
    for c in range(n):
        piv = None
        for r in range(c, n):
            if R[r][c]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != c:
            R[c], R[piv] = R[piv], R[c]
            det = -det
        rc = R[c]
        d = rc[c]
        det = det * d % p
        inv = pow(d, -1, p)
        for r in range(c + 1, n):
            a = R[r][c]
            if a:
                f = a * inv % p
                R[r] = [(x - f * y) % p for x, y in zip(R[r], rc)]
    return det % p


# -- generic field -----------------------------------------------------------


def _rref_field(R: list[list], K) -> tuple[list[list], list[int]]:
    if isinstance(K, PrimeField):
        return _rref_modp(R, K.p)
    m, n = len(R), len(R[0])
    pivots = []
    k = 0
    for c in range(n):
        if k == m:
            break
        piv = next((r for r in range(k, m) if not K.is_zero(R[r][c])), None)
        if piv is None:
            continue
        R[k], R[piv] = R[piv], R[k]
        inv = K.inv(R[k][c])
        rk = R[k] = [K.mul(x, inv) for x in R[k]]
        for r in range(m):
            if r != k and not K.is_zero(R[r][c]):
                a = R[r][c]
                R[r] = [K.sub(x, K.mul(a, y)) for x, y in zip(R[r], rk)]
        pivots.append(c)
        k += 1
    return R[:k], pivots


# -- fraction-free (Bareiss) ---------------------------------------------------


def _bareiss(R: list[list], K):
    """Fraction-free row echelon form.

    Returns ``(rows, pivot_columns, sign)``; pivot rows come first, the pivot
    is the first nonzero entry of each column in row order.
    """
    m = len(R)
    n = len(R[0]) if m else 0
    is_zero, mul, sub, ediv = K.is_zero, K.mul, K.sub, K.exact_div
    prev = K.one
    pivots = []
    sign = 1
    k = 0
    for c in range(n):
        if k == m:
            break
        piv = next((r for r in range(k, m) if not is_zero(R[r][c])), None)
        if piv is None:
            continue
        if piv != k:
            R[k], R[piv] = R[piv], R[k]
            sign = -sign
        rk = R[k]
        pk = rk[c]
        for r in range(k + 1, m):
            row = R[r]
            a = row[c]
            new = row[:c + 1]
            new[c] = K.zero
            if is_zero(a):
                for j in range(c + 1, n):
                    x = row[j]
                    new.append(K.zero if is_zero(x) else ediv(mul(pk, x), prev))
            else:
                for j in range(c + 1, n):
                    x, y = row[j], rk[j]
                    if is_zero(x) and is_zero(y):
                        new.append(K.zero)
                    elif is_zero(y):
                        new.append(ediv(mul(pk, x), prev))
                    elif is_zero(x):
                        new.append(ediv(K.neg(mul(a, y)), prev))
                    else:
                        new.append(ediv(sub(mul(pk, x), mul(a, y)), prev))
            R[r] = new
        prev = pk
        pivots.append(c)
        k += 1
    return R[:k], pivots, sign


def determinant(R: list[list], K):
    n = len(R)
    if n == 0:
        return K.one
    if isinstance(K, PrimeField):
        return _det_modp(R, K.p)
    if K.is_field:
        det = K.one
        for c in range(n):
            piv = next((r for r in range(c, n) if not K.is_zero(R[r][c])), None)
            if piv is None:
                return K.zero
            if piv != c:
                R[c], R[piv] = R[piv], R[c]
                det = K.neg(det)
            d = R[c][c]
            det = K.mul(det, d)
            inv = K.inv(d)
            for r in range(c + 1, n):
                if not K.is_zero(R[r][c]):
                    f = K.mul(R[r][c], inv)
                    R[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(R[r], R[c])]
        return det
    rows, pivots, sign = _bareiss(R, K)
    if len(pivots) < n:
        return K.zero
    d = rows[-1][-1]
    return d if sign == 1 else K.neg(d)


def _rank_and_kernel(M: Matrix):
    K = M.domain
    n = M.ncols
    if M.nrows == 0 or n == 0:
        return 0, [[K.one if i == j else K.zero for i in range(n)] for j in range(n)]
    R = [list(r) for r in M.rows]
    if K.is_field:
        rows, pivots = _rref_field(R, K)
        pivset = set(pivots)
        basis = []
        for j in range(n):
            if j in pivset:
                continue
            v = [K.zero] * n
            v[j] = K.one
            for r, c in enumerate(pivots):
                v[c] = K.neg(rows[r][j])
            basis.append(v)
        return len(pivots), basis
    rows, pivots, _ = _bareiss(R, K)
    pivset = set(pivots)
    basis = []
    for j in range(n):
        if j in pivset:
            continue
        v = [K.zero] * n
        v[j] = K.one
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = rows[r]
            s = K.zero
            for kk in range(c + 1, n):
                if not K.is_zero(row[kk]) and not K.is_zero(v[kk]):
                    s = K.sub(s, K.mul(row[kk], v[kk]))
            p = row[c]
            v = [K.mul(p, x) if not K.is_zero(x) else x for x in v]
            v[c] = s
        basis.append(v)
    return len(pivots), basis


def solve(M: Matrix, rhs: Sequence):
    """One solution ``x`` of ``M x = rhs`` over a field, or ``None``."""
    K = M.domain
    if not K.is_field:
        raise TypeError("solve requires a field")
    n = M.ncols
    aug = [list(r) + [K.convert(b)] for r, b in zip(M.rows, rhs)]
    rows, pivots = _rref_field(aug, K)
    if pivots and pivots[-1] == n:
        return None
    x = [K.zero] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return x
