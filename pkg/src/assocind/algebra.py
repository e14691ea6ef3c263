"""Finite-dimensional associative algebras given by structure constants.

``e_i * e_j = sum_k c[i][j][k] e_k`` with exact rational ``c``.  The table is
stored dense (desk-scale dimensions) together with a sparse view of its
nonzero entries that every evaluation uses.

Basis conventions of the builders:

* ``mat(n)``: matrix units ``E_ij`` in row-major order.
* ``upper_triangular(n)``: ``E_ij`` with ``i <= j``, row-major.
* ``truncated_poly(m)``: ``1, x, ..., x^(m-1)`` in ``k[x]/(x^m)``.
* ``two_dim``: ``a, b`` with ``x * y = y`` on basis elements.
* ``seaweed3``: ``a=E11, b=E12, c=E22, d=E32, e=E33`` inside ``Mat_3``.
* ``tensor_algebra(A, B)``: pairs ``(i, p)`` in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import Matrix, solve
from .scalars.fields import QQ, DomainError, PrimeField, parse_rational
from .scalars.multipoly import PolyRing


class AlgebraError(ValueError):
    pass


class UnknownBuilderError(AlgebraError):
    pass


@dataclass(frozen=True)
class AssociativityViolation:
    """First triple ``(i, j, k)`` with ``(e_i e_j) e_k != e_i (e_j e_k)``."""

    i: int
    j: int
    k: int
    lhs: tuple
    rhs: tuple

    def to_json(self):
        return {"triple": [self.i, self.j, self.k],
                "lhs": [str(x) for x in self.lhs], "rhs": [str(x) for x in self.rhs]}


class AssociativityError(AlgebraError):
    def __init__(self, violation: AssociativityViolation):
        super().__init__(f"table is not associative at (i, j, k) = "
                         f"({violation.i}, {violation.j}, {violation.k})")
        self.violation = violation


class NotClosedError(AlgebraError):
    def __init__(self, i, j, product):
        super().__init__(f"not multiplicatively closed: basis[{i}] * basis[{j}] leaves the span")
        self.i, self.j, self.product = i, j, product


class StructureConstants:
    """An algebra table ``c[i][j][k]`` over QQ.  Treat instances as immutable."""

    def __init__(self, table, *, name: str | None = None, unit: Sequence | None = None,
                 labels: Sequence[str] | None = None, factors=None):
        n = len(table)
        rows = []
        for i, row in enumerate(table):
            if len(row) != n:
                raise AlgebraError(f"table row {i} has length {len(row)}, expected {n}")
            out = []
            for j, vec in enumerate(row):
                if len(vec) != n:
                    raise AlgebraError(f"table entry ({i}, {j}) has length {len(vec)}, expected {n}")
                out.append(tuple(parse_rational(x) for x in vec))
            rows.append(tuple(out))
        self.dim = n
        self.table = tuple(rows)
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(n))
        if len(self.labels) != n:
            raise AlgebraError("wrong number of basis labels")
        self.unit = tuple(parse_rational(x) for x in unit) if unit is not None else None
        if self.unit is not None and len(self.unit) != n:
            raise AlgebraError("unit has the wrong length")
        self.factors = factors
        # sparse view: products[i][j] = ((k, c), ...)
        self.products = tuple(
            tuple(tuple((k, c) for k, c in enumerate(self.table[i][j]) if c) for j in range(n))
            for i in range(n))
        self._cache: dict = {}

    def __repr__(self):
        return f"StructureConstants(dim={self.dim}, name={self.name!r})"

    def __eq__(self, other):
        return isinstance(other, StructureConstants) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def sparse(self, K) -> list[tuple[int, int, int, object]]:
        """Nonzero ``(i, j, k, c)`` with ``c`` converted into the domain ``K``."""
        key = ("sparse", K)
        if key not in self._cache:
            self._cache[key] = [(i, j, k, K.convert(c))
                                for i in range(self.dim) for j in range(self.dim)
                                for k, c in self.products[i][j]]
        return self._cache[key]

    def basis_vector(self, i: int, K=QQ) -> list:
        v = [K.zero] * self.dim
        v[i] = K.one
        return v

    def multiply(self, x: Sequence, y: Sequence, K=QQ) -> list:
        """Product of two coordinate vectors over ``K``."""
        n = self.dim
        out = [K.zero] * n
        nzx = [(i, a) for i, a in enumerate(x) if not K.is_zero(a)]
        nzy = [(j, b) for j, b in enumerate(y) if not K.is_zero(b)]
        conv = self._converted(K)
        for i, a in nzx:
            for j, b in nzy:
                ab = K.mul(a, b)
                for k, c in conv[i][j]:
                    out[k] = K.add(out[k], K.mul(ab, c))
        return out

    def _converted(self, K):
        key = ("products", K)
        if key not in self._cache:
            self._cache[key] = [[[(k, K.convert(c)) for k, c in pij] for pij in row]
                                for row in self.products]
        return self._cache[key]

    def left_mult_matrix(self, x: Sequence, K=QQ) -> Matrix:
        """Matrix of ``y -> x * y``; column ``j`` is ``x * e_j``."""
        cols = [self.multiply(x, self.basis_vector(j, K), K) for j in range(self.dim)]
        return Matrix([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)], K,
                      convert=False)

    def right_mult_matrix(self, x: Sequence, K=QQ) -> Matrix:
        cols = [self.multiply(self.basis_vector(j, K), x, K) for j in range(self.dim)]
        return Matrix([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)], K,
                      convert=False)

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(i))

    def to_json(self) -> dict:
        """Materialized file form (rationals as strings)."""
        from .scalars.fields import format_rational

        doc = {"dim": self.dim,
               "table": [[[format_rational(c) for c in vec] for vec in row] for row in self.table]}
        if self.name is not None:
            doc["name"] = self.name
        if self.unit is not None:
            doc["unit"] = [format_rational(c) for c in self.unit]
        doc["labels"] = list(self.labels)
        return doc


# -- functionals ---------------------------------------------------------------


@dataclass(frozen=True)
class Functional:
    """A point of the dual space: ``F(e_k) = coords[k]`` over ``domain``.

    ``factors`` holds ``(f, g)`` when the functional is the rank-one
    ``f (x) g`` on a tensor algebra; ``coords`` is then the Kronecker vector.
    """

    coords: tuple
    domain: object = QQ
    factors: tuple | None = field(default=None, compare=False)

    @property
    def dim(self):
        return len(self.coords)

    @property
    def field_tag(self) -> str:
        if isinstance(self.domain, PrimeField):
            return "prime"
        if isinstance(self.domain, PolyRing):
            return "symbolic"
        return "rational"

    @classmethod
    def of(cls, coords, domain=QQ) -> "Functional":
        return cls(tuple(domain.convert(c) for c in coords), domain)

    @classmethod
    def zero(cls, dim, domain=QQ) -> "Functional":
        return cls((domain.zero,) * dim, domain)

    @classmethod
    def symbolic(cls, sc: StructureConstants) -> "Functional":
        """Indeterminates ``f_<label>`` for each basis element."""
        ring = PolyRing(f"f_{lab}" for lab in sc.labels)
        return cls(tuple(ring.gens()), ring)

    @classmethod
    def random(cls, dim: int, K: PrimeField, rng) -> "Functional":
        return cls(tuple(K.random_element(rng) for _ in range(dim)), K)

    @classmethod
    def rank_one(cls, f: "Functional", g: "Functional") -> "Functional":
        if f.domain != g.domain:
            raise DomainError("rank-one functional needs factors over one domain")
        K = f.domain
        return cls(tuple(K.mul(a, b) for a in f.coords for b in g.coords), K, factors=(f, g))

    def __add__(self, other):
        K = self.domain
        return Functional(tuple(K.add(a, b) for a, b in zip(self.coords, other.coords)), K)

    def __call__(self, x: Sequence):
        K = self.domain
        acc = K.zero
        for a, b in zip(self.coords, x):
            if not K.is_zero(b):
                acc = K.add(acc, K.mul(a, K.convert(b)))
        return acc

    def to_json(self):
        return [self.domain.to_json(c) for c in self.coords]


def _check_dim(sc: StructureConstants, F: Functional):
    if F.dim != sc.dim:
        raise AlgebraError(f"functional of length {F.dim} paired with a {sc.dim}-dim algebra")


def mult_matrix_at(sc: StructureConstants, F: Functional) -> Matrix:
    """``(i, j) -> F(e_i e_j)``, over the functional's domain."""
    _check_dim(sc, F)
    K = F.domain
    n = sc.dim
    M = [[K.zero] * n for _ in range(n)]
    coords = F.coords
    for i, j, k, c in sc.sparse(K):
        fk = coords[k]
        if not K.is_zero(fk):
            M[i][j] = K.add(M[i][j], K.mul(c, fk))
    return Matrix(M, K, convert=False)


def commutator_matrix_at(sc: StructureConstants, F: Functional) -> Matrix:
    """``(i, j) -> F([e_i, e_j])``; exactly skew-symmetric."""
    M = mult_matrix_at(sc, F)
    return M - M.T


# -- validation ----------------------------------------------------------------


def validate_associativity(sc: StructureConstants) -> AssociativityViolation | None:
    """``None`` if the table is associative, else the first violating triple."""
    n = sc.dim
    P = sc.products
    for i in range(n):
        for j in range(n):
            pij = P[i][j]
            for k in range(n):
                lhs: dict = {}
                for m, c in pij:
                    for l, d in P[m][k]:
                        lhs[l] = lhs.get(l, 0) + c * d
                rhs: dict = {}
                for m, c in P[j][k]:
                    for l, d in P[i][m]:
                        rhs[l] = rhs.get(l, 0) + c * d
                lhs = {l: v for l, v in lhs.items() if v}
                rhs = {l: v for l, v in rhs.items() if v}
                if lhs != rhs:
                    return AssociativityViolation(
                        i, j, k,
                        tuple(Fraction(lhs.get(l, 0)) for l in range(n)),
                        tuple(Fraction(rhs.get(l, 0)) for l in range(n)))
    return None


def check_associative(sc: StructureConstants) -> StructureConstants:
    v = validate_associativity(sc)
    if v is not None:
        raise AssociativityError(v)
    if sc.unit is not None:
        K = QQ
        for j in range(sc.dim):
            e = sc.basis_vector(j)
            if sc.multiply(sc.unit, e, K) != e or sc.multiply(e, sc.unit, K) != e:
                raise AlgebraError(f"declared unit is not a two-sided identity (fails on basis {j})")
    return sc


def find_unit(sc: StructureConstants) -> tuple | None:
    """The two-sided identity, solved from ``u e_j = e_j = e_j u``; ``None`` if absent."""
    n = sc.dim
    if n == 0:
        return None
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([sc.table[i][j][k] for i in range(n)])
            rhs.append(1 if j == k else 0)
            rows.append([sc.table[j][i][k] for i in range(n)])
            rhs.append(1 if j == k else 0)
    u = solve(Matrix(rows, QQ), rhs)
    return tuple(u) if u is not None else None


# -- constructions -------------------------------------------------------------


def tensor_algebra(sc1: StructureConstants, sc2: StructureConstants) -> StructureConstants:
    """``A (x) B`` on basis pairs ``(i, p) -> i * dim(B) + p``."""
    n1, n2 = sc1.dim, sc2.dim
    n = n1 * n2
    zero = Fraction(0)
    table = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k, c in sc1.products[i][j]:
                for p in range(n2):
                    for q in range(n2):
                        for r, d in sc2.products[p][q]:
                            table[i * n2 + p][j * n2 + q][k * n2 + r] = c * d
    unit = None
    u1, u2 = sc1.unit, sc2.unit
    if u1 is not None and u2 is not None:
        unit = [a * b for a in u1 for b in u2]
    labels = [f"{a}_{b}" for a in sc1.labels for b in sc2.labels]
    name = f"({sc1.name or 'A'})x({sc2.name or 'B'})"
    return StructureConstants(table, name=name, unit=unit, labels=labels, factors=(sc1, sc2))


def direct_sum(sc1: StructureConstants, sc2: StructureConstants) -> StructureConstants:
    n1, n2 = sc1.dim, sc2.dim
    n = n1 + n2
    zero = Fraction(0)
    table = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k, c in sc1.products[i][j]:
                table[i][j][k] = c
    for i in range(n2):
        for j in range(n2):
            for k, c in sc2.products[i][j]:
                table[n1 + i][n1 + j][n1 + k] = c
    unit = None
    if sc1.unit is not None and sc2.unit is not None:
        unit = list(sc1.unit) + list(sc2.unit)
    labels = [f"{lab}_1" for lab in sc1.labels] + [f"{lab}_2" for lab in sc2.labels]
    return StructureConstants(table, name=f"({sc1.name})+({sc2.name})", unit=unit, labels=labels)


def _matmul_q(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)]


def from_matrix_basis(mats: Sequence, *, name=None, labels=None) -> StructureConstants:
    """Structure constants of the span of square matrices, which must be closed under products."""
    mats = [[[parse_rational(x) for x in row] for row in m] for m in mats]
    if not mats:
        raise AlgebraError("empty basis")
    size = len(mats[0])
    vecs = [[x for row in m for x in row] for m in mats]
    d = len(mats)
    # columns of B are the flattened basis matrices
    B = Matrix([[vecs[i][r] for i in range(d)] for r in range(size * size)], QQ)
    if B.rank() != d:
        raise AlgebraError("dependent basis: the matrices are linearly dependent")
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            prod = _matmul_q(mats[i], mats[j])
            flat = [x for r in prod for x in r]
            coords = solve(B, flat)
            if coords is None:
                raise NotClosedError(i, j, prod)
            row.append(coords)
        table.append(row)
    sc = StructureConstants(table, name=name, labels=labels)
    u = find_unit(sc)
    if u is not None:
        sc = StructureConstants(table, name=name, labels=labels, unit=u)
    return sc


def _matrix_unit(n, i, j):
    return [[int(r == i and c == j) for c in range(n)] for r in range(n)]


def mat(n: int) -> StructureConstants:
    if n < 1:
        raise AlgebraError("mat(n) needs n >= 1")
    idx = [(i, j) for i in range(n) for j in range(n)]
    pos = {ij: t for t, ij in enumerate(idx)}
    d = n * n
    zero = Fraction(0)
    table = [[[zero] * d for _ in range(d)] for _ in range(d)]
    for (i, j), a in pos.items():
        for k in range(n):
            # E_ij E_jk = E_ik
            table[a][pos[(j, k)]][pos[(i, k)]] = Fraction(1)
    unit = [Fraction(int(i == j)) for i, j in idx]
    labels = [f"E{i + 1}{j + 1}" for i, j in idx]
    return StructureConstants(table, name=f"mat({n})", unit=unit, labels=labels)


def upper_triangular(n: int) -> StructureConstants:
    if n < 1:
        raise AlgebraError("upper_triangular(n) needs n >= 1")
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {ij: t for t, ij in enumerate(idx)}
    d = len(idx)
    zero = Fraction(0)
    table = [[[zero] * d for _ in range(d)] for _ in range(d)]
    for (i, j), a in pos.items():
        for k in range(j, n):
            table[a][pos[(j, k)]][pos[(i, k)]] = Fraction(1)
    unit = [Fraction(int(i == j)) for i, j in idx]
    labels = [f"E{i + 1}{j + 1}" for i, j in idx]
    return StructureConstants(table, name=f"upper_triangular({n})", unit=unit, labels=labels)


def truncated_poly(m: int) -> StructureConstants:
    if m < 1:
        raise AlgebraError("truncated_poly(m) needs m >= 1")
    zero = Fraction(0)
    table = [[[zero] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i + j < m:
                table[i][j][i + j] = Fraction(1)
    unit = [Fraction(int(k == 0)) for k in range(m)]
    labels = ["1"] + ["x" if k == 1 else f"x{k}" for k in range(1, m)]
    return StructureConstants(table, name=f"truncated_poly({m})", unit=unit, labels=labels)


def base_field() -> StructureConstants:
    return StructureConstants([[[1]]], name="field", unit=[1], labels=["1"])


def two_dim() -> StructureConstants:
    # e_i * e_j = e_j: a*a=a, a*b=b, b*a=a, b*b=b
    return StructureConstants([[[1, 0], [0, 1]], [[1, 0], [0, 1]]], name="two_dim",
                              labels=["a", "b"])


SEAWEED3_MATRICES = (
    _matrix_unit(3, 0, 0),  # a
    _matrix_unit(3, 0, 1),  # b
    _matrix_unit(3, 1, 1),  # c
    _matrix_unit(3, 2, 1),  # d
    _matrix_unit(3, 2, 2),  # e
)


def seaweed3() -> StructureConstants:
    return from_matrix_basis(SEAWEED3_MATRICES, name="seaweed3", labels="abcde")


_BUILDERS = {
    "mat": (mat, ("n",)),
    "upper_triangular": (upper_triangular, ("n",)),
    "truncated_poly": (truncated_poly, ("m",)),
    "field": (base_field, ()),
    "two_dim": (two_dim, ()),
    "seaweed3": (seaweed3, ()),
}


def build_named(desc: Mapping | str, **params) -> StructureConstants:
    """Build from ``{"builder": name, ...params}`` or ``build_named(name, **params)``.

    ``direct_sum`` and ``tensor`` take nested descriptions ``a`` and ``b``.
    """
    if isinstance(desc, str):
        desc = {"builder": desc, **params}
    name = desc.get("builder")
    if name in ("direct_sum", "tensor"):
        try:
            a, b = build_named(desc["a"]), build_named(desc["b"])
        except KeyError as exc:
            raise AlgebraError(f"{name} needs parameters 'a' and 'b'") from exc
        sc = direct_sum(a, b) if name == "direct_sum" else tensor_algebra(a, b)
        return check_associative(sc)
    if name not in _BUILDERS:
        raise UnknownBuilderError(f"unknown builder {name!r}")
    fn, argnames = _BUILDERS[name]
    extra = set(desc) - {"builder", *argnames}
    if extra:
        raise AlgebraError(f"unexpected parameters for {name}: {sorted(extra)}")
    try:
        args = [int(desc[a]) for a in argnames]
    except KeyError as exc:
        raise AlgebraError(f"builder {name!r} needs parameter {exc.args[0]!r}") from None
    return check_associative(fn(*args))


# The test catalog; ``field`` and ``mat(1)`` are isomorphic but both listed.
CATALOG_SPECS = (
    {"builder": "field"},
    {"builder": "two_dim"},
    {"builder": "seaweed3"},
    {"builder": "mat", "n": 1},
    {"builder": "mat", "n": 2},
    {"builder": "mat", "n": 3},
    {"builder": "upper_triangular", "n": 2},
    {"builder": "upper_triangular", "n": 3},
    {"builder": "truncated_poly", "m": 2},
    {"builder": "truncated_poly", "m": 3},
    {"builder": "truncated_poly", "m": 4},
)


def catalog() -> list[StructureConstants]:
    return [build_named(s) for s in CATALOG_SPECS]
