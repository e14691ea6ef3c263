"""Sparse multivariate polynomials with exact rational coefficients.

A monomial ``x0^e0 ... x{n-1}^e{n-1}`` is packed into one integer with
fixed-width fields ``[deg, e0, e1, ..., e{n-1}]`` (most significant first),
so that

* monomial multiplication is integer addition, and
* integer comparison of packed keys is graded-lexicographic order.

Coefficients are ``int`` or :class:`~fractions.Fraction`; zero coefficients
are never stored.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .fields import DomainError, format_rational, parse_rational

_W = 16  # bits per exponent field
_MAXEXP = 1 << (_W - 1)
_FIELD = (1 << _W) - 1


class NotExactDivision(DomainError):
    """Exact polynomial division left a remainder."""

    def __init__(self, msg, remainder=None):
        super().__init__(msg)
        self.remainder = remainder


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _guard(nvars: int) -> int:
    h = 0
    for _ in range(nvars + 1):
        h = (h << _W) | _MAXEXP
    return h


def pack(exps: Sequence[int]) -> int:
    key = sum(exps)
    if key >= _MAXEXP:
        raise OverflowError("monomial degree too large for packed encoding")
    for e in exps:
        if e < 0:
            raise ValueError("negative exponent")
        key = (key << _W) | e
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & _FIELD
        key >>= _W
    return tuple(out)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables over QQ."""

    __slots__ = ("nvars", "_t", "_hash")

    def __init__(self, nvars: int, terms: Mapping[int, object] | None = None, *, _packed=True):
        self.nvars = nvars
        self._hash = None
        if not terms:
            self._t = {}
        elif _packed:
            self._t = {k: c for k, c in terms.items() if c != 0}
        else:
            t: dict[int, object] = {}
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent vector {exps} has length != {nvars}")
                k = pack(exps)
                t[k] = t.get(k, 0) + c
            self._t = {k: c for k, c in t.items() if c != 0}

    # construction ------------------------------------------------------

    @classmethod
    def from_dict(cls, nvars: int, terms: Mapping[tuple, object]) -> "MultiPoly":
        """Build from ``{exponent tuple: coefficient}``."""
        return cls(nvars, {e: _norm(parse_rational(c)) if isinstance(c, str) else c
                           for e, c in terms.items()}, _packed=False)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {0: _norm(Fraction(c))} if c != 0 else None)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {pack(e): 1})

    # inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return self._t.get(0, 0)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """``(exponents, coefficient)`` pairs in decreasing grlex order."""
        return [(unpack(k, self.nvars), self._t[k]) for k in sorted(self._t, reverse=True)]

    def leading_term(self):
        if not self._t:
            raise DomainError("zero polynomial has no leading term")
        k = max(self._t)
        return unpack(k, self.nvars), self._t[k]

    def total_degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self._t:
            return -1
        return max(self._t) >> (_W * self.nvars)

    def degree_in(self, i: int) -> int:
        if not self._t:
            return -1
        return max(unpack(k, self.nvars)[i] for k in self._t)

    def is_homogeneous(self) -> bool:
        degs = {k >> (_W * self.nvars) for k in self._t}
        return len(degs) <= 1

    # arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DomainError("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return MultiPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) - c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return MultiPoly(self.nvars, t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {k: _norm(c * other) for k, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, object] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return MultiPoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale_div(self, c) -> "MultiPoly":
        """Divide every coefficient by the nonzero scalar ``c``."""
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return MultiPoly(self.nvars, {k: _norm(Fraction(v) / c) for k, v in self._t.items()})

    def exact_div(self, other) -> "MultiPoly":
        """Quotient ``q`` with ``q * other == self``; raises if not exact."""
        other = self._coerce(other)
        if other is NotImplemented:
            raise DomainError("cannot divide by non-polynomial")
        if not other._t:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._t:
            return self
        if other.is_constant():
            return self.scale_div(other._t[0])
        lk = max(other._t)
        lc = other._t[lk]
        rest = [(k, c) for k, c in other._t.items() if k != lk]
        guard = _guard(self.nvars)
        r = dict(self._t)
        heap = [-k for k in r]
        heapq.heapify(heap)
        q: dict[int, object] = {}
        while heap:
            k = -heapq.heappop(heap)
            c = r.pop(k, 0)
            if c == 0:
                continue
            # drop duplicate heap copies of k
            while heap and -heap[0] == k:
                heapq.heappop(heap)
            if ((k | guard) - lk) & guard != guard:
                r[k] = c
                raise NotExactDivision(
                    "polynomial division is not exact",
                    remainder=MultiPoly(self.nvars, r),
                )
            if isinstance(c, int) and isinstance(lc, int) and c % lc == 0:
                qc = c // lc
            else:
                qc = _norm(Fraction(c) / lc)
            qk = k - lk
            q[qk] = qc
            for kb, cb in rest:
                kk = qk + kb
                v = r.get(kk, 0) - qc * cb
                if v:
                    if kk not in r:
                        heapq.heappush(heap, -kk)
                    r[kk] = v
                else:
                    r.pop(kk, None)
        return MultiPoly(self.nvars, q)

    # comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._t == other._t
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self._t.get(0, 0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._t.items())))
        return self._hash

    # evaluation --------------------------------------------------------

    def evaluate(self, point: Sequence, domain=None):
        """Evaluate at ``point``; with ``domain``, coefficients are converted."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        if domain is None:
            total = 0
            for k, c in self._t.items():
                term = c
                for x, e in zip(point, unpack(k, self.nvars)):
                    if e:
                        term = term * x**e
                total = total + term
            return total
        add, mul = domain.add, domain.mul
        total = domain.zero
        for k, c in self._t.items():
            term = domain.convert(c)
            for x, e in zip(point, unpack(k, self.nvars)):
                if e:
                    term = mul(term, domain.pow(x, e))
            total = add(total, term)
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with ``x_i -> images[i]`` (all images share one nvars)."""
        if len(images) != self.nvars:
            raise ValueError("wrong number of images")
        out_n = images[0].nvars
        total = MultiPoly(out_n)
        for k, c in self._t.items():
            term = MultiPoly.constant(out_n, c)
            for img, e in zip(images, unpack(k, self.nvars)):
                if e:
                    term = term * img**e
            total = total + term
        return total

    # display -----------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._t:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exps, c in self.terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
            cs = format_rational(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"


class PolyRing:
    """Domain object for :class:`MultiPoly` in named variables over QQ."""

    is_field = False
    characteristic = 0

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.zero = MultiPoly(self.nvars)
        self.one = MultiPoly.constant(self.nvars, 1)

    @property
    def name(self):
        return "QQ[" + ",".join(self.names) + "]"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.names == self.names

    def __hash__(self):
        return hash(("QQ[]", self.names))

    def gens(self) -> list[MultiPoly]:
        return [MultiPoly.variable(self.nvars, i) for i in range(self.nvars)]

    def gen(self, name: str) -> MultiPoly:
        return MultiPoly.variable(self.nvars, self.names.index(name))

    def convert(self, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            if x.nvars != self.nvars:
                raise DomainError("polynomial has wrong number of variables")
            return x
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return MultiPoly.constant(self.nvars, x)
        raise DomainError(f"cannot convert {x!r} to {self.name}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def exact_div(self, a, b):
        return a.exact_div(b)

    def div(self, a, b):
        return a.exact_div(b)

    def pow(self, a, k):
        return a**k

    def to_json(self, a) -> str:
        return a.to_str(self.names)
