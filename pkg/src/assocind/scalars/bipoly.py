"""Polynomials in the formal pair ``(lam, mu)`` with coefficients in a domain.

Coefficients come from a field (``QQ``/``PrimeField``) or from a
:class:`~assocind.scalars.multipoly.PolyRing`.  Homogeneity is a property to
check, not a representation constraint.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping

from .fields import DomainError
from .multipoly import MultiPoly, NotExactDivision, PolyRing
from .univariate import interpolate_in

INFINITE = math.inf


def _scale_div(K, x, s):
    """Divide ring value ``x`` by the nonzero rational/field scalar ``s``."""
    if isinstance(K, PolyRing):
        return x.scale_div(s)
    return K.div(x, K.convert(s))


class BiPoly:
    """Immutable ``{(deg_lam, deg_mu): coeff}`` with no stored zeros."""

    __slots__ = ("domain", "_t")

    def __init__(self, terms: Mapping[tuple[int, int], object], domain):
        self.domain = domain
        self._t = {k: v for k, v in terms.items() if not domain.is_zero(v)}

    @classmethod
    def zero(cls, domain):
        return cls({}, domain)

    @classmethod
    def monomial(cls, i, j, c, domain):
        return cls({(i, j): domain.convert(c)}, domain)

    @classmethod
    def linear_form(cls, alpha, beta, domain):
        """``alpha*lam + beta*mu``."""
        return cls({(1, 0): domain.convert(alpha), (0, 1): domain.convert(beta)}, domain)

    @classmethod
    def from_multipoly(cls, poly: MultiPoly, lam: int, mu: int, coeff_ring: PolyRing):
        """Split a polynomial in ``(f..., lam, mu)`` into ``lam/mu`` powers.

        ``lam`` and ``mu`` are variable indices of ``poly``; the remaining
        variables, in order, become the variables of ``coeff_ring``.
        """
        rest = [i for i in range(poly.nvars) if i not in (lam, mu)]
        if len(rest) != coeff_ring.nvars:
            raise DomainError("coefficient ring has the wrong number of variables")
        groups: dict[tuple[int, int], dict] = {}
        for exps, c in poly.terms():
            key = (exps[lam], exps[mu])
            groups.setdefault(key, {})[tuple(exps[i] for i in rest)] = c
        terms = {k: MultiPoly.from_dict(coeff_ring.nvars, v) for k, v in groups.items()}
        return cls(terms, coeff_ring)

    # inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def coeff(self, i: int, j: int):
        return self._t.get((i, j), self.domain.zero)

    def items(self):
        return sorted(self._t.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def total_degree(self) -> int:
        return max((i + j for i, j in self._t), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {i + j for i, j in self._t}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def evaluate(self, lam, mu):
        K = self.domain
        lam, mu = K.convert(lam), K.convert(mu)
        acc = K.zero
        for (i, j), c in self._t.items():
            acc = K.add(acc, K.mul(c, K.mul(K.pow(lam, i), K.pow(mu, j))))
        return acc

    # arithmetic --------------------------------------------------------

    def _same(self, other):
        if self.domain != other.domain:
            raise DomainError(f"domain mismatch: {self.domain} vs {other.domain}")

    def __add__(self, other):
        self._same(other)
        K = self.domain
        t = dict(self._t)
        for k, v in other._t.items():
            t[k] = K.add(t[k], v) if k in t else v
        return BiPoly(t, K)

    def __neg__(self):
        K = self.domain
        return BiPoly({k: K.neg(v) for k, v in self._t.items()}, K)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        K = self.domain
        if not isinstance(other, BiPoly):
            c = K.convert(other)
            return BiPoly({k: K.mul(c, v) for k, v in self._t.items()}, K)
        self._same(other)
        t: dict = {}
        for (i, j), a in self._t.items():
            for (k, l), b in other._t.items():
                key = (i + k, j + l)
                prod = K.mul(a, b)
                t[key] = K.add(t[key], prod) if key in t else prod
        return BiPoly(t, K)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly({(0, 0): self.domain.one}, self.domain)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.domain == other.domain and self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # display -----------------------------------------------------------

    def to_json(self) -> list:
        """``[[deg_lam, deg_mu, coeff_str], ...]`` in a fixed order."""
        K = self.domain
        return [[i, j, K.to_json(c)] for (i, j), c in self.items()]

    def __repr__(self):
        if not self._t:
            return "BiPoly(0)"
        parts = []
        for (i, j), c in self.items():
            mono = "*".join(s for s in (
                "" if i == 0 else ("lam" if i == 1 else f"lam^{i}"),
                "" if j == 0 else ("mu" if j == 1 else f"mu^{j}")) if s)
            parts.append(f"({self.domain.to_json(c)})" + (f"*{mono}" if mono else ""))
        return "BiPoly(" + " + ".join(parts) + ")"


def _components(P: BiPoly):
    comps: dict[int, dict[int, object]] = {}
    for (i, j), c in P._t.items():
        comps.setdefault(i + j, {})[i] = c
    return comps


def _vanishes_on_line(P: BiPoly, alpha, beta) -> bool:
    """Whether ``P(beta*t, -alpha*t)`` is identically zero in ``t``."""
    K = P.domain
    a, b = K.convert(alpha), K.convert(beta)
    mna = K.neg(a)
    for d, comp in _components(P).items():
        acc = K.zero
        for i, c in comp.items():
            acc = K.add(acc, K.mul(c, K.mul(K.pow(b, i), K.pow(mna, d - i))))
        if not K.is_zero(acc):
            return False
    return True


def _check_form(K, alpha, beta):
    a, b = K.convert(alpha), K.convert(beta)
    if K.is_zero(a) and K.is_zero(b):
        raise DomainError("the linear form 0*lam + 0*mu is not allowed")
    return a, b


def divide_bipoly_exact(P: BiPoly, alpha, beta) -> BiPoly:
    """Quotient ``Q`` with ``(alpha*lam + beta*mu) * Q == P``.

    Raises :class:`NotExactDivision` (with the remainder) if the form does
    not divide ``P``.
    """
    K = P.domain
    a, b = _check_form(K, alpha, beta)
    out: dict = {}
    for d, comp in sorted(_components(P).items()):
        c = [comp.get(i, K.zero) for i in range(d + 1)]  # c[i]: coeff of lam^i mu^(d-i)
        q = [K.zero] * d  # q[i]: coeff of lam^i mu^(d-1-i)
        if not K.is_zero(b):
            prev = K.zero
            for i in range(d):
                num = c[0] if i == 0 else K.sub(c[i], K.mul(a, prev))
                prev = q[i] = _div_scalar(K, num, b)
            resid = K.sub(c[d], K.mul(a, q[d - 1])) if d else c[0]
            resid_at = d
        else:
            for i in range(1, d + 1):
                q[i - 1] = _div_scalar(K, c[i], a)
            resid = c[0]
            resid_at = 0
        if not K.is_zero(resid):
            raise NotExactDivision(
                f"({alpha})*lam + ({beta})*mu does not divide the polynomial",
                remainder={(resid_at, d - resid_at): resid},
            )
        for i in range(d):
            if not K.is_zero(q[i]):
                out[(i, d - 1 - i)] = q[i]
    Q = BiPoly(out, K)
    if Q * BiPoly.linear_form(a, b, K) != P:
        raise ArithmeticError("exact division failed re-multiplication check")
    return Q


def _div_scalar(K, x, s):
    """Divide ``x`` by the domain scalar ``s`` (a constant in ring domains)."""
    if isinstance(K, PolyRing):
        return x.scale_div(s.constant_value())
    return K.div(x, s)


def linear_form_multiplicity(P: BiPoly, alpha, beta):
    """Largest ``k`` with ``(alpha*lam + beta*mu)^k`` dividing ``P``; ``INFINITE`` if ``P == 0``."""
    K = P.domain
    _check_form(K, alpha, beta)
    if P.is_zero():
        return INFINITE
    k = 0
    while _vanishes_on_line(P, alpha, beta):
        P = divide_bipoly_exact(P, alpha, beta)
        k += 1
    return k


def bipoly_equal_up_to_scalar(P: BiPoly, Q: BiPoly):
    """``(True, c)`` if ``P == c*Q`` for a nonzero scalar ``c``, else ``(False, None)``.

    For polynomial coefficient rings, ``c`` must be a rational constant.
    """
    if P.domain != Q.domain:
        raise DomainError(f"domain mismatch: {P.domain} vs {Q.domain}")
    K = P.domain
    if P.is_zero() and Q.is_zero():
        return True, K.one
    if P.is_zero() or Q.is_zero():
        return False, None
    key = min(Q._t)
    if key not in P._t:
        return False, None
    p, q = P._t[key], Q._t[key]
    if isinstance(K, PolyRing):
        try:
            c = p.exact_div(q)
        except NotExactDivision:
            return False, None
        if not c.is_constant():
            return False, None
    else:
        c = K.div(p, q)
    if Q * c == P:
        return True, c.constant_value() if isinstance(K, PolyRing) else c
    return False, None


def interpolate_homogeneous(evaluate: Callable, degree: int, K, field) -> BiPoly:
    """Recover a homogeneous ``BiPoly`` of known degree from point values.

    ``evaluate(lam, mu)`` returns a value of ``K`` for field scalars
    ``lam, mu``.  Uses ``(0, 1)`` for the pure ``mu^d`` coefficient and
    ``(1, t)`` for ``t = 1..d``; requires ``d + 1`` distinct field elements.
    """
    d = degree
    top = evaluate(field.zero, field.one)  # coefficient of mu^d
    if d == 0:
        return BiPoly({(0, 0): top}, K)
    ts = [field.convert(k + 1) for k in range(d)]
    if len(set(ts)) != d:
        raise DomainError("field too small for the required interpolation points")
    ys = []
    for t in ts:
        v = evaluate(field.one, t)
        # remove the known t^d term
        ys.append(K.sub(v, K.mul(K.convert(field.pow(t, d)) if K is not field else field.pow(t, d), top)))
    if K is field:
        coeffs = interpolate_in(ts, ys, field, field.div, field)
    else:
        coeffs = interpolate_in(ts, ys, field, lambda y, s: _scale_div(K, y, s), K)
    terms = {(0, d): top}
    for j, c in enumerate(coeffs):
        terms[(d - j, j)] = c
    return BiPoly(terms, K)
