"""Dense univariate polynomials over a field, as coefficient lists (low degree first)."""

from __future__ import annotations

from typing import Sequence

from .fields import DomainError


def trim(p: Sequence, K) -> list:
    p = list(p)
    while p and K.is_zero(p[-1]):
        p.pop()
    return p


def degree(p: Sequence, K) -> int:
    """Degree; ``-1`` for the zero polynomial."""
    return len(trim(p, K)) - 1


def poly_eval(p: Sequence, x, K):
    acc = K.zero
    for c in reversed(p):
        acc = K.add(K.mul(acc, x), c)
    return acc


def poly_add(p, q, K):
    n = max(len(p), len(q))
    z = K.zero
    return trim([K.add(p[i] if i < len(p) else z, q[i] if i < len(q) else z) for i in range(n)], K)


def poly_sub(p, q, K):
    return poly_add(p, [K.neg(c) for c in q], K)


def poly_mul(p, q, K):
    p, q = trim(p, K), trim(q, K)
    if not p or not q:
        return []
    out = [K.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if K.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(out, K)


def poly_divmod(p, q, K):
    q = trim(q, K)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p, K)
    inv = K.inv(q[-1])
    dq = len(q) - 1
    quo = [K.zero] * max(len(r) - dq, 0)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = K.mul(r[-1], inv)
        quo[shift] = c
        for i, b in enumerate(q):
            r[i + shift] = K.sub(r[i + shift], K.mul(c, b))
        r = trim(r, K)
    return trim(quo, K), r


def poly_gcd(p, q, K):
    """Monic gcd (zero polynomial if both inputs are zero)."""
    a, b = trim(p, K), trim(q, K)
    while b:
        a, b = b, poly_divmod(a, b, K)[1]
    if not a:
        return []
    inv = K.inv(a[-1])
    return [K.mul(c, inv) for c in a]


def sylvester_matrix(p, q, K) -> list[list]:
    """Sylvester matrix: ``deg q`` shifted rows of ``p`` then ``deg p`` rows of ``q``."""
    p, q = trim(p, K), trim(q, K)
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    ph = list(reversed(p))
    qh = list(reversed(q))
    for i in range(n):
        rows.append([K.zero] * i + ph + [K.zero] * (size - i - len(ph)))
    for i in range(m):
        rows.append([K.zero] * i + qh + [K.zero] * (size - i - len(qh)))
    return rows


def resultant(p, q, K):
    """``lc(p)^deg(q) * prod q(alpha)`` over the roots ``alpha`` of ``p``.

    Computed as the Sylvester determinant.  A zero ``q`` gives 0 when ``p`` is
    non-constant; a constant ``p`` gives ``lc(p)^deg(q)``.
    """
    from ..linalg import determinant

    p = trim([K.convert(c) for c in p], K)
    q = trim([K.convert(c) for c in q], K)
    if not p:
        raise DomainError("undefined resultant base: p is the zero polynomial")
    m = len(p) - 1
    if not q:
        return K.zero if m > 0 else K.one
    n = len(q) - 1
    if m == 0:
        return K.pow(p[0], n)
    return determinant(sylvester_matrix(p, q, K), K)


def interpolate(xs: Sequence, ys: Sequence, K) -> list:
    """Coefficients of the polynomial of degree < len(xs) through ``(xs, ys)`` over ``K``."""
    return interpolate_in(xs, ys, K, lambda y, s: K.div(y, s), K)


def interpolate_in(xs, ys, K, scale_div, R) -> list:
    """Newton interpolation with nodes in the field ``K`` and values in ring ``R``.

    ``scale_div(y, s)`` divides a ring value by a nonzero field scalar;
    ``R.mul`` must accept a field scalar converted by ``R.convert``.
    """
    n = len(xs)
    if len(set(xs)) != n:
        raise DomainError("interpolation nodes are not distinct")
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = scale_div(R.sub(coef[i], coef[i - 1]), K.sub(xs[i], xs[i - j]))
    # Newton form -> monomial basis, Horner from the top
    out = [coef[-1]]
    for k in range(n - 2, -1, -1):
        xk = R.convert(K.neg(xs[k])) if R is not K else K.neg(xs[k])
        shifted = [R.zero] + out
        for i, c in enumerate(out):
            shifted[i] = R.add(shifted[i], R.mul(xk, c))
        shifted[0] = R.add(shifted[0], coef[k])
        out = shifted
    while out and R.is_zero(out[-1]):
        out.pop()
    return out


def char_poly(rows: Sequence[Sequence], K) -> list:
    """``det(x I - M)`` as a monic coefficient list, by evaluation at 0..n."""
    from ..linalg import determinant

    n = len(rows)
    if n == 0:
        return [K.one]
    rows = [[K.convert(x) for x in r] for r in rows]
    xs = [K.convert(t) for t in range(n + 1)]
    if len(set(xs)) != n + 1:
        raise DomainError("field too small to interpolate the characteristic polynomial")
    ys = []
    for x in xs:
        m = [[K.sub(x if i == j else K.zero, rows[i][j]) for j in range(n)] for i in range(n)]
        ys.append(determinant(m, K))
    out = interpolate(xs, ys, K)
    out += [K.zero] * (n + 1 - len(out))
    return out
