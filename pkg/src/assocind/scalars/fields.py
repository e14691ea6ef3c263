"""Exact scalar domains.

Three domains share one duck-typed interface so that the elimination and
determinant code can be written once:

* ``QQ``: rationals, elements are :class:`fractions.Fraction`.
* ``PrimeField(p)``: residues mod ``p``, elements are plain ``int`` in ``[0, p)``.
* ``PolyRing`` (see :mod:`assocind.scalars.multipoly`): multivariate
  polynomials over ``QQ``; a ring, not a field.

Domains are immutable and hashable; elements never carry their domain.
"""

from __future__ import annotations

import functools
from fractions import Fraction

# Largest prime below 2**62.
DEFAULT_PRIME = 2**62 - 57


class DomainError(ValueError):
    """Raised for arithmetic that is undefined in a domain."""


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"n"`` (or an int) into a Fraction.

    Floats are rejected; files must carry exact literals.
    """
    if isinstance(text, bool):
        raise DomainError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise DomainError(f"not a rational literal: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise DomainError(f"not a rational literal: {text!r}") from None
    if d == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RationalField:
    """The field of rational numbers."""

    is_field = True
    characteristic = 0
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def convert(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return parse_rational(x)
        raise DomainError(f"cannot convert {x!r} to QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return Fraction(a) / b

    exact_div = div

    def pow(self, a, k: int):
        return a**k

    def to_json(self, a) -> str:
        return format_rational(a)


QQ = RationalField()


@functools.lru_cache(maxsize=64)
def _is_prime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))


class PrimeField:
    """Integers modulo a prime ``p``; elements are ints in ``[0, p)``."""

    is_field = True

    def __init__(self, p: int = DEFAULT_PRIME):
        if p != DEFAULT_PRIME and not _is_prime(p):
            raise DomainError(f"modulus must be prime, got {p}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    @property
    def name(self):
        return f"GF({self.p})"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def convert(self, x) -> int:
        if isinstance(x, bool):
            raise DomainError(f"cannot convert {x!r} to {self.name}")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction):
            d = x.denominator % self.p
            if d == 0:
                raise DomainError(f"denominator of {x} not invertible mod {self.p}")
            return x.numerator * pow(d, -1, self.p) % self.p
        raise DomainError(f"cannot convert {x!r} to {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    exact_div = div

    def pow(self, a, k: int):
        return pow(a, k, self.p)

    def to_json(self, a) -> str:
        return str(a)

    def random_element(self, rng) -> int:
        """Residue drawn from a :class:`numpy.random.Generator`."""
        if self.p <= 2**63:
            return int(rng.integers(0, self.p, dtype="int64"))
        nbytes = (self.p.bit_length() + 71) // 8
        return int.from_bytes(rng.bytes(nbytes), "little") % self.p
