"""Exact scalars: rationals with arbitrary precision and prime fields GF(p).

Every computation in this package is exact; there is no floating point
anywhere.  A scalar is either a ``fractions.Fraction`` (always stored in
lowest terms with positive denominator) or a ``GFElement`` (residue in
``[0, p)``).  Field objects provide construction, parsing and the two
distinguished constants; arithmetic happens through the scalars' own
operators so that generic code never branches on the field.
"""

from __future__ import annotations

from fractions import Fraction


class GFElement:
    """Residue modulo a prime, with field arithmetic.

    Instances are immutable and hashable; the residue is normalised to
    ``[0, p)`` on construction.
    """

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        object.__setattr__(self, "val", val % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("GFElement is immutable")

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return GFElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.val + other.val, self.p)

    __radd__ = __add__

    def __neg__(self):
        return GFElement(-self.val, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.val - other.val, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GFElement(self.val * other.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.val == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(self.val * pow(other.val, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"{self.val}~GF({self.p})"


class Rationals:
    """The field of rational numbers, scalars are ``Fraction``."""

    name = "rational"
    characteristic = 0

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def of(self, num, den=1) -> Fraction:
        return Fraction(num, den)

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """GF(p) for a prime p, scalars are ``GFElement``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"gf:{p}"
        self.characteristic = p

    def zero(self) -> GFElement:
        return GFElement(0, self.p)

    def one(self) -> GFElement:
        return GFElement(1, self.p)

    def of(self, num, den=1) -> GFElement:
        if den % self.p == 0:
            raise ZeroDivisionError(
                f"denominator {den} vanishes in GF({self.p})")
        return GFElement(num, self.p) / GFElement(den, self.p)

    def parse(self, text: str) -> GFElement:
        if "/" in text:
            num, den = text.split("/")
            return self.of(int(num), int(den))
        return self.of(int(text))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def field_from_name(name: str):
    """Resolve a field spec string: ``rational`` or ``gf:<p>``."""
    if name == "rational":
        return QQ
    if name.startswith("gf:"):
        return PrimeField(int(name[3:]))
    raise ValueError(f"unknown field {name!r}")
