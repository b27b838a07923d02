"""Computable discrete groups.

A group exposes multiplication, inverse, identity and equality on
hashable, sortable element labels.  Finite groups enumerate their
elements in a fixed canonical order; infinite groups instead provide a
sampling window for sample-verified checks.
"""

from __future__ import annotations

from itertools import permutations


class Group:
    name: str

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    def elements(self):
        """Canonical element list for finite groups, ``None`` otherwise."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.elements() is not None

    def sample(self, window: int):
        """Deterministic finite sample of elements for windowed checks."""
        els = self.elements()
        if els is not None:
            return els
        raise NotImplementedError

    def __repr__(self):
        return self.name


class CyclicGroup(Group):
    """Z/n, elements 0..n-1 under addition mod n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("order must be positive")
        self.n = n
        self.name = f"Z/{n}"

    def op(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n

    @property
    def identity(self):
        return 0

    def elements(self):
        return list(range(self.n))

    def __eq__(self, other):
        return isinstance(other, CyclicGroup) and other.n == self.n

    def __hash__(self):
        return hash(("cyclic", self.n))


class SymmetricGroup3(Group):
    """S3 on {0,1,2}; elements are image tuples, composition (a*b)(i) = a(b(i))."""

    name = "S3"

    def op(self, a, b):
        return tuple(a[b[i]] for i in range(3))

    def inv(self, a):
        out = [0, 0, 0]
        for i in range(3):
            out[a[i]] = i
        return tuple(out)

    @property
    def identity(self):
        return (0, 1, 2)

    def elements(self):
        return sorted(permutations(range(3)))

    def __eq__(self, other):
        return isinstance(other, SymmetricGroup3)

    def __hash__(self):
        return hash("S3")


class IntegerGroup(Group):
    """Z under addition; infinite, sampled symmetrically around 0."""

    name = "Z"

    def op(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    @property
    def identity(self):
        return 0

    def sample(self, window: int):
        return list(range(-window, window + 1))

    def __eq__(self, other):
        return isinstance(other, IntegerGroup)

    def __hash__(self):
        return hash("Z")


def group_from_spec(kind: str, order: int | None = None) -> Group:
    if kind == "cyclic":
        if order is None:
            raise ValueError("cyclic group needs an order")
        return CyclicGroup(order)
    if kind in ("symmetric3", "s3"):
        return SymmetricGroup3()
    if kind == "integers":
        return IntegerGroup()
    raise ValueError(f"unknown group kind {kind!r}")
