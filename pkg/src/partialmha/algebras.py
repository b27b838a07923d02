"""Associative algebras, possibly non-unital, with nondegenerate product.

An algebra is presented either by a finite ordered basis with structure
constants, or by a group-indexed sparse basis with a computable product
rule (functions of finite support under the pointwise product, or the
group algebra under convolution).  Elements are finitely supported
coordinate maps in both cases.  Multipliers are compatible pairs of
operators realizing M(A); for sparse spaces they stay operational and
are compared on declared witness sets only.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Callable, Iterable, Optional

from . import linalg
from .groups import Group


class AlgebraElement:
    """A finitely supported coordinate vector in an algebra's basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "Algebra", coords: dict):
        self.algebra = algebra
        self.coords = {k: v for k, v in coords.items() if v}

    def __add__(self, other):
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coords)
        zero = self.algebra.field.zero()
        for k, v in other.coords.items():
            out[k] = out.get(k, zero) - v
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, {k: -v for k, v in self.coords.items()})

    def scale(self, scalar):
        return AlgebraElement(
            self.algebra, {k: scalar * v for k, v in self.coords.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return self.algebra.product(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra != self.algebra:
            raise ValueError("elements of different algebras")

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement)
                and other.algebra == self.algebra
                and other.coords == self.coords)

    def __hash__(self):
        return hash(tuple(sorted(self.coords.items())))

    def items(self):
        return sorted(self.coords.items())

    def __repr__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"{v}*[{k}]" for k, v in self.items())


class Algebra:
    """Base: a field, an optional finite canonical basis, a product rule."""

    field = None
    basis: Optional[list] = None
    signature = None

    @property
    def is_finite_dim(self) -> bool:
        return self.basis is not None

    @property
    def dim(self) -> int:
        if self.basis is None:
            raise ValueError(f"{self} is infinite dimensional")
        return len(self.basis)

    def basis_product(self, i, j) -> dict:
        raise NotImplementedError

    def element(self, coords: dict) -> AlgebraElement:
        return AlgebraElement(self, coords)

    def basis_element(self, label) -> AlgebraElement:
        return AlgebraElement(self, {label: self.field.one()})

    def basis_elements(self):
        return [self.basis_element(b) for b in self.basis]

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def product(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for i, xi in x.coords.items():
            for j, yj in y.coords.items():
                f = xi * yj
                for k, c in self.basis_product(i, j).items():
                    term = f * c
                    s = out.get(k)
                    out[k] = term if s is None else s + term
        return AlgebraElement(self, out)

    # dense coordinate bridge (finite-dim only)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except AttributeError:
            self._index = {b: i for i, b in enumerate(self.basis)}
            return self._index[label]

    def to_vec(self, x: AlgebraElement) -> list:
        v = linalg.zeros(self.field, self.dim)
        for k, c in x.coords.items():
            v[self.index(k)] = c
        return v

    def from_vec(self, vec) -> AlgebraElement:
        return AlgebraElement(
            self, {b: c for b, c in zip(self.basis, vec) if c})

    def unit(self) -> Optional[AlgebraElement]:
        """The two-sided unit, or ``None`` (solved once for finite dim)."""
        if hasattr(self, "_unit"):
            return self._unit
        if not self.is_finite_dim:
            self._unit = None
            return None
        u = find_local_unit(self, self.basis_elements())
        if u is not None:
            for b in self.basis_elements():
                if u * b != b or b * u != b:
                    u = None
                    break
        self._unit = u
        return u

    def __eq__(self, other):
        return isinstance(other, Algebra) and other.signature == self.signature

    def __hash__(self):
        return hash(self.signature)


class StructureConstantAlgebra(Algebra):
    """Finite-dimensional algebra from an explicit multiplication table.

    ``table[(i, j)]`` is the coordinate dict of e_i * e_j; missing pairs
    multiply to zero.  Associativity is checked eagerly on all basis
    triples and construction fails fast on a violation.
    """

    def __init__(self, field, labels: list, table: dict, name: str = "A",
                 check_associative: bool = True):
        self.field = field
        self.basis = list(labels)
        self.table = {
            k: {l: c for l, c in v.items() if c} for k, v in table.items()}
        self.name = name
        self.signature = (
            "structure", field, tuple(self.basis),
            tuple(sorted((k, tuple(sorted(v.items())))
                         for k, v in self.table.items() if v)))
        if check_associative:
            self._check_associativity()

    def _check_associativity(self):
        for a in self.basis_elements():
            for b in self.basis_elements():
                ab = a * b
                for c in self.basis_elements():
                    if (ab) * c != a * (b * c):
                        raise ValueError(
                            f"non-associative table for {self.name}: "
                            f"({a})({b})({c})")

    def basis_product(self, i, j) -> dict:
        return self.table.get((i, j), {})

    def __repr__(self):
        return f"{self.name}(dim {len(self.basis)})"


class FunctionAlgebra(Algebra):
    """Finitely supported functions G -> k under the pointwise product."""

    def __init__(self, group: Group, field):
        self.group = group
        self.field = field
        els = group.elements()
        self.basis = list(els) if els is not None else None
        self.signature = ("function-algebra", group, field)

    def basis_product(self, i, j) -> dict:
        return {i: self.field.one()} if i == j else {}

    def local_unit_label_pool(self, elems: Iterable[AlgebraElement]):
        pool = set()
        for x in elems:
            pool.update(x.coords)
        return sorted(pool)

    def indicator(self, labels) -> AlgebraElement:
        one = self.field.one()
        return AlgebraElement(self, {g: one for g in labels})

    def __repr__(self):
        return f"A_({self.group})"


class GroupAlgebra(Algebra):
    """The group algebra kG: finitely supported maps under convolution."""

    def __init__(self, group: Group, field):
        self.group = group
        self.field = field
        els = group.elements()
        self.basis = list(els) if els is not None else None
        self.signature = ("group-algebra", group, field)

    def basis_product(self, i, j) -> dict:
        return {self.group.op(i, j): self.field.one()}

    def local_unit_label_pool(self, elems):
        return [self.group.identity]

    def __repr__(self):
        return f"k[{self.group}]"


class TensorAlgebra(Algebra):
    """Tensor product of algebras; labels are tuples, product is legwise."""

    def __init__(self, factors: list):
        self.factors = list(factors)
        field = factors[0].field
        for f in factors:
            if f.field != field:
                raise ValueError("tensor factors over different fields")
        self.field = field
        if all(f.is_finite_dim for f in factors):
            self.basis = [tuple(t) for t in iproduct(*(f.basis for f in factors))]
        else:
            self.basis = None
        self.signature = ("tensor", tuple(f.signature for f in factors))

    def basis_product(self, i, j) -> dict:
        parts = [f.basis_product(a, b) for f, a, b in zip(self.factors, i, j)]
        out = {(): self.field.one()}
        for part in parts:
            nxt = {}
            for pref, c in out.items():
                for l, d in part.items():
                    nxt[pref + (l,)] = c * d
            out = nxt
            if not out:
                break
        return out

    def pure(self, *elems) -> AlgebraElement:
        if len(elems) != len(self.factors):
            raise ValueError("wrong number of tensor legs")
        out = {(): self.field.one()}
        for e in elems:
            nxt = {}
            for pref, c in out.items():
                for l, d in e.coords.items():
                    nxt[pref + (l,)] = c * d
            out = nxt
            if not out:
                break
        return AlgebraElement(self, out)

    def mul_leg(self, x: AlgebraElement, k: int, a: AlgebraElement,
                side: str) -> AlgebraElement:
        """Multiply leg ``k`` of ``x`` by ``a`` on the given side."""
        fac = self.factors[k]
        out: dict = {}
        for lab, c in x.coords.items():
            leg = fac.basis_element(lab[k])
            prod = (a * leg) if side == "left" else (leg * a)
            for l2, d in prod.coords.items():
                key = lab[:k] + (l2,) + lab[k + 1:]
                term = c * d
                s = out.get(key)
                out[key] = term if s is None else s + term
        return AlgebraElement(self, out)

    def map_leg(self, x: AlgebraElement, k: int,
                fn: Callable[[AlgebraElement], AlgebraElement]) -> AlgebraElement:
        """Apply a linear map to leg ``k`` (given on factor elements)."""
        fac = self.factors[k]
        out: dict = {}
        for lab, c in x.coords.items():
            img = fn(fac.basis_element(lab[k]))
            for l2, d in img.coords.items():
                key = lab[:k] + (l2,) + lab[k + 1:]
                term = c * d
                s = out.get(key)
                out[key] = term if s is None else s + term
        return AlgebraElement(self, out)

    def contract_leg(self, x: AlgebraElement, k: int,
                     phi: Callable[[AlgebraElement], object],
                     target: Optional["Algebra"] = None):
        """Apply a functional to leg ``k``; the remaining legs survive.

        With two factors the result is an element of the other factor;
        with more, of ``target`` (the tensor algebra of the rest).
        """
        rest = self.factors[:k] + self.factors[k + 1:]
        if target is None:
            target = rest[0] if len(rest) == 1 else TensorAlgebra(rest)
        fac = self.factors[k]
        out: dict = {}
        for lab, c in x.coords.items():
            s = phi(fac.basis_element(lab[k]))
            if not s:
                continue
            key = lab[:k] + lab[k + 1:]
            if len(rest) == 1:
                key = key[0]
            term = c * s
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
        return AlgebraElement(target, out)

    def swap(self, x: AlgebraElement) -> AlgebraElement:
        """The flip of a 2-tensor, landing in the reversed tensor algebra."""
        if len(self.factors) != 2:
            raise ValueError("swap is for 2-tensors")
        tgt = TensorAlgebra([self.factors[1], self.factors[0]])
        return AlgebraElement(tgt, {(b, a): c for (a, b), c in x.coords.items()})

    def __repr__(self):
        return " (x) ".join(repr(f) for f in self.factors)


class SubalgebraView(StructureConstantAlgebra):
    """A finite-dimensional subalgebra spanned by given parent elements.

    Products are computed in the parent and re-expressed in the span;
    construction fails if the span is not multiplicatively closed.
    """

    def __init__(self, parent: Algebra, gens: list, labels: list,
                 name: str = "S"):
        if len(gens) != len(labels):
            raise ValueError("one label per generator")
        self.parent = parent
        self.gens = list(gens)
        gen_vecs = [parent.to_vec(g) for g in gens]
        table = {}
        field = parent.field
        for i, li in enumerate(labels):
            for j, lj in enumerate(labels):
                p = gens[i] * gens[j]
                sol = linalg.solve(field, linalg.transpose(gen_vecs),
                                   parent.to_vec(p))
                if sol is None:
                    raise ValueError(
                        f"span not closed under products: [{li}]*[{lj}]")
                table[(li, lj)] = {l: c for l, c in zip(labels, sol) if c}
        super().__init__(field, labels, table, name=name)
        self._gen_vecs = gen_vecs

    def include(self, x: AlgebraElement) -> AlgebraElement:
        """The inclusion into the parent algebra."""
        out = self.parent.zero()
        for l, c in x.coords.items():
            out = out + self.gens[self.basis.index(l)].scale(c)
        return out

    def restrict(self, y: AlgebraElement) -> Optional[AlgebraElement]:
        """Express a parent element in the sub-basis, or ``None``."""
        sol = linalg.solve(self.field, linalg.transpose(self._gen_vecs),
                           self.parent.to_vec(y))
        if sol is None:
            return None
        if self.include(self.from_vec(sol)) != y:
            return None
        return self.from_vec(sol)


class LinMap:
    """A linear map between algebras, given by a rule on elements."""

    def __init__(self, domain: Algebra, codomain: Algebra,
                 fn: Callable[[AlgebraElement], AlgebraElement], name=""):
        self.domain = domain
        self.codomain = codomain
        self.fn = fn
        self.name = name

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return self.fn(x)

    def matrix(self):
        cols = [self.codomain.to_vec(self(self.domain.basis_element(b)))
                for b in self.domain.basis]
        return linalg.transpose(cols) if cols else []

    @classmethod
    def from_matrix(cls, domain, codomain, M, name=""):
        def fn(x):
            vec = linalg.mat_vec(M, domain.to_vec(x)) if M else []
            return codomain.from_vec(vec)
        return cls(domain, codomain, fn, name=name)

    def compose(self, other: "LinMap") -> "LinMap":
        return LinMap(other.domain, self.codomain,
                      lambda x: self(other(x)),
                      name=f"{self.name}∘{other.name}")


class Multiplier:
    """An element of M(A): a compatible pair of operators on A.

    ``left`` realizes x -> m*x and ``right`` realizes x -> x*m; the
    compatibility a(m b) = (a m) b ... rewritten a*left(b) = right(a)*b
    is checked on demand over a witness set (the full basis when A is
    finite dimensional).
    """

    def __init__(self, space: Algebra, left, right, name: str = "m"):
        self.space = space
        self.left = left
        self.right = right
        self.name = name

    @classmethod
    def from_element(cls, a: AlgebraElement) -> "Multiplier":
        return cls(a.algebra, lambda x: a * x, lambda x: x * a, name=repr(a))

    @classmethod
    def identity(cls, space: Algebra) -> "Multiplier":
        return cls(space, lambda x: x, lambda x: x, name="1")

    @classmethod
    def zero(cls, space: Algebra) -> "Multiplier":
        return cls(space, lambda x: space.zero(), lambda x: space.zero(),
                   name="0")

    @classmethod
    def from_matrices(cls, space: Algebra, L, R, name: str = "m"):
        return cls(space,
                   lambda x: space.from_vec(linalg.mat_vec(L, space.to_vec(x))),
                   lambda x: space.from_vec(linalg.mat_vec(R, space.to_vec(x))),
                   name=name)

    def __mul__(self, other: "Multiplier") -> "Multiplier":
        if not isinstance(other, Multiplier) or other.space != self.space:
            return NotImplemented
        return Multiplier(
            self.space,
            lambda x: self.left(other.left(x)),
            lambda x: other.right(self.right(x)),
            name=f"({self.name})({other.name})")

    def __add__(self, other):
        return Multiplier(self.space,
                          lambda x: self.left(x) + other.left(x),
                          lambda x: self.right(x) + other.right(x),
                          name=f"{self.name}+{other.name}")

    def __sub__(self, other):
        return Multiplier(self.space,
                          lambda x: self.left(x) - other.left(x),
                          lambda x: self.right(x) - other.right(x),
                          name=f"{self.name}-{other.name}")

    def scale(self, scalar):
        return Multiplier(self.space,
                          lambda x: self.left(x).scale(scalar),
                          lambda x: self.right(x).scale(scalar),
                          name=f"{scalar}*{self.name}")

    def matrices(self):
        sp = self.space
        L = linalg.transpose(
            [sp.to_vec(self.left(sp.basis_element(b))) for b in sp.basis])
        R = linalg.transpose(
            [sp.to_vec(self.right(sp.basis_element(b))) for b in sp.basis])
        return L, R

    def check_compatible(self, witnesses=None):
        ws = witnesses if witnesses is not None else self.space.basis_elements()
        for a in ws:
            for b in ws:
                if a * self.left(b) != self.right(a) * b:
                    return False, (a, b)
        return True, None


def multiplier_eq(m1: Multiplier, m2: Multiplier, witnesses=None):
    """Exact equality on the full basis, or on a declared witness set.

    Returns ``(equal, mode, counterexample)`` where mode is ``"exact"``
    for finite-dimensional spaces and ``"sample"`` otherwise.
    """
    if m1.space != m2.space:
        raise ValueError("multipliers on different spaces")
    if witnesses is None:
        if not m1.space.is_finite_dim:
            raise ValueError("witness set required on a sparse space")
        witnesses = m1.space.basis_elements()
        mode = "exact"
    else:
        witnesses = list(witnesses)
        if not witnesses:
            raise ValueError("empty witness set")
        mode = "exact" if m1.space.is_finite_dim else "sample"
    for w in witnesses:
        if m1.left(w) != m2.left(w):
            return False, mode, ("left", w)
        if m1.right(w) != m2.right(w):
            return False, mode, ("right", w)
    return True, mode, None


def check_nondegenerate(A: Algebra, window_labels=None):
    """Decide whether the canonical map A -> M(A) is injective.

    Returns ``(ok, witness)``; a failing witness is a nonzero element
    annihilating the (windowed) algebra on both sides.  For sparse
    algebras the check runs on the span of the window labels.
    """
    if A.is_finite_dim:
        labels = A.basis
    else:
        if window_labels is None:
            raise ValueError("sparse algebra needs a window")
        labels = list(window_labels)
    idx = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    rows = []
    for t in labels:
        left_out: dict = {}
        right_out: dict = {}
        for j, l in enumerate(labels):
            for k, c in A.basis_product(l, t).items():
                left_out.setdefault(k, linalg.zeros(A.field, n))[j] = c
            for k, c in A.basis_product(t, l).items():
                right_out.setdefault(k, linalg.zeros(A.field, n))[j] = c
        rows.extend(left_out.values())
        rows.extend(right_out.values())
    ker = linalg.kernel_basis(A.field, rows, ncols=n)
    if not ker:
        return True, None
    witness = AlgebraElement(A, {labels[i]: c for i, c in enumerate(ker[0]) if c})
    return False, witness


def find_local_unit(A: Algebra, elems) -> Optional[AlgebraElement]:
    """Solve for e with e*a = a = a*e for every a in the finite set."""
    elems = list(elems)
    if not elems:
        return A.zero()
    if A.is_finite_dim:
        pool = list(A.basis)
    else:
        pool = A.local_unit_label_pool(elems)
    if not pool:
        return None
    out_labels: set = set()
    for x in elems:
        out_labels.update(x.coords)
        for p in pool:
            for l in x.coords:
                out_labels.update(A.basis_product(p, l))
                out_labels.update(A.basis_product(l, p))
    out_list = sorted(out_labels)
    oidx = {l: i for i, l in enumerate(out_list)}
    rows, rhs = [], []
    zero = A.field.zero()
    for x in elems:
        left_rows = [linalg.zeros(A.field, len(pool)) for _ in out_list]
        right_rows = [linalg.zeros(A.field, len(pool)) for _ in out_list]
        for j, p in enumerate(pool):
            for l, xc in x.coords.items():
                for k, c in A.basis_product(p, l).items():
                    left_rows[oidx[k]][j] = left_rows[oidx[k]][j] + c * xc
                for k, c in A.basis_product(l, p).items():
                    right_rows[oidx[k]][j] = right_rows[oidx[k]][j] + c * xc
        target = [x.coords.get(l, zero) for l in out_list]
        rows.extend(left_rows)
        rhs.extend(target)
        rows.extend(right_rows)
        rhs.extend(target)
    sol = linalg.solve(A.field, rows, rhs)
    if sol is None:
        return None
    return AlgebraElement(A, {p: c for p, c in zip(pool, sol) if c})


def multiplier_algebra(A: Algebra):
    """A canonical basis of M(A) for a finite-dimensional algebra.

    Solves the defining linear system for operator pairs (U, V) over
    the basis: U(ab) = U(a)b, V(ab) = aV(b) and V(a)b = aU(b).
    """
    if not A.is_finite_dim:
        raise ValueError("M(A) is only materialized for finite dimension")
    n = A.dim
    field = A.field
    c = [[A.basis_product(A.basis[i], A.basis[j]) for j in range(n)]
         for i in range(n)]

    def cc(i, j, k):
        return c[i][j].get(A.basis[k], field.zero())

    nn = n * n
    rows = []
    for p in range(n):
        for q in range(n):
            for k in range(n):
                row = linalg.zeros(field, 2 * nn)
                # V(a)b = aU(b):  sum_i V[i][p] c[i][q][k] - sum_j U[j][q] c[p][j][k]
                for i in range(n):
                    row[nn + i * n + p] = row[nn + i * n + p] + cc(i, q, k)
                for j in range(n):
                    row[j * n + q] = row[j * n + q] - cc(p, j, k)
                rows.append(row)
                # U(ab) = U(a)b
                row = linalg.zeros(field, 2 * nn)
                for m in range(n):
                    if cc(p, q, m):
                        row[k * n + m] = row[k * n + m] + cc(p, q, m)
                for i in range(n):
                    row[i * n + p] = row[i * n + p] - cc(i, q, k)
                rows.append(row)
                # V(ab) = aV(b)
                row = linalg.zeros(field, 2 * nn)
                for m in range(n):
                    if cc(p, q, m):
                        row[nn + k * n + m] = row[nn + k * n + m] + cc(p, q, m)
                for j in range(n):
                    row[nn + j * n + q] = row[nn + j * n + q] - cc(p, j, k)
                rows.append(row)
    ker = linalg.kernel_basis(field, rows, ncols=2 * nn)
    basis = []
    for t, z in enumerate(ker):
        U = [z[i * n:(i + 1) * n] for i in range(n)]
        V = [z[nn + i * n:nn + (i + 1) * n] for i in range(n)]
        basis.append(Multiplier.from_matrices(A, U, V, name=f"m{t}"))
    return basis


def multiplier_coords(A: Algebra, basis, m: Multiplier):
    """Coordinates of ``m`` in a multiplier basis, or ``None``."""
    field = A.field

    def flat(mult):
        L, R = mult.matrices()
        return [x for row in L for x in row] + [x for row in R for x in row]

    cols = [flat(b) for b in basis]
    return linalg.solve(field, linalg.transpose(cols), flat(m))


def multiplier_from_function(space: FunctionAlgebra,
                             f: Callable) -> Multiplier:
    """Pointwise multiplication by a computable function on the group."""

    def act(x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(
            space, {g: f(g) * c for g, c in x.coords.items()})

    return Multiplier(space, act, act, name="mult-by-function")
