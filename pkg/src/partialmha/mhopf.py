"""Regular multiplier Hopf algebras with integrals.

The comultiplication is never materialized as a map into M(A (x) A); it
is carried by the bijective primitives

    T1(a (x) b) = Delta(a)(1 (x) b)      T2(a (x) b) = (a (x) 1)Delta(b)

together with their inverses, and (for the covered forms needed by
symmetric partial actions) the companion products

    T3(a, b) = Delta(a)(b (x) 1)         T4(a, b) = (1 (x) a)Delta(b).

Concrete instances: the function algebra A_G of finitely supported maps
on a discrete group under the pointwise product, and the group algebra
kG under convolution.  For finite-dimensional unital carriers Delta(a)
itself is available as the unit-covered element T1(a (x) 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import linalg
from .algebras import (Algebra, AlgebraElement, FunctionAlgebra, GroupAlgebra,
                       Multiplier, StructureConstantAlgebra, TensorAlgebra,
                       multiplier_eq)
from .groups import Group
from .report import ConversionError, CrossCheckError, Report


def _lift_pair_rule(tensor: TensorAlgebra, rule) -> Callable:
    """Extend a rule on basis label pairs to a linear map on 2-tensors."""

    def apply(w: AlgebraElement) -> AlgebraElement:
        out = tensor.zero()
        for (la, lb), c in w.coords.items():
            out = out + rule(la, lb).scale(c)
        return out

    return apply


class MultiplierHopf:
    """A regular multiplier Hopf algebra, optionally with a left integral."""

    def __init__(self, algebra: Algebra, t1, t1_inv, t2, t2_inv,
                 counit, antipode, antipode_inv, integral=None,
                 t3_rule=None, t4_rule=None, name: str = "H",
                 group: Optional[Group] = None):
        self.algebra = algebra
        self.tensor_square = TensorAlgebra([algebra, algebra])
        self.t1, self.t1_inv = t1, t1_inv
        self.t2, self.t2_inv = t2, t2_inv
        self.counit = counit
        self.antipode = antipode
        self.antipode_inv = antipode_inv
        self.integral = integral
        self._t3_rule = t3_rule
        self._t4_rule = t4_rule
        self.name = name
        self.group = group

    # covered products -------------------------------------------------

    def t1p(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """Delta(a)(1 (x) b) as an element of A (x) A."""
        return self.t1(self.tensor_square.pure(a, b))

    def t2p(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """(a (x) 1)Delta(b)."""
        return self.t2(self.tensor_square.pure(a, b))

    def t3p(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """Delta(a)(b (x) 1)."""
        if self._t3_rule is not None:
            T = self.tensor_square
            out = T.zero()
            for la, ca in a.coords.items():
                for lb, cb in b.coords.items():
                    out = out + self._t3_rule(la, lb).scale(ca * cb)
            return out
        return self.delta_elem(a) * self.tensor_square.pure(b, self.unit())

    def t4p(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """(1 (x) a)Delta(b)."""
        if self._t4_rule is not None:
            T = self.tensor_square
            out = T.zero()
            for la, ca in a.coords.items():
                for lb, cb in b.coords.items():
                    out = out + self._t4_rule(la, lb).scale(ca * cb)
            return out
        return self.tensor_square.pure(self.unit(), a) * self.delta_elem(b)

    def unit(self) -> AlgebraElement:
        u = self.algebra.unit()
        if u is None:
            raise ValueError(f"{self.name}: carrier has no unit; "
                             "use a covered form instead")
        return u

    def delta_elem(self, a: AlgebraElement) -> AlgebraElement:
        """Delta(a) covered by the unit (finite-dimensional unital only)."""
        return self.t1p(a, self.unit())

    def delta2_elem(self, a: AlgebraElement) -> AlgebraElement:
        """(Delta (x) i)(Delta(a)) in A (x) A (x) A, unit-covered."""
        T3 = TensorAlgebra([self.algebra] * 3)
        out = T3.zero()
        for (u, v), c in self.delta_elem(a).coords.items():
            du = self.delta_elem(self.algebra.basis_element(u))
            for (p, q), d in du.coords.items():
                out = out + AlgebraElement(T3, {(p, q, v): c * d})
        return out

    # multiplier extensions ---------------------------------------------

    def delta_mult(self, m: Multiplier) -> Multiplier:
        """Delta extended to M(A), landing in M(A (x) A).

        Left action via T1:  Delta(m) w = T1((m (x) 1) T1^{-1}(w)); the
        right action is the mirror through T2.
        """
        T = self.tensor_square

        def left(w):
            return self.t1(T.map_leg(self.t1_inv(w), 0, m.left))

        def right(w):
            return self.t2(T.map_leg(self.t2_inv(w), 1, m.right))

        return Multiplier(T, left, right, name=f"Delta({m.name})")

    def antipode_mult(self, m: Multiplier) -> Multiplier:
        """S extended to M(A): S(m)a = S(S^{-1}(a) m)."""
        A = self.algebra
        return Multiplier(
            A,
            lambda a: self.antipode(m.right(self.antipode_inv(a))),
            lambda a: self.antipode(m.left(self.antipode_inv(a))),
            name=f"S({m.name})")

    def counit_mult(self, m: Multiplier, witnesses=None):
        """eps extended to M(A); fails if no witness has eps != 0."""
        ws = witnesses if witnesses is not None else self.algebra.basis_elements()
        value = None
        for a in ws:
            ea = self.counit(a)
            if ea:
                v = self.counit(m.left(a)) / ea
                if value is None:
                    value = v
                elif value != v:
                    raise CrossCheckError(
                        f"eps({m.name}) ill-defined on witnesses")
        if value is None:
            raise CrossCheckError("no witness with eps(a) != 0")
        return value

    # misc ---------------------------------------------------------------

    def witnesses(self, window: Optional[int] = None):
        if self.algebra.is_finite_dim:
            return self.algebra.basis_elements()
        if window is None:
            raise ValueError("sparse instance needs a window")
        return [self.algebra.basis_element(g)
                for g in self.group.sample(window)]

    @property
    def is_finite_dim(self) -> bool:
        return self.algebra.is_finite_dim

    def multiply_tensor(self, w: AlgebraElement) -> AlgebraElement:
        """The multiplication map m: A (x) A -> A."""
        out = self.algebra.zero()
        A = self.algebra
        for (la, lb), c in w.coords.items():
            out = out + (A.basis_element(la) * A.basis_element(lb)).scale(c)
        return out

    def __repr__(self):
        return self.name


def sweedler_cover(H: MultiplierHopf, a: AlgebraElement, cover: AlgebraElement,
                   mode: str = "1xb") -> AlgebraElement:
    """A covered coproduct expansion of Delta(a), as an element of A (x) A.

    mode "1xb": Delta(a)(1 (x) cover);  "bx1": Delta(a)(cover (x) 1);
    mode "ax1": (cover (x) 1)Delta(a);  "1xa": (1 (x) cover)Delta(a).
    """
    if mode == "1xb":
        return H.t1p(a, cover)
    if mode == "ax1":
        return H.t2p(cover, a)
    if mode == "bx1":
        return H.t3p(a, cover)
    if mode == "1xa":
        return H.t4p(cover, a)
    raise ValueError(f"unknown cover mode {mode!r}")


# concrete instances ------------------------------------------------------

def build_function_algebra_hopf(group: Group, field) -> MultiplierHopf:
    """A_G: finitely supported functions on G with the pointwise product.

    Delta(f)(p, q) = f(pq), eps(f) = f(1_G), (S f)(p) = f(p^{-1}) and
    phi(f) = sum_g f(g).
    """
    A = FunctionAlgebra(group, field)
    T = TensorAlgebra([A, A])
    op, inv = group.op, group.inv

    def pure(p, q):
        return T.pure(A.basis_element(p), A.basis_element(q))

    t1 = _lift_pair_rule(T, lambda r, q: pure(op(r, inv(q)), q))
    t1_inv = _lift_pair_rule(T, lambda s, q: pure(op(s, q), q))
    t2 = _lift_pair_rule(T, lambda p, h: pure(p, op(inv(p), h)))
    t2_inv = _lift_pair_rule(T, lambda p, q: pure(p, op(p, q)))

    def t3_rule(r, p):
        return pure(p, op(inv(p), r))

    def t4_rule(q, r):
        return pure(op(r, inv(q)), q)

    e = group.identity
    zero = field.zero()

    def counit(x):
        return x.coords.get(e, zero)

    def antipode(x):
        return AlgebraElement(A, {inv(g): c for g, c in x.coords.items()})

    def integral(x):
        acc = zero
        for c in x.coords.values():
            acc = acc + c
        return acc

    return MultiplierHopf(A, t1, t1_inv, t2, t2_inv, counit,
                          antipode, antipode, integral,
                          t3_rule=t3_rule, t4_rule=t4_rule,
                          name=f"A_({group})", group=group)


def build_group_algebra_hopf(group: Group, field) -> MultiplierHopf:
    """kG with the group-like coproduct Delta(g) = g (x) g.

    eps(g) = 1, S(g) = g^{-1}, and phi picks the coefficient of 1_G.
    """
    A = GroupAlgebra(group, field)
    T = TensorAlgebra([A, A])
    op, inv = group.op, group.inv

    def pure(p, q):
        return T.pure(A.basis_element(p), A.basis_element(q))

    t1 = _lift_pair_rule(T, lambda g, h: pure(g, op(g, h)))
    t1_inv = _lift_pair_rule(T, lambda g, h: pure(g, op(inv(g), h)))
    t2 = _lift_pair_rule(T, lambda g, h: pure(op(g, h), h))
    t2_inv = _lift_pair_rule(T, lambda g, h: pure(op(g, inv(h)), h))

    def t3_rule(g, h):
        return pure(op(g, h), g)

    def t4_rule(g, h):
        return pure(h, op(g, h))

    e = group.identity
    zero = field.zero()

    def counit(x):
        acc = zero
        for c in x.coords.values():
            acc = acc + c
        return acc

    def antipode(x):
        return AlgebraElement(A, {inv(g): c for g, c in x.coords.items()})

    def integral(x):
        return x.coords.get(e, zero)

    return MultiplierHopf(A, t1, t1_inv, t2, t2_inv, counit,
                          antipode, antipode, integral,
                          t3_rule=t3_rule, t4_rule=t4_rule,
                          name=f"k[{group}]", group=group)


# verification ------------------------------------------------------------

def verify_mhopf(H: MultiplierHopf, window: Optional[int] = None) -> Report:
    """Run the multiplier Hopf axioms exhaustively (or on a window)."""
    rep = Report(f"multiplier Hopf axioms for {H.name}")
    sample = not H.is_finite_dim
    ws = H.witnesses(window)
    T = H.tensor_square
    A = H.algebra

    def bijective(tmap, tmap_inv):
        def chk():
            if H.is_finite_dim:
                cols = [T.to_vec(tmap(T.pure(A.basis_element(i),
                                             A.basis_element(j))))
                        for i in A.basis for j in A.basis]
                n = len(cols)
                if linalg.rank(linalg.transpose(cols)) != n:
                    return False, "rank deficient"
                return True, None
            for a in ws:
                for b in ws:
                    w = T.pure(a, b)
                    if tmap_inv(tmap(w)) != w or tmap(tmap_inv(w)) != w:
                        return False, (a, b)
            return True, None
        return chk

    rep.run("t1-bijective", "T1(a (x) b) = Delta(a)(1 (x) b) is bijective",
            bijective(H.t1, H.t1_inv), sample=sample)
    rep.run("t2-bijective", "T2(a (x) b) = (a (x) 1)Delta(b) is bijective",
            bijective(H.t2, H.t2_inv), sample=sample)

    def counit_t1():
        for a in ws:
            for b in ws:
                lhs = T.contract_leg(H.t1p(a, b), 0, H.counit)
                if lhs != a * b:
                    return False, (a, b)
        return True, None

    rep.run("counit-t1", "(eps (x) i)(Delta(a)(1 (x) b)) = ab", counit_t1,
            sample=sample)

    def counit_t2():
        for a in ws:
            for b in ws:
                lhs = T.contract_leg(H.t2p(a, b), 1, H.counit)
                if lhs != a * b:
                    return False, (a, b)
        return True, None

    rep.run("counit-t2", "(i (x) eps)((a (x) 1)Delta(b)) = ab", counit_t2,
            sample=sample)

    def antipode_t1():
        for a in ws:
            for b in ws:
                lhs = H.multiply_tensor(T.map_leg(H.t1p(a, b), 0, H.antipode))
                if lhs != b.scale(H.counit(a)):
                    return False, (a, b)
        return True, None

    rep.run("antipode-t1", "m(S (x) i)(Delta(a)(1 (x) b)) = eps(a) b",
            antipode_t1, sample=sample)

    def antipode_t2():
        for a in ws:
            for b in ws:
                lhs = H.multiply_tensor(T.map_leg(H.t2p(a, b), 1, H.antipode))
                if lhs != a.scale(H.counit(b)):
                    return False, (a, b)
        return True, None

    rep.run("antipode-t2", "m(i (x) S)((a (x) 1)Delta(b)) = eps(b) a",
            antipode_t2, sample=sample)

    def regular():
        for a in ws:
            if H.antipode(H.antipode_inv(a)) != a:
                return False, a
            if H.antipode_inv(H.antipode(a)) != a:
                return False, a
        if H.is_finite_dim:
            M = [A.to_vec(H.antipode(b)) for b in A.basis_elements()]
            if linalg.rank(M) != A.dim:
                return False, "S(A) != A"
        return True, None

    rep.run("antipode-regular", "S S^{-1} = S^{-1} S = id and S(A) = A",
            regular, sample=sample)

    def coassoc():
        T3 = TensorAlgebra([A, A, A])
        for a in ws:
            for b in ws:
                for c in ws:
                    lhs = T3.zero()
                    for (u, v), k in H.t1p(b, c).coords.items():
                        w = H.t2p(a, A.basis_element(u))
                        for (p, q), d in w.coords.items():
                            lhs = lhs + AlgebraElement(T3, {(p, q, v): k * d})
                    rhs = T3.zero()
                    for (p, q), k in H.t2p(a, b).coords.items():
                        w = H.t1p(A.basis_element(q), c)
                        for (u, v), d in w.coords.items():
                            rhs = rhs + AlgebraElement(T3, {(p, u, v): k * d})
                    if lhs != rhs:
                        return False, (a, b, c)
        return True, None

    rep.run("coassociativity",
            "(a (x) 1 (x) 1)((Delta (x) i)(Delta(b)(1 (x) c))) = "
            "((i (x) Delta)((a (x) 1)Delta(b)))(1 (x) 1 (x) c)",
            coassoc, sample=sample)

    if H.integral is not None:
        def invariance():
            for b in ws:
                for a in ws:
                    lhs = T.contract_leg(H.t2p(b, a), 1, H.integral)
                    if lhs != b.scale(H.integral(a)):
                        return False, (b, a)
            return True, None

        rep.run("integral-left-invariance",
                "(i (x) phi)((b (x) 1)Delta(a)) = b phi(a)",
                invariance, sample=sample)
    return rep


# modular element -----------------------------------------------------------

@dataclass
class ModularElement:
    delta: Multiplier
    inverse: Multiplier
    report: Report

    @property
    def is_identity(self) -> bool:
        eq, _, _ = multiplier_eq(self.delta,
                                 Multiplier.identity(self.delta.space),
                                 witnesses=self._witnesses)
        return eq


def modular_element(H: MultiplierHopf, window: Optional[int] = None
                    ) -> ModularElement:
    """The unique invertible delta with (phi (x) i)Delta(a) = phi(a) delta.

    Solved from the first pivot a with phi(a) != 0 through the covered
    forms (phi (x) i)(T1(a (x) b)) = phi(a) (delta b) and
    (phi (x) i)((1 (x) b)Delta(a)) = phi(a) (b delta), then re-verified
    against every pivot in the witness set.
    """
    if H.integral is None:
        raise ValueError("modular element needs an integral")
    ws = H.witnesses(window)
    T = H.tensor_square
    pivot = None
    for a in ws:
        if H.integral(a):
            pivot = a
            break
    if pivot is None:
        raise ValueError("phi vanishes on all witnesses")
    pa = H.integral(pivot)

    def left(b):
        return T.contract_leg(H.t1p(pivot, b), 0, H.integral).scale(1 / pa)

    def right(b):
        return T.contract_leg(H.t4p(b, pivot), 0, H.integral).scale(1 / pa)

    delta = Multiplier(H.algebra, left, right, name="delta")
    rep = Report(f"modular element of {H.name}")
    sample = not H.is_finite_dim

    def all_pivots():
        for a2 in ws:
            p2 = H.integral(a2)
            if not p2:
                continue
            for b in ws:
                lhs = T.contract_leg(H.t1p(a2, b), 0, H.integral)
                if lhs != delta.left(b).scale(p2):
                    return False, (a2, b)
                rhs = T.contract_leg(H.t4p(b, a2), 0, H.integral)
                if rhs != delta.right(b).scale(p2):
                    return False, (a2, b)
        return True, None

    rep.run("modular-pivot-independence",
            "(phi (x) i)Delta(a) = phi(a) delta for every pivot a",
            all_pivots, sample=sample)

    def grouplike():
        dd = H.delta_mult(delta)
        for a in ws:
            for b in ws:
                w = T.pure(a, b)
                tgt = T.map_leg(T.map_leg(w, 0, delta.left), 1, delta.left)
                if dd.left(w) != tgt:
                    return False, (a, b)
                tgt = T.map_leg(T.map_leg(w, 0, delta.right), 1, delta.right)
                if dd.right(w) != tgt:
                    return False, (a, b)
        return True, None

    rep.run("modular-grouplike", "Delta(delta) = delta (x) delta", grouplike,
            sample=sample)

    sdelta = H.antipode_mult(delta)

    def inverse_law():
        prod = delta * sdelta
        prod2 = sdelta * delta
        ident = Multiplier.identity(H.algebra)
        for m in (prod, prod2):
            eq, _, wit = multiplier_eq(m, ident, witnesses=ws)
            if not eq:
                return False, wit
        return True, None

    rep.run("modular-inverse", "delta S(delta) = 1 = S(delta) delta",
            inverse_law, sample=sample)

    def phi_s():
        for a in ws:
            if H.integral(H.antipode(a)) != H.integral(delta.right(a)):
                return False, a
        return True, None

    rep.run("integral-antipode-twist", "phi(S(a)) = phi(a delta)", phi_s,
            sample=sample)

    out = ModularElement(delta, sdelta, rep)
    out._witnesses = ws
    return out


# slot conversion -----------------------------------------------------------

def right_slot_from_left(H: MultiplierHopf, a: AlgebraElement) -> AlgebraElement:
    """Solve phi(_ b) = phi(a _): find b with phi(x b) = phi(a x) for all x."""
    A = H.algebra
    P = [[H.integral(A.basis_element(i) * A.basis_element(j))
          for j in A.basis] for i in A.basis]
    target = [H.integral(a * A.basis_element(i)) for i in A.basis]
    sol = linalg.solve(A.field, P, target)
    if sol is None:
        raise ConversionError(f"phi({a} _) is not of the form phi(_ b)")
    return A.from_vec(sol)


def left_slot_from_right(H: MultiplierHopf, a: AlgebraElement) -> AlgebraElement:
    """Solve phi(b _) = phi(_ a): find b with phi(b x) = phi(x a) for all x."""
    A = H.algebra
    P = [[H.integral(A.basis_element(j) * A.basis_element(i))
          for j in A.basis] for i in A.basis]
    target = [H.integral(A.basis_element(i) * a) for i in A.basis]
    sol = linalg.solve(A.field, P, target)
    if sol is None:
        raise ConversionError(f"phi(_ {a}) is not of the form phi(b _)")
    return A.from_vec(sol)


# dual algebra ---------------------------------------------------------------

@dataclass
class DualAlgebra:
    """The dual multiplier Hopf algebra built from the left integral.

    The carrier's basis labels mirror the base labels: label g stands
    for the functional phi(_ e_g).  ``dual_element`` / ``index_element``
    translate between an index a in A and the functional phi(_ a);
    ``evaluate`` computes phi(x a).  ``psi_hat`` is the dual integral
    phi-hat(phi(_ a)) = eps(a).  ``model``, when available, is the
    concrete realization (kG for A_G, A_G for kG) with the isomorphism.
    """

    hopf: MultiplierHopf
    base: MultiplierHopf
    psi_hat: Callable
    report: Report
    model: Optional[tuple] = None    # (model_hopf, to_model, from_model)

    def dual_element(self, a: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.hopf.algebra, dict(a.coords))

    def index_element(self, w: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.base.algebra, dict(w.coords))

    def evaluate(self, w: AlgebraElement, x: AlgebraElement):
        return self.base.integral(x * self.index_element(w))


def dual_algebra(H: MultiplierHopf) -> DualAlgebra:
    """Construct A-hat = {phi(_ a)} with its full Hopf structure.

    The product is solved from (wu)(a) = (w (x) u)Delta(a), the
    coproduct primitives from the two defining evaluations against T2
    and T1, the antipode from composition with S.  All derived
    identities are re-verified and recorded in the report.
    """
    if H.integral is None:
        raise ValueError("the dual needs a left integral")
    if not H.is_finite_dim:
        return _dual_by_model(H)
    A = H.algebra
    field = A.field
    n = A.dim
    rep = Report(f"dual of {H.name}")
    bel = A.basis_elements()

    P = [[H.integral(x * y) for y in bel] for x in bel]
    if linalg.rank(P) != n:
        raise CrossCheckError("integral pairing phi(xy) is degenerate")
    Pinv = [linalg.solve(field, P, col) for col in linalg.transpose(
        linalg.identity_matrix(field, n))]
    Pinv = linalg.transpose(Pinv)

    def solve_functional(values):
        """phi(_ c) matching the given values on the basis -> c coords."""
        return linalg.mat_vec(Pinv, values)

    # product table: (w_j w_k)(e_i) = (w_j (x) w_k)(Delta(e_i))
    delta_cache = [H.delta_elem(x) for x in bel]
    table = {}
    for j, lj in enumerate(A.basis):
        for k, lk in enumerate(A.basis):
            values = []
            for i in range(n):
                acc = field.zero()
                for (u, v), c in delta_cache[i].coords.items():
                    acc = acc + c * H.integral(
                        A.basis_element(u) * bel[j]) * H.integral(
                        A.basis_element(v) * bel[k])
                values.append(acc)
            coords = solve_functional(values)
            table[(lj, lk)] = {A.basis[m]: c for m, c in enumerate(coords) if c}
    dual_carrier = StructureConstantAlgebra(
        field, list(A.basis), table, name=f"dual({H.name})")

    Tdual = TensorAlgebra([dual_carrier, dual_carrier])

    def solve_tensor_functional(values):
        """Element of A-hat (x) A-hat from its evaluations on e_a (x) e_b."""
        out: dict = {}
        for c1 in range(n):
            for c2 in range(n):
                acc = field.zero()
                for a in range(n):
                    pa = Pinv[c1][a]
                    if not pa:
                        continue
                    for b in range(n):
                        v = values[a][b]
                        if v:
                            acc = acc + pa * Pinv[c2][b] * v
                key = (A.basis[c1], A.basis[c2])
                if acc:
                    out[key] = acc
        return AlgebraElement(Tdual, out)

    def pair_eval(w_idx, u_idx, t_elem):
        acc = field.zero()
        for (p, q), c in t_elem.coords.items():
            acc = acc + c * H.integral(
                A.basis_element(p) * w_idx) * H.integral(
                A.basis_element(q) * u_idx)
        return acc

    t1_cols, t2_cols = {}, {}
    for lj in A.basis:
        for lk in A.basis:
            ej, ek = A.basis_element(lj), A.basis_element(lk)
            vals1 = [[pair_eval(ej, ek, H.t2p(bel[a], bel[b]))
                      for b in range(n)] for a in range(n)]
            t1_cols[(lj, lk)] = solve_tensor_functional(vals1)
            vals2 = [[pair_eval(ej, ek, H.t1p(bel[a], bel[b]))
                      for b in range(n)] for a in range(n)]
            t2_cols[(lj, lk)] = solve_tensor_functional(vals2)

    t1_hat = _lift_pair_rule(Tdual, lambda j, k: t1_cols[(j, k)])
    t2_hat = _lift_pair_rule(Tdual, lambda j, k: t2_cols[(j, k)])

    def invert_tensor_map(tmap):
        cols = [Tdual.to_vec(tmap(Tdual.pure(
            dual_carrier.basis_element(i), dual_carrier.basis_element(j))))
            for i in dual_carrier.basis for j in dual_carrier.basis]
        M = linalg.transpose(cols)
        nn = len(cols)
        Minv_cols = []
        ident = linalg.identity_matrix(field, nn)
        for c in range(nn):
            sol = linalg.solve(field, M, [ident[r][c] for r in range(nn)])
            if sol is None:
                raise CrossCheckError("dual coproduct primitive not bijective")
            Minv_cols.append(sol)
        Minv = linalg.transpose(Minv_cols)
        return lambda w: Tdual.from_vec(linalg.mat_vec(Minv, Tdual.to_vec(w)))

    t1_hat_inv = invert_tensor_map(t1_hat)
    t2_hat_inv = invert_tensor_map(t2_hat)

    def counit_hat(w):
        acc = field.zero()
        for l, c in w.coords.items():
            acc = acc + c * H.integral(A.basis_element(l))
        return acc

    def _antipode_from(smap):
        cols = {}
        for lj in A.basis:
            ej = A.basis_element(lj)
            values = [H.integral(smap(x) * ej) for x in bel]
            cols[lj] = solve_functional(values)

        def act(w):
            out = linalg.zeros(field, n)
            for l, c in w.coords.items():
                col = cols[l]
                out = [o + c * v for o, v in zip(out, col)]
            return AlgebraElement(
                dual_carrier,
                {A.basis[m]: v for m, v in enumerate(out) if v})
        return act

    antipode_hat = _antipode_from(H.antipode)
    antipode_hat_inv = _antipode_from(H.antipode_inv)

    def psi_hat(w):
        acc = field.zero()
        for l, c in w.coords.items():
            acc = acc + c * H.counit(A.basis_element(l))
        return acc

    dual_hopf = MultiplierHopf(
        dual_carrier, t1_hat, t1_hat_inv, t2_hat, t2_hat_inv,
        counit_hat, antipode_hat, antipode_hat_inv, integral=psi_hat,
        name=f"dual({H.name})")

    dual = DualAlgebra(dual_hopf, H, psi_hat, rep)

    # derived identities -----------------------------------------------
    def escritadelta1():
        for la in A.basis:
            for lb in A.basis:
                ea = A.basis_element(la)
                lhs = t1_cols[(la, lb)]
                rhs = Tdual.zero()
                for (u, v), c in H.delta_elem(A.basis_element(lb)).coords.items():
                    first = H.antipode_inv(A.basis_element(u)) * ea
                    rhs = rhs + Tdual.pure(
                        dual.dual_element(first),
                        dual.dual_element(A.basis_element(v))).scale(c)
                if lhs != rhs:
                    return False, (la, lb)
        return True, None

    rep.run("dual-coproduct-antipode-shift",
            "Delta-hat(phi(_ a))(1 (x) phi(_ b)) = "
            "phi(_ S^{-1}(b_(1)) a) (x) phi(_ b_(2))",
            escritadelta1)

    unit_dual = dual_carrier.unit()
    if unit_dual is None:
        raise CrossCheckError("dual carrier has no unit")

    def escritadelta2():
        for la in A.basis:
            for lb in A.basis:
                wa = dual_carrier.basis_element(la)
                wb = dual_carrier.basis_element(lb)
                dh = t1_hat(Tdual.pure(wa, unit_dual))
                lhs = Tdual.map_leg(
                    Tdual.pure(unit_dual, antipode_hat_inv(wb)) * dh,
                    1, antipode_hat)
                rhs = Tdual.zero()
                ea = A.basis_element(la)
                for (u, v), c in H.delta_elem(A.basis_element(lb)).coords.items():
                    rhs = rhs + Tdual.pure(
                        dual.dual_element(A.basis_element(u) * ea),
                        dual.dual_element(A.basis_element(v))).scale(c)
                if lhs != rhs:
                    return False, (la, lb)
        return True, None

    rep.run("dual-coproduct-left-shift",
            "(i (x) S-hat)((1 (x) S-hat^{-1}(phi(_ b))) Delta-hat(phi(_ a)))"
            " = phi(_ b_(1) a) (x) phi(_ b_(2))",
            escritadelta2)

    def dual_integral_antipode():
        for lb in A.basis:
            sb = H.antipode(A.basis_element(lb))
            if psi_hat(dual.dual_element(sb)) != H.counit(A.basis_element(lb)):
                return False, lb
        return True, None

    rep.run("dual-integral-antipode", "psi-hat(phi(_ S(b))) = eps(b)",
            dual_integral_antipode)

    def epsilon_hat_pairing():
        for la in A.basis:
            if counit_hat(dual_carrier.basis_element(la)) != H.integral(
                    A.basis_element(la)):
                return False, la
        return True, None

    rep.run("dual-counit", "eps-hat(phi(_ a)) = phi(a)", epsilon_hat_pairing)

    rep.extend(verify_mhopf(dual_hopf), prefix="dual-")

    # concrete model ----------------------------------------------------
    if H.group is not None and isinstance(A, GroupAlgebra):
        model = build_function_algebra_hopf(H.group, field)

        def to_model(w):
            return AlgebraElement(
                model.algebra,
                {H.group.inv(g): c for g, c in w.coords.items()})

        def from_model(f):
            return AlgebraElement(
                dual_carrier,
                {H.group.inv(g): c for g, c in f.coords.items()})

        dual.model = (model, to_model, from_model)
    elif H.group is not None and isinstance(A, FunctionAlgebra):
        model = build_group_algebra_hopf(H.group, field)

        def to_model(w):
            return AlgebraElement(model.algebra, dict(w.coords))

        def from_model(x):
            return AlgebraElement(dual_carrier, dict(x.coords))

        dual.model = (model, to_model, from_model)

    if dual.model is not None:
        model, to_model, _ = dual.model

        def theta_iso():
            cols = [model.algebra.to_vec(
                to_model(dual_carrier.basis_element(l)))
                for l in dual_carrier.basis]
            if linalg.rank(linalg.transpose(cols)) != n:
                return False, "not bijective"
            for lj in dual_carrier.basis:
                for lk in dual_carrier.basis:
                    wj = dual_carrier.basis_element(lj)
                    wk = dual_carrier.basis_element(lk)
                    if to_model(wj * wk) != to_model(wj) * to_model(wk):
                        return False, (lj, lk)
            return True, None

        rep.run("dual-model-isomorphism",
                "theta is a bijective algebra map onto the concrete model",
                theta_iso)

    if not rep.passed:
        raise CrossCheckError(
            f"dual construction self-checks failed: "
            f"{rep.first_failure().name}")
    return dual


def _dual_by_model(H: MultiplierHopf) -> DualAlgebra:
    """For infinite groups: the dual is the concrete model with the pairing."""
    if H.group is None:
        raise ValueError("sparse dual needs a group instance")
    field = H.algebra.field
    rep = Report(f"dual of {H.name} (concrete model)")
    if isinstance(H.algebra, GroupAlgebra):
        model = build_function_algebra_hopf(H.group, field)

        def dual_element(a):
            return AlgebraElement(
                model.algebra, {H.group.inv(g): c for g, c in a.coords.items()})

        def index_element(w):
            return AlgebraElement(
                H.algebra, {H.group.inv(g): c for g, c in w.coords.items()})
    elif isinstance(H.algebra, FunctionAlgebra):
        model = build_group_algebra_hopf(H.group, field)

        def dual_element(a):
            return AlgebraElement(model.algebra, dict(a.coords))

        def index_element(w):
            return AlgebraElement(H.algebra, dict(w.coords))
    else:
        raise ValueError("no concrete dual model for this carrier")

    def psi_hat(w):
        acc = field.zero()
        for g, c in index_element(w).coords.items():
            acc = acc + c * H.counit(H.algebra.basis_element(g))
        return acc

    dual = DualAlgebra(model, H, psi_hat, rep)
    dual.dual_element = dual_element
    dual.index_element = index_element
    return dual
