"""Partial comodule algebras (R, rho, E) over a multiplier Hopf algebra.

The coaction is stored operationally by its two covered maps

    rho1(x, a) = rho(x)(1 (x) a)        rho2(a, x) = (1 (x) a)rho(x)

both landing in R (x) A, together with the idempotent multiplier E on
R (x) A.  rho(x) itself is recovered as the multiplier

    rho(x) . (z (x) c) = rho1(x, c)(z (x) 1)
    (z (x) c) . rho(x) = (z (x) 1)rho2(c, x)

and every axiom of the definition, the derived lemmas and the reduced /
restrict refinements are exhaustive exact checks over basis tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from . import linalg
from .algebras import (Algebra, AlgebraElement, Multiplier, TensorAlgebra,
                       check_nondegenerate, multiplier_algebra, multiplier_eq)
from .mhopf import MultiplierHopf
from .report import CrossCheckError, HypothesisFailure, Report


@dataclass
class PartialCoaction:
    """A (claimed) partial A-comodule algebra; run ``verify`` to certify."""

    hopf: MultiplierHopf
    R: Algebra
    rho1: Callable  # (x, a) -> element of R (x) A
    rho2: Callable  # (a, x) -> element of R (x) A
    E: Multiplier   # on R (x) A
    symmetric: bool = False
    reduced: bool = False
    restrict_witness: Optional[AlgebraElement] = None
    name: str = "partial coaction"
    tensor: TensorAlgebra = dc_field(init=False)

    def __post_init__(self):
        if self.R.is_finite_dim:
            ok, wit = check_nondegenerate(self.R)
            if not ok:
                raise HypothesisFailure(
                    "the product in R is nondegenerate", witness=wit)
        self.tensor = TensorAlgebra([self.R, self.hopf.algebra])

    def rho_mult(self, x: AlgebraElement) -> Multiplier:
        """rho(x) as a multiplier on R (x) A."""
        T = self.tensor
        R, A = self.R, self.hopf.algebra

        def left(w):
            out = T.zero()
            for (z, c), k in w.coords.items():
                img = self.rho1(x, A.basis_element(c))
                out = out + T.mul_leg(img, 0, R.basis_element(z),
                                      "right").scale(k)
            return out

        def right(w):
            out = T.zero()
            for (z, c), k in w.coords.items():
                img = self.rho2(A.basis_element(c), x)
                out = out + T.mul_leg(img, 0, R.basis_element(z),
                                      "left").scale(k)
            return out

        return Multiplier(T, left, right, name=f"rho({x})")

    def rho_elem(self, x: AlgebraElement) -> AlgebraElement:
        """rho(x) as an element of R (x) A (unital R and A only)."""
        ru = self.R.unit()
        if ru is None:
            raise ValueError("rho(x) is only an element when R is unital")
        return self.tensor.mul_leg(
            self.rho1(x, self.hopf.algebra.unit()), 0, ru, "right")


def rho_from_element_map(hopf: MultiplierHopf, R: Algebra,
                         table: Callable) -> tuple:
    """Build (rho1, rho2) from x -> rho(x) given as an element of R (x) A."""
    T = TensorAlgebra([R, hopf.algebra])

    def rho1(x, a):
        return T.mul_leg(table(x), 1, a, "right")

    def rho2(a, x):
        return T.mul_leg(table(x), 1, a, "left")

    return rho1, rho2


class _CoactionOps:
    """Operator calculus on R (x) A (x) A for the covered identities."""

    def __init__(self, C: PartialCoaction):
        self.C = C
        self.H = C.hopf
        self.A = C.hopf.algebra
        self.R = C.R
        self.T2 = C.tensor
        self.T3 = TensorAlgebra([C.R, self.A, self.A])

    def triple_basis(self):
        return [self.T3.pure(self.R.basis_element(z),
                             self.A.basis_element(c),
                             self.A.basis_element(d))
                for z in self.R.basis
                for c in self.A.basis
                for d in self.A.basis]

    def _split12(self, w):
        """Group a triple tensor by legs (0, 1), listing (leg2, coeff)."""
        groups: dict = {}
        for (z, c, d), k in w.coords.items():
            groups.setdefault((z, c), []).append((d, k))
        return groups

    def lhs_from_element(self, base: AlgebraElement) -> Multiplier:
        """(rho (x) i) of a concrete element of R (x) A, on R (x) A (x) A."""

        def act(side):
            def go(w):
                out = self.T3.zero()
                for (w_lab, b_lab), k in base.coords.items():
                    rm = self.C.rho_mult(self.R.basis_element(w_lab))
                    bb = self.A.basis_element(b_lab)
                    for (z, c), pairs in self._split12(w).items():
                        pair = self.T2.pure(self.R.basis_element(z),
                                            self.A.basis_element(c))
                        img = rm.left(pair) if side == "left" else rm.right(pair)
                        for d, kk in pairs:
                            de = self.A.basis_element(d)
                            prod = (bb * de) if side == "left" else (de * bb)
                            for (z2, c2), k2 in img.coords.items():
                                for d2, k3 in prod.coords.items():
                                    out = out + AlgebraElement(
                                        self.T3, {(z2, c2, d2): k * kk * k2 * k3})
                return out
            return go

        return Multiplier(self.T3, act("left"), act("right"),
                          name="(rho x i)(elt)")

    def rho_leg01(self, x: AlgebraElement) -> Multiplier:
        """rho(x) (x) 1 acting on R (x) A (x) A."""
        rm = self.C.rho_mult(x)

        def act(fn):
            def go(w):
                out = self.T3.zero()
                for (z, c), pairs in self._split12(w).items():
                    img = fn(self.T2.pure(self.R.basis_element(z),
                                          self.A.basis_element(c)))
                    for d, k in pairs:
                        for (z2, c2), k2 in img.coords.items():
                            out = out + AlgebraElement(
                                self.T3, {(z2, c2, d): k * k2})
                return out
            return go

        return Multiplier(self.T3, act(rm.left), act(rm.right),
                          name=f"rho({x}) x 1")

    def id_delta_rho(self, x: AlgebraElement) -> Multiplier:
        """(i (x) Delta)(rho(x)) on R (x) A (x) A, via T1/T2 covers."""

        def left(w):
            out = self.T3.zero()
            for (z, c, d), k in w.coords.items():
                cd = self.H.t1_inv(self.H.tensor_square.pure(
                    self.A.basis_element(c), self.A.basis_element(d)))
                for (a_lab, e_lab), k2 in cd.coords.items():
                    img = self.C.rho1(x, self.A.basis_element(a_lab))
                    for (w_lab, b_lab), k3 in img.coords.items():
                        wz = self.R.basis_element(w_lab) * self.R.basis_element(z)
                        inner = self.H.t1p(self.A.basis_element(b_lab),
                                           self.A.basis_element(e_lab))
                        for z2, k4 in wz.coords.items():
                            for (u, v), k5 in inner.coords.items():
                                out = out + AlgebraElement(
                                    self.T3, {(z2, u, v): k * k2 * k3 * k4 * k5})
            return out

        def right(w):
            out = self.T3.zero()
            for (z, c, d), k in w.coords.items():
                cd = self.H.t2_inv(self.H.tensor_square.pure(
                    self.A.basis_element(c), self.A.basis_element(d)))
                for (c_lab, a_lab), k2 in cd.coords.items():
                    img = self.C.rho2(self.A.basis_element(a_lab), x)
                    for (w_lab, b_lab), k3 in img.coords.items():
                        zw = self.R.basis_element(z) * self.R.basis_element(w_lab)
                        inner = self.H.t2p(self.A.basis_element(c_lab),
                                           self.A.basis_element(b_lab))
                        for z2, k4 in zw.coords.items():
                            for (u, v), k5 in inner.coords.items():
                                out = out + AlgebraElement(
                                    self.T3, {(z2, u, v): k * k2 * k3 * k4 * k5})
            return out

        return Multiplier(self.T3, left, right, name=f"(i x Delta)rho({x})")

    def e_leg01(self) -> Multiplier:
        """E (x) 1 on R (x) A (x) A."""

        def act(fn):
            def go(w):
                out = self.T3.zero()
                for (z, c), pairs in self._split12(w).items():
                    img = fn(self.T2.pure(self.R.basis_element(z),
                                          self.A.basis_element(c)))
                    for d, k in pairs:
                        for (z2, c2), k2 in img.coords.items():
                            out = out + AlgebraElement(
                                self.T3, {(z2, c2, d): k * k2})
                return out
            return go

        return Multiplier(self.T3, act(self.C.E.left), act(self.C.E.right),
                          name="E x 1")

    def third_leg(self, b: AlgebraElement) -> Multiplier:
        """1 (x) 1 (x) b on R (x) A (x) A."""
        return Multiplier(self.T3,
                          lambda w: self.T3.mul_leg(w, 2, b, "left"),
                          lambda w: self.T3.mul_leg(w, 2, b, "right"),
                          name="1 x 1 x b")


def _mult_eq_on(m1, m2, witnesses):
    eq, _, wit = multiplier_eq(m1, m2, witnesses=witnesses)
    return eq, wit


def verify_partial_coaction(C: PartialCoaction,
                            window: Optional[int] = None) -> Report:
    """Verify the axioms: exhaustively when everything is finite
    dimensional, pointwise on a witness window otherwise."""
    if not (C.R.is_finite_dim and C.hopf.algebra.is_finite_dim):
        if window is None:
            raise ValueError("sparse instance needs a witness window")
        return _verify_partial_coaction_windowed(C, window)
    rep = Report(f"{C.name}: partial comodule algebra axioms")
    H, R, A, T = C.hopf, C.R, C.hopf.algebra, C.tensor
    field = R.field
    rbasis = R.basis_elements()
    abasis = A.basis_elements()
    tensor_basis = [T.pure(z, c) for z in rbasis for c in abasis]

    def injective():
        cols = []
        for x in rbasis:
            stacked = []
            for a in abasis:
                stacked.extend(T.to_vec(C.rho1(x, a)))
            cols.append(stacked)
        ker = linalg.kernel_basis(field, linalg.transpose(cols),
                                  ncols=len(cols))
        if ker:
            return False, R.from_vec(ker[0])
        return True, None

    rep.run("rho-injective", "rho is injective", injective)

    def multiplicative():
        for x in rbasis:
            rx = C.rho_mult(x)
            for y in rbasis:
                for a in abasis:
                    if C.rho1(x * y, a) != rx.left(C.rho1(y, a)):
                        return False, (x, y, a)
        return True, None

    rep.run("rho-multiplicative", "rho(xy)(1 (x) a) = rho(x)(rho(y)(1 (x) a))",
            multiplicative)

    mr_basis = multiplier_algebra(R)

    def in_MR_tensor_A(m: Multiplier) -> bool:
        cols = []
        for mb in mr_basis:
            for a in A.basis:
                ae = A.basis_element(a)
                col = []
                for w in tensor_basis:
                    col.extend(T.to_vec(
                        T.mul_leg(T.map_leg(w, 0, mb.left), 1, ae, "left")))
                for w in tensor_basis:
                    col.extend(T.to_vec(
                        T.mul_leg(T.map_leg(w, 0, mb.right), 1, ae, "right")))
                cols.append(col)
        tgt = []
        for w in tensor_basis:
            tgt.extend(T.to_vec(m.left(w)))
        for w in tensor_basis:
            tgt.extend(T.to_vec(m.right(w)))
        return linalg.solve(field, linalg.transpose(cols), tgt) is not None

    def axiom_i():
        for a in abasis:
            onea = Multiplier(
                T, lambda w, a=a: T.mul_leg(w, 1, a, "left"),
                lambda w, a=a: T.mul_leg(w, 1, a, "right"), name="1xa")
            if not in_MR_tensor_A(onea * C.E):
                return False, f"(1 x {a})E"
            if not in_MR_tensor_A(C.E * onea):
                return False, f"E(1 x {a})"
        return True, None

    rep.run("idempotent-legs",
            "(1 (x) A)E and E(1 (x) A) lie in M(R) (x) A", axiom_i)

    rho_range = linalg.Subspace(
        field, T.dim,
        [T.to_vec(C.rho1(x, a)) for x in rbasis for a in abasis])
    rho_range2 = linalg.Subspace(
        field, T.dim,
        [T.to_vec(C.rho2(a, x)) for x in rbasis for a in abasis])
    e_range = linalg.Subspace(
        field, T.dim, [T.to_vec(C.E.left(w)) for w in tensor_basis])
    e_range2 = linalg.Subspace(
        field, T.dim, [T.to_vec(C.E.right(w)) for w in tensor_basis])

    rep.run("range-compat",
            "rho(R)(1 (x) A) <= E(R (x) A) and (1 (x) A)rho(R) <= (R (x) A)E",
            lambda: (e_range.contains_space(rho_range)
                     and e_range2.contains_space(rho_range2), None))

    ops = _CoactionOps(C)
    triple_ws = ops.triple_basis()

    def coassoc(side_first: str, e_side: str):
        def chk():
            for x in rbasis:
                idr = ops.id_delta_rho(x)
                e01 = ops.e_leg01()
                core = (e01 * idr) if e_side == "left" else (idr * e01)
                for b in abasis:
                    base = C.rho1(x, b) if side_first == "right" \
                        else C.rho2(b, x)
                    lhs = ops.lhs_from_element(base)
                    third = ops.third_leg(b)
                    rhs = (core * third) if side_first == "right" \
                        else (third * core)
                    eq, wit = _mult_eq_on(lhs, rhs, triple_ws)
                    if not eq:
                        return False, (x, b, wit)
            return True, None
        return chk

    rep.run("coassoc-covered-1",
            "(rho (x) i)(rho(x)(1 (x) b)) = "
            "(E (x) 1)(i (x) Delta)(rho(x))(1 (x) 1 (x) b)",
            coassoc("right", "left"))
    rep.run("coassoc-covered-2",
            "(rho (x) i)((1 (x) b)rho(x)) = "
            "(1 (x) 1 (x) b)(E (x) 1)(i (x) Delta)(rho(x))",
            coassoc("left", "left"))
    if C.symmetric:
        rep.run("coassoc-covered-3",
                "(rho (x) i)(rho(x)(1 (x) b)) = "
                "(i (x) Delta)(rho(x))(E (x) 1)(1 (x) 1 (x) b)",
                coassoc("right", "right"))
        rep.run("coassoc-covered-4",
                "(rho (x) i)((1 (x) b)rho(x)) = "
                "(1 (x) 1 (x) b)(i (x) Delta)(rho(x))(E (x) 1)",
                coassoc("left", "right"))

    rep.run("E-idempotent", "E^2 = E",
            lambda: _mult_eq_on(C.E * C.E, C.E, tensor_basis))

    def absorb():
        for x in rbasis:
            rm = C.rho_mult(x)
            eq1, wit1 = _mult_eq_on(C.E * rm, rm, tensor_basis)
            if not eq1:
                return False, (x, wit1)
            eq2, wit2 = _mult_eq_on(rm * C.E, rm, tensor_basis)
            if not eq2:
                return False, (x, wit2)
        return True, None

    rep.run("E-absorbs-rho", "E rho(x) = rho(x) = rho(x) E", absorb)

    def counit_law():
        for x in rbasis:
            for b in abasis:
                lhs = T.contract_leg(C.rho1(x, b), 1, H.counit)
                if lhs != x.scale(H.counit(b)):
                    return False, (x, b)
        return True, None

    rep.run("counit-coaction", "(i (x) eps) rho(x) = x", counit_law)

    rep.run("range-equality", "rho(R)(1 (x) A) = E(R (x) A)",
            lambda: (rho_range == e_range, None))
    if C.symmetric:
        rep.run("range-equality-symmetric", "(1 (x) A)rho(R) = (R (x) A)E",
                lambda: (rho_range2 == e_range2, None))

    def global_iff_trivial_E():
        eq, _, _ = multiplier_eq(C.E, Multiplier.identity(T),
                                 witnesses=tensor_basis)
        glob = rho_range.dim == T.dim and rho_range2.dim == T.dim
        return eq == glob, f"E trivial: {eq}, ranges full: {glob}"

    rep.run("global-iff-E-trivial",
            "R is a global comodule algebra iff E = 1 (x) 1",
            global_iff_trivial_E)

    if C.reduced:
        au = A.unit()
        if au is None:
            raise ValueError("reduced check needs unital A (finite group)")

        def reduced_left():
            span_rae = linalg.Subspace(
                field, T.dim, [T.to_vec(C.E.right(w)) for w in tensor_basis])
            for y in rbasis:
                for x in rbasis:
                    w = C.rho_mult(x).right(T.pure(y, au))
                    if not span_rae.contains(T.to_vec(w)):
                        return False, (y, x)
            return True, None

        rep.run("reduced-left", "(R (x) 1) rho(R) <= (R (x) A)E",
                reduced_left)

        def reduced_right():
            span_era = linalg.Subspace(
                field, T.dim, [T.to_vec(C.E.left(w)) for w in tensor_basis])
            for x in rbasis:
                for y in rbasis:
                    w = C.rho_mult(x).left(T.pure(y, au))
                    if not span_era.contains(T.to_vec(w)):
                        return False, (x, y)
            return True, None

        rep.run("reduced-right", "rho(R)(R (x) 1) <= E(R (x) A)",
                reduced_right)

        def lemma_slide():
            # (rho (x) i)(rho(x)(y (x) 1))(1 (x) a (x) 1)
            #   = sum_j (i (x) Delta)(rho(x)(z_j (x) 1))(1 (x) b_j (x) 1)
            # where rho(y)(1 (x) a) = sum_j z_j (x) b_j
            T3 = ops.T3
            for x in rbasis:
                rx = C.rho_mult(x)
                for y in rbasis:
                    rxy = rx.left(T.pure(y, au))
                    for a in abasis:
                        lhs = T3.zero()
                        for (u, v), k in rxy.coords.items():
                            img = C.rho1(R.basis_element(u), a)
                            for (p, q), k2 in img.coords.items():
                                lhs = lhs + AlgebraElement(
                                    T3, {(p, q, v): k * k2})
                        rhs = T3.zero()
                        for (z, b), k in C.rho1(y, a).coords.items():
                            w = rx.left(T.pure(R.basis_element(z), au))
                            for (u, v), k2 in w.coords.items():
                                inner = H.t3p(A.basis_element(v),
                                              A.basis_element(b))
                                for (p, q), k3 in inner.coords.items():
                                    rhs = rhs + AlgebraElement(
                                        T3, {(u, p, q): k * k2 * k3})
                        if lhs != rhs:
                            return False, (x, y, a)
            return True, None

        rep.run("reduced-lemma-slide",
                "(rho (x) i)(rho(x)(y (x) 1))(1 (x) a (x) 1) = "
                "sum_j (i (x) Delta)(rho(x)(z_j (x) 1))(1 (x) b_j (x) 1)",
                lemma_slide)

        def lemma_flat():
            # (rho (x) i)((x (x) 1)rho(y)) = (rho(x) (x) 1)(i (x) Delta)(rho(y))
            for x in rbasis:
                rx01 = ops.rho_leg01(x)
                for y in rbasis:
                    base = C.rho_mult(y).right(T.pure(x, au))
                    lhs = ops.lhs_from_element(base)
                    rhs = rx01 * ops.id_delta_rho(y)
                    eq, wit = _mult_eq_on(lhs, rhs, triple_ws)
                    if not eq:
                        return False, (x, y, wit)
            return True, None

        rep.run("reduced-lemma-flat",
                "(rho (x) i)((x (x) 1)rho(y)) = "
                "(rho(x) (x) 1)(i (x) Delta)(rho(y))",
                lemma_flat)

    if C.restrict_witness is not None:
        if H.integral is None:
            raise ValueError("restrict check needs an integral")

        def restrict():
            a = C.restrict_witness

            def u_left(z):
                return T.contract_leg(C.E.left(T.pure(z, a)), 1, H.integral)

            def u_right(z):
                return T.contract_leg(C.E.right(T.pure(z, a)), 1, H.integral)

            omega = linalg.Subspace(
                field, R.dim,
                [R.to_vec(T.contract_leg(C.rho1(x, b), 1, H.integral))
                 for x in rbasis for b in abasis])
            for vec in omega.basis:
                w = R.from_vec(vec)
                if u_left(w) != w or u_right(w) != w:
                    return False, w
            return True, None

        rep.run("restrict-witness",
                "(i (x) phi)(E(1 (x) a)) = 1 on "
                "Omega = span{(i (x) phi)(rho(x)(1 (x) a'))}",
                restrict)

    return rep


def _verify_partial_coaction_windowed(C: PartialCoaction,
                                      window: int) -> Report:
    """Pointwise axioms on witness windows, reported sample-verified.

    Span and multiplier-membership axioms are not claimed on sparse
    instances (window edges would make inclusion tests meaningless);
    the report carries an explicit scope line instead.
    """
    rep = Report(f"{C.name}: partial comodule algebra axioms "
                 f"(window {window})")
    H, R, A, T = C.hopf, C.R, C.hopf.algebra, C.tensor

    def sampled(algebra):
        if algebra.is_finite_dim:
            return algebra.basis_elements()
        group = getattr(algebra, "group", None)
        if group is None:
            raise ValueError("sparse algebra without a sampling group")
        return [algebra.basis_element(g) for g in group.sample(window)]

    rbasis = sampled(R)
    abasis = sampled(A)
    tensor_ws = [T.pure(z, c) for z in rbasis for c in abasis]
    field = R.field

    rep.add("window-scope",
            "range and M(R) (x) A membership axioms are only claimed for "
            "finite dimension", True,
            witness=f"|R window| = {len(rbasis)}, |A window| = {len(abasis)}",
            )

    def injective():
        cols, labels = [], []
        for x in rbasis:
            stacked: dict = {}
            for a in abasis:
                for key, c in C.rho1(x, a).coords.items():
                    stacked[(a.items()[0][0], key)] = c
            cols.append(stacked)
        keys = sorted({k for col in cols for k in col})
        M = [[col.get(k, field.zero()) for col in cols] for k in keys]
        ker = linalg.kernel_basis(field, M, ncols=len(cols))
        if ker:
            bad = R.zero()
            for c, x in zip(ker[0], rbasis):
                bad = bad + x.scale(c)
            return False, bad
        return True, None

    rep.run("rho-injective", "rho is injective (on the window span)",
            injective, sample=True)

    def multiplicative():
        for x in rbasis:
            rx = C.rho_mult(x)
            for y in rbasis:
                for a in abasis:
                    if C.rho1(x * y, a) != rx.left(C.rho1(y, a)):
                        return False, (x, y, a)
        return True, None

    rep.run("rho-multiplicative",
            "rho(xy)(1 (x) a) = rho(x)(rho(y)(1 (x) a))", multiplicative,
            sample=True)

    ops = _CoactionOps(C)
    triple_ws = [AlgebraElement(ops.T3, {(z.items()[0][0], c.items()[0][0],
                                          d.items()[0][0]): field.one()})
                 for z in rbasis for c in abasis for d in abasis]

    def coassoc(side_first: str, e_side: str):
        def chk():
            for x in rbasis:
                idr = ops.id_delta_rho(x)
                e01 = ops.e_leg01()
                core = (e01 * idr) if e_side == "left" else (idr * e01)
                for b in abasis:
                    base = C.rho1(x, b) if side_first == "right" \
                        else C.rho2(b, x)
                    lhs = ops.lhs_from_element(base)
                    third = ops.third_leg(b)
                    rhs = (core * third) if side_first == "right" \
                        else (third * core)
                    eq, wit = _mult_eq_on(lhs, rhs, triple_ws)
                    if not eq:
                        return False, (x, b, wit)
            return True, None
        return chk

    rep.run("coassoc-covered-1",
            "(rho (x) i)(rho(x)(1 (x) b)) = "
            "(E (x) 1)(i (x) Delta)(rho(x))(1 (x) 1 (x) b)",
            coassoc("right", "left"), sample=True)
    rep.run("coassoc-covered-2",
            "(rho (x) i)((1 (x) b)rho(x)) = "
            "(1 (x) 1 (x) b)(E (x) 1)(i (x) Delta)(rho(x))",
            coassoc("left", "left"), sample=True)
    if C.symmetric:
        rep.run("coassoc-covered-3",
                "(rho (x) i)(rho(x)(1 (x) b)) = "
                "(i (x) Delta)(rho(x))(E (x) 1)(1 (x) 1 (x) b)",
                coassoc("right", "right"), sample=True)
        rep.run("coassoc-covered-4",
                "(rho (x) i)((1 (x) b)rho(x)) = "
                "(1 (x) 1 (x) b)(i (x) Delta)(rho(x))(E (x) 1)",
                coassoc("left", "right"), sample=True)

    rep.run("E-idempotent", "E^2 = E",
            lambda: _mult_eq_on(C.E * C.E, C.E, tensor_ws), sample=True)

    def absorb():
        for x in rbasis:
            rm = C.rho_mult(x)
            eq1, wit1 = _mult_eq_on(C.E * rm, rm, tensor_ws)
            if not eq1:
                return False, (x, wit1)
            eq2, wit2 = _mult_eq_on(rm * C.E, rm, tensor_ws)
            if not eq2:
                return False, (x, wit2)
        return True, None

    rep.run("E-absorbs-rho", "E rho(x) = rho(x) = rho(x) E", absorb,
            sample=True)

    def counit_law():
        for x in rbasis:
            for b in abasis:
                lhs = T.contract_leg(C.rho1(x, b), 1, H.counit)
                if lhs != x.scale(H.counit(b)):
                    return False, (x, b)
        return True, None

    rep.run("counit-coaction", "(i (x) eps) rho(x) = x", counit_law,
            sample=True)
    return rep


# constructors ---------------------------------------------------------------

def coaction_from_projection(hopf: MultiplierHopf, R: Algebra, m: Multiplier,
                             symmetric_claim: bool = True,
                             name: str = "projection coaction",
                             window: Optional[int] = None
                             ) -> PartialCoaction:
    """rho(x) = x (x) m, E = 1 (x) m for an idempotent m in M(A).

    Refuses unless m^2 = m and m (x) m = (m (x) 1)Delta(m); the
    symmetric claim additionally needs m (x) m = Delta(m)(m (x) 1).
    Sparse carriers check the hypotheses on the declared window.
    """
    A = hopf.algebra
    ws = hopf.witnesses(window)
    eq, _, wit = multiplier_eq(m * m, m, witnesses=ws)
    if not eq:
        raise HypothesisFailure("m^2 = m", witness=wit)
    # given the Delta-compatibility below, m^2 = m iff eps(m) = 1; an
    # idempotent m with eps(m) != 1 therefore cannot satisfy it
    eps_m = hopf.counit_mult(m, witnesses=ws)
    if eps_m != A.field.one():
        raise HypothesisFailure(
            f"eps(m) = {eps_m} != 1 (so m (x) m = (m (x) 1)Delta(m) "
            "must fail for the idempotent m)")
    dm = hopf.delta_mult(m)
    TA = hopf.tensor_square

    def mm_left(w):
        return TA.map_leg(TA.map_leg(w, 0, m.left), 1, m.left)

    def mm_right(w):
        return TA.map_leg(TA.map_leg(w, 0, m.right), 1, m.right)

    mm = Multiplier(TA, mm_left, mm_right, name="m x m")
    m1 = Multiplier(TA, lambda w: TA.map_leg(w, 0, m.left),
                    lambda w: TA.map_leg(w, 0, m.right), name="m x 1")
    tensor_ws = [TA.pure(a, b) for a in ws for b in ws]
    eq, _, wit = multiplier_eq(mm, m1 * dm, witnesses=tensor_ws)
    if not eq:
        raise HypothesisFailure("m (x) m = (m (x) 1)Delta(m)", witness=wit)
    if symmetric_claim:
        eq, _, wit = multiplier_eq(mm, dm * m1, witnesses=tensor_ws)
        if not eq:
            raise HypothesisFailure("m (x) m = Delta(m)(m (x) 1)",
                                    witness=wit)

    T = TensorAlgebra([R, A])

    def rho1(x, a):
        return T.pure(x, m.left(a))

    def rho2(a, x):
        return T.pure(x, m.right(a))

    E = Multiplier(T, lambda w: T.map_leg(w, 1, m.left),
                   lambda w: T.map_leg(w, 1, m.right), name="1 x m")
    # reduced iff m lies in A itself: solve j(c) = m over element coords
    reduced = False
    if A.is_finite_dim:
        jcols = []
        for b in A.basis:
            col = []
            for w in A.basis_elements():
                col.extend(A.to_vec(A.basis_element(b) * w))
            for w in A.basis_elements():
                col.extend(A.to_vec(w * A.basis_element(b)))
            jcols.append(col)
        tgt = []
        for w in A.basis_elements():
            tgt.extend(A.to_vec(m.left(w)))
        for w in A.basis_elements():
            tgt.extend(A.to_vec(m.right(w)))
        reduced = linalg.solve(
            A.field, linalg.transpose(jcols), tgt) is not None
    return PartialCoaction(hopf, R, rho1, rho2, E,
                           symmetric=symmetric_claim, reduced=reduced,
                           name=name)


def trivial_point_coaction(hopf: MultiplierHopf, R: Algebra,
                           name: str = "trivial point coaction"
                           ) -> PartialCoaction:
    """rho(x) = x (x) d_e over the function algebra (a strict example)."""
    A = hopf.algebra
    e = hopf.group.identity
    m = Multiplier.from_element(A.basis_element(e))
    return coaction_from_projection(hopf, R, m, symmetric_claim=True,
                                    name=name)


def global_coaction_data(hopf: MultiplierHopf, R: Algebra, rho1, rho2,
                         reduced: bool = True,
                         restrict_witness=None,
                         name: str = "global coaction") -> PartialCoaction:
    """Package a global coaction as a partial one with E = 1 (x) 1."""
    T = TensorAlgebra([R, hopf.algebra])
    return PartialCoaction(hopf, R, rho1, rho2, Multiplier.identity(T),
                           symmetric=True, reduced=reduced,
                           restrict_witness=restrict_witness, name=name)


def self_coaction(hopf: MultiplierHopf, restrict_witness=None,
                  name=None) -> PartialCoaction:
    """A coacting on itself by its comultiplication (global, E = 1 (x) 1)."""
    A = hopf.algebra

    def rho1(x, a):
        return hopf.t1p(x, a)

    def rho2(a, x):
        return hopf.t4p(a, x)

    return global_coaction_data(
        hopf, A, rho1, rho2, reduced=True, restrict_witness=restrict_witness,
        name=name or f"self-coaction of {hopf.name}")


def induced_partial_coaction(C: PartialCoaction, ideal_gens: list,
                             ideal_labels: list,
                             name: str = "induced partial coaction"
                             ) -> PartialCoaction:
    """Restrict a (global) coaction to a unital right ideal L.

    beta(l) = (1_L (x) 1) rho(l) with E = (1_L (x) 1) rho(1_L); the
    symmetric flag is inherited when 1_L is central in R.
    """
    from .algebras import SubalgebraView

    R = C.R
    L = SubalgebraView(R, ideal_gens, ideal_labels, name="L")
    unit_elem = L.unit()
    if unit_elem is None:
        raise HypothesisFailure("L has a unit 1_L")
    one_parent = L.include(unit_elem)
    if one_parent * one_parent != one_parent:
        raise HypothesisFailure("1_L idempotent", witness=one_parent)
    # right ideal: L * R <= L
    span = linalg.Subspace(R.field, R.dim, [R.to_vec(g) for g in L.gens])
    for g in L.gens:
        for r in R.basis_elements():
            if not span.contains(R.to_vec(g * r)):
                raise HypothesisFailure("L is a right ideal of R",
                                        witness=(g, r))
    central = all(one_parent * r == r * one_parent
                  for r in R.basis_elements())

    A = C.hopf.algebra
    TL = TensorAlgebra([L, A])
    TR = C.tensor

    def project(w_parent: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for (z, a), k in w_parent.coords.items():
            sub = L.restrict(R.basis_element(z))
            if sub is None:
                raise CrossCheckError(
                    "(1_L (x) 1) rho(l) left the ideal span")
            for l2, c in sub.coords.items():
                key = (l2, a)
                term = k * c
                prev = out.get(key)
                out[key] = term if prev is None else prev + term
        return AlgebraElement(TL, out)

    def rho1(l, a):
        w = C.rho1(L.include(l), a)
        return project(TR.mul_leg(w, 0, one_parent, "left"))

    def rho2(a, l):
        w = C.rho2(a, L.include(l))
        return project(TR.mul_leg(w, 0, one_parent, "left"))

    def E_left(w):
        out = TL.zero()
        for (z, a), k in w.coords.items():
            img = rho1(unit_elem, A.basis_element(a))
            out = out + TL.mul_leg(img, 0, L.basis_element(z),
                                   "right").scale(k)
        return out

    def E_right(w):
        out = TL.zero()
        for (z, a), k in w.coords.items():
            base = C.rho2(A.basis_element(a), one_parent)
            img = project(TR.mul_leg(base, 0, one_parent, "left"))
            out = out + TL.mul_leg(img, 0, L.basis_element(z),
                                   "left").scale(k)
        return out

    E = Multiplier(TL, E_left, E_right, name="(1_L x 1)rho(1_L)")
    out = PartialCoaction(C.hopf, L, rho1, rho2, E,
                          symmetric=central and C.symmetric,
                          reduced=C.reduced, name=name)
    out.parent = C
    out.view = L
    return out


def check_unital_equivalence(C: PartialCoaction) -> tuple:
    """For unital R and A: E = rho(1_R) and the unital-definition axioms.

    Returns (equivalent, details): the unital-style axioms hold iff the
    multiplier-form verification passes, and E must equal rho(1_R).
    """
    R, A, T = C.R, C.hopf.algebra, C.tensor
    if R.unit() is None or A.unit() is None:
        raise ValueError("both algebras must be unital")
    rho_one = C.rho_mult(R.unit())
    witnesses = [T.pure(x, a) for x in R.basis_elements()
                 for a in A.basis_elements()]
    e_is_rho1, _, _ = multiplier_eq(C.E, rho_one, witnesses=witnesses)

    # unital-style axioms, materialized
    ok_unital = True
    H = C.hopf
    for x in R.basis_elements():
        if T.contract_leg(C.rho_elem(x), 1, H.counit) != x:
            ok_unital = False
    for x in R.basis_elements():
        for y in R.basis_elements():
            if C.rho_elem(x * y) != C.rho_elem(x) * C.rho_elem(y):
                ok_unital = False
    T3 = TensorAlgebra([R, A, A])
    rho1R = C.rho_elem(R.unit())
    for x in R.basis_elements():
        lhs = T3.zero()
        for (u, v), k in C.rho_elem(x).coords.items():
            for (p, q), k2 in C.rho_elem(R.basis_element(u)).coords.items():
                lhs = lhs + AlgebraElement(T3, {(p, q, v): k * k2})
        rhs = T3.zero()
        for (u, v), k in C.rho_elem(x).coords.items():
            dv = H.delta_elem(A.basis_element(v))
            for (p, q), k2 in rho1R.coords.items():
                for (s, t), k3 in dv.coords.items():
                    ps = R.basis_element(p) * R.basis_element(u)
                    qs = A.basis_element(q) * A.basis_element(s)
                    for pl, k4 in ps.coords.items():
                        for ql, k5 in qs.coords.items():
                            rhs = rhs + AlgebraElement(
                                T3, {(pl, ql, t): k * k2 * k3 * k4 * k5})
        if lhs != rhs:
            ok_unital = False
    multiplier_ok = verify_partial_coaction(C).passed
    return (e_is_rho1 and (ok_unital == multiplier_ok),
            {"E = rho(1_R)": e_is_rho1, "unital axioms": ok_unital,
             "multiplier axioms": multiplier_ok})


def extend_coaction_to_multipliers(C: PartialCoaction):
    """The unique extension rho: M(R) -> M(R (x) A) with rho(1) = E.

    Returns a function taking a multiplier m on R to the multiplier
    rho(m) on R (x) A, computed through the factorizations
    E(x (x) a) = sum_i rho(y_i)(1 (x) b_i) and
    (x (x) a)E = sum_j (1 (x) c_j) rho(z_j).
    """
    if not C.symmetric:
        raise HypothesisFailure("extension needs a symmetric partial coaction")
    R, A, T = C.R, C.hopf.algebra, C.tensor
    field = R.field
    pairs = [(y, b) for y in R.basis for b in A.basis]
    left_cols = [T.to_vec(C.rho1(R.basis_element(y), A.basis_element(b)))
                 for (y, b) in pairs]
    right_cols = [T.to_vec(C.rho2(A.basis_element(c), R.basis_element(z)))
                  for (z, c) in pairs]

    left_fact: dict = {}
    right_fact: dict = {}
    for x in R.basis:
        for a in A.basis:
            w = T.pure(R.basis_element(x), A.basis_element(a))
            sol = linalg.solve(field, linalg.transpose(left_cols),
                               T.to_vec(C.E.left(w)))
            if sol is None:
                raise HypothesisFailure(
                    "E(R (x) A) <= rho(R)(1 (x) A) (axiom (ii))",
                    witness=(x, a))
            left_fact[(x, a)] = sol
            sol = linalg.solve(field, linalg.transpose(right_cols),
                               T.to_vec(C.E.right(w)))
            if sol is None:
                raise HypothesisFailure(
                    "(R (x) A)E <= (1 (x) A)rho(R) (axiom (ii))",
                    witness=(x, a))
            right_fact[(x, a)] = sol

    def extend(m: Multiplier) -> Multiplier:
        def left(w):
            out = T.zero()
            for (x, a), k in w.coords.items():
                for coeff, (y, b) in zip(left_fact[(x, a)], pairs):
                    if not coeff:
                        continue
                    my = m.left(R.basis_element(y))
                    out = out + C.rho1(my, A.basis_element(b)).scale(k * coeff)
            return out

        def right(w):
            out = T.zero()
            for (x, a), k in w.coords.items():
                for coeff, (z, c) in zip(right_fact[(x, a)], pairs):
                    if not coeff:
                        continue
                    zm = m.right(R.basis_element(z))
                    out = out + C.rho2(A.basis_element(c), zm).scale(k * coeff)
            return out

        return Multiplier(T, left, right, name=f"rho({m.name})")

    return extend
