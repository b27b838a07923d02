"""Duality between partial actions and partial coactions.

A symmetric partial coaction of A dualizes to a partial action of the
dual A-hat by phi(_ a) . x = (i (x) phi)(rho(x)(1 (x) a)); conversely a
symmetric partial action whose e factors as e = f(_ b) dualizes, under
the convolution and local-unit hypotheses, to a partial coaction of
A-hat on A . R, and dualizing back through the biduality pairing
psi-hat(phi(_ S(b))) = eps(b) reproduces the original tables exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import linalg
from .action import PartialAction, compute_AR
from .algebras import (AlgebraElement, Multiplier, SubalgebraView,
                       TensorAlgebra, multiplier_eq)
from .coaction import PartialCoaction
from .mhopf import DualAlgebra, dual_algebra, left_slot_from_right
from .report import CrossCheckError, HypothesisFailure, Report


@dataclass
class DualityBridge:
    source: object
    target: object
    dual: DualAlgebra
    report: Report
    view: Optional[SubalgebraView] = None


def dualize_coaction(C: PartialCoaction,
                     name: Optional[str] = None) -> DualityBridge:
    """Partial coaction of A  ==>  partial action of A-hat on the same R.

    phi(_ a) . x = (i (x) phi)(rho(x)(1 (x) a)); e-hat(phi(_ a)) acts by
    (i (x) phi)(E(x (x) a)) on the left and through the slot conversion
    phi(b~ _) = phi(_ a) on the right.
    """
    if not C.symmetric:
        raise HypothesisFailure("the source partial coaction is symmetric")
    H = C.hopf
    if H.integral is None:
        raise HypothesisFailure("A carries a left integral")
    dual = dual_algebra(H)
    Dh = dual.hopf
    A, R, T = H.algebra, C.R, C.tensor
    rep = Report(f"dualization of {C.name}")

    # cache the slot conversions phi(b~ _) = phi(_ e_c)
    bbar = {c: left_slot_from_right(H, A.basis_element(c)) for c in A.basis}

    def act(w: AlgebraElement, x: AlgebraElement) -> AlgebraElement:
        out = R.zero()
        for c, k in w.coords.items():
            out = out + T.contract_leg(
                C.rho1(x, A.basis_element(c)), 1, H.integral).scale(k)
        return out

    def e_map(w: AlgebraElement) -> Multiplier:
        def left(x):
            out = R.zero()
            for c, k in w.coords.items():
                out = out + T.contract_leg(
                    C.E.left(T.pure(x, A.basis_element(c))), 1,
                    H.integral).scale(k)
            return out

        def right(x):
            out = R.zero()
            for c, k in w.coords.items():
                out = out + T.contract_leg(
                    C.E.right(T.pure(x, bbar[c])), 1, H.integral).scale(k)
            return out

        return Multiplier(R, left, right, name=f"e-hat({w})")

    P = PartialAction(Dh, R, act, e_map, symmetric=True,
                      name=name or f"dual action of {C.name}")
    return DualityBridge(C, P, dual, rep)


def dualize_action(P: PartialAction, f: Callable, b: AlgebraElement,
                   k: AlgebraElement, psi: Optional[Callable] = None,
                   name: Optional[str] = None) -> DualityBridge:
    """Symmetric partial action of A  ==>  partial coaction of A-hat on A.R.

    Hypotheses checked here: e = f(_ b) (i.e. e(a) = f(ab)), the
    convolution law e(a_(1)) e(a_(2)) = e(a), kb = b = bk and
    e(k) = 1 on A . R.  ``psi`` overrides the second integral; the
    default is psi = phi and the report records the choice.
    """
    if not P.symmetric:
        raise HypothesisFailure("the source partial action is symmetric")
    H = P.hopf
    A, R = H.algebra, P.R
    field = R.field
    if H.integral is None:
        raise HypothesisFailure("A carries a left integral")
    view, ar_rep = compute_AR(P)
    if not ar_rep.passed:
        raise HypothesisFailure("A . R is an algebra with nondegenerate "
                                "product", witness=ar_rep.first_failure())
    rep = Report(name or f"dualization of {P.name}")
    rep.extend(ar_rep)
    rep.add("psi-choice", "second integral psi (default: psi = phi)",
            True, witness="psi = phi" if psi is None else "psi override")

    rbasis = R.basis_elements()

    def check_e_factors():
        for a in A.basis_elements():
            eq, _, wit = multiplier_eq(P.e_map(a), f(a * b),
                                       witnesses=rbasis)
            if not eq:
                return False, (a, wit)
        return True, None

    if not rep.run("e-factors", "e(a) = f(a b) for the declared f and b",
                   check_e_factors):
        raise HypothesisFailure("e = f(_ b)",
                                witness=rep.first_failure().witness)

    def check_convolution():
        for a in A.basis_elements():
            acc = None
            for (u, v), c in H.delta_elem(a).coords.items():
                term = (P.e_map(A.basis_element(u))
                        * P.e_map(A.basis_element(v))).scale(c)
                acc = term if acc is None else acc + term
            if acc is None:
                acc = Multiplier.zero(R)
            eq, _, wit = multiplier_eq(acc, P.e_map(a), witnesses=rbasis)
            if not eq:
                return False, (a, wit)
        return True, None

    if not rep.run("e-convolution", "e(a_(1)) e(a_(2)) = e(a)",
                   check_convolution):
        raise HypothesisFailure("e(a_(1)) e(a_(2)) = e(a)",
                                witness=rep.first_failure().witness)

    if not rep.run("k-local-unit", "k b = b = b k",
                   lambda: (k * b == b and b * k == b, (k, b))):
        raise HypothesisFailure("k b = b = b k")

    def restrict_mult(m: Multiplier) -> Multiplier:
        def left(z):
            out = view.restrict(m.left(view.include(z)))
            if out is None:
                raise CrossCheckError("multiplier left A . R")
            return out

        def right(z):
            out = view.restrict(m.right(view.include(z)))
            if out is None:
                raise CrossCheckError("multiplier left A . R")
            return out

        return Multiplier(view, left, right, name=f"{m.name}|A.R")

    def check_e_k():
        ek = restrict_mult(P.e_map(k))
        eq, _, wit = multiplier_eq(ek, Multiplier.identity(view),
                                   witnesses=view.basis_elements())
        return eq, wit

    if not rep.run("e-k-identity", "e(k) = 1 on A . R", check_e_k):
        raise HypothesisFailure("e(k) = 1_{M(A.R)}")

    dual = dual_algebra(H)
    Dh = dual.hopf
    D = Dh.algebra
    Tout = TensorAlgebra([view, D])

    # psi handling: express psi(_ e_c) in the phi-indexed dual basis and
    # solve the reverse conversion used by the right covers
    bel = A.basis_elements()
    if psi is None:
        psi = H.integral

        def psi_to_phi(c_label):
            return D.basis_element(c_label)

        def phi_to_psi(w):
            return AlgebraElement(A, dict(w.coords))
    else:
        P_phi = [[H.integral(x * y) for y in bel] for x in bel]
        P_psi = [[psi(x * y) for y in bel] for x in bel]
        if linalg.rank(P_psi) != A.dim:
            raise HypothesisFailure("psi pairing nondegenerate")

        def psi_to_phi(c_label):
            vals = [psi(x * A.basis_element(c_label)) for x in bel]
            sol = linalg.solve(field, P_phi, vals)
            return D.from_vec(sol)

        def phi_to_psi(w):
            vals = []
            for i, x in enumerate(bel):
                acc = field.zero()
                for c, kk in w.coords.items():
                    acc = acc + kk * H.integral(x * A.basis_element(c))
                vals.append(acc)
            sol = linalg.solve(field, P_psi, vals)
            if sol is None:
                raise CrossCheckError("phi functional not in psi range")
            return A.from_vec(sol)

    Sinv, S = H.antipode_inv, H.antipode

    rho1_maps = {}
    rho2_maps = {}
    ins = []
    gen_pairs = [(a, x) for a in A.basis_elements() for x in rbasis]
    for a, x in gen_pairs:
        ins.append(R.to_vec(P.act(a, x)))
    for c in A.basis:
        d2 = H.delta2_elem(A.basis_element(c))
        outs1, outs2 = [], []
        for a, x in gen_pairs:
            val1 = Tout.zero()
            val2 = Tout.zero()
            for (c1, c2, c3), kk in d2.coords.items():
                # e(S^{-1}(c2))((S^{-1}(c1) a) . x) (x) phi(_ c3)
                inner = P.act(Sinv(A.basis_element(c1)) * a, x)
                m = P.e_map(Sinv(A.basis_element(c2)))
                lv = view.restrict(m.left(inner))
                if lv is None:
                    raise CrossCheckError("dual coaction left A . R")
                val1 = val1 + Tout.pure(lv, D.basis_element(c3)).scale(kk)
                # (S(c3) a . x) e(S(c2)) (x) psi(_ c1)
                inner2 = P.act(S(A.basis_element(c3)) * a, x)
                m2 = P.e_map(S(A.basis_element(c2)))
                rv = view.restrict(m2.right(inner2))
                if rv is None:
                    raise CrossCheckError("dual coaction left A . R")
                val2 = val2 + Tout.pure(rv, psi_to_phi(c1)).scale(kk)
            outs1.append(Tout.to_vec(val1))
            outs2.append(Tout.to_vec(val2))
        M1 = linalg.linear_map_from_spanning(field, ins, outs1)
        M2 = linalg.linear_map_from_spanning(field, ins, outs2)
        if M1 is None or M2 is None:
            raise HypothesisFailure(
                "the dual coaction is well defined on A . R",
                witness=f"index {c}")
        rho1_maps[c] = M1
        rho2_maps[c] = M2

    def rho1(u: AlgebraElement, w: AlgebraElement) -> AlgebraElement:
        vec = R.to_vec(view.include(u))
        out = Tout.zero()
        for c, kk in w.coords.items():
            out = out + Tout.from_vec(
                linalg.mat_vec(rho1_maps[c], vec)).scale(kk)
        return out

    def rho2(w: AlgebraElement, u: AlgebraElement) -> AlgebraElement:
        vec = R.to_vec(view.include(u))
        out = Tout.zero()
        wpsi = phi_to_psi(w)
        for c, kk in wpsi.coords.items():
            out = out + Tout.from_vec(
                linalg.mat_vec(rho2_maps[c], vec)).scale(kk)
        return out

    delta_cache = {c: H.delta_elem(A.basis_element(c)) for c in A.basis}

    def E_left(t):
        out = Tout.zero()
        for (z, c), kk in t.coords.items():
            u = view.basis_element(z)
            for (c1, c2), k2 in delta_cache[c].coords.items():
                m = restrict_mult(P.e_map(Sinv(A.basis_element(c1))))
                out = out + Tout.pure(m.left(u),
                                      D.basis_element(c2)).scale(kk * k2)
        return out

    def E_right(t):
        out = Tout.zero()
        for (z, c), kk in t.coords.items():
            u = view.basis_element(z)
            cpsi = phi_to_psi(D.basis_element(c))
            for cl, k0 in cpsi.coords.items():
                for (c1, c2), k2 in delta_cache[cl].coords.items():
                    m = restrict_mult(P.e_map(S(A.basis_element(c2))))
                    out = out + Tout.pure(
                        m.right(u), psi_to_phi(c1)).scale(kk * k0 * k2)
        return out

    E = Multiplier(Tout, E_left, E_right, name="E-hat")
    C = PartialCoaction(Dh, view, rho1, rho2, E, symmetric=True,
                        name=name or f"dual coaction of {P.name}")
    return DualityBridge(P, C, dual, rep, view=view)


def roundtrip_check(P: PartialAction, f: Callable, b: AlgebraElement,
                    k: AlgebraElement, psi: Optional[Callable] = None
                    ) -> tuple:
    """Action -> coaction -> action through the biduality pairing.

    Dualizing the derived coaction with psi-hat(phi(_ c)) = eps(c) must
    reproduce the original action table and e on A . R bit for bit.
    Returns (ok, report).
    """
    bridge = dualize_action(P, f, b, k, psi=psi)
    C = bridge.target
    view = bridge.view
    dual = bridge.dual
    H = P.hopf
    A = H.algebra
    rep = Report(f"round trip of {P.name}")
    rep.extend(bridge.report)

    def action_table():
        for bb in A.basis_elements():
            shat = dual.dual_element(H.antipode(bb))
            for z in view.basis:
                u = view.basis_element(z)
                w = C.rho1(u, shat)
                got = C.tensor.contract_leg(w, 1, dual.psi_hat)
                expected = view.restrict(P.act(bb, view.include(u)))
                if got != expected:
                    return False, (bb, z)
        return True, None

    rep.run("roundtrip-action",
            "(i (x) psi-hat)(rho(u)(1 (x) phi(_ S(b)))) = b . u",
            action_table)

    def e_table():
        for bb in A.basis_elements():
            shat = dual.dual_element(H.antipode(bb))
            for z in view.basis:
                u = view.basis_element(z)
                w = C.E.left(C.tensor.pure(u, shat))
                got = C.tensor.contract_leg(w, 1, dual.psi_hat)
                ex = view.restrict(P.e_map(bb).left(view.include(u)))
                if got != ex:
                    return False, (bb, z)
        return True, None

    rep.run("roundtrip-e",
            "(i (x) psi-hat)(E(u (x) phi(_ S(b)))) = e(b) u",
            e_table)
    return rep.passed, rep
