"""Partial module algebras (R, . , e) over a multiplier Hopf algebra.

The action is a bilinear map act(a, x) together with e: A -> M(R)
standing in for a . 1_R.  All Sweedler legs in the axioms are compiled
to the coproduct primitives of the acting Hopf algebra:

    sum a_(1) (x) a_(2) b        = T1(a (x) b)
    sum a_(1) b (x) a_(2)        = T3(a, b)
    sum a_(1) (x) S(a_(2)) b     = (i (x) S) T4(S^{-1}(b), a)
    sum S^{-1}(a_(1)) b (x) a_(2) = (S^{-1} (x) i) T2(S(b), a)

Axiom (iii) is existential per finite family; the artifact solves the
joint linear system (local unit constraints plus action idempotence)
for the declared families, all singleton pairs by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from . import linalg
from .algebras import (Algebra, AlgebraElement, Multiplier, SubalgebraView,
                       check_nondegenerate, multiplier_eq)
from .mhopf import MultiplierHopf, dual_algebra
from .report import CrossCheckError, HypothesisFailure, Report


@dataclass
class PartialAction:
    """A (claimed) partial A-module algebra; run ``verify`` to certify."""

    hopf: MultiplierHopf
    R: Algebra
    act: Callable    # (a, x) -> element of R
    e_map: Callable  # a -> Multiplier on R
    symmetric: bool = False
    name: str = "partial action"

    def __post_init__(self):
        if self.R.is_finite_dim:
            ok, wit = check_nondegenerate(self.R)
            if not ok:
                raise HypothesisFailure(
                    "the product in R is nondegenerate", witness=wit)

    # Sweedler-leg helpers on the acting Hopf algebra -------------------

    def legs_1_2b(self, a, b):
        """sum a_(1) (x) a_(2) b."""
        return self.hopf.t1p(a, b)

    def legs_1b_2(self, a, b):
        """sum a_(1) b (x) a_(2)."""
        return self.hopf.t3p(a, b)

    def legs_1_S2b(self, a, b):
        """sum a_(1) (x) S(a_(2)) b."""
        H = self.hopf
        w = H.t4p(H.antipode_inv(b), a)
        return H.tensor_square.map_leg(w, 1, H.antipode)

    def legs_Sinv1b_2(self, a, b):
        """sum S^{-1}(a_(1)) b (x) a_(2)."""
        H = self.hopf
        w = H.t2p(H.antipode(b), a)
        return H.tensor_square.map_leg(w, 0, H.antipode_inv)

    def pair_act(self, legs: AlgebraElement, x: AlgebraElement,
                 y: AlgebraElement) -> AlgebraElement:
        """sum (u_i . x)(v_i . y) over the legs element of A (x) A."""
        A = self.hopf.algebra
        out = self.R.zero()
        for (u, v), c in legs.coords.items():
            out = out + (self.act(A.basis_element(u), x)
                         * self.act(A.basis_element(v), y)).scale(c)
        return out

    def act_then_act(self, legs: AlgebraElement, x: AlgebraElement
                     ) -> AlgebraElement:
        """sum u_i . (v_i . x)."""
        A = self.hopf.algebra
        out = self.R.zero()
        for (u, v), c in legs.coords.items():
            out = out + self.act(A.basis_element(u),
                                 self.act(A.basis_element(v), x)).scale(c)
        return out

    def ar_span(self) -> linalg.Subspace:
        R, A = self.R, self.hopf.algebra
        return linalg.Subspace(
            R.field, R.dim,
            [R.to_vec(self.act(a, x)) for a in A.basis_elements()
             for x in R.basis_elements()])


def find_family_unit(P: PartialAction, a_family: list, x_family: list,
                     window_elems=None) -> Optional[AlgebraElement]:
    """Solve for b with a_i b = a_i = b a_i and a_i . (b . x_j) = a_i . x_j.

    Works for sparse module algebras too: the acted equations are
    indexed by the finitely many output labels that actually occur.
    """
    A, R = P.hopf.algebra, P.R
    field = A.field
    rows, rhs = [], []
    for a in a_family:
        av = A.to_vec(a)
        left_rows = [[None] * A.dim for _ in range(A.dim)]
        right_rows = [[None] * A.dim for _ in range(A.dim)]
        for j, lb in enumerate(A.basis):
            vb = A.to_vec(a * A.basis_element(lb))
            wb = A.to_vec(A.basis_element(lb) * a)
            for k in range(A.dim):
                left_rows[k][j] = vb[k]
                right_rows[k][j] = wb[k]
        rows.extend(left_rows)
        rhs.extend(av)
        rows.extend(right_rows)
        rhs.extend(av)
        for x in x_family:
            tgt = P.act(a, x)
            images = [P.act(a, P.act(A.basis_element(lb), x))
                      for lb in A.basis]
            keys = set(tgt.coords)
            for img in images:
                keys.update(img.coords)
            zero = field.zero()
            for key in sorted(keys):
                rows.append([img.coords.get(key, zero) for img in images])
                rhs.append(tgt.coords.get(key, zero))
    sol = linalg.solve(field, rows, rhs)
    return None if sol is None else A.from_vec(sol)


def verify_partial_action(P: PartialAction,
                          families: Optional[list] = None,
                          window: Optional[int] = None) -> Report:
    """Exhaustive axiom suite; (iii) runs on declared families only.

    With a sparse R the pointwise axioms run over a witness window and
    the span-based range axioms are not claimed.
    """
    H, R, A = P.hopf, P.R, P.hopf.algebra
    if not A.is_finite_dim:
        raise ValueError("the acting algebra must be finite dimensional")
    if not R.is_finite_dim:
        if window is None:
            raise ValueError("sparse R needs a witness window")
        return _verify_partial_action_windowed(P, families, window)
    rep = Report(f"{P.name}: partial module algebra axioms")
    rbasis = R.basis_elements()
    abasis = A.basis_elements()
    field = R.field

    def axiom_i():
        for a in abasis:
            for b in abasis:
                legs = P.legs_1_2b(a, b)
                for x in rbasis:
                    for y in rbasis:
                        lhs = P.act(a, x * P.act(b, y))
                        if lhs != P.pair_act(legs, x, y):
                            return False, (a, x, b, y)
        return True, None

    rep.run("covered-product",
            "a . (x (b . y)) = (a_(1) . x)(a_(2) b . y)", axiom_i)

    def axiom_ii():
        for a in abasis:
            ea = P.e_map(a)
            for b in abasis:
                legs = P.legs_1_S2b(a, b)
                for x in rbasis:
                    if ea.left(P.act(b, x)) != P.act_then_act(legs, x):
                        return False, (a, b, x)
        return True, None

    rep.run("e-twist", "e(a)(b . x) = a_(1) . (S(a_(2)) b . x)", axiom_ii)

    ar = P.ar_span()

    def axiom_ii_range():
        for a in abasis:
            ea = P.e_map(a)
            for x in rbasis:
                if not ar.contains(R.to_vec(ea.left(x))):
                    return False, (a, x)
        return True, None

    rep.run("e-range", "e(A) R <= A . R", axiom_ii_range)

    fams = families
    if fams is None:
        fams = [([a], [x]) for a in abasis for x in rbasis]

    def axiom_iii():
        for a_fam, x_fam in fams:
            if find_family_unit(P, a_fam, x_fam) is None:
                return False, (a_fam, x_fam)
        return True, None

    rep.run("local-units",
            f"per family (count {len(fams)}): exists b with a_i b = a_i = "
            "b a_i and a_i . (b . x_j) = a_i . x_j", axiom_iii)

    def axiom_iv():
        cols = []
        for x in rbasis:
            stacked = []
            for a in abasis:
                stacked.extend(R.to_vec(P.act(a, x)))
            cols.append(stacked)
        ker = linalg.kernel_basis(field, linalg.transpose(cols),
                                  ncols=len(cols))
        if ker:
            return False, R.from_vec(ker[0])
        return True, None

    rep.run("nondegenerate-action", "A . x = 0 implies x = 0", axiom_iv)

    if P.symmetric:
        def axiom_v():
            for a in abasis:
                for b in abasis:
                    legs = P.legs_1b_2(a, b)
                    for x in rbasis:
                        for y in rbasis:
                            lhs = P.act(a, P.act(b, x) * y)
                            if lhs != P.pair_act(legs, x, y):
                                return False, (a, b, x, y)
            return True, None

        rep.run("covered-product-symmetric",
                "a . ((b . x) y) = (a_(1) b . x)(a_(2) . y)", axiom_v)

        def axiom_vi():
            for a in abasis:
                ea = P.e_map(a)
                for b in abasis:
                    legs = P.legs_Sinv1b_2(a, b)
                    for x in rbasis:
                        lhs = ea.right(P.act(b, x))
                        rhs = R.zero()
                        for (u, v), c in legs.coords.items():
                            rhs = rhs + P.act(
                                A.basis_element(v),
                                P.act(A.basis_element(u), x)).scale(c)
                        if lhs != rhs:
                            return False, (a, b, x)
            return True, None

        rep.run("e-twist-symmetric",
                "(b . x) e(a) = a_(2) . (S^{-1}(a_(1)) b . x)", axiom_vi)

        def axiom_vii():
            for a in abasis:
                ea = P.e_map(a)
                for x in rbasis:
                    if not ar.contains(R.to_vec(ea.right(x))):
                        return False, (a, x)
            return True, None

        rep.run("e-range-symmetric", "R e(A) <= A . R", axiom_vii)

        def mixed_assoc():
            for a in abasis:
                for b in abasis:
                    legs1 = P.legs_1_S2b(a, b)
                    for x in rbasis:
                        for y in rbasis:
                            lhs = P.act(a, x) * P.act(b, y)
                            rhs = R.zero()
                            for (u, v), c in legs1.coords.items():
                                rhs = rhs + P.act(
                                    A.basis_element(u),
                                    x * P.act(A.basis_element(v), y)).scale(c)
                            if lhs != rhs:
                                return False, ("first form", a, x, b, y)
                            legs2 = P.legs_Sinv1b_2(b, a)
                            rhs2 = R.zero()
                            for (u, v), c in legs2.coords.items():
                                rhs2 = rhs2 + P.act(
                                    A.basis_element(v),
                                    P.act(A.basis_element(u), x) * y).scale(c)
                            if lhs != rhs2:
                                return False, ("second form", a, x, b, y)
            return True, None

        rep.run("mixed-associativity",
                "(a . x)(b . y) = a_(1) . (x (S(a_(2)) b . y)) = "
                "b_(2) . ((S^{-1}(b_(1)) a . x) y)", mixed_assoc)

    def global_iff():
        is_global = True
        for a in abasis:
            ide = Multiplier.identity(R).scale(H.counit(a))
            eq, _, _ = multiplier_eq(P.e_map(a), ide, witnesses=rbasis)
            if not eq:
                is_global = False
                break
        unitary = ar.dim == R.dim
        # a global action is exactly: e(a) = eps(a) 1 (and then unitary)
        if is_global and not unitary:
            return False, "e = eps(.)1 but A . R != R"
        return True, f"global: {is_global}"

    rep.run("global-iff-e-counit",
            "R is a global module algebra iff e(a) = eps(a) 1", global_iff)
    return rep


def _verify_partial_action_windowed(P: PartialAction, families, window
                                    ) -> Report:
    """Pointwise axiom suite on a window of the sparse module algebra."""
    rep = Report(f"{P.name}: partial module algebra axioms "
                 f"(window {window})")
    H, R, A = P.hopf, P.R, P.hopf.algebra
    group = getattr(R, "group", None)
    if group is None:
        raise ValueError("sparse R without a sampling group")
    rbasis = [R.basis_element(g) for g in group.sample(window)]
    abasis = A.basis_elements()
    rep.add("window-scope",
            "range axioms e(A)R <= A.R and R e(A) <= A.R are only claimed "
            "for finite dimension", True,
            witness=f"|R window| = {len(rbasis)}")

    def axiom_i():
        for a in abasis:
            for b in abasis:
                legs = P.legs_1_2b(a, b)
                for x in rbasis:
                    for y in rbasis:
                        if P.act(a, x * P.act(b, y)) != P.pair_act(
                                legs, x, y):
                            return False, (a, x, b, y)
        return True, None

    rep.run("covered-product",
            "a . (x (b . y)) = (a_(1) . x)(a_(2) b . y)", axiom_i,
            sample=True)

    def axiom_ii():
        for a in abasis:
            ea = P.e_map(a)
            for b in abasis:
                legs = P.legs_1_S2b(a, b)
                for x in rbasis:
                    if ea.left(P.act(b, x)) != P.act_then_act(legs, x):
                        return False, (a, b, x)
        return True, None

    rep.run("e-twist", "e(a)(b . x) = a_(1) . (S(a_(2)) b . x)", axiom_ii,
            sample=True)

    fams = families
    if fams is None:
        fams = [([a], [x]) for a in abasis for x in rbasis]

    def axiom_iii():
        for a_fam, x_fam in fams:
            if find_family_unit(P, a_fam, x_fam,
                                window_elems=rbasis) is None:
                return False, (a_fam, x_fam)
        return True, None

    rep.run("local-units",
            f"per family (count {len(fams)}): exists b with a_i b = a_i = "
            "b a_i and a_i . (b . x_j) = a_i . x_j", axiom_iii, sample=True)

    def axiom_iv():
        field = R.field
        cols = []
        for x in rbasis:
            stacked: dict = {}
            for ia, a in enumerate(abasis):
                for key, c in P.act(a, x).coords.items():
                    stacked[(ia, key)] = c
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

    rep.run("nondegenerate-action",
            "A . x = 0 implies x = 0 (on the window span)", axiom_iv,
            sample=True)

    if P.symmetric:
        def axiom_v():
            for a in abasis:
                for b in abasis:
                    legs = P.legs_1b_2(a, b)
                    for x in rbasis:
                        for y in rbasis:
                            if P.act(a, P.act(b, x) * y) != P.pair_act(
                                    legs, x, y):
                                return False, (a, b, x, y)
            return True, None

        rep.run("covered-product-symmetric",
                "a . ((b . x) y) = (a_(1) b . x)(a_(2) . y)", axiom_v,
                sample=True)

        def axiom_vi():
            for a in abasis:
                ea = P.e_map(a)
                for b in abasis:
                    legs = P.legs_Sinv1b_2(a, b)
                    for x in rbasis:
                        lhs = ea.right(P.act(b, x))
                        rhs = R.zero()
                        for (u, v), c in legs.coords.items():
                            rhs = rhs + P.act(
                                A.basis_element(v),
                                P.act(A.basis_element(u), x)).scale(c)
                        if lhs != rhs:
                            return False, (a, b, x)
            return True, None

        rep.run("e-twist-symmetric",
                "(b . x) e(a) = a_(2) . (S^{-1}(a_(1)) b . x)", axiom_vi,
                sample=True)
    return rep


# constructors ---------------------------------------------------------------

def action_from_functional(hopf: MultiplierHopf, R: Algebra, lam: Callable,
                           symmetric_claim: bool = True,
                           families: Optional[list] = None,
                           name: str = "functional action") -> PartialAction:
    """a . x = lam(a) x with e(a) = lam(a) 1, after checking the
    convolution identities of lam."""
    A = hopf.algebra
    if not A.is_finite_dim:
        raise ValueError("functional actions need finite-dim A here")
    abasis = A.basis_elements()
    field = A.field

    for a in abasis:
        for b in abasis:
            legs = hopf.t1p(a, b)
            rhs = field.zero()
            for (u, v), c in legs.coords.items():
                rhs = rhs + c * lam(A.basis_element(u)) * lam(
                    A.basis_element(v))
            if lam(a) * lam(b) != rhs:
                raise HypothesisFailure(
                    "lam(a) lam(b) = lam(a_(1)) lam(a_(2) b)",
                    witness=(a, b))
    if symmetric_claim:
        for a in abasis:
            for b in abasis:
                legs = hopf.t3p(a, b)
                rhs = field.zero()
                for (u, v), c in legs.coords.items():
                    rhs = rhs + c * lam(A.basis_element(u)) * lam(
                        A.basis_element(v))
                if lam(a) * lam(b) != rhs:
                    raise HypothesisFailure(
                        "lam(a) lam(b) = lam(a_(1) b) lam(a_(2))",
                        witness=(a, b))

    fams = families if families is not None else [([a], []) for a in abasis]
    for a_fam, _ in fams:
        # a_i b = a_i = b a_i and lam(a_i) lam(b) = lam(a_i): when some
        # lam(a_i) != 0 this forces the extra linear row lam(b) = 1
        rows, rhs_v = [], []
        for a in a_fam:
            av = A.to_vec(a)
            for j_mat in ("left", "right"):
                block = [[None] * A.dim for _ in range(A.dim)]
                for j, lb in enumerate(A.basis):
                    prod = (a * A.basis_element(lb)) if j_mat == "left" \
                        else (A.basis_element(lb) * a)
                    pv = A.to_vec(prod)
                    for k in range(A.dim):
                        block[k][j] = pv[k]
                rows.extend(block)
                rhs_v.extend(av)
        if any(lam(a) for a in a_fam):
            rows.append([lam(A.basis_element(lb)) for lb in A.basis])
            rhs_v.append(field.one())
        if linalg.solve(field, rows, rhs_v) is None:
            raise HypothesisFailure(
                "exists b with a_i b = a_i = b a_i and lam(a_i) lam(b) "
                "= lam(a_i)", witness=a_fam)

    def act(a, x):
        return x.scale(lam(a))

    def e_map(a):
        return Multiplier.identity(R).scale(lam(a))

    return PartialAction(hopf, R, act, e_map, symmetric=symmetric_claim,
                         name=name)


def subgroup_functional(hopf: MultiplierHopf, subgroup) -> Callable:
    """lam(d_g) = 1/|N| for g in N, 0 otherwise (on the function algebra)."""
    A = hopf.algebra
    field = A.field
    order = len(subgroup)
    if field.characteristic and order % field.characteristic == 0:
        raise HypothesisFailure(
            f"characteristic {field.characteristic} divides |N| = {order}")
    inv_order = field.one() / field.of(order)
    nset = set(subgroup)

    def lam(a):
        acc = field.zero()
        for g, c in a.coords.items():
            if g in nset:
                acc = acc + c * inv_order
        return acc

    return lam


def action_from_dual_idempotent(H: MultiplierHopf, subgroup, R: Algebra,
                                name: str = "dual idempotent action"
                                ) -> Tuple[PartialAction, object]:
    """The dual algebra of A_G acting by phi(_ h) . x = x phi(f h).

    f is the indicator of the subgroup N; requires the idempotent
    identity (f (x) 1)Delta(f) = f (x) f.  Returns (action, dual).
    """
    from .algebras import FunctionAlgebra, multiplier_from_function

    A = H.algebra
    if not isinstance(A, FunctionAlgebra):
        raise ValueError("dual idempotent actions live over A_G")
    field = A.field
    nset = set(subgroup)
    f = multiplier_from_function(
        A, lambda g: field.one() if g in nset else field.zero())
    # (f (x) 1)Delta(f) = f (x) f certifies that N is a subgroup
    TA = H.tensor_square
    ws = A.basis_elements()
    tensor_ws = [TA.pure(a, b) for a in ws for b in ws]
    f1 = Multiplier(TA, lambda w: TA.map_leg(w, 0, f.left),
                    lambda w: TA.map_leg(w, 0, f.right), name="f x 1")
    ff = Multiplier(TA,
                    lambda w: TA.map_leg(TA.map_leg(w, 0, f.left), 1, f.left),
                    lambda w: TA.map_leg(TA.map_leg(w, 0, f.right), 1,
                                         f.right), name="f x f")
    eq, _, wit = multiplier_eq(f1 * H.delta_mult(f), ff, witnesses=tensor_ws)
    if not eq:
        raise HypothesisFailure("(f (x) 1)Delta(f) = f (x) f (N a subgroup)",
                                witness=wit)

    dual = dual_algebra(H)
    Dh = dual.hopf

    def lam(w):
        # phi(f h) for w = phi(_ h)
        h = dual.index_element(w)
        return H.integral(f.left(h))

    act = action_from_functional(Dh, R, lam, symmetric_claim=True, name=name)
    return act, dual


def global_action_data(hopf: MultiplierHopf, R: Algebra, triangle: Callable,
                       name: str = "global action") -> PartialAction:
    """Package a global action with e(a) = eps(a) 1 and check unitarity."""

    def e_map(a):
        return Multiplier.identity(R).scale(hopf.counit(a))

    P = PartialAction(hopf, R, triangle, e_map, symmetric=True, name=name)
    if P.ar_span().dim != R.dim:
        raise HypothesisFailure("A . R = R (the global action is unitary)")
    return P


def induced_partial_action(P: PartialAction, ideal_gens: list,
                           ideal_labels: list,
                           name: str = "induced partial action"
                           ) -> PartialAction:
    """a . x = 1_L (a > x) on a unital right ideal L, e(a) = a . 1_L."""
    R = P.R
    L = SubalgebraView(R, ideal_gens, ideal_labels, name="L")
    unit_sub = L.unit()
    if unit_sub is None:
        raise HypothesisFailure("L has a unit 1_L")
    one_parent = L.include(unit_sub)
    if one_parent * one_parent != one_parent:
        raise HypothesisFailure("1_L idempotent", witness=one_parent)
    span = linalg.Subspace(R.field, R.dim, [R.to_vec(g) for g in L.gens])
    for g in L.gens:
        for r in R.basis_elements():
            if not span.contains(R.to_vec(g * r)):
                raise HypothesisFailure("L is a right ideal of R",
                                        witness=(g, r))
    central = all(one_parent * r == r * one_parent
                  for r in R.basis_elements())

    def act(a, l):
        out = one_parent * P.act(a, L.include(l))
        sub = L.restrict(out)
        if sub is None:
            raise CrossCheckError("1_L(a > x) left the ideal span")
        return sub

    def e_map(a):
        return Multiplier.from_element(act(a, unit_sub))

    out = PartialAction(P.hopf, L, act, e_map,
                        symmetric=central and P.symmetric, name=name)
    out.view = L
    out.parent = P
    return out


def partial_group_action_data(hopf: MultiplierHopf, R: Algebra, units: dict,
                              alphas: dict,
                              name: str = "partial group action"
                              ) -> PartialAction:
    """A partial group action (alpha_g, R_g = 1_g R) as a kG-module algebra.

    The acting Hopf algebra is kG; d_g . x = alpha_g(x 1_{g^{-1}}) and
    e(d_g) = 1_g.  ``units[g]`` is the idempotent 1_g in R and
    ``alphas[g]`` the isomorphism R_{g^{-1}} -> R_g given on elements.
    """
    G = hopf.group
    for g, u in units.items():
        if u * u != u:
            raise HypothesisFailure(f"1_{g} idempotent", witness=u)

    def act(a, x):
        out = R.zero()
        for g, c in a.coords.items():
            out = out + alphas[g](x * units[G.inv(g)]).scale(c)
        return out

    def e_map(a):
        m = R.zero()
        for g, c in a.coords.items():
            m = m + units[g].scale(c)
        return Multiplier.from_element(m)

    return PartialAction(hopf, R, act, e_map, symmetric=True, name=name)


def check_unital_action_equivalence(P: PartialAction) -> tuple:
    """For unital A and R: 1_A . x = x and e(a) = j(a . 1_R), both ways.

    Returns (equivalent, details): the unital-definition data and the
    multiplier-form data determine each other exactly when these hold.
    """
    A, R = P.hopf.algebra, P.R
    if A.unit() is None or R.unit() is None:
        raise ValueError("both algebras must be unital")
    unit_acts = all(P.act(A.unit(), x) == x for x in R.basis_elements())
    e_is_act_on_unit = True
    for a in A.basis_elements():
        target = Multiplier.from_element(P.act(a, R.unit()))
        eq, _, _ = multiplier_eq(P.e_map(a), target,
                                 witnesses=R.basis_elements())
        if not eq:
            e_is_act_on_unit = False
            break
    ok = unit_acts and e_is_act_on_unit
    return ok, {"1_A . x = x": unit_acts,
                "e(a) = j(a . 1_R)": e_is_act_on_unit}


def compute_AR(P: PartialAction) -> tuple:
    """The subalgebra A . R with the equalities A . R = e(A) R = R e(A).

    Returns (view, report): ``view`` is the subalgebra (basis in
    canonical echelon order), the report carries the equality and
    nondegeneracy checks.
    """
    if not P.symmetric:
        raise HypothesisFailure("A . R needs a symmetric partial action")
    R, A = P.R, P.hopf.algebra
    field = R.field
    rep = Report(f"{P.name}: A . R")
    ar = P.ar_span()
    gens = [R.from_vec(v) for v in ar.basis]
    labels = list(range(len(gens)))
    view = SubalgebraView(R, gens, labels, name="A.R")

    e_r = linalg.Subspace(
        field, R.dim,
        [R.to_vec(P.e_map(a).left(x)) for a in A.basis_elements()
         for x in R.basis_elements()])
    r_e = linalg.Subspace(
        field, R.dim,
        [R.to_vec(P.e_map(a).right(x)) for a in A.basis_elements()
         for x in R.basis_elements()])
    rep.run("ar-equality-left", "A . R = e(A) R", lambda: (ar == e_r, None))
    rep.run("ar-equality-right", "A . R = R e(A)", lambda: (ar == r_e, None))

    def nondeg():
        ok, wit = check_nondegenerate(view)
        return ok, wit

    rep.run("ar-nondegenerate", "the product on A . R is nondegenerate",
            nondeg)
    return view, rep


@dataclass
class ExtendedActionElement:
    """a . m in M(A . R), per the extension lemma."""

    a: AlgebraElement
    m: Multiplier
    mult: Multiplier          # on the A.R view
    view: SubalgebraView
    report: Report


def extend_action_to_multipliers(P: PartialAction, a: AlgebraElement,
                                 m: Multiplier,
                                 view: Optional[SubalgebraView] = None
                                 ) -> ExtendedActionElement:
    """(a . m)(b . x) = a_(1) . (m(S(a_(2)) b . x)) and its mirror.

    The two maps are assembled on the spanning set {b . x} and checked
    for linear consistency; the result is a multiplier on A . R.
    """
    R, A = P.R, P.hopf.algebra
    field = R.field
    if view is None:
        view, ar_rep = compute_AR(P)
        if not ar_rep.passed:
            raise HypothesisFailure("A . R is an algebra with nondegenerate "
                                    "product", witness=ar_rep.first_failure())
    ins, outs_l, outs_r = [], [], []
    for b in A.basis_elements():
        for x in R.basis_elements():
            bx = P.act(b, x)
            ins.append(view.parent.to_vec(bx))
            legs = P.legs_1_S2b(a, b)
            val = R.zero()
            for (u, v), c in legs.coords.items():
                val = val + P.act(A.basis_element(u), m.left(
                    P.act(A.basis_element(v), x))).scale(c)
            outs_l.append(view.parent.to_vec(val))
            legs2 = P.legs_Sinv1b_2(a, b)
            val2 = R.zero()
            for (u, v), c in legs2.coords.items():
                val2 = val2 + P.act(A.basis_element(v), m.right(
                    P.act(A.basis_element(u), x))).scale(c)
            outs_r.append(view.parent.to_vec(val2))
    ML = linalg.linear_map_from_spanning(field, ins, outs_l)
    MR = linalg.linear_map_from_spanning(field, ins, outs_r)
    if ML is None or MR is None:
        raise CrossCheckError("extension maps are not well defined on A . R")

    def to_view_operator(M):
        def fn(z):
            out = linalg.mat_vec(M, view.parent.to_vec(view.include(z)))
            sub = view.restrict(view.parent.from_vec(out))
            if sub is None:
                raise CrossCheckError("extension left A . R")
            return sub
        return fn

    mult = Multiplier(view, to_view_operator(ML), to_view_operator(MR),
                      name=f"{a} . {m.name}")
    rep = Report(f"extension of {m.name} along {a}")
    rep.run("extension-compatible",
            "(b . x)((a . m)(c . y)) = ((b . x)(a . m))(c . y)",
            lambda: mult.check_compatible())
    return ExtendedActionElement(a, m, mult, view, rep)
