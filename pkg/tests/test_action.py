"""Partial actions: functional, dual-idempotent and induced instances.

Hand-computed expectations: the half-weight functional on Z/4 with
N = {0, 2}; phi(f h) sums h over N for the dual-idempotent action; the
induced action on the group-algebra corner f_N k(Z/4) acts by
d_p . (f_N h) = (1/2) f_N p when p - h lies in N and by 0 otherwise.
"""

from fractions import Fraction

import pytest

from partialmha import action as ac
from partialmha import mhopf
from partialmha.algebras import (GroupAlgebra, Multiplier,
                                 StructureConstantAlgebra, multiplier_eq)
from partialmha.fields import QQ, PrimeField
from partialmha.groups import CyclicGroup
from partialmha.report import HypothesisFailure

F = Fraction
N = (0, 2)


def hopf4():
    return mhopf.build_function_algebra_hopf(CyclicGroup(4), QQ)


def two_point_algebra():
    """k x k: two orthogonal idempotents (unital, nondegenerate)."""
    table = {("p", "p"): {"p": F(1)}, ("q", "q"): {"q": F(1)}}
    return StructureConstantAlgebra(QQ, ["p", "q"], table, name="kxk")


def half_functional_action(R=None):
    H = hopf4()
    R = R if R is not None else two_point_algebra()
    lam = ac.subgroup_functional(H, N)
    return ac.action_from_functional(H, R, lam, name="half functional")


def delta_action_on_group_algebra():
    """The global action d_p > h = d_p(h) h of A_G on kG."""
    H = hopf4()
    KG = GroupAlgebra(CyclicGroup(4), QQ)

    def tri(a, x):
        out = KG.zero()
        for h, c in x.coords.items():
            out = out + KG.basis_element(h).scale(c * a.coords.get(h, F(0)))
        return out

    return ac.global_action_data(H, KG, tri, name="evaluation action")


def induced_corner_action():
    P = delta_action_on_group_algebra()
    KG = P.R
    f_N = KG.element({0: F(1, 2), 2: F(1, 2)})
    gens = [f_N, KG.basis_element(1) * f_N]
    return ac.induced_partial_action(P, gens, ["fN", "fN.g"],
                                     name="induced corner action")


class TestFunctionalAction:
    def test_half_weight_verifies(self):
        P = half_functional_action()
        rep = ac.verify_partial_action(P)
        assert rep.passed, rep.summary()

    def test_z2_full_group(self):
        H = mhopf.build_function_algebra_hopf(CyclicGroup(2), QQ)
        lam = ac.subgroup_functional(H, (0, 1))
        P = ac.action_from_functional(H, two_point_algebra(), lam)
        rep = ac.verify_partial_action(P)
        assert rep.passed, rep.summary()

    def test_counit_gives_global(self):
        H = hopf4()
        P = ac.action_from_functional(H, two_point_algebra(), H.counit,
                                      name="counit action")
        rep = ac.verify_partial_action(P)
        assert rep.passed, rep.summary()
        checks = {c.name: c for c in rep.checks}
        assert "global: True" in checks["global-iff-e-counit"].witness

    def test_non_subgroup_functional_refused(self):
        H = hopf4()

        def lam(a):
            # indicator-style weight on {0, 1}: breaks the convolution law
            return a.coords.get(0, F(0)) + a.coords.get(1, F(0))

        with pytest.raises(HypothesisFailure):
            ac.action_from_functional(H, two_point_algebra(), lam)

    def test_characteristic_guard(self):
        H = mhopf.build_function_algebra_hopf(CyclicGroup(4), PrimeField(2))
        with pytest.raises(HypothesisFailure) as exc:
            ac.subgroup_functional(H, N)
        assert "divides" in exc.value.identity

    def test_gf5_half_weight(self):
        H = mhopf.build_function_algebra_hopf(CyclicGroup(4), PrimeField(5))
        gf = PrimeField(5)
        table = {("p", "p"): {"p": gf.one()}, ("q", "q"): {"q": gf.one()}}
        R = StructureConstantAlgebra(gf, ["p", "q"], table, name="kxk")
        lam = ac.subgroup_functional(H, N)
        P = ac.action_from_functional(H, R, lam)
        rep = ac.verify_partial_action(P)
        assert rep.passed, rep.summary()

    def test_corrupted_e_fails(self):
        P = half_functional_action()
        bad = ac.PartialAction(P.hopf, P.R, P.act,
                               lambda a: Multiplier.zero(P.R),
                               symmetric=True, name="zero e")
        rep = ac.verify_partial_action(bad)
        checks = {c.name: c for c in rep.checks}
        assert not checks["e-twist"].ok


class TestDualIdempotentAction:
    def test_values(self):
        H = hopf4()
        R = two_point_algebra()
        P, dual = ac.action_from_dual_idempotent(H, N, R)
        A = H.algebra
        x = R.basis_element("p")
        h = dual.dual_element(A.element({0: F(1), 2: F(1)}))
        assert P.act(h, x) == x.scale(F(2))
        h1 = dual.dual_element(A.basis_element(1))
        assert P.act(h1, x).is_zero

    def test_axioms(self):
        H = hopf4()
        P, _ = ac.action_from_dual_idempotent(H, N, two_point_algebra())
        rep = ac.verify_partial_action(P)
        assert rep.passed, rep.summary()

    def test_full_group_is_global(self):
        H = hopf4()
        P, _ = ac.action_from_dual_idempotent(H, (0, 1, 2, 3),
                                              two_point_algebra())
        rep = ac.verify_partial_action(P)
        assert rep.passed
        checks = {c.name: c for c in rep.checks}
        assert "global: True" in checks["global-iff-e-counit"].witness

    def test_non_subgroup_refused(self):
        H = hopf4()
        with pytest.raises(HypothesisFailure) as exc:
            ac.action_from_dual_idempotent(H, (0, 1), two_point_algebra())
        assert "subgroup" in exc.value.identity


class TestInducedAction:
    def test_action_table(self):
        P = induced_corner_action()
        L = P.R
        A = P.hopf.algebra
        KG = P.parent.R
        f_N = KG.element({0: F(1, 2), 2: F(1, 2)})
        # d_p . (f_N h) = (1/2) f_N p if p - h in N else 0
        for p in range(4):
            for h_lab, h_elem in (("fN", 0), ("fN.g", 1)):
                got = P.act(A.basis_element(p), L.basis_element(h_lab))
                if (p - h_elem) % 4 in N:
                    expected = L.restrict(
                        (f_N * KG.basis_element(p)).scale(F(1, 2)))
                    assert got == expected
                else:
                    assert got.is_zero

    def test_e_values_and_non_globality(self):
        P = induced_corner_action()
        A = P.hopf.algebra
        L = P.R
        one_L = L.unit()
        half_unit = one_L.scale(F(1, 2))
        for p in N:
            e_p = P.e_map(A.basis_element(p))
            eq, _, _ = multiplier_eq(
                e_p, Multiplier.from_element(half_unit),
                witnesses=L.basis_elements())
            assert eq
        # eps(d_1) f_N = 0 but e(d_1) = 0 as well; non-globality shows at
        # p = 2: eps(d_2) = 0 while e(d_2) = f_N / 2 != 0
        e2 = P.e_map(A.basis_element(2))
        eq, _, _ = multiplier_eq(e2, Multiplier.zero(L),
                                 witnesses=L.basis_elements())
        assert not eq
        assert P.hopf.counit(A.basis_element(2)) == F(0)

    def test_axioms(self):
        P = induced_corner_action()
        rep = ac.verify_partial_action(P)
        assert rep.passed, rep.summary()

    def test_not_global(self):
        P = induced_corner_action()
        rep = ac.verify_partial_action(P)
        checks = {c.name: c for c in rep.checks}
        assert "global: False" in checks["global-iff-e-counit"].witness


class TestComputeAR:
    def test_global_unitary_gives_R(self):
        P = delta_action_on_group_algebra()
        view, rep = ac.compute_AR(P)
        assert rep.passed, rep.summary()
        assert view.dim == P.R.dim

    def test_half_functional(self):
        P = half_functional_action()
        view, rep = ac.compute_AR(P)
        assert rep.passed, rep.summary()
        assert view.dim == P.R.dim  # lam is nonzero somewhere

    def test_induced(self):
        P = induced_corner_action()
        view, rep = ac.compute_AR(P)
        assert rep.passed, rep.summary()
        assert view.dim == 2


class TestExtension:
    def test_extension_of_identity_is_e(self):
        P = induced_corner_action()
        view, _ = ac.compute_AR(P)
        A = P.hopf.algebra
        for p in range(4):
            a = A.basis_element(p)
            ext = ac.extend_action_to_multipliers(
                P, a, Multiplier.identity(P.R), view=view)
            assert ext.report.passed
            # e(a) restricted to A . R equals a . 1
            e_res = Multiplier(
                view,
                lambda z, a=a: view.restrict(P.e_map(a).left(view.include(z))),
                lambda z, a=a: view.restrict(P.e_map(a).right(view.include(z))),
                name="e|")
            eq, _, _ = multiplier_eq(ext.mult, e_res,
                                     witnesses=view.basis_elements())
            assert eq

    def test_global_action_extension_scales_by_counit(self):
        P = delta_action_on_group_algebra()
        view, _ = ac.compute_AR(P)
        A = P.hopf.algebra
        for p in range(4):
            a = A.basis_element(p)
            ext = ac.extend_action_to_multipliers(
                P, a, Multiplier.identity(P.R), view=view)
            target = Multiplier.identity(view).scale(P.hopf.counit(a))
            eq, _, _ = multiplier_eq(ext.mult, target,
                                     witnesses=view.basis_elements())
            assert eq

    def test_extension_covered_product_identity(self):
        # a . (m (b . n)) = (a_(1) . m)(a_(2) b . n) in M(A . R); here
        # A . L = L so multipliers on the view lift back to M(R)
        P = induced_corner_action()
        view, _ = ac.compute_AR(P)
        A, R = P.hopf.algebra, P.R
        m = Multiplier.from_element(R.basis_element("fN.g"))
        n = Multiplier.identity(R)
        for a in A.basis_elements():
            for b in A.basis_elements():
                ext_bn = ac.extend_action_to_multipliers(P, b, n, view=view)
                inner = m * _as_R_mult(P, view, ext_bn)
                lhs = ac.extend_action_to_multipliers(
                    P, a, inner, view=view).mult
                legs = P.legs_1_2b(a, b)
                rhs = None
                for (u, v), c in legs.coords.items():
                    term_l = ac.extend_action_to_multipliers(
                        P, A.basis_element(u), m, view=view).mult
                    term_r = ac.extend_action_to_multipliers(
                        P, A.basis_element(v), n, view=view).mult
                    term = (term_l * term_r).scale(c)
                    rhs = term if rhs is None else rhs + term
                if rhs is None:
                    rhs = Multiplier.zero(view)
                eq, _, _ = multiplier_eq(lhs, rhs,
                                         witnesses=view.basis_elements())
                assert eq


def _as_R_mult(P, view, ext):
    """Lift a multiplier on the A.R view back to M(R) when A.R = span."""
    R = P.R

    def left(x):
        sub = view.restrict(x)
        if sub is None:
            raise ValueError("element outside A.R")
        return view.include(ext.mult.left(sub))

    def right(x):
        sub = view.restrict(x)
        if sub is None:
            raise ValueError("element outside A.R")
        return view.include(ext.mult.right(sub))

    return Multiplier(R, left, right, name="lifted")


class TestUnitalEquivalence:
    def test_functional(self):
        P = half_functional_action()
        ok, details = ac.check_unital_action_equivalence(P)
        assert ok, details

    def test_global(self):
        P = delta_action_on_group_algebra()
        ok, details = ac.check_unital_action_equivalence(P)
        assert ok, details

    def test_corrupted(self):
        P = half_functional_action()
        bad = ac.PartialAction(P.hopf, P.R, P.act,
                               lambda a: Multiplier.zero(P.R),
                               symmetric=True, name="zero e")
        ok, details = ac.check_unital_action_equivalence(bad)
        assert not ok


class TestPartialGroupAction:
    def test_restriction_action_on_two_points(self):
        KG = mhopf.build_group_algebra_hopf(CyclicGroup(2), QQ)
        R = two_point_algebra()
        one = R.unit()
        p = R.basis_element("p")
        units = {0: one, 1: p}

        def alpha0(x):
            return x

        def alpha1(x):
            return R.element({"p": x.coords.get("p", F(0))})

        P = ac.partial_group_action_data(KG, R, units,
                                         {0: alpha0, 1: alpha1})
        rep = ac.verify_partial_action(P)
        assert rep.passed, rep.summary()
        eq, _, _ = multiplier_eq(P.e_map(KG.algebra.basis_element(1)),
                                 Multiplier.from_element(p),
                                 witnesses=R.basis_elements())
        assert eq


class TestSparseWindowedVerification:
    def test_functional_action_on_sparse_module(self):
        # half-weight functional action of functions on Z/4 acting on
        # the sparse function algebra over the integers
        from partialmha.algebras import FunctionAlgebra
        from partialmha.groups import IntegerGroup
        H = hopf4()
        R = FunctionAlgebra(IntegerGroup(), QQ)
        lam = ac.subgroup_functional(H, N)
        P = ac.PartialAction(
            H, R, lambda a, x: x.scale(lam(a)),
            lambda a: Multiplier.identity(R).scale(lam(a)),
            symmetric=True, name="half functional on sparse R")
        rep = ac.verify_partial_action(P, window=3)
        assert rep.passed, rep.summary()
        statuses = {c.status for c in rep.checks if c.name != "window-scope"}
        assert statuses == {"sample-verified"}

    def test_sparse_needs_window(self):
        from partialmha.algebras import FunctionAlgebra
        from partialmha.groups import IntegerGroup
        H = hopf4()
        R = FunctionAlgebra(IntegerGroup(), QQ)
        lam = ac.subgroup_functional(H, N)
        P = ac.PartialAction(
            H, R, lambda a, x: x.scale(lam(a)),
            lambda a: Multiplier.identity(R).scale(lam(a)),
            symmetric=True)
        with pytest.raises(ValueError):
            ac.verify_partial_action(P)
