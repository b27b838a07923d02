"""End-to-end runs over S3: noncocommutative coproduct, nonabelian dual.

The corner instance here is the span of the indicator functions of the
alternating subgroup A3 inside the functions on S3; its dual action
lives over the noncommutative group algebra kS3, so any left/right or
slot asymmetry bug in the covered forms would surface.
"""

from fractions import Fraction

import pytest

from partialmha import action as ac
from partialmha import coaction as co
from partialmha import duality as du
from partialmha import mhopf
from partialmha import morita as mo
from partialmha.algebras import StructureConstantAlgebra
from partialmha.fields import QQ
from partialmha.groups import SymmetricGroup3

F = Fraction

A3 = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]     # identity and both 3-cycles


@pytest.fixture(scope="module")
def hopf_s3():
    return mhopf.build_function_algebra_hopf(SymmetricGroup3(), QQ)


@pytest.fixture(scope="module")
def corner_s3(hopf_s3):
    glob = co.self_coaction(hopf_s3)
    A = hopf_s3.algebra
    gens = [A.basis_element(n) for n in A3]
    inst = co.induced_partial_coaction(glob, gens, list(A3),
                                       name="A3 corner coaction")
    inst.restrict_witness = A.basis_element((0, 1, 2))
    return inst


def test_corner_coaction_suite(corner_s3):
    rep = co.verify_partial_coaction(corner_s3)
    assert rep.passed, rep.summary()


def test_dual_action_over_group_algebra_model(corner_s3):
    bridge = du.dualize_coaction(corner_s3)
    rep = ac.verify_partial_action(bridge.target)
    assert rep.passed, rep.summary()


def test_dual_idempotent_action_noncommutative_acting_algebra(hopf_s3):
    table = {("p", "p"): {"p": F(1)}, ("q", "q"): {"q": F(1)}}
    R = StructureConstantAlgebra(QQ, ["p", "q"], table, name="kxk")
    P, dual = ac.action_from_dual_idempotent(hopf_s3, A3, R)
    rep = ac.verify_partial_action(P)
    assert rep.passed, rep.summary()


def test_morita_and_galois_on_s3_corner(corner_s3):
    ctx = mo.morita_context(corner_s3)
    assert ctx.report.passed, ctx.report.summary()
    rep, g = mo.check_galois_equivalence(ctx)
    assert rep.passed, rep.summary()
    assert g.verdict == "bijective"
    assert g.domain_dim == g.codomain_dim == 9


def test_group_algebra_side_roundtrip():
    # induced corner action of A_{S3} on the A3-corner of kS3
    H = mhopf.build_function_algebra_hopf(SymmetricGroup3(), QQ)
    from partialmha.algebras import GroupAlgebra
    KG = GroupAlgebra(SymmetricGroup3(), QQ)

    def tri(a, x):
        out = KG.zero()
        for h, c in x.coords.items():
            out = out + KG.basis_element(h).scale(c * a.coords.get(h, F(0)))
        return out

    glob = ac.global_action_data(H, KG, tri)
    f_N = KG.zero()
    for n in A3:
        f_N = f_N + KG.basis_element(n)
    f_N = f_N.scale(F(1, 3))
    gens = [f_N, KG.basis_element((1, 0, 2)) * f_N]
    P = ac.induced_partial_action(glob, gens, ["fN", "fN.t"],
                                  name="A3 corner action")
    rep = ac.verify_partial_action(P)
    assert rep.passed, rep.summary()
    b = H.algebra.zero()
    for n in A3:
        b = b + H.algebra.basis_element(n)
    ok, rt = du.roundtrip_check(P, P.e_map, b, b)
    assert ok, rt.summary()
