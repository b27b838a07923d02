"""Batch front end: ingest instance specs, run suites, emit JSON reports.

A spec is a TOML file selecting a field, a group, a Hopf instance and a
structure recipe (coaction or action).  Subcommands run the matching
verification pipelines; reports are deterministic for a fixed spec
(timing fields aside) and every check carries the verified law.

Exit codes: 0 all checks passed, 1 a check failed, 2 unparseable spec,
3 a constructor hypothesis was refused (the failing identity is named),
4 an internal cross-check mismatch (a structure bug).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

try:
    import tomllib
except ImportError:                      # python < 3.11
    import tomli as tomllib

from . import action as ac
from . import coaction as co
from . import duality as du
from . import linalg
from . import mhopf
from . import morita as mo
from .algebras import (FunctionAlgebra, GroupAlgebra, Multiplier,
                       StructureConstantAlgebra, multiplier_from_function)
from .fields import field_from_name
from .groups import group_from_spec
from .report import (CrossCheckError, HypothesisFailure, Report, SCHEMA_VERSION,
                     fingerprint)

SUBCOMMANDS = ("verify-mhopf", "verify-coaction", "verify-action",
               "dualize", "morita", "galois", "all")


class SpecError(Exception):
    pass


def parse_label(v):
    return tuple(v) if isinstance(v, list) else v


class InstanceSpec:
    """A parsed spec file: field, group, Hopf instance, structure recipe."""

    def __init__(self, data: dict, field_override: Optional[str] = None,
                 window_override: Optional[int] = None):
        if not isinstance(data, dict):
            raise SpecError("spec root must be a table")
        self.data = data
        self.title = data.get("title", "instance")
        fname = field_override or data.get("field", "rational")
        try:
            self.field = field_from_name(fname)
        except ValueError as exc:
            raise SpecError(str(exc))
        self.window = window_override or data.get("window", 8)
        g = data.get("group")
        if not g:
            raise SpecError("missing [group]")
        try:
            self.group = group_from_spec(g.get("kind", ""), g.get("order"))
        except ValueError as exc:
            raise SpecError(str(exc))
        h = data.get("hopf", {})
        self.hopf_kind = h.get("kind", "function-algebra")
        if self.hopf_kind not in ("function-algebra", "group-algebra"):
            raise SpecError(f"unknown hopf kind {self.hopf_kind!r}")
        self.coaction = data.get("coaction")
        self.action = data.get("action")
        if self.coaction and self.action:
            raise SpecError("spec declares both a coaction and an action")
        self.fingerprint = fingerprint(
            {"data": data, "field": fname, "window": self.window})

    # builders ----------------------------------------------------------

    def build_hopf(self):
        if self.hopf_kind == "function-algebra":
            return mhopf.build_function_algebra_hopf(self.group, self.field)
        return mhopf.build_group_algebra_hopf(self.group, self.field)

    def build_R(self, default="two-point"):
        spec = self.data.get("algebra", {"kind": default})
        kind = spec.get("kind", default)
        one = self.field.one()
        if kind == "two-point":
            table = {("p", "p"): {"p": one}, ("q", "q"): {"q": one}}
            return StructureConstantAlgebra(self.field, ["p", "q"], table,
                                            name="kxk")
        if kind == "scalar":
            return StructureConstantAlgebra(
                self.field, ["u"], {("u", "u"): {"u": one}}, name="k")
        if kind in ("function-algebra", "group-algebra"):
            gspec = spec.get("group")
            grp = self.group if gspec is None else group_from_spec(
                gspec.get("kind", ""), gspec.get("order"))
            cls = FunctionAlgebra if kind == "function-algebra" \
                else GroupAlgebra
            return cls(grp, self.field)
        if kind == "structure":
            labels = [parse_label(l) for l in spec.get("labels", [])]
            table = {}
            for i, j, k, c in spec.get("table", []):
                key = (parse_label(i), parse_label(j))
                table.setdefault(key, {})[parse_label(k)] = \
                    self.field.parse(str(c))
            return StructureConstantAlgebra(self.field, labels, table,
                                            name="R")
        raise SpecError(f"unknown algebra kind {kind!r}")

    def subgroup(self, section) -> list:
        sub = section.get("subgroup")
        if sub is None:
            raise SpecError("recipe needs a subgroup")
        return [parse_label(g) for g in sub]

    def element_from_labels(self, algebra, labels, scale=None):
        out = algebra.zero()
        for l in labels:
            out = out + algebra.basis_element(parse_label(l))
        if scale is not None:
            out = out.scale(scale)
        return out

    def build_coaction(self) -> co.PartialCoaction:
        sec = self.coaction
        if sec is None:
            raise SpecError("spec has no [coaction]")
        recipe = sec.get("recipe")
        H = self.build_hopf()
        A = H.algebra
        inst = None
        if recipe == "projection":
            nset = self.subgroup(sec)
            one, zero = self.field.one(), self.field.zero()
            m = multiplier_from_function(
                A, lambda g: one if g in set(nset) else zero)
            inst = co.coaction_from_projection(
                H, self.build_R(), m, name=self.title)
        elif recipe == "trivial-point":
            inst = co.trivial_point_coaction(H, self.build_R(),
                                             name=self.title)
        elif recipe == "self":
            inst = co.self_coaction(H, name=self.title)
        elif recipe == "induced":
            nset = self.subgroup(sec)
            if self.hopf_kind != "function-algebra":
                raise SpecError("induced corner coactions live over A_G")
            glob = co.self_coaction(H)
            gens = [A.basis_element(n) for n in nset]
            inst = co.induced_partial_coaction(glob, gens, list(nset),
                                               name=self.title)
        elif recipe == "explicit":
            inst = self._explicit_coaction(H, sec)
        else:
            raise SpecError(f"unknown coaction recipe {recipe!r}")
        if "restrict-witness" in sec:
            inst.restrict_witness = A.basis_element(
                parse_label(sec["restrict-witness"]))
        if "reduced" in sec:
            inst.reduced = bool(sec["reduced"])
        return inst

    def _explicit_coaction(self, H, sec):
        R = self.build_R()
        A = H.algebra
        T = None
        from .algebras import TensorAlgebra
        T = TensorAlgebra([R, A])

        def table_map(entries):
            out = {}
            for x_l, a_l, terms in entries:
                key = (parse_label(x_l), parse_label(a_l))
                out[key] = T.element(
                    {(parse_label(r), parse_label(b)):
                     self.field.parse(str(c)) for r, b, c in terms})
            return out

        rho1_t = table_map(sec.get("rho1", []))
        rho2_t = table_map(sec.get("rho2", []))

        def lift(table):
            def fn(x, a):
                out = T.zero()
                for xl, cx in x.coords.items():
                    for al, ca in a.coords.items():
                        w = table.get((xl, al))
                        if w is not None:
                            out = out + w.scale(cx * ca)
                return out
            return fn

        rho1 = lift(rho1_t)
        rho2 = lift(rho2_t)

        e1_t = table_map(sec.get("e-left", []))
        e2_t = table_map(sec.get("e-right", []))

        def e_action(table):
            def fn(w):
                out = T.zero()
                for (xl, al), c in w.coords.items():
                    v = table.get((xl, al))
                    if v is not None:
                        out = out + v.scale(c)
                return out
            return fn

        E = Multiplier(T, e_action(e1_t), e_action(e2_t), name="E")
        return co.PartialCoaction(H, R, rho1, lambda a, x: rho2(x, a), E,
                                  symmetric=sec.get("symmetric", True),
                                  name=self.title)

    def build_action(self) -> ac.PartialAction:
        sec = self.action
        if sec is None:
            raise SpecError("spec has no [action]")
        recipe = sec.get("recipe")
        H = self.build_hopf()
        if recipe == "functional":
            if "table" in sec:
                tbl = {parse_label(g): self.field.parse(str(c))
                       for g, c in sec["table"]}
                zero = self.field.zero()

                def lam(a):
                    acc = zero
                    for g, c in a.coords.items():
                        acc = acc + c * tbl.get(g, zero)
                    return acc
            else:
                lam = ac.subgroup_functional(H, self.subgroup(sec))
            return ac.action_from_functional(H, self.build_R(), lam,
                                             name=self.title)
        if recipe == "dual-idempotent":
            P, _ = ac.action_from_dual_idempotent(
                H, self.subgroup(sec), self.build_R(), name=self.title)
            return P
        if recipe == "induced":
            return self._induced_action()
        if recipe == "group-partial":
            return self._group_partial_action()
        if recipe == "explicit":
            return self._explicit_action(H, sec)
        raise SpecError(f"unknown action recipe {recipe!r}")

    def _explicit_action(self, H, sec):
        """Raw tables: act[a, x] and the two actions of each e(a)."""
        R = self.build_R()
        A = H.algebra
        zero = self.field.zero()

        def element_table(entries):
            out = {}
            for a_l, x_l, terms in entries:
                out[(parse_label(a_l), parse_label(x_l))] = R.element(
                    {parse_label(r): self.field.parse(str(c))
                     for r, c in terms})
            return out

        act_t = element_table(sec.get("table", []))
        el_t = element_table(sec.get("e-left", []))
        er_t = element_table(sec.get("e-right", []))

        def lift(table):
            def fn(a, x):
                out = R.zero()
                for al, ca in a.coords.items():
                    for xl, cx in x.coords.items():
                        v = table.get((al, xl))
                        if v is not None:
                            out = out + v.scale(ca * cx)
                return out
            return fn

        act = lift(act_t)
        e_left, e_right = lift(el_t), lift(er_t)

        def e_map(a):
            return Multiplier(R, lambda x, a=a: e_left(a, x),
                              lambda x, a=a: e_right(a, x), name="e")

        return ac.PartialAction(H, R, act, e_map,
                                symmetric=sec.get("symmetric", True),
                                name=self.title)

    def _induced_action(self):
        sec = self.action
        nset = self.subgroup(sec)
        if self.hopf_kind != "function-algebra":
            raise SpecError("the induced corner action lives over A_G")
        H = self.build_hopf()
        KG = GroupAlgebra(self.group, self.field)

        def tri(a, x):
            out = KG.zero()
            zero = self.field.zero()
            for h, c in x.coords.items():
                out = out + KG.basis_element(h).scale(
                    c * a.coords.get(h, zero))
            return out

        glob = ac.global_action_data(H, KG, tri, name="evaluation action")
        order = self.field.of(len(nset))
        f_N = KG.zero()
        for n in nset:
            f_N = f_N + KG.basis_element(n)
        f_N = f_N.scale(self.field.one() / order)
        gens, labels, vecs = [f_N], ["fN"], [KG.to_vec(f_N)]
        for g in self.group.elements():
            cand = KG.basis_element(g) * f_N
            if not linalg.Subspace(self.field, KG.dim,
                                   vecs).contains(KG.to_vec(cand)):
                gens.append(cand)
                labels.append(f"fN.{g}")
                vecs.append(KG.to_vec(cand))
        return ac.induced_partial_action(glob, gens, labels, name=self.title)

    def _group_partial_action(self):
        if self.hopf_kind != "group-algebra" or self.group.elements() != [0, 1]:
            raise SpecError("group-partial recipe: kG over the order-2 group")
        H = self.build_hopf()
        R = self.build_R()
        one = R.unit()
        if one is None:
            raise SpecError("group-partial recipe needs unital R")
        fixed = [parse_label(l) for l in self.action.get("fixed-ideal", ["p"])]
        p = R.zero()
        for l in fixed:
            p = p + R.basis_element(l)

        def alpha0(x):
            return x

        def alpha1(x):
            return x * p

        P = ac.partial_group_action_data(H, R, {0: one, 1: p},
                                         {0: alpha0, 1: alpha1},
                                         name=self.title)
        return P

    def duality_data(self, P):
        """Canonical (f, b, k) exhibiting e = f(_ b) for shipped recipes."""
        sec = self.action or {}
        recipe = sec.get("recipe")
        A = P.hopf.algebra
        if "b" in sec:
            b = self.element_from_labels(A, sec["b"])
            k = self.element_from_labels(A, sec.get("k", sec["b"]))
            return P.e_map, b, k
        if recipe in ("functional", "induced"):
            if "subgroup" in sec:
                nset = self.subgroup(sec)
                b = self.element_from_labels(A, nset)
            else:
                b = A.basis_element(self.group.identity)
            return P.e_map, b, b
        if recipe == "dual-idempotent":
            nset = self.subgroup(sec)
            scale = self.field.one() / self.field.of(len(nset))
            b = self.element_from_labels(A, nset, scale=scale)
            return P.e_map, b, b
        if recipe == "group-partial":
            b = A.basis_element(self.group.identity)
            return P.e_map, b, b
        raise SpecError("no duality data for this recipe; declare b (and k)")


def load_spec(path: str, field_override=None, window_override=None
              ) -> InstanceSpec:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise SpecError(f"spec file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise SpecError(f"unparseable spec: {exc}")
    return InstanceSpec(data, field_override, window_override)


# pipelines -------------------------------------------------------------

def _pooled(closures: list, jobs: int) -> list:
    """Run independent report builders, reassembling in definition order."""
    if jobs > 1 and len(closures) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda fn: fn(), closures))
    return [fn() for fn in closures]


def run_verify_mhopf(spec: InstanceSpec, jobs: int = 1) -> list:
    H = spec.build_hopf()
    window = None if H.is_finite_dim else spec.window
    closures = [lambda: mhopf.verify_mhopf(H, window=window),
                lambda: mhopf.modular_element(H, window=window).report]
    if H.is_finite_dim:
        closures.append(lambda: mhopf.dual_algebra(H).report)
    return _pooled(closures, jobs)


def run_verify_coaction(spec: InstanceSpec, jobs: int = 1) -> list:
    C = spec.build_coaction()
    return [co.verify_partial_coaction(C)]


def run_verify_action(spec: InstanceSpec, jobs: int = 1) -> list:
    P = spec.build_action()
    return [ac.verify_partial_action(P)]


def run_dualize(spec: InstanceSpec, jobs: int = 1) -> list:
    if spec.coaction is not None:
        C = spec.build_coaction()
        bridge = du.dualize_coaction(C)
        rep = ac.verify_partial_action(bridge.target)
        out = Report(f"dualize {C.name}")
        out.extend(bridge.report)
        out.extend(rep, prefix="dual-")
        return [out]
    P = spec.build_action()
    f, b, k = spec.duality_data(P)
    ok, rep = du.roundtrip_check(P, f, b, k)
    bridge = du.dualize_action(P, f, b, k)
    crep = co.verify_partial_coaction(bridge.target)
    out = Report(f"dualize {P.name}")
    out.extend(rep)
    out.extend(crep, prefix="dual-")
    return [out]


def run_morita(spec: InstanceSpec, jobs: int = 1) -> list:
    C = spec.build_coaction()
    ctx = mo.morita_context(C)
    return [ctx.report]


def run_galois(spec: InstanceSpec, jobs: int = 1) -> list:
    C = spec.build_coaction()
    ctx = mo.morita_context(C)
    rep, g = mo.check_galois_equivalence(ctx)
    out = Report(f"Galois analysis of {C.name}")
    out.extend(ctx.report)
    out.extend(rep)
    out.add("galois-verdict", "verdict of the partial Galois map beta",
            True, witness=g.verdict)
    return [out]


def run_all(spec: InstanceSpec, jobs: int = 1) -> list:
    reports = run_verify_mhopf(spec, jobs)
    if spec.coaction is not None:
        reports += run_verify_coaction(spec, jobs)
        reports += run_dualize(spec, jobs)
        if spec.coaction.get("restrict-witness") is not None:
            reports += run_galois(spec, jobs)
    elif spec.action is not None:
        reports += run_verify_action(spec, jobs)
        try:
            spec.duality_data(spec.build_action())
            reports += run_dualize(spec, jobs)
        except SpecError:
            pass
    return reports


PIPELINES = {
    "verify-mhopf": run_verify_mhopf,
    "verify-coaction": run_verify_coaction,
    "verify-action": run_verify_action,
    "dualize": run_dualize,
    "morita": run_morita,
    "galois": run_galois,
    "all": run_all,
}


def assemble_output(spec: InstanceSpec, subcommand: str, reports: list,
                    with_timing=True) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "fingerprint": spec.fingerprint,
        "title": spec.title,
        "field": spec.field.name,
        "subcommand": subcommand,
        "passed": all(r.passed for r in reports),
        "reports": [r.as_dict(with_timing) for r in reports],
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="partialmha",
        description="exact verification suites for partial (co)actions "
                    "of multiplier Hopf algebras")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--spec", default=os.environ.get("SPEC"),
                        help="path to the TOML instance spec")
    parser.add_argument("--out", default=os.environ.get("OUT"),
                        help="write the JSON report here (default stdout)")
    parser.add_argument("--window", type=int,
                        default=int(os.environ["WINDOW"])
                        if "WINDOW" in os.environ else None,
                        help="witness window for infinite groups")
    parser.add_argument("--field", default=os.environ.get("FIELD"),
                        help="override the spec field: rational or gf:<p>")
    parser.add_argument("--jobs", type=int,
                        default=int(os.environ.get("JOBS", "1")),
                        help="worker pool size for independent checks")
    args = parser.parse_args(argv)

    if not args.spec:
        print("error: no spec file (use --spec or SPEC)", file=sys.stderr)
        return 2
    try:
        spec = load_spec(args.spec, args.field, args.window)
        reports = PIPELINES[args.subcommand](spec, args.jobs)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 2
    except HypothesisFailure as exc:
        print(f"hypothesis refused: {exc}", file=sys.stderr)
        return 3
    except CrossCheckError as exc:
        print(f"internal cross-check mismatch: {exc}", file=sys.stderr)
        return 4

    payload = assemble_output(spec, args.subcommand, reports)
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for rep in reports:
        for c in rep.checks:
            line = f"[{c.status:>15}] {rep.title} :: {c.name}"
            print(line, file=sys.stderr)
    return 0 if payload["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
