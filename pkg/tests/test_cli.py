"""CLI: spec parsing, subcommands, exit codes, report determinism."""

import json
import pathlib

from partialmha import cli

SPECS = pathlib.Path(__file__).resolve().parents[1] / "specs"


def run(args):
    return cli.main([str(a) for a in args])


def scrub_timing(payload):
    for rep in payload["reports"]:
        for c in rep["checks"]:
            c.pop("seconds", None)
    return payload


class TestExitCodes:
    def test_passing_spec_exits_zero(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["verify-coaction", "--spec",
                    SPECS / "coaction_projection_subgroup.toml",
                    "--out", out])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["passed"] is True
        assert payload["schema"] == 1

    def test_missing_spec_exits_two(self, capsys):
        assert run(["verify-mhopf", "--spec", "/nonexistent.toml"]) == 2

    def test_unparseable_spec_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.toml"
        bad.write_text("this is [not toml")
        assert run(["verify-mhopf", "--spec", bad]) == 2

    def test_hypothesis_refusal_exits_three(self, tmp_path, capsys):
        # {0, 1} is not a subgroup of Z/4
        spec = tmp_path / "refused.toml"
        spec.write_text("""
field = "rational"
[group]
kind = "cyclic"
order = 4
[hopf]
kind = "function-algebra"
[algebra]
kind = "two-point"
[coaction]
recipe = "projection"
subgroup = [0, 1]
""")
        code = run(["verify-coaction", "--spec", spec])
        assert code == 3
        err = capsys.readouterr().err
        assert "Delta" in err or "eps(m)" in err

    def test_characteristic_refusal_exits_three(self, capsys):
        code = run(["verify-action", "--spec",
                    SPECS / "action_functional_half.toml",
                    "--field", "gf:2"])
        assert code == 3
        assert "divides" in capsys.readouterr().err

    def test_failing_check_exits_one(self, tmp_path, capsys):
        # a non-subgroup-compatible explicit E that breaks an axiom:
        # rho(u) = u (x) d_0 but E = 0
        spec = tmp_path / "failing.toml"
        spec.write_text("""
field = "rational"
[group]
kind = "cyclic"
order = 2
[hopf]
kind = "function-algebra"
[algebra]
kind = "scalar"
[coaction]
recipe = "explicit"
symmetric = true
rho1 = [ [ "u", 0, [["u", 0, "1"]] ], [ "u", 1, [] ] ]
rho2 = [ [ "u", 0, [["u", 0, "1"]] ], [ "u", 1, [] ] ]
e-left = [ [ "u", 0, [] ], [ "u", 1, [] ] ]
e-right = [ [ "u", 0, [] ], [ "u", 1, [] ] ]
""")
        assert run(["verify-coaction", "--spec", spec]) == 1


class TestPipelines:
    def test_mhopf_windowed_sample_statuses(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["verify-mhopf", "--spec",
                    SPECS / "mhopf_function_integers.toml", "--out", out,
                    "--window", 4])
        assert code == 0
        payload = json.loads(out.read_text())
        statuses = {c["status"] for rep in payload["reports"]
                    for c in rep["checks"]}
        assert statuses == {"sample-verified"}

    def test_galois_verdict_bijective(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["galois", "--spec",
                    SPECS / "coaction_induced_corner.toml", "--out", out])
        assert code == 0
        payload = json.loads(out.read_text())
        verdicts = [c["witness"] for rep in payload["reports"]
                    for c in rep["checks"] if c["name"] == "galois-verdict"]
        assert verdicts == ["bijective"]

    def test_galois_verdict_neither(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["galois", "--spec", SPECS / "galois_collapsed.toml",
                    "--out", out])
        assert code == 0
        payload = json.loads(out.read_text())
        verdicts = [c["witness"] for rep in payload["reports"]
                    for c in rep["checks"] if c["name"] == "galois-verdict"]
        assert verdicts == ["neither"]

    def test_morita_subcommand(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["morita", "--spec",
                    SPECS / "coaction_global_self.toml", "--out", out])
        assert code == 0

    def test_dualize_action_spec(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["dualize", "--spec",
                    SPECS / "action_induced_group_corner.toml",
                    "--out", out])
        assert code == 0
        payload = json.loads(out.read_text())
        names = {c["name"] for rep in payload["reports"]
                 for c in rep["checks"]}
        assert "roundtrip-action" in names
        assert "roundtrip-e" in names

    def test_dualize_coaction_spec(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["dualize", "--spec",
                    SPECS / "coaction_projection_subgroup.toml",
                    "--out", out])
        assert code == 0

    def test_explicit_recipe(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["verify-coaction", "--spec",
                    SPECS / "coaction_explicit_point.toml", "--out", out])
        assert code == 0

    def test_group_partial_recipe(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["verify-action", "--spec",
                    SPECS / "action_group_partial.toml", "--out", out])
        assert code == 0


class TestDeterminism:
    def test_same_spec_same_report(self, tmp_path, capsys):
        outs = []
        for i in range(2):
            out = tmp_path / f"r{i}.json"
            code = run(["all", "--spec",
                        SPECS / "coaction_projection_subgroup.toml",
                        "--out", out])
            assert code == 0
            outs.append(scrub_timing(json.loads(out.read_text())))
        assert json.dumps(outs[0], sort_keys=True) == json.dumps(
            outs[1], sort_keys=True)

    def test_jobs_do_not_change_output(self, tmp_path, capsys):
        base, pooled = None, None
        out = tmp_path / "r.json"
        run(["verify-mhopf", "--spec", SPECS / "mhopf_function_z4.toml",
             "--out", out])
        base = scrub_timing(json.loads(out.read_text()))
        run(["verify-mhopf", "--spec", SPECS / "mhopf_function_z4.toml",
             "--out", out, "--jobs", 4])
        pooled = scrub_timing(json.loads(out.read_text()))
        assert base == pooled

    def test_env_overrides(self, tmp_path, capsys, monkeypatch):
        out = tmp_path / "r.json"
        monkeypatch.setenv("SPEC", str(SPECS / "mhopf_function_z4.toml"))
        monkeypatch.setenv("OUT", str(out))
        code = run(["verify-mhopf"])
        assert code == 0
        assert out.exists()

    def test_fingerprint_stable(self, tmp_path, capsys):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        run(["verify-mhopf", "--spec", SPECS / "mhopf_function_z4.toml",
             "--out", out1])
        run(["verify-mhopf", "--spec", SPECS / "mhopf_function_z4.toml",
             "--out", out2])
        p1 = json.loads(out1.read_text())
        p2 = json.loads(out2.read_text())
        assert p1["fingerprint"] == p2["fingerprint"]


class TestExplicitActionRecipe:
    def test_explicit_action_verifies(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["verify-action", "--spec",
                    SPECS / "action_explicit_counit.toml", "--out", out])
        assert code == 0

    def test_explicit_action_dualizes(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["dualize", "--spec",
                    SPECS / "action_explicit_counit.toml", "--out", out])
        assert code == 0
