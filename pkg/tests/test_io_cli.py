"""JSON schema round trips, CLI verbs, exit codes, deterministic output."""

import io
import contextlib
import json
import os

import pytest

import arknit.cli as cli
from arknit import (
    QQ,
    dim_vector,
    parse_quiver,
    parse_rep,
    emit_quiver,
    emit_rep,
)
from arknit.io import ParseError, parse_field

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

LINE = '{"preset":"line"}'
KRON = '{"preset":"kronecker"}'
A3 = '{"preset":"linear","n":3}'
ZIG = '{"preset":"zigzag"}'

ALLK = '{"thin":{"explicit":[],"tails":[["neg","v",0],["pos","v",0]]}}'
M0 = '{"thin":{"explicit":[],"tails":[["inf","even",0],["inf","odd",0]]}}'


def run_cli(argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    old_env = dict(os.environ)
    if env:
        os.environ.update(env)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = cli.main(argv)
            except SystemExit as e:  # argparse usage errors
                code = e.code
    finally:
        os.environ.clear()
        os.environ.update(old_env)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# quiver and rep round trips


QUIVER_SPECS = (
    {"preset": "line"},
    {"preset": "zigzag"},
    {"preset": "ladder"},
    {"preset": "ray_in"},
    {"preset": "ray_out"},
    {"preset": "kronecker"},
    {"preset": "linear", "n": 4},
    {"vertices": ["1", "2", "3"], "arrows": [["1", "2", "a"], ["1", "3"]]},
    {"opposite": {"preset": "ray_in"}},
)


def test_quiver_roundtrip_canonical():
    for spec in QUIVER_SPECS:
        q = parse_quiver(spec)
        emitted = emit_quiver(q)
        again = emit_quiver(parse_quiver(emitted["quiver"]))
        assert emitted == again


REP_SPECS = (
    ("line", {"zero": True}),
    ("line", {"proj": "0"}),
    ("line", {"inj": "-2"}),
    ("line", {"simple": "3"}),
    ("line", {"thin": {"explicit": [], "tails": [["neg", "v", 0]]}}),
    ("line", {"sum": [{"proj": "0"}, {"simple": "2"}]}),
    ("line", {"dual": {"proj": "0"}}),
    ("line", {"restrict": {"rep": {"proj": "0"},
                           "region": {"explicit": ["0", "-1"], "tails": []}}}),
    ("ladder", {"glue": {"sub": {"thin": {"explicit": [],
                                          "tails": [["inf", "b", 0]]}},
                         "quot": {"thin": {"explicit": [],
                                           "tails": [["inf", "a", 0]]}},
                         "families": [["inf", "rung", 0, "1"]]}}),
)


def test_rep_roundtrip_canonical():
    for qspec, rspec in REP_SPECS:
        q = parse_quiver({"preset": qspec})
        m = parse_rep(q, rspec, QQ)
        emitted = emit_rep(m)
        again = emit_rep(parse_rep(q, emitted["rep"]["spec"], QQ))
        assert emitted == again


def test_explicit_fd_rep_roundtrip(a3):
    spec = {"explicit_fd": {"dims": {"1": 1, "2": 2},
                            "mats": {"1>2": [["1"], ["-2/3"]]}}}
    m = parse_rep(a3, spec, QQ)
    assert dim_vector(m, (1, 2, 3)) == (1, 2, 0)
    again = parse_rep(a3, emit_rep(m)["rep"]["spec"], QQ)
    assert emit_rep(again) == emit_rep(m)


def test_pm_rep_roundtrip(a3):
    spec = {"coker_proj": {"side": "proj", "domain": ["3"], "codomain": ["1"],
                           "entries": [[[["1", {"src": "1",
                                                "arrows": ["1>2", "2>3"]}]]]]}}
    m = parse_rep(a3, spec, QQ)
    assert dim_vector(m, (1, 2, 3)) == (1, 1, 0)
    assert emit_rep(parse_rep(a3, emit_rep(m)["rep"]["spec"], QQ)) == emit_rep(m)


def test_parse_errors_carry_pointers(a3):
    with pytest.raises(ParseError) as e:
        parse_quiver({"preset": "nope"})
    assert "/preset" in str(e.value)
    with pytest.raises(ParseError):
        parse_rep(a3, {"wat": 1}, QQ)
    with pytest.raises(ParseError) as e:
        parse_field(6)
    assert "/field" in str(e.value)
    assert parse_field("7").char == 7
    assert parse_field(None) is QQ


def test_cyclic_quiver_rejected():
    with pytest.raises(ParseError):
        parse_quiver({"vertices": ["1", "2"],
                      "arrows": [["1", "2"], ["2", "1"]]})


# ---------------------------------------------------------------------------
# CLI verbs


def test_cli_quiver_inspect():
    code, out, _ = run_cli(["quiver", "--quiver", LINE])
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "neither"
    assert sorted(payload["ends"]) == ["neg", "pos"]
    assert payload["quiver"] == {"preset": "line"}


def test_cli_member_zigzag_example():
    code, out, _ = run_cli(["member", "--quiver", ZIG, "--rep", M0])
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "notInRrep"
    assert not payload["in_class"]
    assert any("sources" in w for w in payload["witnesses"])


def test_cli_ass_with_battery():
    code, out, _ = run_cli(["ass", "--quiver", A3, "--rep", '{"simple":"2"}'])
    assert code == 0
    payload = json.loads(out)
    assert payload["exact_on_window"]
    assert payload["battery"]["passed"]
    assert payload["dims"]["sub"]["3"] == 1
    code2, out2, _ = run_cli(["ass", "--quiver", A3, "--rep",
                              '{"simple":"2"}', "--no-verify"])
    assert code2 == 0
    assert "battery" not in json.loads(out2)


def test_cli_tau_and_inverse():
    code, out, _ = run_cli(["tau", "--quiver", A3, "--rep", '{"simple":"2"}'])
    assert code == 0
    assert json.loads(out)["dims"] == {"3": 1}
    code, out, _ = run_cli(["tau", "--quiver", A3, "--rep", '{"simple":"2"}',
                            "--inverse"])
    assert code == 0
    assert json.loads(out)["dims"] == {"1": 1}


def test_cli_hom_ext():
    code, out, _ = run_cli(["hom", "--quiver", A3,
                            "--src", '{"proj":"2"}', "--dst", '{"inj":"2"}'])
    assert code == 0
    assert json.loads(out)["dimension"] == 1
    code, out, _ = run_cli(["ext", "--quiver", KRON,
                            "--quot", '{"simple":"1"}',
                            "--sub", '{"simple":"2"}'])
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 2
    assert not payload["window_relative"]


def test_cli_knit_json_and_classify():
    code, out, _ = run_cli(["knit", "--quiver", KRON,
                            "--seed", '{"proj":"2"}', "--depth", "5"])
    assert code == 0
    comp = json.loads(out)["component"]
    assert len(comp["nodes"]) == 6
    assert all(mult == 2 for (_, _, mult) in comp["arrows"])
    code, out, _ = run_cli(["classify", "--quiver", KRON,
                            "--seed", '{"proj":"2"}', "--depth", "5"])
    assert code == 0
    assert json.loads(out)["tag"] == "Preprojective-NQop"


def test_cli_knit_dot_matches_golden():
    code, out, _ = run_cli(["knit", "--quiver", KRON,
                            "--seed", '{"proj":"2"}', "--depth", "5",
                            "--format", "dot"])
    assert code == 0
    with open(os.path.join(GOLDEN, "kronecker_knit5.dot")) as fh:
        assert out == fh.read()


def test_cli_decompose():
    spec = '{"sum":[{"proj":"1"},{"simple":"2"},{"simple":"2"}]}'
    code, out, _ = run_cli(["decompose", "--quiver", A3, "--rep", spec])
    assert code == 0
    payload = json.loads(out)
    assert sorted(s["multiplicity"] for s in payload["summands"]) == [1, 2]
    assert payload["indecomposable_certified"]


def test_cli_export_roundtrip():
    code, out, _ = run_cli(["export", "--quiver", LINE, "--rep", ALLK])
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "arknit/1"
    q = parse_quiver({"preset": "line"})
    m = parse_rep(q, payload["rep"]["spec"], QQ)
    assert emit_rep(m)["rep"] == payload["rep"]
    code, out, _ = run_cli(["export", "--quiver", LINE])
    assert code == 0
    assert json.loads(out)["quiver"] == {"preset": "line"}


def test_cli_gf_field_flag():
    code, out, _ = run_cli(["hom", "--quiver", A3, "--field", "5",
                            "--src", '{"proj":"2"}', "--dst", '{"inj":"2"}'])
    assert code == 0
    assert json.loads(out)["dimension"] == 1


def test_cli_out_file(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(["member", "--quiver", LINE, "--rep", ALLK,
                            "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verdict"] == "rrep"


# ---------------------------------------------------------------------------
# exit codes


def test_cli_exit_1_on_bad_json():
    code, _, err = run_cli(["member", "--quiver", '{"preset":', "--rep", ALLK])
    assert code == 1
    assert "line" in err and "column" in err


def test_cli_exit_1_on_domain_error():
    code, _, err = run_cli(["tau", "--quiver", LINE, "--rep", ALLK])
    assert code == 1
    assert "rrep" in err
    code, _, err = run_cli(["member", "--quiver", LINE,
                            "--rep", '{"simple":"x"}'])
    assert code == 1


def test_cli_exit_2_on_budget(monkeypatch):
    from arknit.rep import BudgetError

    def boom(*a, **k):
        raise BudgetError("window did not stabilize")

    monkeypatch.setattr(cli, "hom_space", boom)
    code, _, err = run_cli(["hom", "--quiver", A3,
                            "--src", '{"proj":"1"}', "--dst", '{"proj":"1"}'])
    assert code == 2
    assert "budget" in err


def test_cli_usage_error_on_unknown_verb():
    code, _, _ = run_cli(["frobnicate"])
    assert code == 2  # argparse usage failure


def test_cli_budget_env_and_flag(monkeypatch):
    seen = {}

    def spy(src, dst, budget=None, **k):
        seen["budget"] = budget

        class H:
            dimension = 0
            basis = ()
            route = "window"
            window = ()
            certificate = {}
        return H()

    monkeypatch.setattr(cli, "hom_space", spy)
    base = ["hom", "--quiver", A3, "--src", '{"proj":"1"}',
            "--dst", '{"proj":"1"}']
    run_cli(base, env={"ARKNIT_BUDGET": "7"})
    assert seen["budget"] == 7
    run_cli(base + ["--budget", "3"], env={"ARKNIT_BUDGET": "7"})
    assert seen["budget"] == 3


# ---------------------------------------------------------------------------
# determinism


def test_cli_outputs_bit_identical():
    for argv in (
        ["member", "--quiver", LINE, "--rep", ALLK],
        ["knit", "--quiver", KRON, "--seed", '{"proj":"2"}', "--depth", "4",
         "--format", "dot"],
        ["ass", "--quiver", A3, "--rep", '{"simple":"2"}'],
    ):
        _, out1, _ = run_cli(argv)
        _, out2, _ = run_cli(argv)
        assert out1 == out2
