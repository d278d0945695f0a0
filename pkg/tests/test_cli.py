import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from lattoric import cli
from lattoric.code import SweepRow
from lattoric.intlat import IntMatrix

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "docs" / "fixtures"


def call(argv, stdin_text=None):
    out, err = io.StringIO(), io.StringIO()
    stdin = io.StringIO(stdin_text) if stdin_text is not None else io.StringIO("")
    rc = cli.run(argv, stdin=stdin, stdout=out, stderr=err)
    return rc, out.getvalue(), err.getvalue()


def call_json(command, problem, *extra):
    rc, out, err = call([command, "--json", *extra], json.dumps(problem))
    assert rc == 0, err
    return json.loads(out)


H2 = {"hirzebruch": 2}
H3 = {"hirzebruch": 3}


# fixtures ---------------------------------------------------------------------


def test_fixture_fifteen_points():
    rc, out, _ = call(["count", "--json", str(FIXTURES / "count_h2_diag_3_5.json")])
    assert rc == 0
    rep = json.loads(out)
    assert [c["count"] for c in rep["counts"]] == [15, 15, 5, 1, 15]
    assert rep["invariant_factors"] == [1, 15]
    assert [c.get("full_over") for c in rep["counts"]] == [True, True, False, None, None]


def test_fixture_real_complex():
    rc, out, _ = call(["count", "--json", str(FIXTURES / "count_h2_diag_2_3.json")])
    assert rc == 0
    assert [c["count"] for c in json.loads(out)["counts"]] == [2, 6]


def test_fixture_snf():
    rc, out, _ = call(["snf", "--json", str(FIXTURES / "snf_h2_2u1_3u2.json")])
    rep = json.loads(out)
    assert rc == 0 and rep["verified"]
    assert rep["D"] == [[1, 0], [0, 6], [0, 0], [0, 0]]
    assert rep["invariant_factors"] == [1, 6]
    b = IntMatrix.from_rows([[2, 0], [0, 3], [-2, 6], [0, -3]])
    assert IntMatrix.from_json(rep["A"]) @ b @ IntMatrix.from_json(rep["C"]) == IntMatrix.from_json(rep["D"])


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_every_fixture_runs(path):
    command = path.stem.split("_")[0]
    command = "correct-lattice" if command == "correct" else command
    for mode in ([], ["--json"]):
        rc, out, err = call([command, *mode, str(path)])
        assert rc == 0, err
        assert out.strip()


def test_docs_schema_matches_package():
    shipped = json.loads((ROOT / "src" / "lattoric" / "schema.json").read_text())
    assert json.loads((ROOT / "docs" / "schema.json").read_text()) == shipped == cli.load_schema()


# commands -----------------------------------------------------------------------


def test_snf_examples():
    assert call_json("snf", {"matrix": [[1]]})["invariant_factors"] == [1]
    assert call_json("snf", {"matrix": [[3, 0], [0, 5]]})["invariant_factors"] == [1, 15]
    big = call_json("snf", {"matrix": [[str(10**30), "0"], ["0", "1"]]})
    assert big["invariant_factors"] == [1, 10**30]
    assert big["D"][1][1] == str(10**30)


def test_count_trivial_lattice():
    rep = call_json(
        "count",
        {"variety": H2, "lattice": {"in_u_coords": [[1, 0], [0, 1]]}, "fields": [{"p": 5}, {"kind": "real"}]},
    )
    assert [c["count"] for c in rep["counts"]] == [1, 1]
    single = call_json("count", {"variety": H2, "lattice": {"in_u_coords": [[3, 0], [0, 5]]}, "field": {"p": 31}})
    assert single["counts"][0]["count"] == 15


def test_enumerate_nine_points():
    rep = call_json("enumerate", json.loads((FIXTURES / "enumerate_h3_q7.json").read_text()))
    assert rep["count"] == 9 and len(rep["points"]) == 9
    assert rep["parameterization"]["orders"] == [3, 3]
    assert all(set(p) == {"notation", "coefficients"} for p in rep["points"])


def test_code_report_and_closed_form():
    rep = call_json("code", json.loads((FIXTURES / "code_h3_q7.json").read_text()))
    assert (rep["N"], rep["K"], rep["delta"]) == (9, 5, 3)
    assert rep["closed_form"] == {"N": 9, "K": 5, "delta": 3}


def test_code_zero_code():
    rep = call_json(
        "code",
        {"variety": H3, "lattice": {"in_u_coords": [[3, 0], [0, 3]]}, "field": {"p": 7}, "alpha": [0, -1]},
    )
    assert rep["zero_code"] is True and rep["K"] == 0 and rep["delta"] is None


def test_code_threads_do_not_change_output():
    problem = {"variety": {"hirzebruch": 1}, "lattice": {"in_u_coords": [[6, 0], [0, 3]]}, "field": {"p": 7}, "alpha": [3, 1]}
    outs = [call(["code", "--json", "--threads", str(t)], json.dumps(problem))[1] for t in (1, 2, 4)]
    assert outs[0] == outs[1] == outs[2]


def test_table_modes():
    want = json.loads(call(["table", "--json", "3", "3", "3", "7"])[1])
    from_file = json.loads(call(["table", "--json", str(FIXTURES / "table_3_3_3_7.json")])[1])
    from_stdin = json.loads(call(["table", "--json"], json.dumps({"l": 3, "c1": 3, "c2": 3, "q": 7}))[1])
    assert want == from_file == from_stdin
    assert [(r["K"], r["delta"]) for r in want] == [(1, 9), (2, 6), (3, 3), (4, 3), (5, 3), (6, 2), (7, 2), (8, 2), (9, 1)]
    text = call(["table", "3", "3", "3", "7"])[1].splitlines()
    assert text[0].split() == ["alpha", "[N,", "K,", "delta]", "method"]
    assert text[1] == "(0, 0)  [9, 1, 9]      both"


def test_table_outside_hypothesis_is_brute():
    rows = json.loads(call(["table", "--json", "1", "6", "1", "7"])[1])
    assert {r["method"] for r in rows} == {"brute"}


def test_table_mismatch_exits_1(monkeypatch):
    bad = [SweepRow((0, 0), 1, 1, 1, "both", (1, 1), (1, 2))]
    monkeypatch.setattr(cli, "table_sweep", lambda *a, **k: bad)
    rc, _, err = call(["table", "1", "1", "1", "5"])
    assert rc == 1 and "disagree" in err


def test_check_report():
    rep = call_json("check", json.loads((FIXTURES / "check_h3_q7.json").read_text()))
    assert rep["saturated"] is False and rep["L_Q_in_L_beta"] is False
    assert rep["vanishing_lattice"]["in_u_coords"] == [[3, 0], [0, 3]]
    ident = call_json("check", {"variety": H2, "Q": [[int(i == j) for j in range(4)] for i in range(4)], "q": 5})
    assert ident["saturated"] is True
    assert ident["lattice"]["invariant_factors"] == [4, 4]


def test_correct_lattice_report():
    rep = call_json("correct-lattice", json.loads((FIXTURES / "correct_lattice_h2_q11.json").read_text()))
    assert rep["corrected"]["invariant_factors"] == [1, 5]
    assert rep["corrected"]["in_u_coords"] == [[1, 0], [0, 5]]
    assert rep["full_over"] is True


def test_hilbert_and_degree():
    rep = call_json("hilbert", json.loads((FIXTURES / "hilbert_h3.json").read_text()))
    assert [v["value"] for v in rep["values"]] == list(range(1, 10))
    one = call_json("hilbert", {"variety": H2, "lattice": {"in_u_coords": [[3, 0], [0, 5]]}, "alpha": [13, 5]})
    assert one["values"] == [{"alpha": [13, 5], "value": 15}]
    deg = call_json("degree", {"variety": H2, "lattice": {"in_u_coords": [[3, 0], [0, 5]]}})
    assert deg["degree"] == deg["mixed_volume"] == 15
    assert deg["regularity_bound"] == [13, 5]
    assert deg["binomials"] == ["x3^3 - x1^3", "x4^5 - x2^5*x3^10"]
    assert deg["complete_intersection"] is True


ROUNDTRIP = [
    ("snf", {"matrix": [[2, 0], [0, 3], [-2, 6], [0, -3]]}),
    ("count", {"variety": H2, "lattice": {"in_u_coords": [[3, 0], [0, 5]]}, "fields": [{"p": 2, "k": 4}]}),
    ("enumerate", {"variety": H2, "lattice": {"in_u_coords": [[2, 0], [0, 3]]}, "field": {"p": 7}}),
    ("code", {"variety": H3, "lattice": {"in_u_coords": [[3, 0], [0, 3]]}, "field": {"p": 7}, "alpha": [1, 0]}),
    ("table", {"l": 2, "c1": 2, "c2": 3, "q": 7}),
    ("check", {"variety": H3, "Q": [[2, 0, 0, 0], [0, 0, 0, 2]], "q": 7}),
    ("correct-lattice", {"variety": H2, "lattice": {"in_u_coords": [[3, 0], [0, 5]]}, "q": 11}),
    ("hilbert", {"variety": H3, "lattice": {"in_u_coords": [[3, 0], [0, 3]]}, "alphas": [[1, 0], [2, 0]]}),
    ("degree", {"variety": H3, "lattice": {"in_u_coords": [[2, 1], [0, 3]]}}),
]


@pytest.mark.parametrize("command,problem", ROUNDTRIP, ids=[c for c, _ in ROUNDTRIP])
def test_json_reports_roundtrip(command, problem):
    args = cli.build_parser().parse_args([command, "--json"])
    report, _ = cli.HANDLERS[command](problem, args)
    assert json.loads(json.dumps(report)) == report
    rc, out, _ = call([command, "--json"], json.dumps(problem))
    assert rc == 0 and json.loads(out) == report


# errors ---------------------------------------------------------------------


def test_validation_error_cites_path():
    problem = {"variety": H2, "lattice": {"in_u_coords": [[3, "x"], [0, 5]]}, "field": {"p": 7}}
    rc, _, err = call(["count"], json.dumps(problem))
    assert rc == 2
    assert "$.lattice.in_u_coords[0][1]" in err
    rc, _, err = call(["code"], json.dumps({"variety": H2, "lattice": {"in_u_coords": [[1, 0], [0, 1]]}, "field": {"p": 7}}))
    assert rc == 2 and "alpha" in err
    rc, _, err = call(["snf"], json.dumps({"matrix": [[1]], "extra": 1}))
    assert rc == 2 and "extra" in err


@pytest.mark.parametrize(
    "argv,stdin",
    [
        (["snf"], "{not json"),
        (["snf", "/nonexistent/problem.json"], None),
        (["table", "1", "2"], None),
        (["table", "a", "b", "c", "d"], None),
        (["code", "--threads", "0"], "{}"),
        (["enumerate"], json.dumps({"variety": H2, "lattice": {"in_u_coords": [[1, 0], [0, 1]]}, "field": {"kind": "real"}})),
    ],
)
def test_input_errors_exit_2(argv, stdin):
    rc, _, err = call(argv, stdin)
    assert rc == 2 and err.startswith("error:")


@pytest.mark.parametrize(
    "command,problem",
    [
        ("enumerate", {"variety": H2, "lattice": {"in_u_coords": [[3, 0], [0, 5]]}, "field": {"p": 11}}),
        ("code", {"variety": H2, "lattice": {"in_u_coords": [[3, 0], [0, 5]]}, "field": {"p": 11}, "alpha": [1, 0]}),
        ("count", {"variety": H2, "lattice": {"in_u_coords": [[1, 2], [2, 4]]}, "field": {"p": 7}}),
        ("count", {"variety": H2, "lattice": {"in_z_coords": [[1, 0, 0, 0], [0, 1, 0, 0]]}, "field": {"p": 7}}),
        ("count", {"variety": {"rays": [[1, 0], [0, 1]]}, "lattice": {"in_u_coords": [[1]]}, "field": {"p": 7}}),
        ("count", {"variety": H2, "lattice": {"in_u_coords": [[1, 0], [0, 1]]}, "field": {"p": 6}}),
        ("table", {"l": 2, "c1": 4, "c2": 3, "q": 7}),
        ("check", {"variety": H2, "Q": [[2]], "q": 7}),
    ],
)
def test_precondition_errors_exit_3(command, problem):
    rc, _, err = call([command], json.dumps(problem))
    assert rc == 3, err
    assert err.startswith("precondition violated:")


def test_budget_exit_4():
    problem = {
        "variety": {"hirzebruch": 1},
        "lattice": {"in_u_coords": [[6, 0], [0, 6]]},
        "field": {"p": 7},
        "alpha": [5, 5],
        "budget": 1000,
    }
    rc, _, err = call(["code"], json.dumps(problem))
    assert rc == 4 and "budget" in err


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.run(["frobnicate"], stderr=io.StringIO())
    assert exc.value.code == 2


def test_module_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "lattoric", "snf", "--json"],
        input=json.dumps({"matrix": [[3, 0], [0, 5]]}),
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["invariant_factors"] == [1, 15]
