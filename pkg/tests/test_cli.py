import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from taildom import cli
from taildom.schemas import DISTRIBUTION_LIST, POPULATION_MODEL, REPORTS

TWO_GROUPS = {
    "subpopulations": [
        {"label": "X1", "size": 1, "dist": {"family": "normal", "location": 100, "scale": 10}},
        {"label": "X2", "size": 1, "dist": {"family": "normal", "location": 101, "scale": 11}},
    ]
}
EQUAL_SD = {
    "distributions": [
        {"family": "normal", "location": 100, "scale": 10},
        {"family": "normal", "location": 110, "scale": 10},
    ]
}
CAUCHY_PAIR = {
    "distributions": [
        {"family": "cauchy", "location": 0, "scale": 1},
        {"family": "cauchy", "location": 0.5, "scale": 0.5},
    ]
}


def invoke(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def ok_json(*argv, **kw):
    code, out, err = invoke(*argv, **kw)
    assert code == 0, err
    return json.loads(out)


# every subcommand with a representative invocation
CASES = {
    "intersect": ["-i", json.dumps(EQUAL_SD)],
    "classify": ["-i", json.dumps(CAUCHY_PAIR)],
    "dominator": ["-i", json.dumps(TWO_GROUPS)],
    "tail-share": ["-i", json.dumps(TWO_GROUPS), "--cutoff", "105"],
    "cutoff": ["-i", json.dumps(TWO_GROUPS), "--top", "0.001"],
    "shares": ["-i", json.dumps(TWO_GROUPS), "--top", "0.001"],
    "ranges": ["-i", json.dumps(TWO_GROUPS), "--boundaries", "110,120,130,140"],
    "rules": ["--family", "cauchy"],
    "trace": ["-i", json.dumps(CAUCHY_PAIR)],
    "simulate": ["-i", json.dumps(TWO_GROUPS), "--top", "0.01", "--samples", "2000", "--seed", "7"],
}


def test_inputs_conform_to_schemas():
    jsonschema.validate(TWO_GROUPS, POPULATION_MODEL)
    jsonschema.validate(EQUAL_SD, DISTRIBUTION_LIST)
    jsonschema.validate(CAUCHY_PAIR, DISTRIBUTION_LIST)


@pytest.mark.parametrize("command", sorted(CASES))
def test_reports_conform_to_schemas(command):
    jsonschema.validate(ok_json(command, *CASES[command]), REPORTS[command])


def test_every_subcommand_is_covered():
    assert set(CASES) == set(cli.COMMANDS) == set(REPORTS)


@pytest.mark.parametrize("command", sorted(CASES))
@pytest.mark.parametrize("fmt", ["json", "csv", "table"])
def test_output_is_deterministic(command, fmt):
    first = invoke(command, *CASES[command], "--format", fmt)
    assert first[0] == 0
    assert invoke(command, *CASES[command], "--format", fmt) == first


def test_intersect_equal_sd():
    assert ok_json("intersect", "-i", json.dumps(EQUAL_SD)) == {"points": [105.0]}


def test_shares_two_groups():
    report = ok_json("shares", "-i", json.dumps(TWO_GROUPS), "--top", "0.001")
    assert report["dominant_label"] == "X2"
    assert report["cutoff"] == pytest.approx(133.45045874588432618, rel=1e-13)
    shares = {g["label"]: g["share"] for g in report["groups"]}
    assert shares["X2"] == pytest.approx(0.7943275954895975555, rel=1e-12)
    assert shares["X1"] + shares["X2"] == pytest.approx(1, abs=1e-15)


def test_rules_cauchy():
    report = ok_json("rules", "--family", "cauchy")
    got = [report[f"within_{k}"] for k in (1, 2, 3)]
    assert got == pytest.approx([0.5, 0.70483276469913345165, 0.79516723530086654835], rel=1e-14)


def test_rules_from_input_distribution():
    spec = {"family": "normal", "location": 5, "scale": 3}
    report = ok_json("rules", "-i", json.dumps(spec))
    assert report["within_3"] == pytest.approx(0.99730020393673981095, rel=1e-14)


def test_classify_finite_ratio():
    report = ok_json("classify", *CASES["classify"])
    assert report["verdict"] == "finite_ratio"
    assert report["alpha"] == 2.0
    assert "not strongly" in report["description"]


def test_classify_left_tail_labels_from_model():
    report = ok_json("classify", "-i", json.dumps(TWO_GROUPS), "--tail", "left")
    assert report["verdict"] == "second_strongly_dominates"
    assert report["description"].startswith("X2")


def test_dominator_label():
    assert ok_json("dominator", *CASES["dominator"])["label"] == "X2"


def test_trace_left_tail_cutoffs_descend():
    report = ok_json("trace", "-i", json.dumps(TWO_GROUPS), "--tail", "left", "--cutoffs", "80,60,40")
    cutoffs = [p["cutoff"] for p in report["points"]]
    assert cutoffs == [80.0, 60.0, 40.0]
    # the wider group holds more of the lower tail, increasingly so
    ratios = [p["ratio"] for p in report["points"]]
    assert all(r < 1 for r in ratios)
    assert ratios == sorted(ratios, reverse=True)


def test_trace_reports_log_ratio_past_overflow():
    normals = {"distributions": [{"family": "normal", "location": 0, "scale": 2},
                                 {"family": "normal", "location": 0, "scale": 1}]}
    report = ok_json("trace", "-i", json.dumps(normals), "--cutoffs", "10,100")
    far = report["points"][1]
    assert far["ratio"] is None
    assert far["log_ratio"] == pytest.approx(3750, rel=1e-3)


def test_ranges_csv_header_and_open_final_range():
    code, out, _ = invoke(*["ranges", *CASES["ranges"]], "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == list(cli.RANGE_HEADER)
    assert len(rows) == 5
    assert rows[-1][1] == "inf"
    ratios = [float(r[4]) for r in rows[1:]]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_ranges_json_open_range_is_null():
    rows = ok_json("ranges", *CASES["ranges"])["rows"]
    assert rows[-1]["range_high"] is None


def test_table_format_precision():
    code, out, _ = invoke("cutoff", *CASES["cutoff"], "--format", "table", "--precision", "4")
    assert code == 0
    assert "133.5" in out and "133.45" not in out


def test_stdin_input():
    report = ok_json("intersect", "-i", "-", stdin=json.dumps(EQUAL_SD))
    assert report == {"points": [105.0]}


def test_file_input(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(TWO_GROUPS), encoding="utf-8")
    assert ok_json("dominator", "-i", str(path))["index"] == 1


def test_simulate_no_exceedances_warns_and_succeeds():
    code, out, err = invoke("simulate", "-i", json.dumps(TWO_GROUPS), "--cutoff", "1000", "--samples", "100")
    assert code == 0
    report = json.loads(out)
    assert report["no_exceedances"] is True
    assert all(g["share"] is None for g in report["groups"])
    assert "warning" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["intersect"],
        ["intersect", "-i", "{not json"],
        ["intersect", "-i", "/nonexistent/model.json"],
        ["intersect", "-i", json.dumps({"distributions": [EQUAL_SD["distributions"][0]] * 2})],
        ["intersect", "-i", json.dumps(CAUCHY_PAIR)],
        ["intersect", "-i", json.dumps({"distributions": [{"family": "normal", "location": 0, "scale": -1}] * 2})],
        ["shares", "-i", json.dumps(TWO_GROUPS)],
        ["shares", "-i", json.dumps(TWO_GROUPS), "--top", "1.5"],
        ["ranges", "-i", json.dumps(TWO_GROUPS), "--boundaries", "120,110"],
        ["ranges", "-i", json.dumps(TWO_GROUPS), "--boundaries", "a,b"],
        ["trace", "-i", json.dumps(CAUCHY_PAIR), "--cutoffs", "5,1"],
        ["dominator", "-i", json.dumps({"distributions": []})],
        ["rules"],
        ["rules", "--family", "gamma"],
        ["cutoff", "-i", json.dumps(TWO_GROUPS), "--top", "0.1", "--precision", "0"],
        ["nope"],
        [],
    ],
)
def test_input_errors_exit_2(argv):
    code, out, err = invoke(*argv)
    assert code == 2
    assert out == ""
    assert err


def test_error_names_the_offending_field():
    bad = json.loads(json.dumps(TWO_GROUPS))
    bad["subpopulations"][1]["dist"]["scale"] = 0
    code, _, err = invoke("tail-share", "-i", json.dumps(bad), "--cutoff", "1")
    assert code == 2
    assert "subpopulations[1].dist.scale" in err


def test_numerical_failure_exits_3():
    code, out, err = invoke("cutoff", "-i", json.dumps(TWO_GROUPS), "--top", "1e-320")
    assert code == 3
    assert out == ""
    assert "numerical" in err


def test_console_script_matches_module():
    argv = ["intersect", "-i", json.dumps(EQUAL_SD)]
    proc = subprocess.run([sys.executable, "-m", "taildom", *argv], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"points": [105.0]}
