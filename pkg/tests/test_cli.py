import io
import json
import os
from pathlib import Path

import pytest

from multival.cli import EXIT_ERROR, EXIT_OK, EXIT_TRANSCENDENT, EXIT_USAGE, main
from multival.document import parse_network
from multival.fixtures import fixture_path
from multival.network import behavior_equivalent

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("MULTIVAL_UPDATE_GOLDEN") == "1"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def golden(name, text):
    path = GOLDEN / name
    if UPDATE:
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


def fx(variant):
    return str(fixture_path(variant))


CASES = [
    ("check_immanent.txt", ["check", "--network", fx("both"), "--pair", "C:A"], EXIT_OK),
    ("check_transcendent.txt", ["check", "--network", fx("none"), "--pair", "C:A"],
     EXIT_TRANSCENDENT),
    ("check_bd.txt", ["check", "--network", fx("both"), "--pair", "D:B"], EXIT_OK),
    ("relation_transcendent.txt", ["relation", "--network", fx("none"), "--pair", "D:B"],
     EXIT_OK),
    ("model_transcendent.txt", ["model", "--network", fx("none"), "--pair", "D:B"],
     EXIT_TRANSCENDENT),
    ("model_approx.txt", ["model", "--network", fx("none"), "--pair", "D:B",
                          "--approx", "majority"], EXIT_OK),
    ("export_dot.txt", ["export-dot", "--network", fx("both")], EXIT_OK),
    ("validate.txt", ["validate", "--network", fx("only_c")], EXIT_OK),
]


@pytest.mark.parametrize("name, argv, code", CASES)
def test_golden_outputs(name, argv, code):
    got, out, err = run(*argv)
    assert got == code, err
    golden(name, out)


def test_rationalize_golden(tmp_path):
    out_net, report, fig = tmp_path / "red.json", tmp_path / "rep.json", tmp_path / "fig.png"
    code, out, _ = run("rationalize", "--network", fx("both"), "--out", out_net,
                       "--report", report, "--figure", fig)
    assert code == EXIT_OK
    golden("rationalize_both.txt", out)
    rep = json.loads(report.read_text())
    assert (rep["node_count_before"], rep["node_count_after"]) == (4, 2)
    assert rep["behavior_equivalent"] is True
    reduced = parse_network(out_net.read_text())
    original = parse_network(Path(fx("both")).read_text())
    outputs = {r: rep["correspondence"][r] for r in original.outputs}
    assert behavior_equivalent(original, reduced, outputs)
    assert fig.stat().st_size > 0


def test_rationalize_without_equivalence(tmp_path):
    code, out, _ = run("rationalize", "--network", fx("none"), "--out", tmp_path / "o.json",
                       "--report", tmp_path / "r.json", "--no-equivalence-check")
    assert code == EXIT_OK
    assert "nodes: 4 -> 4" in out and "equivalence: not checked" in out


def test_json_flag_matches_report_file(tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = run("check", "--network", fx("none"), "--pair", "C:A", "--json",
                       "--report", rep)
    assert code == EXIT_TRANSCENDENT
    assert json.loads(out) == json.loads(rep.read_text())


@pytest.mark.parametrize("argv", [
    ["check", "--network", "x.json"],
    ["check", "--network", "x.json", "--pair", "CA"],
    ["frobnicate"],
    ["model", "--network", "x.json", "--pair", "C:A", "--approx", "mean"],
])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == EXIT_USAGE
    assert "usage error" in err


def test_missing_file(tmp_path):
    missing = tmp_path / "nope.json"
    code, _, err = run("validate", "--network", missing)
    assert code == EXIT_ERROR
    assert str(missing) in err


def test_bad_document(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1, "spaces": {}}')
    code, _, err = run("validate", "--network", bad)
    assert code == EXIT_ERROR and "spaces" in err


def test_unknown_pair_node():
    code, _, err = run("check", "--network", fx("both"), "--pair", "Q:A")
    assert code == EXIT_ERROR and "Q" in err


def test_ineligible_pair():
    code, _, err = run("check", "--network", fx("both"), "--pair", "B:A")
    assert code == EXIT_ERROR


@pytest.fixture
def with_ancillary(tmp_path):
    doc = json.loads(Path(fx("none")).read_text())
    doc["maps"] = {"Z": {"domain": "bit", "codomain": "bit", "table": [["0", "0"], ["1", "0"]]}}
    path = tmp_path / "anc.json"
    path.write_text(json.dumps(doc))
    return path


def test_ancillary_map(with_ancillary):
    code, out, _ = run("check", "--network", with_ancillary, "--pair", "C:A",
                       "--ancillary", "Z")
    assert code == EXIT_OK
    assert "(C against (A, Z))" in out and "verdict: Immanent" in out
    code, _, err = run("check", "--network", with_ancillary, "--pair", "C:A",
                       "--ancillary", "Q")
    assert code == EXIT_ERROR and "Q" in err


# Independent re-check of report claims using only the raw document JSON.


def _lookup(doc, node_id, point):
    body = doc["nodes"][node_id]
    key = [point[s] for s in body["inputs"]]
    for row in body["table"]:
        if row[:-1] == key:
            return row[-1]
    raise AssertionError(f"no row for {key}")


@pytest.mark.parametrize("variant, pair", [
    ("none", "C:A"), ("none", "D:B"), ("none", "A:C"), ("only_c", "D:B"),
])
def test_transcendent_witness_revalidates_from_document(tmp_path, variant, pair):
    rep_path = tmp_path / "r.json"
    code, _, _ = run("check", "--network", fx(variant), "--pair", pair, "--report", rep_path)
    assert code == EXIT_TRANSCENDENT
    rep = json.loads(rep_path.read_text())
    doc = json.loads(Path(fx(variant)).read_text())
    dep, pri = pair.split(":")
    w = rep["witness"]
    assert w["u"] != w["u_prime"]
    assert _lookup(doc, pri, w["u"]) == w["w"] == _lookup(doc, pri, w["u_prime"])
    assert _lookup(doc, dep, w["u"]) == w["x"]
    assert _lookup(doc, dep, w["u_prime"]) == w["x_prime"]
    assert w["x"] != w["x_prime"]


@pytest.mark.parametrize("variant, pair", [("both", "C:A"), ("both", "D:B"), ("only_c", "C:A")])
def test_immanent_model_revalidates_from_document(tmp_path, variant, pair):
    import itertools

    rep_path = tmp_path / "r.json"
    code, _, _ = run("check", "--network", fx(variant), "--pair", pair, "--report", rep_path)
    assert code == EXIT_OK
    rep = json.loads(rep_path.read_text())
    doc = json.loads(Path(fx(variant)).read_text())
    dep, pri = pair.split(":")
    model = {w: x for w, x in rep["model"]}

    def space_of(src):
        if src in doc["externals"]:
            return doc["spaces"][doc["externals"][src]]
        return doc["spaces"][doc["nodes"][src]["output"]]

    sources = rep["common_input"]
    for combo in itertools.product(*(space_of(s) for s in sources)):
        point = dict(zip(sources, combo))
        assert model[_lookup(doc, pri, point)] == _lookup(doc, dep, point)


def test_supernode_primary_marks_unreached(tmp_path):
    from dataclasses import replace

    from multival.document import serialize_network
    from multival.finmap import from_function, product_space
    from multival.fixtures import BIT, four_node_network
    from multival.network import Node, rationalize_step, resolve_exogenous

    net = four_node_network("both")
    merged = rationalize_step(net, resolve_exogenous(net, "A", "C"))
    e = Node("E", ("p", "q"), from_function(product_space([BIT, BIT]), BIT,
                                            lambda u: str(int(u[0]) ^ int(u[1]))))
    merged = replace(merged, nodes=merged.nodes + (e,), outputs=merged.outputs + ("E",))
    path = tmp_path / "sup.json"
    path.write_text(serialize_network(merged))
    code, out, _ = run("check", "--network", path, "--pair", "E:A+C")
    assert code == EXIT_OK
    # A+C = (p+q, p&q) never produces (0, 1), (1, 1) or (2, 0)
    assert sorted(line.split(" ->")[0].strip() for line in out.splitlines()
                  if "(unreached)" in line) == ["(0, 1)", "(1, 1)", "(2, 0)"]
    code, out, _ = run("check", "--network", path, "--pair", "A+C:E")
    assert code == EXIT_TRANSCENDENT and "x' = (2, 1)" in out
