import json
import re

import pytest

from multival.document import (
    export_dot,
    network_to_document,
    parse_network,
    serialize_network,
)
from multival.errors import DocumentSyntaxError, SchemaError, ValidationError
from multival.finmap import constant_map, identity_map
from multival.fixtures import BIT, VARIANTS, load_fixture_text, four_node_network
from multival.network import Network, rationalize, validate


@pytest.mark.parametrize("variant", VARIANTS)
def test_fixture_file_matches_builder(variant):
    assert load_fixture_text(variant) == serialize_network(four_node_network(variant))


@pytest.mark.parametrize("variant", VARIANTS)
def test_round_trip_is_byte_identical(variant):
    text = load_fixture_text(variant)
    net = parse_network(text)
    assert len(net.nodes) == 4
    assert net == four_node_network(variant)
    assert serialize_network(net) == text


@pytest.mark.parametrize("variant", VARIANTS)
def test_rationalized_network_round_trips(variant):
    reduced, _ = rationalize(four_node_network(variant))
    text = serialize_network(reduced)
    assert serialize_network(reduced) == text
    back = parse_network(text)
    assert back == reduced
    assert validate(back) == []
    assert serialize_network(back) == text


def test_serialize_canonicalizes_row_order_and_layout():
    doc = json.loads(load_fixture_text("both"))
    doc["nodes"]["A"]["table"].reverse()
    messy = json.dumps(doc)
    canonical = serialize_network(parse_network(messy))
    assert canonical == load_fixture_text("both")
    assert serialize_network(parse_network(canonical)) == canonical


def test_ancillary_maps_round_trip():
    net = four_node_network("none")
    net = Network(net.spaces, net.externals, net.nodes, net.outputs,
                  (("Z", constant_map(BIT, BIT, "0")), ("I", identity_map(BIT))))
    text = serialize_network(net)
    back = parse_network(text)
    assert back.ancillary("Z").values == ("0", "0")
    assert serialize_network(back) == text


def _doc(variant="both"):
    return json.loads(load_fixture_text(variant))


def test_empty_spaces_is_schema_error():
    doc = _doc()
    doc["spaces"] = {}
    with pytest.raises(SchemaError) as err:
        parse_network(json.dumps(doc))
    assert err.value.path == "spaces"


def test_wrong_version_is_schema_error():
    doc = _doc()
    doc["format_version"] = 2
    with pytest.raises(SchemaError):
        parse_network(json.dumps(doc))


def test_unknown_element_in_row_names_field():
    doc = _doc()
    doc["nodes"]["C"]["table"][3][1] = "7"
    with pytest.raises(ValidationError) as err:
        parse_network(json.dumps(doc))
    assert err.value.path == "nodes.C.table[3][1]"


def test_missing_row_is_validation_error():
    doc = _doc()
    del doc["nodes"]["B"]["table"][5]
    with pytest.raises(ValidationError) as err:
        parse_network(json.dumps(doc))
    assert err.value.path == "nodes.B.table"


def test_unknown_source_is_validation_error():
    doc = _doc()
    doc["nodes"]["B"]["inputs"][2] = "s"
    with pytest.raises(ValidationError) as err:
        parse_network(json.dumps(doc))
    assert err.value.path == "nodes.B.inputs[2]"


def test_syntax_error_reports_line():
    text = load_fixture_text("both").replace('"externals": {', '"externals": {,', 1)
    with pytest.raises(DocumentSyntaxError) as err:
        parse_network(text)
    assert err.value.line == 7


def test_row_width_is_schema_error():
    doc = _doc()
    doc["nodes"]["A"]["table"][0].append("0")
    with pytest.raises(SchemaError) as err:
        parse_network(json.dumps(doc))
    assert err.value.path == "nodes.A.table[0]"


def test_document_keeps_declaration_order():
    doc = network_to_document(four_node_network("both"))
    assert list(doc) == ["format_version", "spaces", "externals", "nodes", "outputs"]
    assert list(doc["nodes"]) == ["A", "B", "C", "D"]


def _dot_counts(dot):
    nodes = re.findall(r'^\s+"[^"]+" \[label=', dot, flags=re.M)
    edges = re.findall(r'^\s+"[^"]+" -> "[^"]+"', dot, flags=re.M)
    return len(nodes), len(edges)


def test_dot_of_fixture():
    dot = export_dot(four_node_network("both"))
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
    assert _dot_counts(dot) == (4, 4)
    for edge in ('"A" -> "B"', '"C" -> "B"', '"A" -> "D"', '"C" -> "D"'):
        assert edge in dot


def test_dot_of_rationalized_fixture():
    reduced, _ = rationalize(four_node_network("both"))
    dot = export_dot(reduced)
    assert _dot_counts(dot) == (2, 1)
    assert "(I⊕C̄)∘A" in dot and "(I⊕D̄)∘B" in dot
    assert "penwidth=2" in dot


def test_dot_of_empty_network():
    dot = export_dot(Network((BIT,), (), (), ()))
    assert _dot_counts(dot) == (0, 0)
    assert dot.count("{") == dot.count("}") == 1
