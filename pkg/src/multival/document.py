"""Network documents (versioned JSON) and DOT export.

Document layout::

    {
      "format_version": 1,
      "spaces":    {"bit": ["0", "1"], ...},
      "externals": {"p": "bit", ...},
      "nodes": {
        "A": {"inputs": ["p", "q"], "output": "tri",
              "table": [["0", "0", "0"], ...]},
        "A+C": {..., "output": ["tri", "bit"],
                "provenance": {"label": ..., "primary": "A", "dependent": "C",
                               "merged": ["A", "C"], "model": [[w, x], ...]}}
      },
      "outputs": ["A", ...],
      "maps": {"N": {"domain": "bit", "codomain": "bit", "table": [...]}}
    }

A table row lists the input-port values followed by the output.  A space
expression is a declared space name or a list of expressions (a product);
tuple elements are written as JSON lists.  ``maps`` is optional.
"""
from __future__ import annotations

import json

from .errors import (
    DanglingElement,
    DocumentSyntaxError,
    NonTotal,
    SchemaError,
    ValidationError,
)
from .finmap import FiniteMap, FiniteSet, make_map, product_space
from .network import Network, Node, Provenance, split_ref, validate

FORMAT_VERSION = 1


def _to_element(value, path):
    if isinstance(value, list):
        return tuple(_to_element(v, f"{path}[{i}]") for i, v in enumerate(value))
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValidationError(f"elements must be strings, integers or lists, got {value!r}", path)
    if value == "":
        raise ValidationError("element ids must be nonempty", path)
    return value


def _from_element(e):
    if isinstance(e, tuple):
        return [_from_element(v) for v in e]
    return e


def _space_expr(expr, spaces: dict, path):
    if isinstance(expr, str):
        if expr not in spaces:
            raise ValidationError(f"unknown space {expr!r}", path)
        return spaces[expr]
    if isinstance(expr, list) and expr:
        return product_space([_space_expr(e, spaces, f"{path}[{i}]") for i, e in enumerate(expr)])
    raise SchemaError("space expression must be a name or a nonempty list", path)


def _space_to_expr(space: FiniteSet):
    if space.is_product:
        return [_space_to_expr(f) for f in space.factors]
    return space.name


def _expect(obj, kind, path):
    if not isinstance(obj, kind):
        names = {dict: "an object", list: "a list", str: "a string", int: "an integer"}
        raise SchemaError(f"expected {names.get(kind, kind)}", path)
    return obj


def _table(rows, domain: FiniteSet, codomain: FiniteSet, ports, path) -> FiniteMap:
    """Read rows into a map.  ``ports`` lists the port spaces of a node table
    (rows are ``[*inputs, output]``); ``None`` means plain ``[u, x]`` rows."""
    _expect(rows, list, path)
    width = len(ports) if ports is not None else 1
    pairs = []
    for r, row in enumerate(rows):
        rpath = f"{path}[{r}]"
        _expect(row, list, rpath)
        if len(row) != width + 1:
            raise SchemaError(f"row has {len(row)} entries, expected {width + 1}", rpath)
        values = [_to_element(v, f"{rpath}[{i}]") for i, v in enumerate(row)]
        for i, (v, space) in enumerate(zip(values[:-1], ports or (domain,))):
            if v not in space:
                raise ValidationError(f"{v!r} is not an element of {space.name}", f"{rpath}[{i}]")
        if values[-1] not in codomain:
            raise ValidationError(f"{values[-1]!r} is not an element of {codomain.name}",
                                  f"{rpath}[{width}]")
        key = tuple(values[:-1]) if ports is not None else values[0]
        pairs.append((key, values[-1]))
    try:
        return make_map(domain, codomain, pairs)
    except (NonTotal, DanglingElement) as exc:
        raise ValidationError(str(exc), path) from None


def parse_network(text: str) -> Network:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, line=exc.lineno) from None
    return network_from_document(doc)


def network_from_document(doc) -> Network:
    _expect(doc, dict, "")
    unknown = set(doc) - {"format_version", "spaces", "externals", "nodes", "outputs", "maps"}
    if unknown:
        raise SchemaError(f"unknown sections {sorted(unknown)}", "")
    if doc.get("format_version") != FORMAT_VERSION:
        raise SchemaError(f"format_version must be {FORMAT_VERSION}", "format_version")

    raw_spaces = _expect(doc.get("spaces"), dict, "spaces")
    if not raw_spaces:
        raise SchemaError("at least one space must be declared", "spaces")
    spaces = {}
    for name, elems in raw_spaces.items():
        path = f"spaces.{name}"
        _expect(elems, list, path)
        values = [_to_element(e, f"{path}[{i}]") for i, e in enumerate(elems)]
        if len(set(values)) != len(values):
            raise ValidationError("duplicate elements", path)
        spaces[name] = FiniteSet(name, tuple(values))

    externals = []
    for name, space in _expect(doc.get("externals", {}), dict, "externals").items():
        _expect(space, str, f"externals.{name}")
        if space not in spaces:
            raise ValidationError(f"unknown space {space!r}", f"externals.{name}")
        externals.append((name, space))
    ext_spaces = {name: spaces[s] for name, s in externals}

    raw_nodes = _expect(doc.get("nodes", {}), dict, "nodes")
    outputs_of = {}
    for node_id, body in raw_nodes.items():
        path = f"nodes.{node_id}"
        _expect(body, dict, path)
        for key in ("inputs", "output", "table"):
            if key not in body:
                raise SchemaError(f"missing {key!r}", path)
        outputs_of[node_id] = _space_expr(body["output"], spaces, f"{path}.output")

    def source_space(ref, path):
        head, path_idx = split_ref(ref) if _valid_ref(ref) else (None, ())
        if head in ext_spaces and not path_idx:
            return ext_spaces[head]
        if head in outputs_of:
            space = outputs_of[head]
            for i in path_idx:
                if not space.is_product or i >= len(space.factors):
                    raise ValidationError(f"{ref!r} selects a missing component", path)
                space = space.factors[i]
            return space
        raise ValidationError(f"unknown source {ref!r}", path)

    nodes = []
    for node_id, body in raw_nodes.items():
        path = f"nodes.{node_id}"
        inputs = _expect(body["inputs"], list, f"{path}.inputs")
        if not inputs:
            raise SchemaError("a node needs at least one input", f"{path}.inputs")
        port_spaces = [
            source_space(_expect(r, str, f"{path}.inputs[{i}]"), f"{path}.inputs[{i}]")
            for i, r in enumerate(inputs)
        ]
        domain = product_space(port_spaces)
        fmap = _table(body["table"], domain, outputs_of[node_id], port_spaces, f"{path}.table")
        fmap = FiniteMap(fmap.domain, fmap.codomain, fmap.values, name=node_id)
        prov = None
        if "provenance" in body:
            prov = _provenance(body["provenance"], outputs_of[node_id], f"{path}.provenance")
        nodes.append(Node(node_id, tuple(inputs), fmap, prov))

    outputs = []
    for i, ref in enumerate(_expect(doc.get("outputs", []), list, "outputs")):
        source_space(_expect(ref, str, f"outputs[{i}]"), f"outputs[{i}]")
        outputs.append(ref)

    maps = []
    for name, body in _expect(doc.get("maps", {}), dict, "maps").items():
        path = f"maps.{name}"
        _expect(body, dict, path)
        dom = _space_expr(body.get("domain"), spaces, f"{path}.domain")
        cod = _space_expr(body.get("codomain"), spaces, f"{path}.codomain")
        m = _table(body.get("table"), dom, cod, None, f"{path}.table")
        maps.append((name, FiniteMap(m.domain, m.codomain, m.values, name=name)))

    net = Network(tuple(spaces.values()), tuple(externals), tuple(nodes), tuple(outputs),
                  tuple(maps))
    problems = validate(net)
    if problems:
        first = problems[0]
        raise ValidationError("; ".join(d.message for d in problems), first.location)
    return net


def _valid_ref(ref: str) -> bool:
    head, *path = ref.split(".")
    return bool(head) and all(p.isdigit() for p in path)


def _provenance(body, output: FiniteSet, path) -> Provenance:
    _expect(body, dict, path)
    for key in ("label", "primary", "dependent", "merged", "model"):
        if key not in body:
            raise SchemaError(f"missing {key!r}", path)
    if not output.is_product or len(output.factors) != 2:
        raise ValidationError("a supernode output must be a pair", path)
    dom, cod = output.factors
    model = _table(body["model"], dom, cod, None, f"{path}.model")
    model = FiniteMap(model.domain, model.codomain, model.values, name="model")
    merged = tuple(_expect(body["merged"], list, f"{path}.merged"))
    return Provenance(body["primary"], body["dependent"], model, body["label"], merged)


def _rows(fmap: FiniteMap):
    return [[_from_element(v) for v in u] + [_from_element(x)] for u, x in fmap.items()]


def network_to_document(net: Network) -> dict:
    nodes = {}
    for node in net.nodes:
        body = {
            "inputs": list(node.inputs),
            "output": _space_to_expr(node.output_space),
            "table": _rows(node.map),
        }
        if node.provenance is not None:
            p = node.provenance
            body["provenance"] = {
                "label": p.label,
                "primary": p.primary,
                "dependent": p.dependent,
                "merged": list(p.merged),
                "model": [[_from_element(w), _from_element(x)] for w, x in p.model.items()],
            }
        nodes[node.id] = body
    doc = {
        "format_version": FORMAT_VERSION,
        "spaces": {s.name: [_from_element(e) for e in s] for s in net.spaces},
        "externals": dict(net.externals),
        "nodes": nodes,
        "outputs": list(net.outputs),
    }
    if net.maps:
        doc["maps"] = {
            name: {
                "domain": _space_to_expr(m.domain),
                "codomain": _space_to_expr(m.codomain),
                "table": [[_from_element(u), _from_element(x)] for u, x in m.items()],
            }
            for name, m in net.maps
        }
    return doc


def _render(obj, indent=0) -> str:
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render(v, indent + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and obj and all(isinstance(v, (list, dict)) for v in obj):
        items = [pad + _render(v, indent + 1) for v in obj]
        if all(isinstance(v, list) for v in obj):
            items = [pad + json.dumps(v, ensure_ascii=False) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj) -> str:
    """Canonical text: nested objects indented, leaf lists and table rows on one line."""
    return _render(obj) + "\n"


def serialize_network(net: Network) -> str:
    return dumps(network_to_document(net))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(net: Network, name: str = "network") -> str:
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    ids = set(net.node_ids)
    for node in net.nodes:
        attrs = [f"label={_dot_quote(node.label)}"]
        ext = [r for r in node.inputs if net.is_external(r)]
        if ext:
            attrs.append(f"xlabel={_dot_quote(','.join(ext))}")
        if node.provenance is not None:
            attrs.append("shape=doublecircle")
        lines.append(f"  {_dot_quote(node.id)} [{', '.join(attrs)}];")
    edges: dict = {}
    for node in net.nodes:
        for ref in node.inputs:
            head, path = split_ref(ref)
            if head in ids:
                edges.setdefault((head, node.id), []).append(ref)
    for (src, dst), refs in edges.items():
        attrs = [f"label={_dot_quote(' '.join(refs))}"]
        src_space = net.node(src).output_space
        if len(refs) > 1 or (src_space.is_product and any(not split_ref(r)[1] for r in refs)):
            attrs.append("penwidth=2")
        lines.append(f"  {_dot_quote(src)} -> {_dot_quote(dst)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
