"""Dataflow networks of finite-map nodes and their nodal rationalization.

A *source reference* is a string naming an external input (``"p"``), a node
output (``"A"``) or a component of a tuple-valued node output (``"A+C.1"``,
nested as ``"X.0.1"``).  A node's map reads the tuple of its input-port
values, so its domain is the product of the port spaces in port order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

from .errors import (
    CyclicNetwork,
    EnumerationCapExceeded,
    OutOfDomain,
    PartialAssignment,
    SpaceMismatch,
    StalePair,
    UnsupportedTopology,
)
from .finmap import FiniteMap, FiniteSet, compose, fork, identity_map, product_space
from .immanence import Verdict, check
from .relation import Witness

EQUIVALENCE_CAP = 1 << 16


def split_ref(ref: str):
    head, *path = ref.split(".")
    return head, tuple(int(p) for p in path)


def join_ref(head: str, path=()) -> str:
    return ".".join([head, *map(str, path)])


@dataclass(frozen=True)
class Provenance:
    """How a supernode was formed: ``fork(I, model) ∘ primary``."""

    primary: str
    dependent: str
    model: FiniteMap
    label: str
    merged: tuple


@dataclass(frozen=True)
class Node:
    id: str
    inputs: tuple
    map: FiniteMap
    provenance: Provenance | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))

    @property
    def output_space(self) -> FiniteSet:
        return self.map.codomain

    @property
    def label(self) -> str:
        return self.provenance.label if self.provenance else self.id


@dataclass(frozen=True)
class Network:
    spaces: tuple  # FiniteSet, declaration order
    externals: tuple  # (name, space name)
    nodes: tuple
    outputs: tuple = ()
    maps: tuple = ()  # named ancillary maps: (name, FiniteMap)

    def __post_init__(self):
        for f in ("spaces", "externals", "nodes", "outputs", "maps"):
            object.__setattr__(self, f, tuple(getattr(self, f)))

    def space(self, name: str) -> FiniteSet:
        for s in self.spaces:
            if s.name == name:
                return s
        raise KeyError(name)

    def node(self, node_id: str) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def ancillary(self, name: str) -> FiniteMap:
        for n, m in self.maps:
            if n == name:
                return m
        raise KeyError(name)

    @property
    def external_names(self) -> tuple:
        return tuple(name for name, _ in self.externals)

    @property
    def node_ids(self) -> tuple:
        return tuple(n.id for n in self.nodes)

    def is_external(self, ref: str) -> bool:
        return ref in self.external_names

    def source_space(self, ref: str) -> FiniteSet:
        head, path = split_ref(ref)
        ext = dict(self.externals)
        if head in ext:
            if path:
                raise KeyError(f"external {head!r} has no components")
            return self.space(ext[head])
        space = self.node(head).output_space
        for i in path:
            if not space.is_product or not 0 <= i < len(space.factors):
                raise KeyError(f"{ref!r} selects a missing component")
            space = space.factors[i]
        return space

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class Diagnostic:
    invariant: str
    location: str
    message: str

    def __str__(self):
        return f"{self.location}: {self.message} [{self.invariant}]"


def _declared(net: Network, space: FiniteSet) -> bool:
    if space.is_product:
        return all(_declared(net, f) for f in space.factors)
    try:
        return net.space(space.name) == space
    except KeyError:
        return False


def validate(net: Network) -> list:
    """Every broken network invariant, as a list of diagnostics."""
    out = []

    def bad(invariant, location, message):
        out.append(Diagnostic(invariant, location, message))

    seen = set()
    for s in net.spaces:
        if s.name in seen:
            bad("unique-names", f"spaces.{s.name}", "space declared twice")
        seen.add(s.name)
    names = set()
    for name in net.external_names + net.node_ids:
        if not name or "." in name:
            bad("identifier", name, "names must be nonempty and contain no '.'")
        if name in names:
            bad("unique-names", name, "name used twice among externals and nodes")
        names.add(name)
    for name, space in net.externals:
        if space not in {s.name for s in net.spaces}:
            bad("space-exists", f"externals.{name}", f"unknown space {space!r}")

    for node in net.nodes:
        loc = f"nodes.{node.id}"
        if not node.inputs:
            bad("port-arity", loc, "node has no input ports")
            continue
        port_spaces = []
        for i, ref in enumerate(node.inputs):
            try:
                port_spaces.append(net.source_space(ref))
            except (KeyError, ValueError):
                bad("source-exists", f"{loc}.inputs[{i}]", f"unknown source {ref!r}")
        dom = node.map.domain
        if not dom.is_product or len(dom.factors) != len(node.inputs):
            bad("port-arity", loc,
                f"{len(node.inputs)} input ports but map domain {dom.name} "
                f"has arity {len(dom.factors) if dom.is_product else 1}")
        elif len(port_spaces) == len(node.inputs) and dom != product_space(port_spaces):
            bad("domain-matches-ports", loc,
                f"map domain {dom.name} is not the product of its port spaces")
        if not _declared(net, node.output_space):
            bad("space-exists", f"{loc}.output",
                f"output space {node.output_space.name} is not declared")
    for i, ref in enumerate(net.outputs):
        try:
            net.source_space(ref)
        except (KeyError, ValueError):
            bad("source-exists", f"outputs[{i}]", f"unknown source {ref!r}")
    return out


def _node_deps(net: Network, node: Node) -> set:
    ids = set(net.node_ids)
    return {split_ref(r)[0] for r in node.inputs} & ids


def topological_order(net: Network) -> list:
    """Node ids ordered so every node follows its producers; ties keep declaration order."""
    deps = {n.id: _node_deps(net, n) for n in net.nodes}
    done, order = set(), []
    while len(order) < len(net.nodes):
        ready = [n.id for n in net.nodes if n.id not in done and deps[n.id] <= done]
        if not ready:
            stuck = [n.id for n in net.nodes if n.id not in done]
            raise CyclicNetwork(f"cycle among nodes {stuck}")
        order.extend(ready)
        done.update(ready)
    return order


def is_acyclic(net: Network) -> bool:
    try:
        topological_order(net)
    except CyclicNetwork:
        return False
    return True


def read(values: dict, ref: str):
    head, path = split_ref(ref)
    v = values[head]
    for i in path:
        v = v[i]
    return v


def evaluate(net: Network, assignment: dict) -> dict:
    """Outputs of every node (and the externals themselves) for one external assignment."""
    values = {}
    for name, space in net.externals:
        if name not in assignment:
            raise PartialAssignment(f"no value for external {name!r}")
        if assignment[name] not in net.space(space):
            raise OutOfDomain(f"{assignment[name]!r} is not in {space}")
        values[name] = assignment[name]
    for node_id in topological_order(net):
        node = net.node(node_id)
        values[node_id] = node.map(tuple(read(values, r) for r in node.inputs))
    return values


@dataclass(frozen=True)
class CounterCascadedPair:
    """Two nodes fed from one common input; ``primary`` plays M and ``dependent`` plays T."""

    primary: str
    dependent: str
    sources: tuple
    common_input: FiniteSet
    induced_M: FiniteMap
    induced_T: FiniteMap


def _induced(node: Node, U: FiniteSet, position: dict, name: str) -> FiniteMap:
    picks = [position[r] for r in node.inputs]
    values = tuple(node.map(tuple(u[i] for i in picks)) for u in U)
    return FiniteMap(U, node.output_space, values, name=name)


def resolve_exogenous(net: Network, primary: str, dependent: str) -> CounterCascadedPair:
    """Fold both nodes' inputs into one product input space.

    Each port must read an external or a source the other node also reads.
    The common input lists the distinct sources in order of first
    appearance, the primary's ports first; each node's map is precomposed
    with the projection onto its own ports.
    """
    if primary == dependent:
        raise UnsupportedTopology("a node cannot be paired with itself")
    try:
        a, c = net.node(primary), net.node(dependent)
    except KeyError as exc:
        raise UnsupportedTopology(f"unknown node {exc.args[0]!r}") from None
    for node, other in ((a, c), (c, a)):
        for ref in node.inputs:
            if not net.is_external(ref) and ref not in other.inputs:
                raise UnsupportedTopology(
                    f"{node.id} reads {ref!r}, which {other.id} does not share"
                )
    sources = tuple(dict.fromkeys(a.inputs + c.inputs))
    U = product_space([net.source_space(s) for s in sources])
    position = {s: i for i, s in enumerate(sources)}
    return CounterCascadedPair(
        primary, dependent, sources, U,
        _induced(a, U, position, primary), _induced(c, U, position, dependent),
    )


def find_pairs(net: Network) -> list:
    """All ordered node pairs that share at least one source and pass resolve_exogenous."""
    pairs = []
    for a, c in itertools.product(sorted(net.nodes, key=lambda n: n.id), repeat=2):
        if a.id == c.id or not set(a.inputs) & set(c.inputs):
            continue
        try:
            pairs.append(resolve_exogenous(net, a.id, c.id))
        except UnsupportedTopology:
            continue
    return pairs


def pair_verdict(pair: CounterCascadedPair) -> Verdict:
    """Is the dependent (primary, I)-immanent on the common input?"""
    return check(pair.induced_T, pair.induced_M, identity_map(pair.induced_T.codomain))


def _bar(node: Node) -> str:
    name = node.id if "+" not in node.id else f"[{node.id}]"
    return name + "̄"


def supernode_label(primary: Node, dependent: Node) -> str:
    inner = primary.label if primary.provenance is None else f"({primary.label})"
    return f"(I⊕{_bar(dependent)})∘{inner}"


def _fresh_id(net: Network, base: str) -> str:
    taken = set(net.node_ids) | set(net.external_names)
    new = base
    while new in taken:
        new += "'"
    return new


def _rewirer(primary: str, dependent: str, merged: str):
    def rewire(ref: str) -> str:
        head, path = split_ref(ref)
        if head == primary:
            return join_ref(merged, (0, *path))
        if head == dependent:
            return join_ref(merged, (1, *path))
        return ref
    return rewire


def _merge(net: Network, pair: CounterCascadedPair, model: FiniteMap):
    a, c = net.node(pair.primary), net.node(pair.dependent)
    new_id = _fresh_id(net, f"{a.id}+{c.id}")
    rewire = _rewirer(a.id, c.id, new_id)
    supermap = compose(fork(identity_map(a.output_space), model), a.map)
    merged_ids = (a.provenance.merged if a.provenance else (a.id,)) + (
        c.provenance.merged if c.provenance else (c.id,)
    )
    prov = Provenance(a.id, c.id, model, supernode_label(a, c), merged_ids)
    nodes = []
    for node in net.nodes:
        if node.id == c.id:
            continue
        if node.id == a.id:
            node = Node(new_id, a.inputs, supermap, prov)
        nodes.append(replace(node, inputs=tuple(rewire(r) for r in node.inputs)))
    new = replace(net, nodes=tuple(nodes), outputs=tuple(rewire(r) for r in net.outputs))
    return new, new_id, rewire


def rationalize_step(net: Network, pair: CounterCascadedPair) -> Network | None:
    """Merge the pair into one supernode if the dependent is immanent, else ``None``."""
    try:
        fresh = resolve_exogenous(net, pair.primary, pair.dependent)
    except UnsupportedTopology as exc:
        raise StalePair(str(exc)) from None
    if fresh != pair:
        raise StalePair(f"pair ({pair.primary}, {pair.dependent}) does not match the network")
    verdict = pair_verdict(pair)
    if not verdict.immanent:
        return None
    return _merge(net, pair, verdict.model)[0]


@dataclass(frozen=True)
class Step:
    primary: str
    dependent: str
    status: str
    action: str  # "merge" or "keep"
    supernode: str | None = None
    model: FiniteMap | None = None
    witness: Witness | None = None
    sources: tuple = ()


@dataclass(frozen=True)
class ReductionReport:
    steps: tuple
    node_count_before: int
    node_count_after: int
    trajectory: tuple
    correspondence: dict = field(default_factory=dict)
    behavior_checked: bool = False
    behavior_equivalent: bool | None = None

    @property
    def merges(self) -> int:
        return sum(1 for s in self.steps if s.action == "merge")


def rationalize(net: Network, check_equivalence: bool = True, cap: int = EQUIVALENCE_CAP):
    """Greedily merge immanent pairs, in canonical pair order, until none is left.

    Returns the reduced network and a report.  ``correspondence`` maps every
    original node id and designated output to its reference in the result.
    """
    current = net
    steps, trajectory = [], [len(net)]
    correspondence = {r: r for r in (*net.node_ids, *net.outputs)}
    tried = set()
    while True:
        merged = False
        for pair in find_pairs(current):
            key = (pair.primary, pair.dependent, pair.induced_M, pair.induced_T)
            if key in tried:
                continue
            tried.add(key)
            verdict = pair_verdict(pair)
            if not verdict.immanent:
                steps.append(Step(pair.primary, pair.dependent, verdict.status, "keep",
                                  witness=verdict.witness, sources=pair.sources))
                continue
            current, new_id, rewire = _merge(current, pair, verdict.model)
            correspondence = {k: rewire(v) for k, v in correspondence.items()}
            steps.append(Step(pair.primary, pair.dependent, verdict.status, "merge",
                              supernode=new_id, model=verdict.model, sources=pair.sources))
            trajectory.append(len(current))
            merged = True
            break
        if not merged:
            break

    checked, equivalent = False, None
    if check_equivalence and is_acyclic(net) and is_acyclic(current):
        outputs = {r: correspondence[r] for r in net.outputs}
        try:
            equivalent = behavior_equivalent(net, current, outputs, cap=cap)
            checked = True
        except EnumerationCapExceeded:
            pass
    report = ReductionReport(tuple(steps), len(net), len(current), tuple(trajectory),
                             correspondence, checked, equivalent)
    return current, report


def assignments(net: Network):
    names = net.external_names
    spaces = [net.space(s).elements for _, s in net.externals]
    for combo in itertools.product(*spaces):
        yield dict(zip(names, combo))


def behavior_difference(a: Network, b: Network, output_correspondence=None,
                        cap: int = EQUIVALENCE_CAP):
    """First external assignment on which corresponding outputs differ, or ``None``."""
    if dict(a.externals) != dict(b.externals) or any(
        a.space(s) != b.space(s) for _, s in a.externals
    ):
        raise SpaceMismatch("networks have different external inputs")
    if output_correspondence is None:
        if len(a.outputs) != len(b.outputs):
            raise SpaceMismatch("output lists differ in length")
        output_correspondence = dict(zip(a.outputs, b.outputs))
    total = math.prod(len(a.space(s)) for _, s in a.externals)
    if total > cap:
        raise EnumerationCapExceeded(f"{total} external assignments exceed cap {cap}")
    topological_order(a)
    topological_order(b)
    for assignment in assignments(a):
        va, vb = evaluate(a, assignment), evaluate(b, assignment)
        for ra, rb in output_correspondence.items():
            if read(va, ra) != read(vb, rb):
                return assignment
    return None


def behavior_equivalent(a: Network, b: Network, output_correspondence=None,
                        cap: int = EQUIVALENCE_CAP) -> bool:
    return behavior_difference(a, b, output_correspondence, cap) is None


def supernode_faults(net: Network) -> list:
    """Ids of supernodes whose table is not ``fork(I, model)`` applied after its first component."""
    faults = []
    for node in net.nodes:
        prov = node.provenance
        if prov is None:
            continue
        m = prov.model
        first = node.output_space.factors[0] if node.output_space.is_product else None
        if first != m.domain or any(y != (y[0], m(y[0])) for y in node.map.values):
            faults.append(node.id)
    return faults
