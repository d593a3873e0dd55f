"""Finite sets and total maps between them.

Elements are any hashable values (strings in practice, tuples for product
spaces).  The order in which a set lists its elements is its canonical order
and is used for every tie-break in the package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .errors import (
    DanglingElement,
    NonTotal,
    NotBijective,
    OutOfCodomain,
    OutOfDomain,
    SpaceMismatch,
)

Element = Hashable


def _check_element(e):
    if isinstance(e, tuple):
        for part in e:
            _check_element(part)
    elif e == "" or e is None:
        raise ValueError("element ids must be nonempty")


@dataclass(frozen=True)
class FiniteSet:
    name: str
    elements: tuple
    factors: tuple | None = None

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if self.factors is not None:
            object.__setattr__(self, "factors", tuple(self.factors))
        index = {}
        for i, e in enumerate(elements):
            _check_element(e)
            if e in index:
                raise ValueError(f"duplicate element {e!r} in set {self.name!r}")
            index[e] = i
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        try:
            return e in self._index
        except TypeError:
            return False

    def index(self, e) -> int:
        return self._index[e]

    @property
    def is_product(self) -> bool:
        return self.factors is not None

    def subset(self, name: str, members: Iterable) -> FiniteSet:
        """Sub-collection of ``members`` kept in this set's canonical order."""
        keep = set(members)
        missing = [m for m in keep if m not in self]
        if missing:
            raise DanglingElement(f"{missing!r} not in {self.name}")
        return FiniteSet(name, tuple(e for e in self.elements if e in keep))

    def __repr__(self):
        return f"FiniteSet({self.name!r}, {list(self.elements)!r})"


def finite_set(name: str, elements: Iterable) -> FiniteSet:
    return FiniteSet(name, tuple(elements))


@dataclass(frozen=True)
class FiniteMap:
    """Total single-valued map; ``values[i]`` is the image of ``domain.elements[i]``."""

    domain: FiniteSet
    codomain: FiniteSet
    values: tuple
    name: str = field(default="", compare=False)
    meta: Mapping = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if len(values) != len(self.domain):
            raise NonTotal(
                f"{len(values)} values for a domain of {len(self.domain)} elements"
            )
        for v in values:
            if v not in self.codomain:
                raise DanglingElement(f"{v!r} is not in codomain {self.codomain.name}")

    def __call__(self, u):
        return apply(self, u)

    def items(self):
        return zip(self.domain.elements, self.values)

    @property
    def table(self) -> dict:
        return dict(self.items())

    def __repr__(self):
        rows = ", ".join(f"{u!r}->{x!r}" for u, x in self.items())
        label = f"{self.name}: " if self.name else ""
        return f"FiniteMap({label}{self.domain.name}->{self.codomain.name} [{rows}])"


@dataclass(frozen=True)
class Partition:
    """Fibers of a map: one ``(x, preimage)`` block per element of the image."""

    blocks: tuple

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def as_dict(self) -> dict:
        return {x: tuple(block) for x, block in self.blocks}


def make_map(domain: FiniteSet, codomain: FiniteSet, assignments, name="") -> FiniteMap:
    """Build a map from ``(u, x)`` pairs (or a dict), checking totality."""
    if isinstance(assignments, Mapping):
        assignments = assignments.items()
    table = {}
    for u, x in assignments:
        if u not in domain:
            raise DanglingElement(f"{u!r} is not in domain {domain.name}")
        if x not in codomain:
            raise DanglingElement(f"{x!r} is not in codomain {codomain.name}")
        if u in table:
            raise NonTotal(f"{u!r} is assigned more than once")
        table[u] = x
    missing = [u for u in domain if u not in table]
    if missing:
        raise NonTotal(f"unassigned domain elements: {missing!r}")
    return FiniteMap(domain, codomain, tuple(table[u] for u in domain), name=name)


def from_function(domain: FiniteSet, codomain: FiniteSet, fn, name="") -> FiniteMap:
    return FiniteMap(domain, codomain, tuple(fn(u) for u in domain), name=name)


def identity_map(s: FiniteSet) -> FiniteMap:
    return FiniteMap(s, s, s.elements, name="I")


def constant_map(domain: FiniteSet, codomain: FiniteSet, x) -> FiniteMap:
    return FiniteMap(domain, codomain, (x,) * len(domain))


def apply(f: FiniteMap, u):
    if u not in f.domain:
        raise OutOfDomain(f"{u!r} is not in domain {f.domain.name}")
    return f.values[f.domain.index(u)]


def compose(outer: FiniteMap, inner: FiniteMap) -> FiniteMap:
    """``outer ∘ inner``; the sets must be identical, not merely isomorphic."""
    if inner.codomain != outer.domain:
        raise SpaceMismatch(
            f"cannot compose: {inner.codomain.name} is not {outer.domain.name}"
        )
    idx = outer.domain.index
    values = tuple(outer.values[idx(v)] for v in inner.values)
    name = f"{outer.name}∘{inner.name}" if outer.name and inner.name else ""
    return FiniteMap(inner.domain, outer.codomain, values, name=name)


def image(f: FiniteMap) -> FiniteSet:
    return f.codomain.subset(f"im({f.name or f.codomain.name})", f.values)


def preimage(f: FiniteMap, x) -> FiniteSet:
    """All ``u`` with ``f(u) == x``; empty when ``x`` is not hit."""
    if x not in f.codomain:
        raise OutOfCodomain(f"{x!r} is not in codomain {f.codomain.name}")
    return FiniteSet(
        f"{f.name or 'f'}⁻¹({x})", tuple(u for u, y in f.items() if y == x)
    )


def fibers(f: FiniteMap) -> Partition:
    groups: dict = {}
    for u, x in f.items():
        groups.setdefault(x, []).append(u)
    blocks = tuple(
        (x, FiniteSet(f"{f.name or 'f'}⁻¹({x})", tuple(groups[x])))
        for x in f.codomain
        if x in groups
    )
    return Partition(blocks)


def product_space(parts) -> FiniteSet:
    """Cartesian product with tuple elements in lexicographic order."""
    parts = tuple(parts)
    if not parts:
        raise ValueError("product_space needs at least one part")
    name = "(" + "×".join(p.name for p in parts) + ")"
    return FiniteSet(
        name, tuple(itertools.product(*(p.elements for p in parts))), factors=parts
    )


def product_map(f: FiniteMap, g: FiniteMap) -> FiniteMap:
    """Direct sum ``f ⊕ g`` acting componentwise on the product of domains."""
    dom = product_space([f.domain, g.domain])
    cod = product_space([f.codomain, g.codomain])
    return FiniteMap(dom, cod, tuple((f(u), g(v)) for u, v in dom))


def fork(f: FiniteMap, g: FiniteMap) -> FiniteMap:
    """Pairing ``u -> (f(u), g(u))`` on a shared domain."""
    if f.domain != g.domain:
        raise SpaceMismatch(f"fork needs one domain: {f.domain.name} vs {g.domain.name}")
    cod = product_space([f.codomain, g.codomain])
    return FiniteMap(f.domain, cod, tuple(zip(f.values, g.values)))


def diagonal(s: FiniteSet) -> FiniteMap:
    return FiniteMap(s, product_space([s, s]), tuple((u, u) for u in s))


def projection(p: FiniteSet, i: int) -> FiniteMap:
    if not p.is_product:
        raise SpaceMismatch(f"{p.name} is not a product space")
    return FiniteMap(p, p.factors[i], tuple(e[i] for e in p))


def restrict(f: FiniteMap, domain: FiniteSet, codomain: FiniteSet | None = None) -> FiniteMap:
    """Restriction of ``f`` to a subset of its domain, optionally narrowing the codomain."""
    codomain = codomain or f.codomain
    return FiniteMap(domain, codomain, tuple(apply(f, u) for u in domain), name=f.name)


def inverse(f: FiniteMap) -> FiniteMap:
    if not is_bijective(f):
        raise NotBijective(f"{f!r} has no inverse")
    table = {x: u for u, x in f.items()}
    return FiniteMap(f.codomain, f.domain, tuple(table[x] for x in f.codomain),
                     name=f"{f.name}⁻¹" if f.name else "")


def is_injective(f: FiniteMap) -> bool:
    return len(set(f.values)) == len(f.values)


def is_surjective(f: FiniteMap) -> bool:
    return len(set(f.values)) == len(f.codomain)


def is_bijective(f: FiniteMap) -> bool:
    return is_injective(f) and is_surjective(f)


def is_constant_on(f: FiniteMap, members) -> bool:
    return len({apply(f, u) for u in members}) <= 1
