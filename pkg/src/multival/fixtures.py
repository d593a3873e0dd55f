"""The four-node example network and its three table variants.

Wiring (acyclic)::

    p, q ──► A ──┬──► B ◄── r
    q, p ──► C ──┘    D ◄── r   (B and D both read A and C)

``A`` and ``C`` share the externals ``p, q``; ``B`` and ``D`` share ``A``,
``C`` and the external ``r``.  Three table variants:

* ``both``: ``C = C̄∘A`` and ``D = D̄∘B``, reducible to two nodes
* ``only_c``: only ``C = C̄∘A``, reducible to three nodes
* ``none``: every counter-cascaded pair transcendent, irreducible
"""
from __future__ import annotations

from importlib import resources

from .finmap import FiniteSet, from_function, product_space
from .network import Network, Node

VARIANTS = ("both", "only_c", "none")

BIT = FiniteSet("bit", ("0", "1"))
TRI = FiniteSet("tri", ("0", "1", "2"))


def _node(node_id, inputs, spaces, output, fn):
    dom = product_space(spaces)
    return Node(node_id, inputs, from_function(dom, output, lambda u: str(fn(*map(int, u)))))


def four_node_network(variant: str = "both") -> Network:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")

    a = _node("A", ("p", "q"), (BIT, BIT), TRI, lambda p, q: p + q)
    if variant == "none":
        c = _node("C", ("q", "p"), (BIT, BIT), BIT, lambda q, p: p)
    else:
        # p AND q is recoverable from p + q
        c = _node("C", ("q", "p"), (BIT, BIT), BIT, lambda q, p: p & q)

    def b_fn(a_, c_, r):
        return (a_ + c_ + r) % 3

    b = _node("B", ("A", "C", "r"), (TRI, BIT, BIT), TRI, b_fn)
    if variant == "both":
        d = _node("D", ("r", "A", "C"), (BIT, TRI, BIT), BIT,
                  lambda r, a_, c_: int(b_fn(a_, c_, r) == 0))
    else:
        d = _node("D", ("r", "A", "C"), (BIT, TRI, BIT), BIT,
                  lambda r, a_, c_: (a_ + r) % 2)

    return Network(
        spaces=(BIT, TRI),
        externals=(("p", "bit"), ("q", "bit"), ("r", "bit")),
        nodes=(a, b, c, d),
        outputs=("A", "B", "C", "D"),
    )


def fixture_path(variant: str):
    return resources.files("multival") / "fixtures" / f"four_node_{variant}.json"


def load_fixture_text(variant: str) -> str:
    return fixture_path(variant).read_text(encoding="utf-8")
