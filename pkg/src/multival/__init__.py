"""Immanence analysis of counter-cascaded finite maps and nodal rationalization of networks."""
from .finmap import (
    FiniteMap,
    FiniteSet,
    Partition,
    apply,
    compose,
    fibers,
    finite_set,
    fork,
    identity_map,
    make_map,
    preimage,
    product_map,
    product_space,
)
from .immanence import (
    check,
    check_definitional,
    check_relational,
    classify_bidirectional,
    corollary_audit,
    extract_model,
    solve_for_T,
)
from .network import Network, Node, find_pairs, rationalize
from .relation import Relation, approximate, relation_of, single_valuedness, to_map

__version__ = "0.1.0"
