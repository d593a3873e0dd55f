import pytest
from hypothesis import given, settings

from multival.errors import Multivalued, SpaceMismatch
from multival.finmap import FiniteMap, compose, finite_set, identity_map, make_map
from multival.relation import (
    approximate,
    count_disagreement,
    relation_of,
    single_valuedness,
    to_map,
)

from conftest import U, V, W, X
from oracles import min_disagreement, table
from strategies import triples


def test_relation_of_counts_generators(M1, T1, N1):
    rel = relation_of(M1, T1, N1)
    assert rel.pairs() == {("w1", "x1"): 2, ("w2", "x2"): 1}
    assert rel.total == len(U)


def test_relation_of_multivalued_support(M1, T2, N1):
    rel = relation_of(M1, T2, N1)
    assert rel.pairs() == {("w1", "x1"): 1, ("w1", "x2"): 1, ("w2", "x2"): 1}


def test_relation_of_identity_is_graph(T2):
    rel = relation_of(identity_map(U), T2, identity_map(V))
    assert set(rel.pairs()) == set(table(T2).items())


def test_relation_of_checks_spaces(M1, T1):
    with pytest.raises(SpaceMismatch):
        relation_of(M1, T1, identity_map(W))


def test_single_valuedness(M1, T1, T2, N1):
    assert single_valuedness(relation_of(M1, T1, N1)).single_valued
    sv = single_valuedness(relation_of(M1, T2, N1))
    assert not sv.single_valued
    assert sv.witness.as_tuple() == ("w1", "u1", "u2", "x1", "x2")
    assert sv.witness.holds(M1, T2, N1)


def test_single_valuedness_vacuous_on_empty_domain():
    empty = finite_set("E", [])
    M = FiniteMap(empty, W, ())
    T = FiniteMap(empty, V, ())
    assert single_valuedness(relation_of(M, T, identity_map(V))).single_valued


def test_to_map(M1, T1, T2, N1):
    S = to_map(relation_of(M1, T1, N1))
    assert table(S) == {"w1": "x1", "w2": "x2"}
    assert to_map(relation_of(identity_map(U), T2, identity_map(V))).values == T2.values
    with pytest.raises(Multivalued) as err:
        to_map(relation_of(M1, T2, N1))
    assert err.value.witness.as_tuple() == ("w1", "u1", "u2", "x1", "x2")


def test_to_map_fills_unreached_with_first_element(T1, N1):
    W3 = finite_set("W3", ["w1", "w2", "w3"])
    M = make_map(U, W3, {"u1": "w2", "u2": "w2", "u3": "w3"})
    S = to_map(relation_of(M, T1, N1))
    assert S("w1") == "x1"
    assert S.meta["unreached"] == ("w1",)


def test_approximate_tie_goes_to_first_element(M1, T2, N1):
    approx = approximate(relation_of(M1, T2, N1))
    assert table(approx.model) == {"w1": "x1", "w2": "x2"}
    assert approx.disagreement == 1
    assert approx.criterion == "majority"
    assert min_disagreement(M1, T2, N1) == 1


def test_approximate_degenerates_to_faithful_model(M1, T1, N1):
    rel = relation_of(M1, T1, N1)
    approx = approximate(rel)
    assert approx.disagreement == 0
    assert approx.model.values == to_map(rel).values


def test_approximate_majority_count():
    # pairs {(w, x1) x3, (w, x2) x1}
    U4 = finite_set("U4", ["a", "b", "c", "d"])
    Wi = finite_set("Wi", ["w"])
    M = make_map(U4, Wi, {u: "w" for u in U4})
    T = make_map(U4, X, {"a": "x1", "b": "x2", "c": "x1", "d": "x1"})
    approx = approximate(relation_of(M, T, identity_map(X)))
    assert approx.model("w") == "x1"
    assert approx.disagreement == 1


def test_approximate_rejects_unknown_criterion(M1, T2, N1):
    with pytest.raises(ValueError):
        approximate(relation_of(M1, T2, N1), "least-squares")


@settings(max_examples=300)
@given(triples(max_u=5, max_other=3))
def test_relation_invariants(triple):
    M, T, N = triple
    rel = relation_of(M, T, N)
    assert rel.total == len(M.domain)
    assert len(rel.pairs()) <= len(M.domain)
    assert set(rel.reached()) <= set(M.values)
    sv = single_valuedness(rel)
    if sv.single_valued:
        S = to_map(rel)
        assert compose(S, M).values == compose(N, T).values
    else:
        assert sv.witness.holds(M, T, N)


@settings(max_examples=300)
@given(triples(max_u=5, max_other=3))
def test_majority_is_optimal(triple):
    M, T, N = triple
    approx = approximate(relation_of(M, T, N))
    assert approx.disagreement == count_disagreement(approx.model, M, T, N)
    assert approx.disagreement == min_disagreement(M, T, N)
    assert (approx.disagreement == 0) == single_valuedness(relation_of(M, T, N)).single_valued
