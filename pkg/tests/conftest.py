import pytest

from multival.finmap import finite_set, make_map

U = finite_set("U", ["u1", "u2", "u3"])
W = finite_set("W", ["w1", "w2"])
V = finite_set("V", ["v1", "v2"])
X = finite_set("X", ["x1", "x2"])


@pytest.fixture
def spaces():
    return U, V, W, X


@pytest.fixture
def M1():
    return make_map(U, W, [("u1", "w1"), ("u2", "w1"), ("u3", "w2")], name="M1")


@pytest.fixture
def T1():
    return make_map(U, V, [("u1", "v1"), ("u2", "v1"), ("u3", "v2")], name="T1")


@pytest.fixture
def T2():
    return make_map(U, V, [("u1", "v1"), ("u2", "v2"), ("u3", "v2")], name="T2")


@pytest.fixture
def N1():
    return make_map(V, X, [("v1", "x1"), ("v2", "x2")], name="N1")
