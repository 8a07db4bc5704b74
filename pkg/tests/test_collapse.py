import pytest
from hypothesis import given

from conftest import dags, hf_sets
from gradedverse.collapse import (
    ChainVertex,
    extensionalize,
    is_extensional,
    j_embed,
    modified_collapse,
    mostowski,
    realize_as_set,
)
from gradedverse.digraph import Digraph, is_acyclic
from gradedverse.errors import CyclicInput, NonInjectiveLabels, NotExtensional
from gradedverse.hf import EMPTY, decode, hf, is_transitive, von_neumann


def G(vertices, edges):
    return Digraph(tuple(vertices), frozenset(edges))


def extensional_oracle(g):
    ins = [frozenset(u for u in g.vertices if g.has_edge(u, v)) for v in g.vertices]
    return len(set(ins)) == len(ins)


def realizes(g, pi):
    return (len({pi[v] for v in g.vertices}) == len(g)
            and all(g.has_edge(w, v) == (pi[w] in pi[v]) for w in g.vertices for v in g.vertices))


K = [ChainVertex(i) for i in range(4)]


def test_extensionalize_single_vertex():
    e = extensionalize(G(["v1"], []))
    assert set(e.vertices) == {K[0], K[1], "v1"}
    assert e.edges == {(K[0], K[1]), (K[1], "v1")}


def test_extensionalize_empty():
    e = extensionalize(G([], []))
    assert e.vertices == (K[0],) and not e.edges


def test_extensionalize_edge():
    e = extensionalize(G(["v1", "v2"], [("v1", "v2")]))
    assert e.edges == {(K[0], K[1]), (K[1], K[2]), (K[0], K[2]),
                       (K[1], "v1"), (K[2], "v2"), ("v1", "v2")}
    assert is_extensional(e) and extensional_oracle(e)


def test_extensionalize_rejects_cycles():
    with pytest.raises(CyclicInput):
        extensionalize(G("ab", [("a", "b"), ("b", "a")]))


@given(dags(max_vertices=8))
def test_extensionalize_is_extensional_and_acyclic(g):
    e = extensionalize(g)
    assert is_acyclic(e) and extensional_oracle(e) and is_extensional(e)
    assert e.induced(g.vertices).edges == g.edges


def test_mostowski_examples():
    chain = G("012", [("0", "1"), ("1", "2"), ("0", "2")])
    pi = mostowski(chain).vertex_map
    assert [pi[c] for c in "012"] == [von_neumann(i) for i in range(3)]
    assert mostowski(G("a", [])).vertex_map == {"a": EMPTY}
    pi = mostowski(extensionalize(G(["v1"], []))).vertex_map
    assert pi["v1"] is hf(hf(EMPTY))


def test_mostowski_of_transitive_chain_is_transitive():
    n = 6
    g = G(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])
    res = mostowski(g)
    assert res.image is von_neumann(n) and is_transitive(res.image)


def test_mostowski_requires_extensionality():
    with pytest.raises(NotExtensional):
        mostowski(G("ab", []))


def test_realize_examples():
    d = realize_as_set(G("ab", []))
    assert d["a"] is not d["b"] and d["a"] not in d["b"] and d["b"] not in d["a"]
    e = realize_as_set(G("ab", [("a", "b")]))
    assert e["a"] in e["b"] and e["b"] not in e["a"]
    diamond = G("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    assert realizes(diamond, realize_as_set(diamond).vertex_map)


@given(dags(max_vertices=12))
def test_realize_as_set_is_an_isomorphism(g):
    res = realize_as_set(g)
    assert realizes(g, res.vertex_map)
    assert set(res.image.elements) == {res[v] for v in g.vertices}


def test_modified_collapse_examples():
    one = modified_collapse(G("a", []), {"a": EMPTY})
    assert one["a"] is hf(hf(EMPTY))
    two = modified_collapse(G("ab", []))
    assert two["a"] not in two["b"] and two["b"] not in two["a"] and two["a"] is not two["b"]
    e = modified_collapse(G("ab", [("a", "b")]), {"a": von_neumann(0), "b": von_neumann(1)})
    assert e["a"] in e["b"] and e["b"] not in e["a"]


def test_modified_collapse_labels():
    g = G("ab", [])
    with pytest.raises(NonInjectiveLabels):
        modified_collapse(g, {"a": EMPTY, "b": EMPTY})
    with pytest.raises(NonInjectiveLabels):
        modified_collapse(g, {"a": EMPTY})


@given(dags(max_vertices=12))
def test_modified_collapse_needs_no_extensionality(g):
    assert realizes(g, modified_collapse(g).vertex_map)


@given(dags(max_vertices=8))
def test_modified_collapse_with_odd_labels(g):
    labels = {v: decode(3 * i + 7) for i, v in enumerate(g.vertices)}
    assert realizes(g, modified_collapse(g, labels).vertex_map)


def test_j_examples():
    assert j_embed(EMPTY) is hf(hf(EMPTY))
    one = hf(EMPTY)
    assert j_embed(one) is hf(hf(hf(EMPTY)), hf(EMPTY, one))
    nums = [von_neumann(i) for i in range(4)]
    for a in nums:
        for b in nums:
            assert (a in b) == (j_embed(a) in j_embed(b))


def test_j_exhaustive_below_4096():
    sets = [decode(c) for c in range(4096)]
    images = [j_embed(x) for x in sets]
    assert len(set(images)) == 4096
    assert all(x is not y for x, y in zip(sets, images))
    pos = {y: i for i, y in enumerate(images)}
    for c, y in enumerate(images):
        mask = sum(1 << pos[z] for z in y.elements if z in pos)
        assert mask == c


@given(hf_sets, hf_sets)
def test_j_preserves_membership(x, y):
    assert (x in y) == (j_embed(x) in j_embed(y))
    assert (x is y) == (j_embed(x) is j_embed(y))
    assert j_embed(x) is not x
