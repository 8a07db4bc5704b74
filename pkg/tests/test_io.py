import json

import pytest
from hypothesis import given

from conftest import dags, graded_dags
from gradedverse.digraph import Digraph, GradedDigraph, Grading
from gradedverse.errors import ParseError
from gradedverse.io import graph_from_json, graph_to_json, graph_to_obj, to_dot


def test_layout_and_rational_strings():
    g = GradedDigraph(Digraph(("a", "b"), frozenset({("a", "b")})), Grading({"a": "3/2", "b": 2}))
    obj = json.loads(graph_to_json(g, header={"mode": "generic"}))
    assert obj == {"mode": "generic", "vertices": ["a", "b"], "edges": [["a", "b"]],
                   "values": {"a": "3/2", "b": "2"}}


def test_ungraded_round_trip_keeps_type():
    g = Digraph(("x", "y", 3), frozenset({("x", 3)}))
    back = graph_from_json(graph_to_json(g))
    assert isinstance(back, Digraph) and back == g


@given(graded_dags())
def test_graded_round_trip(g):
    back = graph_from_json(graph_to_json(g))
    assert back.vertices == g.vertices
    assert back.edges == g.edges
    assert all(back.value(v) == g.value(v) for v in g.vertices)


@given(dags())
def test_serialization_is_canonical(g):
    assert graph_to_json(g) == graph_to_json(Digraph(g.vertices, frozenset(sorted(g.edges))))


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"edges": []}',
    '{"vertices": "ab"}',
    '{"vertices": ["a", "a"]}',
    '{"vertices": ["a"], "edges": [["a", "b"]]}',
    '{"vertices": ["a"], "edges": [["a"]]}',
    '{"vertices": ["a"], "values": {"b": "1"}}',
    '{"vertices": ["a", "b"], "values": {"a": "1"}}',
    '{"vertices": ["a"], "values": {"a": "one"}}',
])
def test_malformed_input(text):
    with pytest.raises(ParseError):
        graph_from_json(text)


def test_dot_export():
    g = GradedDigraph(Digraph(("a", "b"), frozenset({("a", "b")})), Grading({"a": 0, "b": "1/2"}))
    dot = to_dot(g)
    assert dot.startswith("digraph G {")
    assert '"a" -> "b";' in dot
    assert 'label="b @ 1/2"' in dot
    assert '"q\\"x"' in to_dot(Digraph(('q"x',), frozenset()))


def test_header_does_not_clobber_graph_keys():
    obj = graph_to_obj(Digraph(("a",), frozenset()), header={"seed": 4})
    assert obj["seed"] == 4 and obj["vertices"] == ["a"]
