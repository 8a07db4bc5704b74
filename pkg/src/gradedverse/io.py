"""JSON and DOT serialization for (graded) digraphs.

JSON layout::

    {"vertices": ["a", ...], "edges": [["a", "b"], ...], "values": {"a": "3/2"}}

Rationals are ``"p/q"`` strings (``"p"`` for integers). ``values`` is optional.
Extra top-level keys (e.g. a universe header) are preserved by
:func:`graph_to_obj` via ``header``.
"""
from __future__ import annotations

import json
from typing import Optional, Union

from .digraph import Digraph, GradedDigraph, Grading
from .errors import ParseError
from .orders import format_rational, parse_rational


def _token(v):
    # JSON keeps strings and ints; anything else is written by its str()
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return v
    return str(v)


def graph_to_obj(g: Union[Digraph, GradedDigraph], header: Optional[dict] = None) -> dict:
    if isinstance(g, GradedDigraph):
        dg, grading = g.digraph, g.grading
    else:
        dg, grading = g, None
    obj = dict(header or {})
    obj["vertices"] = [_token(v) for v in dg.vertices]
    pos = dg.index
    edges = sorted(dg.edges, key=lambda e: (pos[e[0]], pos[e[1]]))
    obj["edges"] = [[_token(u), _token(v)] for u, v in edges]
    if grading is not None:
        obj["values"] = {str(_token(v)): format_rational(grading[v]) for v in dg.vertices}
    return obj


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":"), sort_keys=False)


def graph_to_json(g, header: Optional[dict] = None) -> str:
    return dumps(graph_to_obj(g, header))


def graph_from_obj(obj) -> Union[Digraph, GradedDigraph]:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise ParseError("graph JSON needs a 'vertices' list")
    verts = obj["vertices"]
    if not isinstance(verts, list):
        raise ParseError("'vertices' must be a list")
    edges = obj.get("edges", [])
    try:
        pairs = [(u, v) for u, v in edges]
    except (TypeError, ValueError) as exc:
        raise ParseError("'edges' must be a list of [u, v] pairs") from exc
    try:
        dg = Digraph(tuple(verts), frozenset(pairs))
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc
    values = obj.get("values")
    if values is None:
        return dg
    by_name = {str(v): v for v in dg.vertices}
    assignment = {}
    for key, q in values.items():
        if key not in by_name:
            raise ParseError(f"value given for unknown vertex {key!r}")
        assignment[by_name[key]] = parse_rational(str(q))
    missing = [v for v in dg.vertices if v not in assignment]
    if missing:
        raise ParseError(f"no value for vertices {missing!r}")
    strict = len(set(assignment.values())) == len(assignment)
    return GradedDigraph(dg, Grading(assignment, strict=strict))


def graph_from_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return graph_from_obj(obj)


def _dot_id(v) -> str:
    s = str(v).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def to_dot(g: Union[Digraph, GradedDigraph], name: str = "G") -> str:
    if isinstance(g, GradedDigraph):
        dg, grading = g.digraph, g.grading
    else:
        dg, grading = g, None
    lines = [f"digraph {name} {{"]
    for v in dg.vertices:
        if grading is not None:
            label = f"{v} @ {format_rational(grading[v])}"
            lines.append(f"  {_dot_id(v)} [label={_dot_id(label)}];")
        else:
            lines.append(f"  {_dot_id(v)};")
    pos = dg.index
    for u, v in sorted(dg.edges, key=lambda e: (pos[e[0]], pos[e[1]])):
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
