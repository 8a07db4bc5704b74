"""Finite digraphs, gradings, brute-force automorphisms and embedding checks.

Vertices are opaque hashable tokens. The order of ``Digraph.vertices`` is the
canonical tie-break everywhere (grading, enumeration), so results are
reproducible.
"""
from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple, Optional, Protocol

from .errors import CyclicInput, TooLarge
from .orders import as_rational

log = logging.getLogger(__name__)

Vertex = Hashable

AUTOMORPHISM_BOUND = 8

EDGE_ONLY = "edge-only"
ORDER_PRESERVING = "order-preserving"
VALUE_EXACT = "value-exact"
MODES = (EDGE_ONLY, ORDER_PRESERVING, VALUE_EXACT)


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    edges: frozenset = frozenset()

    def __post_init__(self):
        verts = tuple(self.vertices)
        edges = frozenset((u, v) for u, v in self.edges)
        if len(set(verts)) != len(verts):
            raise ValueError("vertex identifiers must be pairwise distinct")
        vs = set(verts)
        for u, v in edges:
            if u not in vs or v not in vs:
                raise ValueError(f"edge {(u, v)!r} has an endpoint outside the vertex list")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def successors(self) -> dict:
        out = {v: set() for v in self.vertices}
        for u, v in self.edges:
            out[u].add(v)
        return out

    @cached_property
    def predecessors(self) -> dict:
        inn = {v: set() for v in self.vertices}
        for u, v in self.edges:
            inn[v].add(u)
        return inn

    def has_edge(self, u, v) -> bool:
        return (u, v) in self.edges

    def induced(self, subset: Iterable) -> "Digraph":
        keep = set(subset)
        verts = tuple(v for v in self.vertices if v in keep)
        return Digraph(verts, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))


@dataclass(frozen=True)
class Grading:
    assignment: Mapping
    strict: bool = False

    def __post_init__(self):
        values = {v: as_rational(q) for v, q in dict(self.assignment).items()}
        object.__setattr__(self, "assignment", values)
        if self.strict and len(set(values.values())) != len(values):
            raise ValueError("a strict grading must be injective")

    def __getitem__(self, v) -> Fraction:
        return self.assignment[v]

    def is_valid_for(self, g: Digraph) -> bool:
        if any(v not in self.assignment for v in g.vertices):
            return False
        if self.strict and len({self.assignment[v] for v in g.vertices}) != len(g):
            return False
        return all(self.assignment[u] < self.assignment[v] for u, v in g.edges)


@dataclass(frozen=True)
class GradedDigraph:
    digraph: Digraph
    grading: Grading

    @property
    def vertices(self) -> tuple:
        return self.digraph.vertices

    @property
    def edges(self) -> frozenset:
        return self.digraph.edges

    def has_edge(self, u, v) -> bool:
        return self.digraph.has_edge(u, v)

    def value(self, v) -> Fraction:
        return self.grading[v]

    def induced(self, subset: Iterable) -> "GradedDigraph":
        sub = self.digraph.induced(subset)
        return GradedDigraph(sub, Grading({v: self.grading[v] for v in sub.vertices}))


class EdgeOracle(Protocol):
    def has_edge(self, u, v) -> bool: ...


@dataclass(frozen=True)
class EmbeddingWitness:
    source: GradedDigraph
    map: Mapping
    mode: str = VALUE_EXACT

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "map", dict(self.map))


class Counterexample(NamedTuple):
    reason: str
    pair: tuple


def _topological(g: Digraph) -> list:
    # Kahn elimination; ready vertices are taken in vertex-list order.
    indeg = {v: len(g.predecessors[v]) for v in g.vertices}
    ready = [g.index[v] for v in g.vertices if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = g.vertices[heapq.heappop(ready)]
        order.append(v)
        for w in g.successors[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, g.index[w])
    return order


def topological_order(g: Digraph) -> list:
    order = _topological(g)
    if len(order) != len(g):
        raise CyclicInput("digraph has a directed cycle")
    return order


def is_acyclic(g: Digraph) -> bool:
    return len(_topological(g)) == len(g)


def reachability(g: Digraph) -> frozenset:
    """Transitive closure of the edge relation, as a set of pairs."""
    closure = set()
    for s in g.vertices:
        stack = list(g.successors[s])
        seen = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            closure.add((s, v))
            stack.extend(g.successors[v])
    return frozenset(closure)


def grade(g: Digraph) -> Grading:
    """Strict grading by position in the tie-broken topological order."""
    order = topological_order(g)
    return Grading({v: Fraction(i) for i, v in enumerate(order)}, strict=True)


def automorphisms(
    g: Digraph, grading: Optional[Grading] = None, bound: int = AUTOMORPHISM_BOUND
) -> list[dict]:
    """All edge-preserving (and value-preserving, if graded) vertex permutations."""
    n = len(g)
    if n > bound:
        raise TooLarge(f"{n} vertices exceeds the brute-force bound {bound}")
    verts = g.vertices
    found = []
    for perm in itertools.permutations(verts):
        p = dict(zip(verts, perm))
        if grading is not None and any(grading[v] != grading[p[v]] for v in verts):
            continue
        # a permutation maps E into E iff it maps E onto E (finite sets)
        if all((p[u], p[v]) in g.edges for u, v in g.edges):
            found.append(p)
    return found


def find_counterexample(w: EmbeddingWitness, target) -> Optional[Counterexample]:
    """First violated condition of ``w`` against ``target``, or None.

    ``target`` needs ``has_edge(u, v)``, and also ``value(v)`` unless the
    witness mode is edge-only.
    """
    src = w.source
    m = w.map
    for x in src.vertices:
        if x not in m:
            return Counterexample("unmapped vertex", (x,))
    seen = {}
    for x in src.vertices:
        y = m[x]
        if y in seen:
            return Counterexample("not injective", (seen[y], x))
        seen[y] = x
    for x in src.vertices:
        for y in src.vertices:
            if x == y:
                continue
            if src.has_edge(x, y) != target.has_edge(m[x], m[y]):
                return Counterexample("edge mismatch", (x, y))
    if w.mode == VALUE_EXACT:
        for x in src.vertices:
            if src.value(x) != target.value(m[x]):
                return Counterexample("value mismatch", (x,))
    elif w.mode == ORDER_PRESERVING:
        for x in src.vertices:
            for y in src.vertices:
                if src.value(x) < src.value(y) and not target.value(m[x]) < target.value(m[y]):
                    return Counterexample("order not preserved", (x, y))
    return None


def verify_embedding(w: EmbeddingWitness, target) -> bool:
    bad = find_counterexample(w, target)
    if bad is not None:
        log.debug("embedding rejected: %s at %r", bad.reason, bad.pair)
        return False
    return True


def identity_witness(g: GradedDigraph, mode: str = VALUE_EXACT) -> EmbeddingWitness:
    return EmbeddingWitness(g, {v: v for v in g.vertices}, mode)


def ungraded(g: Digraph) -> GradedDigraph:
    """Wrap a digraph with its canonical strict grading."""
    return GradedDigraph(g, grade(g))
