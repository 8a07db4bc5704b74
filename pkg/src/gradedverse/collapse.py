"""Realizing finite acyclic digraphs as hereditarily finite sets.

Three maps, all computed in topological order (no deep recursion):

* :func:`mostowski` -- ``pi(v) = {pi(w) : w -> v}``, an isomorphism onto a
  transitive set when the digraph is extensional;
* :func:`realize_as_set` -- first adjoins a chain ``0 -> 1 -> ... -> n``
  (transitively closed) with ``k -> v_k`` to force extensionality;
* :func:`modified_collapse` -- adds the tag ``{0, label(v)}`` to each image,
  which separates vertices without needing extensionality.

:func:`j_embed` is the tagged collapse applied to the membership relation
itself: a nontrivial membership-preserving self-map of HF.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional

from .digraph import Digraph, topological_order
from .errors import NonInjectiveLabels, NotExtensional
from .hf import EMPTY, HfSet, von_neumann


@dataclass(frozen=True)
class ChainVertex:
    """Fresh vertex ``k`` of the chain adjoined by :func:`extensionalize`."""

    index: int

    def __str__(self):
        return f"#{self.index}"


@dataclass(frozen=True)
class CollapseResult:
    image: HfSet
    vertex_map: Mapping

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))

    def __getitem__(self, v) -> HfSet:
        return self.vertex_map[v]


def extensionalize(g: Digraph) -> Digraph:
    topological_order(g)
    n = len(g)
    chain = [ChainVertex(k) for k in range(n + 1)]
    edges = set(g.edges)
    edges.update((chain[i], chain[j]) for i in range(n + 1) for j in range(i + 1, n + 1))
    edges.update((chain[k], v) for k, v in enumerate(g.vertices, start=1))
    return Digraph(tuple(chain) + g.vertices, frozenset(edges))


def is_extensional(g: Digraph) -> bool:
    seen = set()
    for v in g.vertices:
        key = frozenset(g.predecessors[v])
        if key in seen:
            return False
        seen.add(key)
    return True


def _collapse(g: Digraph, tag=None) -> dict:
    pi: dict = {}
    for v in topological_order(g):
        members = [pi[w] for w in g.predecessors[v]]
        if tag is not None:
            members.append(tag(v))
        pi[v] = HfSet(members)
    return pi


def mostowski(g: Digraph) -> CollapseResult:
    topological_order(g)
    if not is_extensional(g):
        raise NotExtensional("two vertices share the same in-neighbour set")
    pi = _collapse(g)
    return CollapseResult(HfSet(pi.values()), pi)


def realize_as_set(g: Digraph) -> CollapseResult:
    full = mostowski(extensionalize(g))
    pi = {v: full.vertex_map[v] for v in g.vertices}
    return CollapseResult(HfSet(pi.values()), pi)


def modified_collapse(g: Digraph, labels: Optional[Mapping] = None) -> CollapseResult:
    """Tagged collapse ``pi(x) = {pi(y) : y -> x} + {{0, label(x)}}``.

    ``labels`` must be an injective map to HF sets; by default the i-th
    vertex in list order gets the numeral ``i``.
    """
    if labels is None:
        labels = {v: von_neumann(i) for i, v in enumerate(g.vertices)}
    else:
        labels = dict(labels)
        missing = [v for v in g.vertices if v not in labels]
        if missing:
            raise NonInjectiveLabels(f"no label for {missing!r}")
    if len({labels[v] for v in g.vertices}) != len(g):
        raise NonInjectiveLabels("labels must be pairwise distinct")
    pi = _collapse(g, tag=lambda v: HfSet((EMPTY, labels[v])))
    return CollapseResult(HfSet(pi.values()), pi)


@lru_cache(maxsize=None)
def j_embed(x: HfSet) -> HfSet:
    """``j(x) = {j(y) : y in x} + {{0, x}}``."""
    # elements have strictly smaller rank, so recursion depth is rank(x)
    return HfSet([j_embed(y) for y in x.elements] + [HfSet((EMPTY, x))])
