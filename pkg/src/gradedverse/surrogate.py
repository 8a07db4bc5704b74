"""Layered surrogate digraph and a finite check that membership survives the round trip.

One generative universe is shared by all layers; layer ``k`` is its
restriction to values ``<= lambda_k``, so each layer is literally an induced
subgraph of the next. A surrogate sequence ``<v_0, ..., v_n>`` has
``v_k`` at value exactly ``lambda_k`` for ``k < n`` and a terminal ``v_n``
whose value is the sequence's value. For sequences ``w`` (last index ``m``)
and ``v``::

    w => v   iff   len(w) <= len(v)  and  w[m] -> v[m]

Only the terminal node of the shorter sequence acts as a child; the earlier
nodes of longer sequences stand in as parents for everything below their
layer, which keeps each sequence's predecessors inside its own layers.

Terminal values of length ``n + 1`` sequences lie in ``[lambda_{n-1},
lambda_n)``, except that the top layer also takes ``lambda_{K-1}`` itself.
A terminal sitting exactly on a lower ``lambda_m`` could never point into a
longer sequence (its partner node would have the same value), so that value
is always realized one layer up.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .collapse import CollapseResult, modified_collapse
from .digraph import Digraph, GradedDigraph, grade, topological_order
from .errors import (
    InvalidPattern,
    NotCompletelyDisjoint,
    NotPredecessorClosed,
    TooLarge,
    ValueOutOfRange,
)
from .hf import HfSet, membership_digraph, transitive_closure, von_neumann
from .orders import as_rational
from .universe import GENERIC, GenerativeUniverse, PatternQuery

log = logging.getLogger(__name__)

DEFAULT_LAMBDAS = (10, 20, 30)
DEMO_VERTEX_BOUND = 200


@dataclass(frozen=True)
class LayerConfig:
    lambdas: tuple = DEFAULT_LAMBDAS

    def __post_init__(self):
        lams = tuple(as_rational(x) for x in self.lambdas)
        if not lams:
            raise ValueError("at least one layer is required")
        if any(a >= b for a, b in zip(lams, lams[1:])):
            raise ValueError("lambdas must be strictly increasing")
        object.__setattr__(self, "lambdas", lams)

    @classmethod
    def parse(cls, text: str) -> "LayerConfig":
        return cls(tuple(as_rational(p) for p in text.split(",") if p.strip()))

    def __len__(self):
        return len(self.lambdas)

    def floor(self, k: int) -> Optional[Fraction]:
        """``sup_{i<k} lambda_i``, or None (below everything) for ``k = 0``."""
        return self.lambdas[k - 1] if k > 0 else None

    def layer_for(self, alpha) -> int:
        alpha = as_rational(alpha)
        for n, lam in enumerate(self.lambdas):
            if alpha < lam:
                return n
        if alpha == self.lambdas[-1]:
            return len(self.lambdas) - 1
        raise ValueOutOfRange(f"value {alpha} is above the top layer {self.lambdas[-1]}")


@dataclass(frozen=True)
class SurrogateSeq:
    index: int
    nodes: tuple

    def __len__(self):
        return len(self.nodes)

    @property
    def terminal(self):
        return self.nodes[-1]

    def __str__(self):
        return f"s{self.index}"


class SurrogateDigraph:
    """The surrogate digraph over a shared layered universe.

    Minting (via :func:`surrogate_pattern`) needs exclusive access, same as
    the underlying universe.
    """

    def __init__(self, config: Optional[LayerConfig] = None, mode: str = GENERIC, seed: int = 0):
        self.config = config or LayerConfig()
        self.universe = GenerativeUniverse(mode=mode, seed=seed)
        self.sequences: list[SurrogateSeq] = []

    def node_value(self, node) -> Fraction:
        return self.universe.value_of[node]

    def value(self, seq: SurrogateSeq) -> Fraction:
        return self.node_value(seq.terminal)

    def in_layer(self, node, k: int) -> bool:
        return self.node_value(node) <= self.config.lambdas[k]

    def has_edge(self, w: SurrogateSeq, v: SurrogateSeq) -> bool:
        m = len(w) - 1
        return len(w) <= len(v) and self.universe.has_edge(w.nodes[m], v.nodes[m])

    def is_valid_sequence(self, seq: SurrogateSeq) -> bool:
        lams = self.config.lambdas
        n = len(seq) - 1
        if not 0 <= n < len(lams):
            return False
        if any(self.node_value(seq.nodes[k]) != lams[k] for k in range(n)):
            return False
        val = self.value(seq)
        lo = self.config.floor(n)
        return val <= lams[n] and (lo is None or val >= lo)

    def digraph(self, seqs: Optional[Iterable[SurrogateSeq]] = None) -> GradedDigraph:
        """Induced surrogate-edge digraph on ``seqs`` (default: all minted)."""
        from .digraph import Grading

        vs = sorted(self.sequences if seqs is None else seqs, key=lambda s: s.index)
        edges = frozenset((w, v) for w in vs for v in vs if w is not v and self.has_edge(w, v))
        return GradedDigraph(Digraph(tuple(vs), edges), Grading({s: self.value(s) for s in vs}))


def completely_disjoint(groups: Iterable[Iterable[SurrogateSeq]]) -> bool:
    seen_seqs: set = set()
    seen_nodes: set = set()
    for group in groups:
        for s in group:
            if s in seen_seqs:
                return False
            seen_seqs.add(s)
            for node in s.nodes:
                if node in seen_nodes:
                    return False
                seen_nodes.add(node)
    return True


def surrogate_pattern(
    t: SurrogateDigraph,
    A: Iterable[SurrogateSeq] = (),
    B: Iterable[SurrogateSeq] = (),
    C: Iterable[SurrogateSeq] = (),
    alpha=0,
) -> SurrogateSeq:
    """Mint a sequence of value ``alpha`` with ``a => v => b`` and nothing toward ``C``.

    Every node of the result is freshly minted.
    """
    A, B, C = list(A), list(B), list(C)
    alpha = as_rational(alpha)
    if not completely_disjoint([A, B, C]):
        raise NotCompletelyDisjoint("A, B and C must share no sequences and no nodes")
    for a in A:
        if not t.value(a) < alpha:
            raise InvalidPattern(f"{a} has value {t.value(a)} >= {alpha}")
    for b in B:
        if not t.value(b) > alpha:
            raise InvalidPattern(f"{b} has value {t.value(b)} <= {alpha}")
    cfg = t.config
    lams = cfg.lambdas
    n = cfg.layer_for(alpha)
    val = t.node_value
    lo_n = cfg.floor(n)

    a_n = [a.terminal for a in A if lo_n is None or val(a.terminal) >= lo_n]
    b_n = [x for b in B for x in b.nodes if alpha < val(x) <= lams[n]]
    c_n = [x for c in C for x in c.nodes if val(x) <= lams[n]]
    u = t.universe
    terminal = u.find_pattern_vertex(PatternQuery(a_n, b_n, c_n, alpha), fresh=True)

    nodes = []
    for k in range(n):
        lo_k = cfg.floor(k)
        a_k = [x for a in A for x in a.nodes
               if (lo_k is None or val(x) >= lo_k) and val(x) < lams[k]]
        c_k = [x for c in C for x in c.nodes if val(x) <= lams[k]]
        nodes.append(u.find_pattern_vertex(PatternQuery(a_k, (), c_k, lams[k]), fresh=True))
    nodes.append(terminal)
    seq = SurrogateSeq(len(t.sequences), tuple(nodes))
    t.sequences.append(seq)
    return seq


def embed_into_surrogate(g: Union[Digraph, GradedDigraph], t: SurrogateDigraph) -> dict:
    """Map each vertex to a sequence so that ``x -> y`` iff ``v_x => v_y``."""
    if isinstance(g, Digraph):
        g = GradedDigraph(g, grade(g))
    topological_order(g.digraph)
    image: dict = {}
    for x in g.vertices:
        A, B, C = [], [], []
        for d, s in image.items():
            if g.has_edge(d, x):
                A.append(s)
            elif g.has_edge(x, d):
                B.append(s)
            else:
                C.append(s)
        image[x] = surrogate_pattern(t, A, B, C, g.value(x))
    for x in g.vertices:
        for y in g.vertices:
            if x != y and g.has_edge(x, y) != t.has_edge(image[x], image[y]):
                raise AssertionError(f"surrogate embedding broke at {(x, y)!r}")
    return image


def collapse_surrogate_prefix(t: SurrogateDigraph, seqs: Iterable[SurrogateSeq]) -> CollapseResult:
    """Tagged collapse of the induced surrogate-edge digraph on ``seqs``."""
    chosen = set(seqs)
    for v in chosen:
        for w in t.sequences:
            if w not in chosen and t.has_edge(w, v):
                raise NotPredecessorClosed(f"{w} => {v} but {w} is not included")
    g = t.digraph(chosen).digraph
    labels = {s: von_neumann(s.index) for s in g.vertices}
    return modified_collapse(g, labels)


@dataclass
class DemoResult:
    vertices: tuple
    sequences: dict
    composite: dict
    collapse: CollapseResult
    failures: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.failures


def check_membership_embedding(vertices: Iterable[HfSet], j: Mapping) -> list:
    """Pairs (or singletons) where ``j`` fails injectivity or ``x in y <=> j(x) in j(y)``."""
    vs = list(vertices)
    bad = []
    seen: dict = {}
    for x in vs:
        if j[x] in seen:
            bad.append(("not injective", seen[j[x]], x))
        seen[j[x]] = x
    for x in vs:
        for y in vs:
            if (x in y) != (j[x] in j[y]):
                bad.append(("membership", x, y))
    return bad


def membership_demo(
    s: HfSet,
    config: Optional[LayerConfig] = None,
    mode: str = GENERIC,
    seed: int = 0,
    max_vertices: int = DEMO_VERTEX_BOUND,
) -> DemoResult:
    """membership digraph -> surrogate embedding -> tagged collapse, then check."""
    if len(transitive_closure(s)) + 1 > max_vertices:
        raise TooLarge(f"transitive closure exceeds {max_vertices} vertices")
    g = membership_digraph(s)
    t = SurrogateDigraph(config, mode=mode, seed=seed)
    seqs = embed_into_surrogate(g, t)
    col = collapse_surrogate_prefix(t, t.sequences)
    j = {x: col.vertex_map[seqs[x]] for x in g.vertices}
    return DemoResult(g.vertices, seqs, j, col, check_membership_embedding(g.vertices, j))
