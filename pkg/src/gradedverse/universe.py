"""Lazily grown countable random graded digraph.

A :class:`GenerativeUniverse` only ever holds a finite minted prefix. It
answers finite-pattern queries (a vertex at an exact value, pointed at by
every vertex of ``A``, pointing at every vertex of ``B``, non-adjacent to
``C``), and everything else here (forth embeddings, back-and-forth, the
undirected extension check) is built on that one oracle.

Two modes:

``generic``
    Every answer is a freshly minted vertex whose adjacency to earlier
    vertices is exactly the requested pattern and nothing else.

``random``
    Adjacency between a lower-valued ``u`` and a higher-valued ``v`` is a
    fair coin, the low bit of ``blake2b(seed, u, v)``. Queries first scan
    the minted vertices. With ``sampler="rejection"`` fresh coin-flipped
    candidates are minted until one matches, at most ``retry_bound`` times.
    With ``sampler="conditioned"`` (the default) the coins a fresh vertex
    shows toward the query's own vertices are fixed to the requested
    pattern and all its other coins stay hashed; this is the first matching
    candidate of the rejection process, drawn directly, so patterns of any
    size are answered without the exponential wait.

Both modes also enumerate "intrinsic" vertices via :meth:`extend`: the k-th
one gets value ``order.value_for_index(k)`` (every value recurs infinitely
often) and hashed coins toward all earlier vertices.
"""
from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .digraph import (
    ORDER_PRESERVING,
    VALUE_EXACT,
    Digraph,
    EmbeddingWitness,
    GradedDigraph,
    Grading,
    find_counterexample,
    grade,
    topological_order,
)
from .errors import InvalidPattern, RetryExhausted, Unsupported
from .orders import LinearOrder, as_rational, fresh_outside

GENERIC = "generic"
RANDOM = "random"
DEFAULT_RETRY_BOUND = 1000


def coin(seed: int, u: int, v: int) -> bool:
    """Deterministic fair bit for the ordered vertex pair ``(u, v)``."""
    h = hashlib.blake2b(f"{seed}:{u}:{v}".encode(), digest_size=1).digest()
    return bool(h[0] & 1)


@dataclass(frozen=True)
class PatternQuery:
    A: frozenset
    B: frozenset
    C: frozenset
    alpha: Fraction

    def __init__(self, A: Iterable = (), B: Iterable = (), C: Iterable = (), alpha=0):
        object.__setattr__(self, "A", frozenset(A))
        object.__setattr__(self, "B", frozenset(B))
        object.__setattr__(self, "C", frozenset(C))
        object.__setattr__(self, "alpha", as_rational(alpha))

    @property
    def members(self) -> frozenset:
        return self.A | self.B | self.C

    def validate(self, u: "GenerativeUniverse") -> None:
        if self.A & self.B or self.A & self.C or self.B & self.C:
            raise InvalidPattern("A, B and C must be pairwise disjoint")
        for x in self.members:
            if x not in u.value_of:
                raise InvalidPattern(f"{x!r} is not a minted vertex")
        if not u.order.contains(self.alpha):
            raise InvalidPattern(f"value {self.alpha} is not in the order {u.order}")
        for a in self.A:
            if not u.value_of[a] < self.alpha:
                raise InvalidPattern(f"A-vertex {a!r} has value {u.value_of[a]} >= {self.alpha}")
        for b in self.B:
            if not u.value_of[b] > self.alpha:
                raise InvalidPattern(f"B-vertex {b!r} has value {u.value_of[b]} <= {self.alpha}")


class GenerativeUniverse:
    """See the module docstring. Minting must be serialized by the caller or
    goes through the internal lock; the minted prefix only ever grows."""

    def __init__(
        self,
        mode: str = GENERIC,
        seed: int = 0,
        order: Optional[LinearOrder] = None,
        retry_bound: int = DEFAULT_RETRY_BOUND,
        sampler: str = "conditioned",
    ):
        if mode not in (GENERIC, RANDOM):
            raise ValueError(f"mode must be 'generic' or 'random', got {mode!r}")
        if sampler not in ("conditioned", "rejection"):
            raise ValueError(f"unknown sampler {sampler!r}")
        if retry_bound < 1:
            raise ValueError("retry_bound must be positive")
        self.mode = mode
        self.seed = int(seed)
        self.order = order or LinearOrder.rationals()
        self.retry_bound = retry_bound
        self.sampler = sampler
        self.minted: list[int] = []
        self.value_of: dict[int, Fraction] = {}
        self._by_value: dict[Fraction, list[int]] = {}
        self._succ: dict[int, set] = {}
        self._pred: dict[int, set] = {}
        self._forced: dict[tuple, bool] = {}
        self.requested: dict[int, tuple[frozenset, frozenset]] = {}
        self.mint_count = 0
        self._lock = threading.RLock()

    def __repr__(self):
        return (f"GenerativeUniverse(mode={self.mode!r}, seed={self.seed}, "
                f"order={str(self.order)!r}, minted={len(self.minted)})")

    def __len__(self):
        return len(self.minted)

    # -- adjacency ---------------------------------------------------------

    def value(self, v) -> Fraction:
        return self.value_of[v]

    def has_edge(self, u, v) -> bool:
        vu, vv = self.value_of[u], self.value_of[v]
        if not vu < vv:
            return False
        if self.mode == GENERIC:
            return v in self._succ[u]
        forced = self._forced.get((u, v))
        if forced is not None:
            return forced
        return coin(self.seed, u, v)

    def adjacent(self, u, v) -> bool:
        return self.has_edge(u, v) or self.has_edge(v, u)

    def matches(self, q: PatternQuery, v) -> bool:
        if v in q.members or self.value_of[v] != q.alpha:
            return False
        return (all(self.has_edge(a, v) for a in q.A)
                and all(self.has_edge(v, b) for b in q.B)
                and not any(self.adjacent(v, c) for c in q.C))

    # -- minting -----------------------------------------------------------

    def _new_vertex(self, alpha: Fraction) -> int:
        v = len(self.minted)
        self.minted.append(v)
        self.value_of[v] = alpha
        self._by_value.setdefault(alpha, []).append(v)
        self._succ[v] = set()
        self._pred[v] = set()
        self.mint_count += 1
        return v

    def _mint_exact(self, alpha: Fraction, ins: Iterable, outs: Iterable) -> int:
        ins, outs = frozenset(ins), frozenset(outs)
        v = self._new_vertex(alpha)
        for a in ins:
            if not self.value_of[a] < alpha:
                raise AssertionError("grading invariant violated")
            self._succ[a].add(v)
            self._pred[v].add(a)
        for b in outs:
            if not alpha < self.value_of[b]:
                raise AssertionError("grading invariant violated")
            self._succ[v].add(b)
            self._pred[b].add(v)
        self.requested[v] = (ins, outs)
        return v

    def _mint_conditioned(self, q: PatternQuery) -> int:
        v = self._new_vertex(q.alpha)
        for a in q.A:
            self._forced[(a, v)] = True
        for b in q.B:
            self._forced[(v, b)] = True
        for c in q.C:
            vc = self.value_of[c]
            if vc < q.alpha:
                self._forced[(c, v)] = False
            elif vc > q.alpha:
                self._forced[(v, c)] = False
        return v

    def extend(self) -> int:
        """Mint the next intrinsic vertex of this universe's enumeration."""
        with self._lock:
            k = len(self.minted)
            alpha = self.order.value_for_index(k)
            if self.mode == RANDOM:
                return self._new_vertex(alpha)
            ins = [u for u in self.minted if self.value_of[u] < alpha and coin(self.seed, u, k)]
            outs = [u for u in self.minted if self.value_of[u] > alpha and coin(self.seed, k, u)]
            return self._mint_exact(alpha, ins, outs)

    def vertex_at(self, i: int) -> int:
        """The i-th vertex of the enumeration, extending on demand."""
        while len(self.minted) <= i:
            self.extend()
        return self.minted[i]

    def find_pattern_vertex(self, q: PatternQuery, fresh: bool = False) -> int:
        """A vertex realizing ``q``; with ``fresh`` it is never a previously minted one."""
        with self._lock:
            q.validate(self)
            if self.mode == GENERIC:
                return self._mint_exact(q.alpha, q.A, q.B)
            if not fresh:
                for v in self._by_value.get(q.alpha, ()):
                    if self.matches(q, v):
                        return v
            if self.sampler == "conditioned":
                return self._mint_conditioned(q)
            for _ in range(self.retry_bound):
                v = self._new_vertex(q.alpha)
                if self.matches(q, v):
                    return v
            raise RetryExhausted(
                f"no vertex matched a {len(q.members)}-vertex pattern in {self.retry_bound} mints")

    # -- views -------------------------------------------------------------

    def induced(self, vertices: Iterable) -> GradedDigraph:
        vs = [v for v in vertices]
        edges = frozenset((u, v) for u in vs for v in vs if u != v and self.has_edge(u, v))
        return GradedDigraph(Digraph(tuple(vs), edges), Grading({v: self.value_of[v] for v in vs}))

    def snapshot(self) -> GradedDigraph:
        return self.induced(list(self.minted))

    def header(self) -> dict:
        return {"mode": self.mode, "seed": self.seed, "order": str(self.order)}

    def to_obj(self) -> dict:
        from .io import graph_to_obj

        return graph_to_obj(self.snapshot(), header=self.header())

    def check_grading_invariant(self) -> bool:
        snap = self.snapshot()
        return all(self.value_of[u] < self.value_of[v] for u, v in snap.edges)


# -- operations built on the oracle ------------------------------------------

def find_pattern_vertex(u: GenerativeUniverse, q: PatternQuery, fresh: bool = False) -> int:
    return u.find_pattern_vertex(q, fresh=fresh)


def _query_against(src, x, mapping: dict, alpha) -> PatternQuery:
    """Pattern that the image of ``x`` must show toward already-mapped images."""
    A, B, C = [], [], []
    for d, img in mapping.items():
        if src.has_edge(d, x):
            A.append(img)
        elif src.has_edge(x, d):
            B.append(img)
        else:
            C.append(img)
    return PatternQuery(A, B, C, alpha)


def _order_compatible_values(src: GradedDigraph, u: GenerativeUniverse) -> dict:
    """Re-grade ``src`` into ``u.order`` keeping the order (and ties) of its values."""
    levels = sorted({src.value(x) for x in src.vertices})
    order = u.order
    if order.kind == "suborder":
        if all(order.contains(q) for q in levels):
            return {x: src.value(x) for x in src.vertices}
        raise Unsupported(f"cannot re-grade into {order}; give values inside it")
    if order.kind == "chain" and len(levels) > order.size:
        raise InvalidPattern(f"{len(levels)} distinct values do not fit in {order}")
    rank = {q: Fraction(i) for i, q in enumerate(levels)}
    return {x: rank[src.value(x)] for x in src.vertices}


def forth_embed(
    g: Union[Digraph, GradedDigraph], u: GenerativeUniverse, mode: str = VALUE_EXACT
) -> EmbeddingWitness:
    """Embed ``g`` as an induced subgraph of ``u``, vertex by vertex."""
    if isinstance(g, Digraph):
        g = GradedDigraph(g, grade(g))
    topological_order(g.digraph)  # raises CyclicInput
    if mode not in (VALUE_EXACT, ORDER_PRESERVING):
        raise ValueError(f"forth_embed mode must be value-exact or order-preserving, got {mode!r}")
    if mode == VALUE_EXACT:
        target = {x: g.value(x) for x in g.vertices}
    else:
        target = _order_compatible_values(g, u)
    mapping: dict = {}
    for x in g.vertices:
        mapping[x] = u.find_pattern_vertex(_query_against(g, x, mapping, target[x]))
    w = EmbeddingWitness(g, mapping, mode)
    bad = find_counterexample(w, u)
    if bad is not None:
        raise AssertionError(f"forth embedding failed verification: {bad}")
    return w


def _first_uncovered(u: GenerativeUniverse, covered: dict) -> int:
    for v in u.minted:
        if v not in covered:
            return v
    return u.extend()


def back_and_forth(u1: GenerativeUniverse, u2: GenerativeUniverse, steps: int) -> dict:
    """Value-exact partial isomorphism from ``u1`` to ``u2`` after ``steps`` rounds.

    Each round covers the earliest uncovered vertex of ``u1`` (forth) and
    then of ``u2`` (back), so the first ``steps`` vertices of both sides end
    up in the domain and range respectively.
    """
    if str(u1.order) != str(u2.order):
        raise InvalidPattern("back-and-forth needs both universes over the same order")
    fwd: dict = {}
    bwd: dict = {}
    for _ in range(steps):
        x = _first_uncovered(u1, fwd)
        y = u2.find_pattern_vertex(_query_against(u1, x, fwd, u1.value_of[x]))
        fwd[x] = y
        bwd[y] = x
        y = _first_uncovered(u2, bwd)
        x = u1.find_pattern_vertex(_query_against(u2, y, bwd, u2.value_of[y]))
        bwd[y] = x
        fwd[x] = y
    return fwd


def partial_iso_witnesses(u1: GenerativeUniverse, u2: GenerativeUniverse, iso: dict):
    """Forward and backward value-exact witnesses for a partial isomorphism."""
    dom = sorted(iso)
    inv = {y: x for x, y in iso.items()}
    fwd = EmbeddingWitness(u1.induced(dom), iso, VALUE_EXACT)
    bwd = EmbeddingWitness(u2.induced(sorted(inv)), inv, VALUE_EXACT)
    return fwd, bwd


def rado_extension_check(u: GenerativeUniverse, A: Iterable, C: Iterable) -> int:
    """A vertex adjacent (either direction) to all of ``A`` and to none of ``C``."""
    A, C = frozenset(A), frozenset(C)
    if A & C:
        raise InvalidPattern("A and C must be disjoint")
    used = [u.value_of[x] for x in A | C]
    alpha = fresh_outside(used, "above")
    if not u.order.contains(alpha):
        raise InvalidPattern(f"no value above {max(used)} in {u.order}")
    return u.find_pattern_vertex(PatternQuery(A, (), C, alpha))
