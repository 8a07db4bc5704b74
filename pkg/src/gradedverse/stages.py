"""Exhaustive stagewise construction of the random graded digraph.

Stage ``n + 1`` adds one vertex for every one-vertex extension type over
stage ``n``. A type is a level position (equal to an existing level,
strictly between two adjacent levels, below all, or above all) plus an
in-neighbour subset of the strictly lower vertices and an out-neighbour
subset of the strictly higher ones. Types are enumerated over labelled
positions rather than up to isomorphism, which over-counts but still
realizes every type.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .digraph import Digraph, GradedDigraph, Grading
from .errors import StageBoundExceeded
from .orders import between

STAGE_BOUND = 3


@dataclass(frozen=True)
class StageGraph:
    n: int
    graph: GradedDigraph


def _subsets(items: list) -> Iterator[tuple]:
    # bitmask order over list order: (), (a,), (b,), (a, b), ...
    n = len(items)
    for mask in range(1 << n):
        yield tuple(items[i] for i in range(n) if mask >> i & 1)


def level_positions(levels: list[Fraction]) -> list[Fraction]:
    """Candidate values for a new vertex, ascending."""
    if not levels:
        return [Fraction(0)]
    out = [levels[0] - 1]
    for i, lv in enumerate(levels):
        out.append(lv)
        if i + 1 < len(levels):
            out.append(between(lv, levels[i + 1]))
    out.append(levels[-1] + 1)
    return out


def extension_types(vertices: list, values: dict) -> list[tuple]:
    """All ``(value, in_neighbours, out_neighbours)`` types over a graded digraph."""
    types = []
    for p in level_positions(sorted(set(values.values()))):
        lower = [v for v in vertices if values[v] < p]
        higher = [v for v in vertices if values[v] > p]
        for ins in _subsets(lower):
            for outs in _subsets(higher):
                types.append((p, ins, outs))
    return types


def iter_stages() -> Iterator[StageGraph]:
    vertices: list[int] = []
    values: dict[int, Fraction] = {}
    edges: set = set()
    n = 0
    while True:
        dg = Digraph(tuple(vertices), frozenset(edges))
        yield StageGraph(n, GradedDigraph(dg, Grading(dict(values))))
        for p, ins, outs in extension_types(vertices, values):
            v = len(vertices)
            vertices.append(v)
            values[v] = p
            edges.update((a, v) for a in ins)
            edges.update((v, b) for b in outs)
        n += 1


def build_stage(n: int, bound: int = STAGE_BOUND) -> StageGraph:
    if n < 0:
        raise ValueError("stage index must be non-negative")
    if n > bound:
        raise StageBoundExceeded(f"stage {n} exceeds the bound {bound}")
    for stage in iter_stages():
        if stage.n == n:
            return stage
    raise AssertionError("unreachable")
