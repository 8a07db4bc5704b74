from fractions import Fraction
from itertools import product

import pytest

from gradedverse.errors import StageBoundExceeded
from gradedverse.stages import build_stage, extension_types, level_positions


def brute_force_types(values):
    """Extension types over a graded vertex set, from a fine grid of candidate values.

    A type is (comparison of the new value with each old vertex, in-set, out-set),
    with in-sets from strictly lower and out-sets from strictly higher vertices.
    """
    n = len(values)
    grid = [Fraction(k, 16) for k in range(-64, 65)] if n else [Fraction(0)]
    types = set()
    for p in grid:
        sig = tuple((p > q) - (p < q) for q in values)
        lower = [i for i in range(n) if sig[i] == 1]
        higher = [i for i in range(n) if sig[i] == -1]
        for ins in product((0, 1), repeat=len(lower)):
            for outs in product((0, 1), repeat=len(higher)):
                types.add((sig, ins, outs))
    return types


def test_stage_zero_is_empty():
    g = build_stage(0).graph
    assert g.vertices == () and g.edges == frozenset()


def test_stage_one_has_one_isolated_vertex():
    g = build_stage(1).graph
    assert len(g.vertices) == 1 and not g.edges


def test_stage_two_matches_brute_force():
    g1 = build_stage(1).graph
    oracle = brute_force_types([g1.value(v) for v in g1.vertices])
    assert len(oracle) == 5  # 2 below, 1 level, 2 above
    assert len(build_stage(2).graph.vertices) == 1 + len(oracle) == 6


def test_stage_three_matches_brute_force():
    g2 = build_stage(2).graph
    oracle = brute_force_types([g2.value(v) for v in g2.vertices])
    assert len(build_stage(3).graph.vertices) == 6 + len(oracle)


def test_extension_types_agree_with_oracle_on_stage_two():
    g2 = build_stage(2).graph
    vs = list(g2.vertices)
    vals = {v: g2.value(v) for v in vs}
    ours = extension_types(vs, vals)
    assert len(ours) == len(brute_force_types([vals[v] for v in vs]))
    # every type is realized by a value that sits in the right gap
    sigs = {tuple((p > vals[v]) - (p < vals[v]) for v in vs) for p, _, _ in ours}
    assert len(sigs) == len(level_positions(sorted(set(vals.values()))))


def test_stages_are_coherent_and_graded():
    prev = build_stage(0).graph
    for n in range(1, 4):
        cur = build_stage(n).graph
        k = len(prev.vertices)
        assert cur.vertices[:k] == prev.vertices
        assert cur.induced(prev.vertices).edges == prev.edges
        assert all(cur.value(v) == prev.value(v) for v in prev.vertices)
        assert all(cur.value(a) < cur.value(b) for a, b in cur.edges)
        prev = cur


def test_level_positions():
    assert level_positions([]) == [0]
    assert level_positions([Fraction(0), Fraction(1)]) == [-1, 0, Fraction(1, 2), 1, 2]


def test_stage_bound():
    with pytest.raises(StageBoundExceeded):
        build_stage(4)
    with pytest.raises(ValueError):
        build_stage(-1)
