from hypothesis import HealthCheck, settings, strategies as st

from gradedverse.digraph import Digraph, GradedDigraph, Grading
from gradedverse.hf import EMPTY, HfSet

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def dags(draw, max_vertices=7, labels=None):
    """DAG with a hidden shuffled topological order and arbitrary vertex names."""
    n = draw(st.integers(0, max_vertices))
    order = draw(st.permutations(range(n)))
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    names = labels or [f"v{i}" for i in range(n)]
    edges = frozenset((names[a], names[b]) for (a, b), k in zip(pairs, keep) if k)
    return Digraph(tuple(names[:n]), edges)


@st.composite
def graded_dags(draw, max_vertices=7):
    """DAG with possibly tied rational values; every edge goes strictly up."""
    n = draw(st.integers(0, max_vertices))
    vals = sorted(draw(st.lists(rationals, min_size=n, max_size=n)))
    perm = draw(st.permutations(range(n)))
    value = {perm[i]: vals[i] for i in range(n)}
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if vals[i] < vals[j] and draw(st.booleans()):
                edges.add((perm[i], perm[j]))
    return GradedDigraph(Digraph(tuple(range(n)), frozenset(edges)), Grading(value))


def _extend(children):
    return st.lists(children, max_size=4).map(HfSet)


hf_sets = st.recursive(st.just(EMPTY), _extend, max_leaves=20)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULT_LINES

    if RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in RESULT_LINES:
            terminalreporter.write_line(line)
