"""The acceptance suite: thirteen finite checks with runtime limits.

Each ``criterion_N(seed)`` returns a :class:`CriterionResult`. Criteria that
produce data (4-8 and 12) also return an ``artifact`` byte string, a
canonical JSON rendering of everything they computed, which criterion 13
compares across two runs.
"""
from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .collapse import j_embed, realize_as_set
from .digraph import (
    VALUE_EXACT,
    Digraph,
    GradedDigraph,
    Grading,
    automorphisms,
    is_acyclic,
    verify_embedding,
)
from .errors import RetryExhausted
from .hf import HfSet, cumulative_level, decode, digest, encode, transitive_closure
from .stages import build_stage
from .surreal import born_by, dyadic_value, equivalent, hypnagogic_stage, leq, terms_by
from .surrogate import membership_demo
from .universe import (
    GenerativeUniverse,
    PatternQuery,
    back_and_forth,
    forth_embed,
    partial_iso_witnesses,
    rado_extension_check,
)

DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float
    limit: Optional[float] = None
    artifact: Optional[bytes] = None

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g}s)" if self.limit is not None else ""
        return f"[{verdict}] {self.number:2d} {self.title}: {self.detail} in {self.elapsed:.2f}s{budget}"


def _canon(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str).encode()


def _finish(number, title, limit, t0, ok, detail, artifact=None) -> CriterionResult:
    elapsed = time.perf_counter() - t0
    within = limit is None or elapsed < limit
    if not within:
        detail += " [over time budget]"
    return CriterionResult(number, title, ok and within, detail, elapsed, limit, artifact)


# -- 1 ----------------------------------------------------------------------

def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    bad_codes = [c for c in range(1 << 16) if encode(decode(c)) != c]
    # rank <= 4 sets are subsets of V_4; build them structurally from masks
    v4 = cumulative_level(4)
    rng = random.Random(seed)
    masks = rng.sample(range(1 << len(v4)), 10_000)
    bad_sets = 0
    for m in masks:
        s = HfSet(v4[i] for i in range(len(v4)) if m >> i & 1)
        if s.rank > 4 or decode(encode(s)) is not s:
            bad_sets += 1
    ok = not bad_codes and not bad_sets
    return _finish(1, "Ackermann bijection", 10, t0, ok,
                   f"{len(bad_codes)} code failures of 65536, {bad_sets} set failures of {len(masks)}")


# -- 2 ----------------------------------------------------------------------

def _all_digraphs(n: int):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(pairs)):
        yield Digraph(tuple(range(n)), frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def random_dag(rng: random.Random, n: int, density: float) -> Digraph:
    """Random DAG on ``0..n-1`` with a shuffled hidden topological order."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    return Digraph(tuple(range(n)), frozenset(edges))


def _realization_failures(g: Digraph) -> int:
    pi = realize_as_set(g).vertex_map
    bad = 0
    if len({pi[v] for v in g.vertices}) != len(g):
        bad += 1
    for w in g.vertices:
        for v in g.vertices:
            if g.has_edge(w, v) != (pi[w] in pi[v]):
                bad += 1
    return bad


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    graphs = [g for n in range(4) for g in _all_digraphs(n) if is_acyclic(g)]
    exhaustive = len(graphs)
    rng = random.Random(seed)
    for _ in range(500):
        graphs.append(random_dag(rng, rng.randint(1, 5), rng.random()))
    failures = sum(_realization_failures(g) for g in graphs)
    return _finish(2, "Digraph realization as HF sets", 30, t0, failures == 0,
                   f"{failures} failures over {exhaustive} exhaustive + 500 random DAGs")


# -- 3 ----------------------------------------------------------------------

def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    n = 1 << 12
    sets = [decode(c) for c in range(n)]
    images = [j_embed(x) for x in sets]
    inverse = {y: c for c, y in enumerate(images)}
    fixed = sum(1 for x, y in zip(sets, images) if x is y)
    mismatched = 0
    for c, y in enumerate(images):
        # bit i set iff j(decode(i)) is a member of j(decode(c))
        mask = 0
        for z in y.elements:
            i = inverse.get(z)
            if i is not None:
                mask |= 1 << i
        if mask != c:
            mismatched += 1
    ok = fixed == 0 and mismatched == 0 and len(inverse) == n
    return _finish(3, "Tagged self-embedding of HF", 30, t0, ok,
                   f"{fixed} fixed points, {mismatched} membership mismatches, "
                   f"{n - len(inverse)} collisions over {n} sets")


# -- 4 ----------------------------------------------------------------------

def _random_query(rng: random.Random, u: GenerativeUniverse, max_each: int, max_total: int) -> PatternQuery:
    alpha = Fraction(rng.randint(-30, 30), rng.randint(1, 4))
    lower = [v for v in u.minted if u.value_of[v] < alpha]
    higher = [v for v in u.minted if u.value_of[v] > alpha]
    A = rng.sample(lower, min(len(lower), rng.randint(0, max_each)))
    B = rng.sample(higher, min(len(higher), rng.randint(0, max_each)))
    rest = [v for v in u.minted if v not in A and v not in B]
    C = rng.sample(rest, min(len(rest), rng.randint(0, max_each)))
    while len(A) + len(B) + len(C) > max_total:
        for part in (C, B, A):
            if part and len(A) + len(B) + len(C) > max_total:
                part.pop()
    return PatternQuery(A, B, C, alpha)


def _answer_ok(u: GenerativeUniverse, q: PatternQuery, v) -> bool:
    return u.value_of[v] == q.alpha and v not in q.members and u.matches(q, v)


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    record = {"generic": [], "random": []}
    u = GenerativeUniverse("generic", seed=seed)
    for _ in range(40):
        u.extend()
    gen_fail = 0
    for _ in range(1000):
        q = _random_query(rng, u, 4, 12)
        v = u.find_pattern_vertex(q)
        gen_fail += not _answer_ok(u, q, v)
        record["generic"].append([sorted(q.A), sorted(q.B), sorted(q.C), str(q.alpha), v])
    rnd_fail = 0
    for i in range(1000):
        r = GenerativeUniverse("random", seed=seed * 1000 + i, sampler="rejection")
        for _ in range(12):
            r.extend()
        q = _random_query(rng, r, 3, 5)
        try:
            v = r.find_pattern_vertex(q)
        except RetryExhausted:
            rnd_fail += 1
            record["random"].append(None)
            continue
        rnd_fail += not _answer_ok(r, q, v)
        record["random"].append([sorted(q.A), sorted(q.B), sorted(q.C), str(q.alpha), v])
    return _finish(4, "Finite-pattern oracle", 10, t0, gen_fail == 0 and rnd_fail == 0,
                   f"generic {gen_fail}/1000 failed, random {rnd_fail}/1000 failed",
                   _canon(record))


# -- 5 ----------------------------------------------------------------------

def brute_force_type_count(values: list[Fraction], adj=None) -> int:
    """Distinct one-vertex extension types, found by sampling a fine value grid.

    A type is the new value's comparison pattern against every old vertex
    plus the in/out neighbour sets allowed by the grading. Independent of
    the stage builder's level bookkeeping.
    """
    n = len(values)
    if n:
        lo, hi = min(values) - 2, max(values) + 2
        grid = {lo + Fraction(k, 8) for k in range(int((hi - lo) * 8) + 1)}
    else:
        grid = {Fraction(0)}
    seen = set()
    for p in grid:
        sig = tuple((p > q) - (p < q) for q in values)
        lower = [i for i in range(n) if sig[i] > 0]
        higher = [i for i in range(n) if sig[i] < 0]
        for ins in range(1 << len(lower)):
            for outs in range(1 << len(higher)):
                seen.add((sig, ins, outs))
    return len(seen)


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    sizes = [len(build_stage(n).graph.vertices) for n in range(3)]
    g1 = build_stage(1).graph
    oracle = [0, brute_force_type_count([]), 1 + brute_force_type_count([g1.value(v) for v in g1.vertices])]
    ok = sizes == [0, 1, 6] and oracle == [0, 1, 6]
    return _finish(5, "Stagewise construction sizes", None, t0, ok,
                   f"stages {sizes}, brute-force {oracle}, expected [0, 1, 6]")


# -- 6 ----------------------------------------------------------------------

def random_graded_dag(rng: random.Random, n: int, density: float) -> GradedDigraph:
    """Random DAG with random (possibly tied) rational values; edges only go up."""
    vals = sorted(Fraction(rng.randint(0, 60), rng.randint(1, 3)) for _ in range(n))
    perm = list(range(n))
    rng.shuffle(perm)
    value = {perm[i]: vals[i] for i in range(n)}
    edges = {(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n)
             if vals[i] < vals[j] and rng.random() < density}
    return GradedDigraph(Digraph(tuple(range(n)), frozenset(edges)), Grading(value))


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    failures = 0
    record = []
    for i in range(100):
        g = random_graded_dag(rng, 30, 0.3)
        u = GenerativeUniverse("generic", seed=seed + i)
        try:
            w = forth_embed(g, u, VALUE_EXACT)
            ok = verify_embedding(w, u)
        except AssertionError:
            ok, w = False, None
        failures += not ok
        record.append(None if w is None else [w.map[v] for v in g.vertices])
    return _finish(6, "Universality via forth embedding", 20, t0, failures == 0,
                   f"{failures}/100 DAGs (30 vertices, density 0.3) failed", _canon(record))


# -- 7 ----------------------------------------------------------------------

def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    pairings = {
        "generic/generic": (GenerativeUniverse("generic", seed=seed), GenerativeUniverse("generic", seed=seed + 1)),
        "generic/random": (GenerativeUniverse("generic", seed=seed), GenerativeUniverse("random", seed=seed)),
        "random/random": (GenerativeUniverse("random", seed=seed), GenerativeUniverse("random", seed=seed + 1)),
    }
    failed = []
    record = {}
    for name, (u1, u2) in pairings.items():
        iso = back_and_forth(u1, u2, 50)
        fwd, bwd = partial_iso_witnesses(u1, u2, iso)
        covered = set(u1.minted[:50]) <= set(iso) and set(u2.minted[:50]) <= set(iso.values())
        if not (verify_embedding(fwd, u2) and verify_embedding(bwd, u1) and covered):
            failed.append(name)
        record[name] = sorted(iso.items())
    return _finish(7, "Back-and-forth to depth 50", 20, t0, not failed,
                   f"{3 - len(failed)}/3 pairings verified" + (f" (failed: {', '.join(failed)})" if failed else ""),
                   _canon(record))


# -- 8 ----------------------------------------------------------------------

def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    universes = [GenerativeUniverse("random", seed=seed), GenerativeUniverse("generic", seed=seed)]
    for u in universes:
        for _ in range(40):
            u.extend()
    failures = 0
    record = []
    for i in range(500):
        u = universes[i % 2]
        pool = rng.sample(u.minted, rng.randint(0, 10))
        k = rng.randint(0, len(pool))
        A, C = pool[:k], pool[k:]
        v = rado_extension_check(u, A, C)
        ok = (v not in pool and all(u.adjacent(v, a) for a in A)
              and not any(u.adjacent(v, c) for c in C))
        failures += not ok
        record.append(v)
    return _finish(8, "Undirected extension property", 10, t0, failures == 0,
                   f"{failures}/500 instances failed", _canon(record))


# -- 9 ----------------------------------------------------------------------

def _induced_paths(g: Digraph):
    for a, b in g.edges:
        for c in g.successors[b]:
            if c != a and not g.has_edge(a, c) and not g.has_edge(c, a):
                yield a, b, c


def _upper_triangular(n: int):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        yield Digraph(tuple(range(n)), frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    family = [g for n in range(3, 6) for g in _upper_triangular(n)]
    family += [random_dag(rng, 6, rng.random()) for _ in range(500)]
    family = [g for g in family if next(_induced_paths(g), None) is not None]
    bad = 0
    for g in family:
        autos = automorphisms(g)
        for a, _, c in _induced_paths(g):
            bad += sum(1 for s in autos if s[a] == c)
    ok = bad == 0 and len(family) >= 200
    return _finish(9, "No automorphism moves a path's tail to its head", 30, t0, ok,
                   f"{bad} offending automorphisms over {len(family)} graphs")


# -- 10 ---------------------------------------------------------------------

def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    sizes = [len(born_by(n)) for n in range(4)]
    expected = [2 ** (n + 1) - 1 for n in range(4)]
    reps = born_by(3)
    pool = list({t for t in reps} | set(terms_by(2)))
    not_total = sum(1 for x in pool for y in pool if not (leq(x, y) or leq(y, x)))
    not_trans = sum(1 for x in pool for y in pool if leq(x, y)
                    for z in pool if leq(y, z) and not leq(x, z))
    distinct = len({dyadic_value(t) for t in reps}) == len(reps)
    redundant = sum(1 for i, x in enumerate(reps) for y in reps[i + 1:] if equivalent(x, y))
    ok = sizes == expected and not not_total and not not_trans and distinct and not redundant
    return _finish(10, "Surreal counts and order laws", 60, t0, ok,
                   f"sizes {sizes} (expected {expected}), {not_total} incomparable pairs, "
                   f"{not_trans} transitivity violations over {len(pool)} terms")


# -- 11 ---------------------------------------------------------------------

def criterion_11(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    stages = [hypnagogic_stage(d) for d in range(3)]
    counts = [len(s.nodes) for s in stages]
    graded = all(s.satisfies_grading() and is_acyclic(s.graph().digraph) for s in stages)
    ok = counts[:2] == [1, 3] and graded
    return _finish(11, "Hypnagogic stages", None, t0, ok,
                   f"node counts {counts}, grading invariant {'holds' if graded else 'fails'}")


# -- 12 ---------------------------------------------------------------------

def random_hf_set(rng: random.Random, max_tc: int = 40) -> HfSet:
    """Random HF set whose transitive closure has at most ``max_tc`` elements."""
    target = rng.randint(1, max_tc)
    pool = [HfSet()]
    seen = set(pool)
    while len(pool) < target:
        x = HfSet(rng.sample(pool, rng.randint(1, min(5, len(pool)))))
        if x not in seen:
            seen.add(x)
            pool.append(x)
    s = HfSet([pool[-1]] + rng.sample(pool, rng.randint(0, len(pool))))
    assert len(transitive_closure(s)) <= max_tc
    return s


def criterion_12(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    failures = 0
    record = []
    for i in range(50):
        s = random_hf_set(rng)
        mode = "generic" if i % 2 == 0 else "random"
        demo = membership_demo(s, mode=mode, seed=seed + i)
        failures += not demo.verified
        record.append([digest(s), mode,
                       [[digest(x), digest(demo.composite[x])] for x in demo.vertices]])
    return _finish(12, "Membership digraph -> surrogate -> tagged collapse", 60, t0,
                   failures == 0, f"{failures}/50 sets failed", _canon(record))


# -- 13 ---------------------------------------------------------------------

DETERMINISTIC = (4, 5, 6, 7, 8, 12)
ARTIFACT_CRITERIA = (4, 6, 7, 8, 12)


def criterion_13(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.perf_counter()
    differing = []
    digests = {}
    for n in ARTIFACT_CRITERIA:
        fn = CRITERIA[n]
        a, b = fn(seed).artifact, fn(seed).artifact
        da, db = hashlib.sha256(a).hexdigest(), hashlib.sha256(b).hexdigest()
        digests[n] = da
        if da != db:
            differing.append(n)
    detail = ", ".join(f"{n}:{digests[n][:12]}" for n in ARTIFACT_CRITERIA)
    return _finish(13, "Determinism of artifacts", None, t0, not differing,
                   (f"differing: {differing}; " if differing else "identical sha256 ") + detail)


CRITERIA: dict[int, Callable[[int], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
    11: criterion_11, 12: criterion_12, 13: criterion_13,
}


def run_all(seed: int = DEFAULT_SEED, only: Optional[list[int]] = None, echo: Optional[Callable] = None):
    results = []
    for n in sorted(only or CRITERIA):
        r = CRITERIA[n](seed)
        results.append(r)
        if echo is not None:
            echo(r.line())
    return results
