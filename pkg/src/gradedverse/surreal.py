"""Surreal-number terms ``{L | R}``, their comparison, and the hypnagogic digraph.

Terms are hash-consed and never quotiented: ``{0|}`` and ``{-1,0|}`` are
different objects that happen to be :func:`equivalent`. The hypnagogic stage
of a given day keeps every term as its own node.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .digraph import Digraph, GradedDigraph, Grading
from .errors import DayBoundExceeded, InvalidTerm, ParseError

BORN_BY_BOUND = 4
HYPNAGOGIC_BOUND = 2


class SurrealTerm:
    __slots__ = ("left", "right", "birthday", "_text", "__weakref__")

    _table: dict = {}
    _lock = threading.Lock()

    def __new__(cls, left: Iterable["SurrealTerm"] = (), right: Iterable["SurrealTerm"] = (),
                check: bool = True):
        L, R = frozenset(left), frozenset(right)
        key = (L, R)
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        if check:
            for x in L:
                for y in R:
                    if leq(y, x):
                        raise InvalidTerm(f"left option {x} is not below right option {y}")
        with cls._lock:
            hit = cls._table.get(key)
            if hit is not None:
                return hit
            obj = object.__new__(cls)
            obj.left = tuple(sorted(L, key=_order_key))
            obj.right = tuple(sorted(R, key=_order_key))
            obj.birthday = 1 + max(t.birthday for t in L | R) if L or R else 0
            obj._text = None
            cls._table[key] = obj
            return obj

    def __str__(self):
        if self._text is None:
            self._text = ("{" + ",".join(map(str, self.left)) + "|"
                          + ",".join(map(str, self.right)) + "}")
        return self._text

    def __repr__(self):
        return f"SurrealTerm({self})"

    def __reduce__(self):
        return (SurrealTerm, (self.left, self.right, False))


def _order_key(t: SurrealTerm):
    return (t.birthday, str(t))


ZERO = SurrealTerm()

_leq_memo: dict = {}


def leq(x: SurrealTerm, y: SurrealTerm) -> bool:
    """``x <= y`` unless some left option of x is >= y or some right option of y is <= x."""
    key = (id(x), id(y))
    hit = _leq_memo.get(key)
    if hit is not None:
        return hit
    r = (not any(leq(y, xl) for xl in x.left)
         and not any(leq(yr, x) for yr in y.right))
    _leq_memo[key] = r
    return r


def lt(x: SurrealTerm, y: SurrealTerm) -> bool:
    return not leq(y, x)


def equivalent(x: SurrealTerm, y: SurrealTerm) -> bool:
    return leq(x, y) and leq(y, x)


def pointwise_below(A: Iterable[SurrealTerm], B: Iterable[SurrealTerm]) -> bool:
    B = list(B)
    return all(lt(a, b) for a in A for b in B)


def _ordered_cuts(reps: list[SurrealTerm]) -> Iterator[tuple[tuple, tuple]]:
    # reps strictly increasing: (A, B) with every index of A below every index of B
    n = len(reps)
    for amask in range(1 << n):
        top = amask.bit_length()  # indices >= top are free for B
        A = tuple(reps[i] for i in range(n) if amask >> i & 1)
        free = reps[top:]
        for bmask in range(1 << len(free)):
            yield A, tuple(free[i] for i in range(len(free)) if bmask >> i & 1)


def _insert_class(classes: list[SurrealTerm], t: SurrealTerm) -> bool:
    lo, hi = 0, len(classes)
    while lo < hi:
        mid = (lo + hi) // 2
        c = classes[mid]
        below = leq(t, c)
        if below and leq(c, t):
            return False
        if below:
            hi = mid
        else:
            lo = mid + 1
    classes.insert(lo, t)
    return True


def born_by(day: int, bound: int = BORN_BY_BOUND) -> list[SurrealTerm]:
    """One first-born term per surreal value born by ``day``, in increasing order."""
    if day < 0:
        raise ValueError("day must be non-negative")
    if day > bound:
        raise DayBoundExceeded(f"day {day} exceeds the bound {bound}")
    reps = [ZERO]
    for _ in range(day):
        classes = list(reps)
        for A, B in _ordered_cuts(reps):
            _insert_class(classes, SurrealTerm(A, B, check=False))
        reps = classes
    return reps


def terms_by(day: int, bound: int = HYPNAGOGIC_BOUND) -> list[SurrealTerm]:
    """Every term of birthday <= ``day``, unquotiented."""
    if day < 0:
        raise ValueError("day must be non-negative")
    if day > bound:
        raise DayBoundExceeded(f"day {day} exceeds the bound {bound}")
    terms = [ZERO]
    for _ in range(day):
        prev = terms
        n = len(prev)
        out, seen = [], set()
        for amask in range(1 << n):
            A = [prev[i] for i in range(n) if amask >> i & 1]
            for bmask in range(1 << n):
                if amask & bmask:
                    continue
                B = [prev[i] for i in range(n) if bmask >> i & 1]
                if not pointwise_below(A, B):
                    continue
                t = SurrealTerm(A, B, check=False)
                if t not in seen:
                    seen.add(t)
                    out.append(t)
        terms = sorted(out, key=_order_key)
    return terms


@dataclass(frozen=True)
class HypnagogicStage:
    day: int
    nodes: tuple
    edges: frozenset

    def graph(self) -> GradedDigraph:
        g = Digraph(self.nodes, self.edges)
        return GradedDigraph(g, Grading({t: dyadic_value(t) for t in self.nodes}))

    def satisfies_grading(self) -> bool:
        return all(lt(a, b) for a, b in self.edges)


def hypnagogic_stage(day: int, bound: int = HYPNAGOGIC_BOUND) -> HypnagogicStage:
    nodes = tuple(terms_by(day, bound))
    edges = set()
    for v in nodes:
        edges.update((a, v) for a in v.left)
        edges.update((v, b) for b in v.right)
    return HypnagogicStage(day, nodes, frozenset(edges))


# -- numeric values and text syntax -----------------------------------------

def _simplest_between(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return Fraction(0)
    if hi is not None and hi <= 0:
        return -_simplest_between(-hi, None if lo is None else -lo)
    n = math.floor(lo) + 1
    if hi is None or n < hi:
        return Fraction(n)
    k = 1
    while True:
        m = math.floor(lo * 2**k) + 1
        q = Fraction(m, 2**k)
        if q < hi:
            return q
        k += 1


_values: dict = {}


def dyadic_value(t: SurrealTerm) -> Fraction:
    """The dyadic rational a finite-birthday term denotes (simplicity rule)."""
    hit = _values.get(t)
    if hit is not None:
        return hit
    lo = max((dyadic_value(a) for a in t.left), default=None)
    hi = min((dyadic_value(b) for b in t.right), default=None)
    if lo is not None and hi is not None and not lo < hi:
        raise InvalidTerm(f"{t} has no value: {lo} >= {hi}")
    v = _simplest_between(lo, hi)
    _values[t] = v
    return v


def parse_term(text: str) -> SurrealTerm:
    """Parse ``{|}``, ``{{|}|}``, ``{{|},{{|}|}|{|{|}}}`` ..."""
    src = "".join(text.split())
    pos = 0

    def options(stop: str) -> list:
        nonlocal pos
        out = []
        if pos < len(src) and src[pos] == stop:
            return out
        while True:
            out.append(term())
            if pos < len(src) and src[pos] == ",":
                pos += 1
                continue
            return out

    def term() -> SurrealTerm:
        nonlocal pos
        if pos >= len(src) or src[pos] != "{":
            raise ParseError(f"expected '{{' at offset {pos} in {text!r}")
        pos += 1
        L = options("|")
        if pos >= len(src) or src[pos] != "|":
            raise ParseError(f"expected '|' at offset {pos} in {text!r}")
        pos += 1
        R = options("}")
        if pos >= len(src) or src[pos] != "}":
            raise ParseError(f"expected '}}' at offset {pos} in {text!r}")
        pos += 1
        return SurrealTerm(L, R)

    t = term()
    if pos != len(src):
        raise ParseError(f"trailing characters after offset {pos} in {text!r}")
    return t
