"""Hereditarily finite sets and the Ackermann coding.

:class:`HfSet` values are interned: two structurally equal sets are the same
object, so equality and hashing are by identity. Elements are kept sorted by
Ackermann code, but the code itself is never needed for that: comparing two
codes only requires the largest element of the symmetric difference, which
recursion finds without materializing iterated exponentials.
"""
from __future__ import annotations

import functools
import hashlib
import threading
from typing import Iterable

from .digraph import Digraph, GradedDigraph, Grading
from .errors import ParseError

# Codes whose largest element has a code above this would need more than
# this many bits; refuse rather than exhaust memory.
MAX_CODE_BITS = 1 << 24


class CodeTooLarge(OverflowError):
    pass


_cmp_cache: dict = {}


def code_cmp(x: "HfSet", y: "HfSet") -> int:
    """Sign of ``encode(x) - encode(y)``, computed structurally."""
    if x is y:
        return 0
    key = (id(x), id(y))
    hit = _cmp_cache.get(key)
    if hit is not None:
        return hit
    if x.rank != y.rank:
        # a set of higher rank contains an element of rank >= the other's
        # rank, i.e. a bit above every bit of the other
        r = -1 if x.rank < y.rank else 1
    else:
        r = 0
        xs, ys = x.elements, y.elements
        i, j = len(xs) - 1, len(ys) - 1
        while True:
            if i < 0 and j < 0:
                break  # unreachable for distinct interned sets
            if i < 0:
                r = -1
                break
            if j < 0:
                r = 1
                break
            a, b = xs[i], ys[j]
            if a is not b:
                r = code_cmp(a, b)
                break
            i -= 1
            j -= 1
    _cmp_cache[key] = r
    _cmp_cache[(id(y), id(x))] = -r
    return r


_code_key = functools.cmp_to_key(code_cmp)


class HfSet:
    __slots__ = ("elements", "_members", "rank", "_code", "__weakref__")

    _table: dict = {}
    _lock = threading.Lock()

    def __new__(cls, elements: Iterable["HfSet"] = ()):
        elems = set(elements)
        for e in elems:
            if not isinstance(e, HfSet):
                raise TypeError(f"HF set members must be HfSet, got {type(e).__name__}")
        ordered = tuple(sorted(elems, key=_code_key))
        with cls._lock:
            found = cls._table.get(ordered)
            if found is not None:
                return found
            obj = object.__new__(cls)
            obj.elements = ordered
            obj._members = frozenset(ordered)
            obj.rank = 1 + max(e.rank for e in ordered) if ordered else 0
            obj._code = None
            cls._table[ordered] = obj
            return obj

    def __contains__(self, x) -> bool:
        return x in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __lt__(self, other: "HfSet") -> bool:
        return code_cmp(self, other) < 0

    def __le__(self, other: "HfSet") -> bool:
        return code_cmp(self, other) <= 0

    def __gt__(self, other: "HfSet") -> bool:
        return code_cmp(self, other) > 0

    def __ge__(self, other: "HfSet") -> bool:
        return code_cmp(self, other) >= 0

    def __reduce__(self):
        return (HfSet, (self.elements,))

    @property
    def code(self) -> int:
        return encode(self)

    def __str__(self) -> str:
        return format_set(self)

    def __repr__(self) -> str:
        return f"HfSet({format_set(self)})"


EMPTY = HfSet()



def hf(*elements: HfSet) -> HfSet:
    return HfSet(elements)


def encode(s: HfSet) -> int:
    """Ackermann code: the sum of ``2**encode(x)`` over members ``x``."""
    if s._code is not None:
        return s._code
    total = 0
    for e in s.elements:
        c = encode(e)
        if c > MAX_CODE_BITS:
            raise CodeTooLarge(f"Ackermann code of a rank-{s.rank} set is too large to materialize")
        total |= 1 << c
    s._code = total
    return total


def code_or_none(s: HfSet):
    try:
        return encode(s)
    except CodeTooLarge:
        return None


_decoded: dict = {0: EMPTY}


def decode(c: int) -> HfSet:
    """The set whose members are ``decode(n)`` for each set bit ``n`` of ``c``."""
    if c < 0:
        raise ValueError("Ackermann codes are non-negative")
    hit = _decoded.get(c)
    if hit is not None:
        return hit
    members = []
    n = 0
    rest = c
    while rest:
        if rest & 1:
            members.append(decode(n))
        rest >>= 1
        n += 1
    s = HfSet(members)
    s._code = c
    if c < 1 << 20:
        _decoded[c] = s
    return s


def rank(s: HfSet) -> int:
    return s.rank


def transitive_closure(s: HfSet) -> HfSet:
    seen = set()
    stack = list(s.elements)
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(x.elements)
    return HfSet(seen)


def is_transitive(s: HfSet) -> bool:
    return all(y in s for x in s for y in x)


def von_neumann(n: int) -> HfSet:
    """The finite ordinal ``n = {0, ..., n-1}``."""
    s = EMPTY
    for _ in range(n):
        s = HfSet(s.elements + (s,))
    return s


def membership_digraph(s: HfSet) -> GradedDigraph:
    """``TC(s) + {s}`` with ``x -> y`` iff ``x in y``, graded by rank."""
    verts = sorted(set(transitive_closure(s).elements) | {s}, key=_code_key)
    edges = frozenset((x, y) for y in verts for x in y.elements)
    return GradedDigraph(Digraph(tuple(verts), edges), Grading({v: v.rank for v in verts}))


def cumulative_level(n: int) -> list[HfSet]:
    """``V_n`` built structurally, in code order."""
    level = []
    for _ in range(n):
        nxt = []
        for mask in range(1 << len(level)):
            nxt.append(HfSet(level[i] for i in range(len(level)) if mask >> i & 1))
        level = sorted(nxt, key=_code_key)
    return level


_digests: dict = {}


def digest(s: HfSet) -> str:
    """Short structural fingerprint; stays small where the text form explodes."""
    hit = _digests.get(s)
    if hit is None:
        h = hashlib.sha256(b"{" + b",".join(digest(e).encode() for e in s.elements) + b"}")
        hit = h.hexdigest()[:32]
        _digests[s] = hit
    return hit


# -- text syntax -------------------------------------------------------------

def format_set(s: HfSet) -> str:
    memo: dict = {}

    def fmt(x: HfSet) -> str:
        hit = memo.get(x)
        if hit is None:
            hit = "{" + ",".join(fmt(e) for e in x.elements) + "}"
            memo[x] = hit
        return hit

    return fmt(s)


def parse_set(text: str) -> HfSet:
    """Parse ``{}``, ``{{},{{}}}`` etc. Whitespace is ignored; duplicates collapse."""
    src = "".join(text.split())
    pos = 0

    def parse() -> HfSet:
        nonlocal pos
        if pos >= len(src) or src[pos] != "{":
            raise ParseError(f"expected '{{' at offset {pos} in {text!r}")
        pos += 1
        members = []
        if pos < len(src) and src[pos] == "}":
            pos += 1
            return EMPTY
        while True:
            members.append(parse())
            if pos >= len(src):
                raise ParseError(f"unterminated set in {text!r}")
            if src[pos] == ",":
                pos += 1
                continue
            if src[pos] == "}":
                pos += 1
                return HfSet(members)
            raise ParseError(f"unexpected {src[pos]!r} at offset {pos} in {text!r}")

    # iterative depth is bounded by nesting; deep inputs are rare on a CLI
    result = parse()
    if pos != len(src):
        raise ParseError(f"trailing characters after offset {pos} in {text!r}")
    return result
