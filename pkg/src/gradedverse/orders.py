"""Exact rational values and the linear orders used as grading targets.

Rationals are :class:`fractions.Fraction`; everything here is exact, no
floating point ever enters a grading comparison.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .errors import NotOrdered, ParseError, Unsupported

Rational = Fraction


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def compare(a, b) -> Cmp:
    # Fraction comparison is already exact cross-multiplication.
    a, b = as_rational(a), as_rational(b)
    if a < b:
        return Cmp.LESS
    if a > b:
        return Cmp.GREATER
    return Cmp.EQUAL


def between(a, b) -> Fraction:
    """Midpoint of ``a < b``."""
    a, b = as_rational(a), as_rational(b)
    if not a < b:
        raise NotOrdered(f"between() needs a < b, got {a} and {b}")
    return (a + b) / 2


def fresh_outside(
    used: Iterable,
    position: str = "avoid",
    *,
    low=None,
    high=None,
) -> Fraction:
    """Return a rational that is not in ``used``.

    ``position`` is one of ``"below"``, ``"above"``, ``"between"`` (needs
    ``low < high``) or ``"avoid"``, which behaves like ``"above"``.
    """
    used = {as_rational(u) for u in used}
    if position == "below":
        return min(used) - 1 if used else Fraction(0)
    if position in ("above", "avoid"):
        return max(used) + 1 if used else Fraction(0)
    if position == "between":
        if low is None or high is None:
            raise TypeError("position='between' needs low and high")
        lo, hi = as_rational(low), as_rational(high)
        m = between(lo, hi)
        while m in used:
            hi = m
            m = between(lo, hi)
        return m
    raise ValueError(f"unknown position {position!r}")


def calkin_wilf() -> Iterator[Fraction]:
    """The positive rationals, each exactly once: 1, 1/2, 2, 1/3, 3/2, ..."""
    q = Fraction(1)
    while True:
        yield q
        q = 1 / (2 * math.floor(q) - q + 1)


def all_rationals() -> Iterator[Fraction]:
    """0, 1, -1, 1/2, -1/2, 2, -2, ... covering every rational once."""
    yield Fraction(0)
    for q in calkin_wilf():
        yield q
        yield -q


def cantor_unpair(k: int) -> tuple[int, int]:
    w = (math.isqrt(8 * k + 1) - 1) // 2
    t = w * (w + 1) // 2
    j = k - t
    return w - j, j


@dataclass(frozen=True)
class LinearOrder:
    """A computably presented linear order, viewed as a suborder of Q.

    ``kind`` is ``"rationals"``, ``"chain"`` (with ``size``), ``"naturals"``
    or ``"suborder"`` (membership given by ``predicate`` on rationals).
    """

    kind: str
    size: Optional[int] = None
    predicate: Optional[Callable[[Fraction], bool]] = field(default=None, compare=False)
    label: Optional[str] = None

    @classmethod
    def rationals(cls) -> "LinearOrder":
        return cls("rationals")

    @classmethod
    def chain(cls, n: int) -> "LinearOrder":
        if n < 1:
            raise ValueError("a finite chain needs at least one element")
        return cls("chain", size=n)

    @classmethod
    def naturals(cls) -> "LinearOrder":
        return cls("naturals")

    @classmethod
    def suborder(cls, predicate: Callable[[Fraction], bool], label: str = "sub") -> "LinearOrder":
        return cls("suborder", predicate=predicate, label=label)

    @classmethod
    def parse(cls, text: str) -> "LinearOrder":
        t = text.strip()
        if t == "Q":
            return cls.rationals()
        if t == "naturals":
            return cls.naturals()
        if t.startswith("chain:"):
            try:
                return cls.chain(int(t[len("chain:"):]))
            except ValueError as exc:
                raise ParseError(f"bad order {text!r}") from exc
        raise ParseError(f"unknown order {text!r}; expected Q, naturals or chain:N")

    def __str__(self) -> str:
        if self.kind == "rationals":
            return "Q"
        if self.kind == "chain":
            return f"chain:{self.size}"
        if self.kind == "naturals":
            return "naturals"
        return f"suborder:{self.label}"

    def contains(self, q) -> bool:
        q = as_rational(q)
        if self.kind == "rationals":
            return True
        if self.kind == "chain":
            return q.denominator == 1 and 0 <= q < self.size
        if self.kind == "naturals":
            return q.denominator == 1 and q >= 0
        return bool(self.predicate(q))

    def cmp(self, a, b) -> Cmp:
        return compare(a, b)

    def elements(self) -> Iterator[Fraction]:
        """Enumerate the order's elements (as rationals), each once."""
        if self.kind == "rationals":
            return all_rationals()
        if self.kind == "chain":
            return (Fraction(i) for i in range(self.size))
        if self.kind == "naturals":
            return (Fraction(i) for i in itertools.count())
        return (q for q in all_rationals() if self.predicate(q))

    def nth(self, i: int) -> Fraction:
        if self.kind == "chain":
            return Fraction(i % self.size)
        if self.kind == "naturals":
            return Fraction(i)
        return next(itertools.islice(self.elements(), i, None))

    def value_for_index(self, k: int) -> Fraction:
        """Value of the k-th enumerated vertex: every element recurs infinitely often."""
        i, _ = cantor_unpair(k)
        return self.nth(i)


def embed_order(order: LinearOrder) -> Callable[[int], Fraction]:
    """Order-preserving injection of a finite chain or the naturals into Q.

    Elements of a chain or of the naturals are given as indices 0, 1, 2, ...
    """
    if order.kind == "chain":
        n = order.size

        def embed_chain(i: int) -> Fraction:
            if not 0 <= i < n:
                raise ValueError(f"{i} is not in chain:{n}")
            return Fraction(i)

        return embed_chain
    if order.kind == "naturals":

        def embed_nat(i: int) -> Fraction:
            if i < 0:
                raise ValueError(f"{i} is not a natural number")
            return Fraction(i)

        return embed_nat
    raise Unsupported(f"no computable embedding available for {order}")
