from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import assume, given, strategies as st

from conftest import rationals
from gradedverse.errors import NotOrdered, ParseError, Unsupported
from gradedverse.orders import (
    Cmp,
    LinearOrder,
    all_rationals,
    between,
    calkin_wilf,
    cantor_unpair,
    compare,
    embed_order,
    format_rational,
    fresh_outside,
    parse_rational,
)

F = Fraction


@pytest.mark.parametrize("a, b, expected", [
    (F(1, 2), F(2, 4), Cmp.EQUAL),
    (F(1, 3), F(1, 2), Cmp.LESS),
    (F(-5), F(0), Cmp.LESS),
    ("7/3", 2, Cmp.GREATER),
])
def test_compare(a, b, expected):
    assert compare(a, b) is expected


@pytest.mark.parametrize("a, b, mid", [(0, 1, F(1, 2)), (F(1, 3), F(1, 2), F(5, 12)), (0, F(1, 2), F(1, 4))])
def test_between_examples(a, b, mid):
    assert between(a, b) == mid


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (F(1, 2), F(1, 3))])
def test_between_rejects_unordered(a, b):
    with pytest.raises(NotOrdered):
        between(a, b)


@given(rationals, rationals)
def test_between_is_strictly_inside(a, b):
    assume(a < b)
    m = between(a, b)
    assert a < m < b


def test_fresh_outside_examples():
    assert fresh_outside({F(0), F(1)}, "below") == -1
    assert fresh_outside(set(), "below") == 0
    assert fresh_outside({F(0), F(1), F(1, 2)}, "between", low=0, high=1) == F(1, 4)
    assert fresh_outside({F(3)}, "above") == 4
    assert fresh_outside({F(3)}, "avoid") == 4


@given(st.sets(rationals, max_size=12), st.sampled_from(["below", "above", "avoid"]))
def test_fresh_outside_is_fresh(used, position):
    q = fresh_outside(used, position)
    assert q not in used
    if used and position == "below":
        assert q < min(used)
    if used and position in ("above", "avoid"):
        assert q > max(used)


@given(st.sets(rationals, max_size=12), rationals, rationals)
def test_fresh_between_is_fresh_and_inside(used, lo, hi):
    assume(lo < hi)
    q = fresh_outside(used, "between", low=lo, high=hi)
    assert q not in used and lo < q < hi


def test_fresh_outside_unknown_position():
    with pytest.raises(ValueError):
        fresh_outside({F(1)}, "sideways")


def test_rational_text_round_trip():
    for q in (F(0), F(3), F(-7, 2), F(5, 12)):
        assert parse_rational(format_rational(q)) == q
    assert format_rational(F(6, 4)) == "3/2"
    assert format_rational(F(-4)) == "-4"
    for bad in ("x", "1/0", "1/2/3", ""):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_calkin_wilf_prefix_and_uniqueness():
    head = list(islice(calkin_wilf(), 7))
    assert head == [F(1), F(1, 2), F(2), F(1, 3), F(3, 2), F(2, 3), F(3)]
    many = list(islice(all_rationals(), 2001))
    assert len(set(many)) == len(many)
    # every p/q with |p|, q <= 6 shows up early
    want = {F(p, q) for p in range(-6, 7) for q in range(1, 7)}
    assert want <= set(islice(all_rationals(), 20000))


def test_cantor_unpair_is_a_bijection_prefix():
    pairs = [cantor_unpair(k) for k in range(5050)]
    assert len(set(pairs)) == 5050
    assert {(i, j) for i in range(30) for j in range(30) if i + j < 100} <= set(pairs)


@pytest.mark.parametrize("order, elements", [
    (LinearOrder.chain(3), [F(0), F(1), F(2)]),
    (LinearOrder.chain(1), [F(0)]),
])
def test_embed_chain(order, elements):
    f = embed_order(order)
    assert [f(i) for i in range(order.size)] == elements
    with pytest.raises(ValueError):
        f(order.size)


def test_embed_naturals_identity_and_monotone():
    f = embed_order(LinearOrder.naturals())
    assert f(7) == 7
    assert all(f(i) < f(i + 1) for i in range(100))


def test_embed_order_rejects_dense_orders():
    with pytest.raises(Unsupported):
        embed_order(LinearOrder.rationals())
    with pytest.raises(Unsupported):
        embed_order(LinearOrder.suborder(lambda q: q > 0, "positive"))


def test_linear_order_parse_and_membership():
    assert str(LinearOrder.parse("Q")) == "Q"
    assert str(LinearOrder.parse("chain:4")) == "chain:4"
    assert str(LinearOrder.parse("naturals")) == "naturals"
    with pytest.raises(ParseError):
        LinearOrder.parse("reals")
    c = LinearOrder.chain(4)
    assert c.contains(3) and not c.contains(4) and not c.contains(F(1, 2))
    pos = LinearOrder.suborder(lambda q: q > 0, "pos")
    assert pos.contains(F(1, 9)) and not pos.contains(0)
    assert list(islice(pos.elements(), 3)) == [F(1), F(1, 2), F(2)]


def test_value_for_index_revisits_every_value():
    q = LinearOrder.rationals()
    seen = {}
    for k in range(2000):
        v = q.value_for_index(k)
        seen[v] = seen.get(v, 0) + 1
    assert seen[F(0)] >= 10 and seen[F(1)] >= 10
    c = LinearOrder.chain(2)
    assert {c.value_for_index(k) for k in range(50)} == {F(0), F(1)}
