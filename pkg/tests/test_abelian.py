import pytest
from hypothesis import given, strategies as st

from factorlab.abelian import (
    FiniteAbelianGroup,
    add,
    element_order,
    enumerate_elements,
    format_element,
    negate,
    parse_element,
    parse_group,
)
from factorlab.errors import BudgetExceeded

SMALL_GROUPS = ["", "1", "2", "3", "4", "6", "2,2", "2,4", "3,3", "2,2,2", "4,4", "8", "2,3", "2,2,2,2,2,2"]


def test_add_examples():
    C4 = parse_group("4")
    assert add(C4.element((3,)), C4.element((2,))) == C4.element((1,))
    V = parse_group("2,2")
    assert add(V.element((1, 0)), V.element((0, 1))) == V.element((1, 1))
    for g in enumerate_elements(V):
        assert g + V.zero() == g


def test_add_mismatched_groups():
    with pytest.raises(ValueError):
        add(parse_group("2").element((1,)), parse_group("3").element((1,)))


def test_negate_examples():
    assert negate(parse_group("5").element((2,))).coords == (3,)
    G = parse_group("2,4")
    assert negate(G.zero()) == G.zero()
    assert negate(G.element((1, 3))).coords == (1, 1)


def test_element_order_examples():
    assert element_order(parse_group("7").zero()) == 1
    assert element_order(parse_group("6").element((2,))) == 3
    assert element_order(parse_group("2,2").element((1, 1))) == 2


def test_enumerate_examples():
    assert [g.coords for g in enumerate_elements(parse_group(""))] == [()]
    assert [g.coords for g in enumerate_elements(parse_group("3"))] == [(0,), (1,), (2,)]
    assert len(enumerate_elements(parse_group("2,2"))) == 4


def test_enumerate_cap():
    with pytest.raises(BudgetExceeded):
        enumerate_elements(parse_group("1000,1001"))
    assert len(enumerate_elements(parse_group("10,10"), cap=100)) == 100


@pytest.mark.parametrize("lit", SMALL_GROUPS)
def test_group_laws_exhaustive(lit):
    G = parse_group(lit)
    elems = enumerate_elements(G)
    assert len(elems) == len(set(elems)) == G.order
    assert [g.coords for g in elems] == sorted(g.coords for g in elems)
    if G.order > 64:
        return
    for a in elems:
        assert negate(negate(a)) == a
        assert (a + negate(a)).is_zero()
        m = element_order(a)
        assert (a * m).is_zero() and G.order % m == 0
        assert all(not (a * k).is_zero() for k in range(1, m))
        for b in elems:
            assert a + b == b + a
            for c in elems[:8]:
                assert (a + b) + c == a + (b + c)


@given(st.lists(st.integers(1, 12), max_size=3), st.data())
def test_literals_roundtrip(factors, data):
    G = FiniteAbelianGroup(tuple(factors))
    assert parse_group(G.literal()) == G
    coords = tuple(data.draw(st.integers(0, n - 1)) for n in factors)
    g = G.element(coords)
    assert parse_element(G, format_element(g)) == g


def test_literal_errors():
    with pytest.raises(ValueError):
        parse_group("2;3")
    with pytest.raises(ValueError):
        parse_group("0")
    with pytest.raises(ValueError):
        parse_element(parse_group("2,2"), "(1)")
    assert parse_element(parse_group("5"), "(7)").coords == (2,)
