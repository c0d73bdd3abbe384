import json

import pytest
from hypothesis import given, settings, strategies as st

from factorlab import factor_core
from factorlab.abelian import parse_group
from factorlab.errors import BudgetExceeded
from factorlab.zerosum import (
    AtomTable,
    ZeroSumOracle,
    ZsSequence,
    atom_table_from_json,
    atom_table_to_json,
    cached_atom_table,
    classify_lengths,
    davenport_constant,
    distances_zs,
    enumerate_atoms,
    factorizations_zs,
    format_sequence,
    is_atom,
    lengths_zs,
    monoid_delta,
    parse_sequence,
    sigma,
    union_k,
)

from oracles import davenport, minimal_zero_sum_sequences, zero_sum_factorizations


def seq(group, text):
    return parse_sequence(parse_group(group), text)


def as_tuples(S):
    return tuple(c for c, m in S.counts for _ in range(m))


# frozen from the brute-force oracle (tests/oracles.py)
ORACLE_ATOM_COUNTS = {"2": 2, "3": 4, "2,2": 5, "4": 7}


def test_oracle_atom_counts_frozen():
    for lit, count in ORACLE_ATOM_COUNTS.items():
        G = parse_group(lit)
        assert len(minimal_zero_sum_sequences(G.invariant_factors, 4)) == count


def test_sigma_examples():
    assert sigma(ZsSequence(parse_group("3"))).is_zero()
    assert sigma(seq("3", "(1)*(2)")).is_zero()
    assert sigma(seq("2,2", "(1,0)*(0,1)*(1,1)")).is_zero()
    assert sigma(seq("5", "(1)^3")).coords == (3,)


def test_is_atom_examples():
    assert is_atom(seq("2", "(1)^2"))
    assert not is_atom(seq("3", "(1)^3*(2)^3"))
    assert not is_atom(seq("4", "(0)*(1)*(3)"))
    assert not is_atom(seq("4", "(0)^2"))
    assert is_atom(seq("4", "(0)"))
    assert not is_atom(ZsSequence(parse_group("4")))
    assert not is_atom(seq("4", "(1)^2"))


def test_enumerate_atoms_examples():
    t = enumerate_atoms(parse_group("2"), 4)
    assert [format_sequence(a) for a in t.atoms] == ["(0)", "(1)^2"]
    t = enumerate_atoms(parse_group("2,2"), 4)
    assert len(t) == 5
    assert seq("2,2", "(1,0)*(0,1)*(1,1)") in t
    t = enumerate_atoms(parse_group("3"), 4)
    assert [format_sequence(a) for a in t.atoms] == ["(0)", "(1)*(2)", "(1)^3", "(2)^3"]


@pytest.mark.parametrize("lit", ["", "2", "3", "4", "5", "2,2", "6", "2,3", "7", "8", "3,3", "2,4"])
def test_enumerate_atoms_matches_bruteforce(lit):
    G = parse_group(lit)
    bound = min(max(G.order, 1), 6)
    table = enumerate_atoms(G, bound)
    got = sorted(as_tuples(a) for a in table.atoms)
    want = sorted(minimal_zero_sum_sequences(G.invariant_factors, bound))
    assert got == want
    lengths = [a.length for a in table.atoms]
    assert lengths == sorted(lengths)
    assert len(set(table.atoms)) == len(table.atoms)
    assert all(is_atom(a) for a in table.atoms)


def test_exhaustive_flag():
    assert not enumerate_atoms(parse_group("3"), 2).exhaustive
    assert enumerate_atoms(parse_group("3"), 3).exhaustive
    assert not enumerate_atoms(parse_group("2"), 0).exhaustive


def test_budget_returns_partial_table():
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_atoms(parse_group("3,3"), 5, node_budget=10)
    partial = exc.value.partial
    assert isinstance(partial, AtomTable) and not partial.complete
    full = set(enumerate_atoms(parse_group("3,3"), 5).atoms)
    assert set(partial.atoms) <= full


@pytest.mark.parametrize("n", range(1, 9))
def test_davenport_cyclic(n):
    assert davenport_constant(parse_group(str(n))) == n


def test_davenport_examples():
    assert davenport_constant(parse_group("")) == 1
    assert davenport_constant(parse_group("2,2")) == 3
    # frozen from oracles.davenport
    for lit, d in {"2,4": 5, "2,2,2": 4}.items():
        assert davenport_constant(parse_group(lit)) == d == davenport(parse_group(lit).invariant_factors)
    with pytest.raises(BudgetExceeded):
        davenport_constant(parse_group("17,17"))


def test_restricted_support():
    G = parse_group("5")
    support = [G.element((1,)), G.element((4,))]
    table = enumerate_atoms(G, 5, support=support)
    assert [format_sequence(a) for a in table.atoms] == ["(1)*(4)", "(1)^5", "(4)^5"]
    assert davenport_constant(G, support=support) == 5
    d = monoid_delta(G, 10, support=support)
    assert d.values == (3,)


def test_factorizations_examples():
    G3 = parse_group("3")
    table = enumerate_atoms(G3, 3)
    assert factorizations_zs(ZsSequence(G3), table) == {()}
    got = {tuple(format_sequence(a) for a in z) for z in factorizations_zs(seq("3", "(1)^3*(2)^3"), table)}
    assert got == {("(1)^3", "(2)^3"), ("(1)*(2)", "(1)*(2)", "(1)*(2)")}
    G2 = parse_group("2")
    z = factorizations_zs(seq("2", "(1)^4"), enumerate_atoms(G2, 2))
    assert {tuple(map(format_sequence, f)) for f in z} == {("(1)^2", "(1)^2")}
    with pytest.raises(ValueError):
        factorizations_zs(seq("3", "(1)"), table)


def test_lengths_examples():
    t3 = enumerate_atoms(parse_group("3"), 3)
    S = seq("3", "(1)^3*(2)^3")
    assert lengths_zs(S, t3) == (2, 3) and distances_zs(S, t3) == (1,)
    for a in t3.atoms:
        assert lengths_zs(a, t3) == (1,) and distances_zs(a, t3) == ()
    t2 = enumerate_atoms(parse_group("2"), 2)
    assert lengths_zs(seq("2", "(1)^4"), t2) == (2,)
    assert distances_zs(seq("2", "(1)^4"), t2) == ()


def test_table_bound_too_small():
    t = enumerate_atoms(parse_group("3"), 2)
    with pytest.raises(ValueError):
        lengths_zs(seq("3", "(1)^3*(2)^3"), t)


@pytest.mark.parametrize("lit,text", [
    ("3", "(1)^3*(2)^3"), ("3", "(0)*(1)^4*(2)"), ("2,2", "(1,0)^2*(0,1)^2*(1,1)^2"),
    ("4", "(1)^2*(2)^2*(3)^2"), ("5", "(1)^5*(4)^5"), ("2,2", "(0,1)*(1,0)*(1,1)^3"),
])
def test_factorizations_match_partition_oracle(lit, text):
    G = parse_group(lit)
    S = parse_sequence(G, text)
    table = enumerate_atoms(G, davenport_constant(G))
    got = {tuple(sorted(as_tuples(a) for a in z)) for z in factorizations_zs(S, table)}
    want = zero_sum_factorizations(G.invariant_factors, as_tuples(S))
    assert got == want
    assert lengths_zs(S, table) == tuple(sorted({len(z) for z in want}))


def test_monoid_delta_and_union():
    d2 = monoid_delta(parse_group("2"), 12)
    assert d2.values == () and d2.bound == 12 and d2.note == "bounded under-approximation"
    assert monoid_delta(parse_group("3"), 12).values == (1,)
    u = union_k(parse_group("3"), 2, 12)
    assert {2, 3} <= set(u.values)
    # U_k is an interval (bounded computation, small k)
    assert u.values == tuple(range(u.values[0], u.values[-1] + 1))


def test_classify_lengths():
    assert classify_lengths({3}).kind == "singleton"
    c = classify_lengths([2, 3, 4])
    assert (c.kind, c.difference) == ("interval", 1)
    c = classify_lengths([8, 2, 5])
    assert (c.kind, c.difference) == ("ap", 3)
    assert classify_lengths([2, 3, 5]).kind == "other"
    with pytest.raises(ValueError):
        classify_lengths([])


def test_engine_agrees_with_zerosum_dfs():
    G = parse_group("2,2")
    table = enumerate_atoms(G, 3)
    oracle = ZeroSumOracle(table)
    from factorlab.zerosum import zero_sum_sequences

    ix, seqs = zero_sum_sequences(G, 6)
    for vec in seqs:
        S = ix.from_vector(vec)
        assert factor_core.lengths(S, oracle) == lengths_zs(S, table)


def test_json_roundtrip_and_cache(tmp_path, monkeypatch):
    G = parse_group("2,2")
    table = enumerate_atoms(G, 3)
    data = json.loads(json.dumps(atom_table_to_json(table)))
    assert set(data) >= {"group", "max_length", "complete", "atoms"}
    assert data["atoms"][-1] == [["(0,1)", 1], ["(1,0)", 1], ["(1,1)", 1]]
    back = atom_table_from_json(data)
    assert back.atoms == table.atoms and back.group == G and back.complete

    monkeypatch.setenv("FACTORLAB_CACHE", str(tmp_path / "env"))
    t1 = cached_atom_table(G, 3)
    files = list((tmp_path / "env").iterdir())
    assert [f.name for f in files] == ["atoms_2-2_L3.json"]
    t2 = cached_atom_table(G, 3)
    assert t1.atoms == t2.atoms == table.atoms
    cached_atom_table(parse_group(""), 1, tmp_path / "explicit")
    assert (tmp_path / "explicit" / "atoms_trivial_L1.json").exists()


def test_sequence_literals():
    G = parse_group("2,2")
    S = parse_sequence(G, "(1,1)^2 * (0,1)")
    assert format_sequence(S) == "(0,1)*(1,1)^2"
    assert parse_sequence(G, format_sequence(S)) == S
    assert format_sequence(ZsSequence(G)) == "1"
    with pytest.raises(ValueError):
        parse_sequence(G, "(1,1)x(0,1)")


zs_groups = st.sampled_from(["", "2", "3", "4", "2,2", "5", "6", "2,3"])


@st.composite
def zero_sum_seqs(draw, max_len=9):
    G = parse_group(draw(zs_groups))
    from factorlab.abelian import enumerate_elements

    elems = enumerate_elements(G)
    body = draw(st.lists(st.sampled_from(elems), max_size=max_len - 1))
    S = ZsSequence.from_elements(G, body)
    closing = -S.sum
    return ZsSequence.from_elements(G, body + [closing])


@settings(max_examples=60, deadline=None)
@given(zero_sum_seqs())
def test_length_bounds(S):
    G = S.group
    D = davenport_constant(G)
    table = enumerate_atoms(G, D)
    L = lengths_zs(S, table)
    assert L
    for l in L:
        assert l <= S.length <= l * D
    d = distances_zs(S, table)
    assert bool(d) == (len(L) > 1)
    assert sum(d) <= max(L) - min(L)


@settings(max_examples=40, deadline=None)
@given(zero_sum_seqs(6), st.data())
def test_lengths_superadditive(S, data):
    G = S.group
    from factorlab.abelian import enumerate_elements

    elems = enumerate_elements(G)
    body = data.draw(st.lists(st.sampled_from(elems), max_size=5))
    T0 = ZsSequence.from_elements(G, body)
    T = T0 * ZsSequence.from_elements(G, [-T0.sum])
    table = enumerate_atoms(G, davenport_constant(G))
    LST = set(lengths_zs(S * T, table))
    assert {s + t for s in lengths_zs(S, table) for t in lengths_zs(T, table)} <= LST


def test_half_factorial_boundary():
    from factorlab.zerosum import zero_sum_sequences

    for lit in ("", "2"):
        G = parse_group(lit)
        table = enumerate_atoms(G, davenport_constant(G))
        ix, seqs = zero_sum_sequences(G, 10)
        for vec in seqs:
            assert len(lengths_zs(ix.from_vector(vec), table)) == 1
    for lit in ("3", "2,2"):
        G = parse_group(lit)
        table = enumerate_atoms(G, davenport_constant(G))
        ix, seqs = zero_sum_sequences(G, 6)
        assert any(len(lengths_zs(ix.from_vector(v), table)) > 1 for v in seqs)


@pytest.mark.parametrize("lit,bound", [("3", 12), ("4", 10), ("2,2", 10), ("5", 10), ("6", 8)])
def test_min_delta_is_one(lit, bound):
    d = monoid_delta(parse_group(lit), bound)
    assert d.values and min(d.values) == 1
