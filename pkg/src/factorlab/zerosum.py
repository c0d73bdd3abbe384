"""Sequences over a finite abelian group and the monoid of zero-sum sequences.

A sequence is a multiset of group elements, written multiplicatively.  Atoms
of the zero-sum monoid are the minimal zero-sum sequences; every zero-sum
sequence factors (non-uniquely) into atoms, and the lengths of these
factorizations are what this module measures.

All enumerations are deterministic: elements are ordered lexicographically by
coordinates, sequences are stored in that order, and atoms are listed by
length and then lexicographically.

>>> G = parse_group("3")
>>> S = parse_sequence(G, "(1)^3*(2)^3")
>>> table = enumerate_atoms(G, 3)
>>> lengths_zs(S, table)
(2, 3)
"""

from __future__ import annotations

import json
import os
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .abelian import FiniteAbelianGroup, GroupElement, enumerate_elements, format_element, parse_element
from .errors import BudgetExceeded
from .factor_core import CategoryOracle

DEFAULT_NODE_BUDGET = 5_000_000
DAVENPORT_ORDER_CAP = 256
DEFAULT_FACTORIZATION_CAP = 10**5
CACHE_ENV = "FACTORLAB_CACHE"
DEFAULT_CACHE_DIR = ".factorlab-cache"


@dataclass(frozen=True)
class ZsSequence:
    """Multiset of elements of ``group``.

    ``counts`` holds ``(coords, multiplicity)`` pairs sorted by coordinates;
    ``length`` and ``sum`` are cached at construction.
    """

    group: FiniteAbelianGroup
    counts: tuple[tuple[tuple[int, ...], int], ...] = ()
    length: int = field(init=False, compare=False)
    sum: GroupElement = field(init=False, compare=False)

    def __post_init__(self):
        merged = Counter()
        for coords, mult in self.counts:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                merged[self.group.element(coords).coords] += mult
        counts = tuple(sorted(merged.items()))
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "length", sum(m for _, m in counts))
        total = self.group.zero()
        for coords, mult in counts:
            total = total + GroupElement(self.group, coords) * mult
        object.__setattr__(self, "sum", total)

    @classmethod
    def from_elements(cls, group: FiniteAbelianGroup, elements: Iterable) -> ZsSequence:
        c = Counter(e.coords if isinstance(e, GroupElement) else tuple(e) for e in elements)
        return cls(group, tuple(c.items()))

    @classmethod
    def from_multiplicities(cls, group: FiniteAbelianGroup, mult: Mapping) -> ZsSequence:
        return cls(group, tuple((e.coords if isinstance(e, GroupElement) else tuple(e), m) for e, m in mult.items()))

    @property
    def multiplicity(self) -> dict[GroupElement, int]:
        return {GroupElement(self.group, c): m for c, m in self.counts}

    def elements(self) -> list[GroupElement]:
        """Elements with repetition, in canonical order."""
        return [GroupElement(self.group, c) for c, m in self.counts for _ in range(m)]

    def support(self) -> list[GroupElement]:
        return [GroupElement(self.group, c) for c, _ in self.counts]

    def __len__(self):
        return self.length

    def __mul__(self, other: ZsSequence) -> ZsSequence:
        if other.group != self.group:
            raise ValueError("sequences over different groups")
        return ZsSequence(self.group, self.counts + other.counts)

    def divides(self, other: ZsSequence) -> bool:
        mine = dict(other.counts)
        return all(mine.get(c, 0) >= m for c, m in self.counts)

    def __truediv__(self, other: ZsSequence) -> ZsSequence:
        if not other.divides(self):
            raise ValueError("not a subsequence")
        rest = Counter(dict(self.counts))
        rest.subtract(dict(other.counts))
        return ZsSequence(self.group, tuple(rest.items()))

    def __str__(self):
        return format_sequence(self)


def format_sequence(S: ZsSequence) -> str:
    """``"(1)^3*(2)^3"``; the empty sequence is ``"1"``."""
    if not S.counts:
        return "1"
    parts = []
    for coords, m in S.counts:
        lit = format_element(GroupElement(S.group, coords))
        parts.append(lit if m == 1 else f"{lit}^{m}")
    return "*".join(parts)


_SEQ_TERM = re.compile(r"\(([^()]*)\)(?:\^(\d+))?")


def parse_sequence(G: FiniteAbelianGroup, text: str) -> ZsSequence:
    """Inverse of :func:`format_sequence`; separators between terms are optional."""
    text = text.strip()
    if text in ("", "1"):
        return ZsSequence(G)
    counts = Counter()
    pos = 0
    for m in _SEQ_TERM.finditer(text):
        if text[pos:m.start()].strip(" *.,") != "":
            raise ValueError(f"bad sequence literal {text!r}")
        counts[parse_element(G, f"({m.group(1)})").coords] += int(m.group(2) or 1)
        pos = m.end()
    if pos == 0 or text[pos:].strip(" *.,"):
        raise ValueError(f"bad sequence literal {text!r}")
    return ZsSequence(G, tuple(counts.items()))


def sigma(S: ZsSequence) -> GroupElement:
    """Sum of the sequence's elements, with multiplicity."""
    return S.sum


def is_atom(S: ZsSequence) -> bool:
    """True iff ``S`` is a nonempty zero-sum sequence with no proper nonempty zero-sum subsequence."""
    if S.length == 0 or not S.sum.is_zero():
        return False
    G = S.group
    # reachable (subsum, size) pairs over sub-multisets
    reach = {(G.zero(), 0)}
    for coords, mult in S.counts:
        g = GroupElement(G, coords)
        step = set()
        for s, k in reach:
            acc = s
            for j in range(mult + 1):
                step.add((acc, k + j))
                acc = acc + g
        reach = step
    return not any(s.is_zero() and 0 < k < S.length for s, k in reach)


class _Indexed:
    """Elements of a support set numbered ``0..n-1`` in lexicographic order."""

    def __init__(self, G: FiniteAbelianGroup, support=None):
        self.group = G
        if support is None:
            elems = enumerate_elements(G)
        else:
            elems = sorted({G.element(e.coords if isinstance(e, GroupElement) else e) for e in support})
        self.elements = elems
        self.index = {e.coords: i for i, e in enumerate(elems)}

    def __len__(self):
        return len(self.elements)

    def to_vector(self, S: ZsSequence) -> tuple[int, ...]:
        vec = [0] * len(self.elements)
        for coords, m in S.counts:
            if coords not in self.index:
                raise ValueError(f"element {coords} outside the allowed support")
            vec[self.index[coords]] = m
        return tuple(vec)

    def from_vector(self, vec) -> ZsSequence:
        return ZsSequence(self.group, tuple((self.elements[i].coords, m) for i, m in enumerate(vec) if m))


@dataclass(frozen=True)
class AtomTable:
    """Minimal zero-sum sequences over ``support`` of length at most ``max_length``.

    ``complete`` is False only for partial tables attached to a
    :class:`BudgetExceeded`.  ``exhaustive`` records that no atom longer than
    ``max_length`` exists, i.e. ``max_length >= D(G_P)``.
    """

    group: FiniteAbelianGroup
    max_length: int
    atoms: tuple[ZsSequence, ...]
    complete: bool = True
    exhaustive: bool = False
    support: tuple[GroupElement, ...] | None = None
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __len__(self):
        return len(self.atoms)

    def __contains__(self, S):
        return S in set(self.atoms)

    @property
    def max_atom_length(self) -> int:
        return max((a.length for a in self.atoms), default=0)

    def _indexed(self) -> tuple[_Indexed, dict]:
        """Element numbering plus, per element index, the atoms (as sparse vectors) containing it."""
        if "idx" not in self._memo:
            ix = _Indexed(self.group, self.support)
            containing = {i: [] for i in range(len(ix))}
            for a in self.atoms:
                sparse = tuple((ix.index[c], m) for c, m in a.counts)
                for i, _ in sparse:
                    containing[i].append((a, sparse))
            self._memo["idx"] = (ix, containing)
        return self._memo["idx"]


def enumerate_atoms(G: FiniteAbelianGroup, max_length: int, support=None,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> AtomTable:
    """All minimal zero-sum sequences of length ``<= max_length`` over ``support`` (default: all of G).

    Walks zero-sum free sequences ``T`` in nondecreasing element order; ``T``
    closes to the atom ``T * (-sigma(T))`` exactly when ``-sigma(T)`` is not
    smaller than the largest element of ``T``, so every atom is produced once.
    """
    if max_length < 0:
        raise ValueError("max_length must be >= 0")
    ix = _Indexed(G, support)
    n = len(ix)
    elems = ix.elements
    found: list[tuple[int, tuple[int, ...]]] = []
    exhaustive = True
    nodes = 0

    def close(seq, total):
        nonlocal exhaustive
        j = ix.index.get((-total).coords)
        if j is not None and (not seq or j >= seq[-1]):
            if len(seq) + 1 <= max_length:
                found.append((len(seq) + 1, tuple(seq) + (j,)))
            else:
                exhaustive = False

    # explicit stack: (sequence of indices, running sum, set of nonempty subsums)
    stack = [((), G.zero(), frozenset())]
    while stack:
        seq, total, subsums = stack.pop()
        nodes += 1
        if nodes > node_budget:
            table = _make_table(G, max_length, ix, found, complete=False, exhaustive=False, support=support)
            raise BudgetExceeded(f"atom enumeration exceeded {node_budget} nodes", partial=table)
        close(seq, total)
        start = seq[-1] if seq else 0
        children = []
        for h in range(start, n):
            g = elems[h]
            if g.is_zero():
                continue
            new = {g} | subsums | {s + g for s in subsums}
            if G.zero() in new:
                continue
            if len(seq) + 1 > max_length - 1:
                # a zero-sum free sequence of length max_length would close to a longer atom
                exhaustive = False
                break
            children.append((seq + (h,), total + g, frozenset(new)))
        stack.extend(reversed(children))
    return _make_table(G, max_length, ix, found, complete=True, exhaustive=exhaustive, support=support)


def _make_table(G, max_length, ix, found, complete, exhaustive, support):
    found = sorted(set(found))
    atoms = tuple(ZsSequence.from_elements(G, (ix.elements[i] for i in seq)) for _, seq in found)
    supp = None if support is None else tuple(ix.elements)
    return AtomTable(G, max_length, atoms, complete=complete, exhaustive=exhaustive, support=supp)


def davenport_constant(G: FiniteAbelianGroup, support=None, cap: int = DAVENPORT_ORDER_CAP) -> int:
    """Largest length of a minimal zero-sum sequence over ``support`` (default G)."""
    if G.order > cap:
        raise BudgetExceeded(f"|G| = {G.order} exceeds Davenport cap {cap}")
    return _exhaustive_table(G, support).max_atom_length


def _exhaustive_table(G, support=None) -> AtomTable:
    # D(G) <= |G|, so this bound always suffices
    table = enumerate_atoms(G, max(G.order, 1), support=support)
    assert table.exhaustive
    return table


def _require_zero_sum(S: ZsSequence, table: AtomTable):
    if S.group != table.group:
        raise ValueError("sequence and atom table use different groups")
    if not S.sum.is_zero():
        raise ValueError(f"{format_sequence(S)} is not a zero-sum sequence")
    if not table.complete:
        raise ValueError("atom table is incomplete")
    if not table.exhaustive and table.max_length < S.length:
        raise ValueError(
            f"atom table bound {table.max_length} is below |S| = {S.length} and below D(G)"
        )


def factorizations_zs(S: ZsSequence, table: AtomTable,
                      cap: int = DEFAULT_FACTORIZATION_CAP) -> set[tuple[ZsSequence, ...]]:
    """All unordered factorizations of ``S`` into atoms, each a sorted tuple of atoms."""
    _require_zero_sum(S, table)
    ix, containing = table._indexed()
    memo = {}

    def rec(vec):
        if vec in memo:
            return memo[vec]
        first = next((i for i, m in enumerate(vec) if m), None)
        if first is None:
            return {()}
        out = set()
        for atom, sparse in containing[first]:
            if all(vec[i] >= m for i, m in sparse):
                rest = list(vec)
                for i, m in sparse:
                    rest[i] -= m
                for z in rec(tuple(rest)):
                    out.add(tuple(sorted(z + (atom,), key=_atom_key)))
                    if len(out) > cap:
                        raise BudgetExceeded(f"more than {cap} factorizations")
        memo[vec] = out
        return out

    return rec(ix.to_vector(S))


def _atom_key(a: ZsSequence):
    return (a.length, a.counts)


def lengths_zs(S: ZsSequence, table: AtomTable) -> tuple[int, ...]:
    """Sorted set of lengths of factorizations of ``S``."""
    _require_zero_sum(S, table)
    ix, _ = table._indexed()
    return tuple(sorted(_lengths_vec(table, ix.to_vector(S))))


def _lengths_vec(table: AtomTable, vec: tuple[int, ...]) -> frozenset:
    memo = table._memo.setdefault("lengths", {})
    _, containing = table._indexed()

    def rec(v):
        hit = memo.get(v)
        if hit is not None:
            return hit
        first = next((i for i, m in enumerate(v) if m), None)
        if first is None:
            res = frozenset({0})
        else:
            acc = set()
            for _, sparse in containing[first]:
                if all(v[i] >= m for i, m in sparse):
                    rest = list(v)
                    for i, m in sparse:
                        rest[i] -= m
                    acc.update(l + 1 for l in rec(tuple(rest)))
            res = frozenset(acc)
        memo[v] = res
        return res

    return rec(vec)


def distances(L: Iterable[int]) -> tuple[int, ...]:
    """Gaps between consecutive members of a set of lengths."""
    L = sorted(set(L))
    return tuple(sorted({b - a for a, b in zip(L, L[1:])}))


def distances_zs(S: ZsSequence, table: AtomTable) -> tuple[int, ...]:
    return distances(lengths_zs(S, table))


@dataclass(frozen=True)
class BoundedSet:
    """A set computed only over zero-sum sequences of length ``<= bound``.

    It under-approximates the invariant of the whole monoid.
    """

    values: tuple[int, ...]
    bound: int
    sequences_examined: int
    note: str = "bounded under-approximation"

    def __iter__(self):
        return iter(self.values)

    def __contains__(self, x):
        return x in self.values


def zero_sum_sequences(G: FiniteAbelianGroup, max_length: int, support=None):
    """Yield all zero-sum sequences of length ``<= max_length`` as count vectors over the indexed support."""
    ix = _Indexed(G, support)
    n = len(ix)
    elems = ix.elements

    def rec(i, remaining, total, vec):
        if i == n:
            if total.is_zero():
                yield tuple(vec)
            return
        g = elems[i]
        acc = total
        for m in range(remaining + 1):
            vec.append(m)
            yield from rec(i + 1, remaining - m, acc, vec)
            vec.pop()
            acc = acc + g

    return ix, rec(0, max_length, G.zero(), [])


def _default_bound(table: AtomTable) -> int:
    return 2 * max(table.max_atom_length, 1)


def _length_sets(G, length_bound, support, table):
    if table is None:
        table = _exhaustive_table(G, support)
    elif not (table.complete and table.exhaustive):
        raise ValueError("bounded invariants need an exhaustive atom table")
    if length_bound is None:
        length_bound = _default_bound(table)
    _, seqs = zero_sum_sequences(G, length_bound, table.support)
    return length_bound, [_lengths_vec(table, v) for v in seqs]


def monoid_delta(G: FiniteAbelianGroup, length_bound: int | None = None, support=None,
                 table: AtomTable | None = None) -> BoundedSet:
    """Union of the distance sets of all zero-sum sequences with ``|S| <= length_bound``."""
    bound, sets = _length_sets(G, length_bound, support, table)
    delta = set()
    for L in sets:
        delta.update(distances(L))
    return BoundedSet(tuple(sorted(delta)), bound, len(sets))


def union_k(G: FiniteAbelianGroup, k: int, length_bound: int | None = None, support=None,
            table: AtomTable | None = None) -> BoundedSet:
    """Union of the sets of lengths containing ``k``, over ``|S| <= length_bound``."""
    bound, sets = _length_sets(G, length_bound, support, table)
    out = set()
    for L in sets:
        if k in L:
            out.update(L)
    return BoundedSet(tuple(sorted(out)), bound, len(sets))


@dataclass(frozen=True)
class LengthClass:
    kind: str  # "singleton", "interval", "ap" or "other"
    difference: int | None = None


def classify_lengths(L: Iterable[int]) -> LengthClass:
    """Exact arithmetic-progression test for a finite set of lengths."""
    L = sorted(set(L))
    if not L:
        raise ValueError("empty set of lengths")
    if len(L) == 1:
        return LengthClass("singleton")
    gaps = {b - a for a, b in zip(L, L[1:])}
    if len(gaps) > 1:
        return LengthClass("other")
    d = gaps.pop()
    return LengthClass("interval", 1) if d == 1 else LengthClass("ap", d)


# --- atom cache -----------------------------------------------------------

def atom_table_to_json(table: AtomTable) -> dict:
    return {
        "group": table.group.literal(),
        "max_length": table.max_length,
        "complete": table.complete,
        "exhaustive": table.exhaustive,
        "atoms": [
            [[format_element(GroupElement(table.group, c)), m] for c, m in a.counts]
            for a in table.atoms
        ],
    }


def atom_table_from_json(data: dict) -> AtomTable:
    from .abelian import parse_group

    G = parse_group(data["group"])
    atoms = tuple(
        ZsSequence(G, tuple((parse_element(G, e).coords, int(m)) for e, m in atom))
        for atom in data["atoms"]
    )
    return AtomTable(G, int(data["max_length"]), atoms, complete=bool(data["complete"]),
                     exhaustive=bool(data.get("exhaustive", False)))


def cache_dir(path=None) -> Path:
    return Path(path or os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR)


def _cache_file(G: FiniteAbelianGroup, max_length: int, directory) -> Path:
    name = G.literal().replace(",", "-") or "trivial"
    return cache_dir(directory) / f"atoms_{name}_L{max_length}.json"


def cached_atom_table(G: FiniteAbelianGroup, max_length: int, directory=None) -> AtomTable:
    """Load the full-support atom table from the on-disk cache, computing and storing it on a miss."""
    path = _cache_file(G, max_length, directory)
    if path.exists():
        table = atom_table_from_json(json.loads(path.read_text()))
        if table.complete and table.group == G and table.max_length == max_length:
            return table
    table = enumerate_atoms(G, max_length)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(atom_table_to_json(table), sort_keys=True))
    tmp.replace(path)
    return table


class ZeroSumOracle(CategoryOracle):
    """The commutative monoid of zero-sum sequences, as an input to the generic factorization engine.

    It is reduced (the only unit is the empty sequence), so each atom
    dividing ``S`` is its own associate class.
    """

    def __init__(self, table: AtomTable):
        if not (table.complete and table.exhaustive):
            raise ValueError("need an exhaustive atom table")
        self.table = table
        self.one = ZsSequence(table.group)

    def objects(self):
        return [self.one]

    def source(self, x):
        return self.one

    def target(self, x):
        return self.one

    def compose(self, x, y):
        return x * y

    def is_unit(self, x):
        return x.length == 0

    def atom_left_divisors(self, S):
        return [(a, S / a) for a in self.table.atoms if a.divides(S)]

    def canonical_key(self, S):
        return S

    def size_measure(self, S):
        return S.length

