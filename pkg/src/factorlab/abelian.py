"""Finite abelian groups ``Z/n1 + ... + Z/nk`` and their elements.

Any list of moduli is accepted; no divisibility chain is imposed.  The empty
list is the trivial group.

>>> G = parse_group("2,4")
>>> a = G.element((1, 3))
>>> format_element(-a)
'(1,1)'
>>> element_order(a)
4
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from math import gcd, lcm, prod

from .errors import BudgetExceeded

MAX_MODULUS = 2**31
DEFAULT_ELEMENT_CAP = 10**6


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(n) for n in self.invariant_factors)
        for n in factors:
            if not 1 <= n <= MAX_MODULUS:
                raise ValueError(f"modulus {n} outside [1, 2^31]")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return lcm(*self.invariant_factors) if self.invariant_factors else 1

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def element(self, coords) -> GroupElement:
        """Element with the given coordinates, reduced modulo each factor."""
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return GroupElement(self, tuple(c % n for c, n in zip(coords, self.invariant_factors)))

    def literal(self) -> str:
        return ",".join(map(str, self.invariant_factors))

    def __str__(self):
        if not self.invariant_factors:
            return "C1"
        return "+".join(f"C{n}" for n in self.invariant_factors)


@dataclass(frozen=True, order=True)
class GroupElement:
    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.group.rank or any(
            not 0 <= c < n for c, n in zip(self.coords, self.group.invariant_factors)
        ):
            raise ValueError(f"coordinates {self.coords} are not reduced residues of {self.group}")

    def __add__(self, other: GroupElement) -> GroupElement:
        return add(self, other)

    def __neg__(self) -> GroupElement:
        return negate(self)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return add(self, negate(other))

    def __mul__(self, m: int) -> GroupElement:
        return scale(self, m)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return f"GroupElement({self.group.literal()!r}, {format_element(self)})"


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.group != b.group:
        raise ValueError(f"cannot add elements of {a.group} and {b.group}")
    n = a.group.invariant_factors
    return GroupElement(a.group, tuple((x + y) % m for x, y, m in zip(a.coords, b.coords, n)))


def negate(a: GroupElement) -> GroupElement:
    n = a.group.invariant_factors
    return GroupElement(a.group, tuple(-x % m for x, m in zip(a.coords, n)))


def scale(a: GroupElement, m: int) -> GroupElement:
    n = a.group.invariant_factors
    return GroupElement(a.group, tuple(x * m % k for x, k in zip(a.coords, n)))


def element_order(a: GroupElement) -> int:
    """Smallest ``m >= 1`` with ``m * a == 0``."""
    return lcm(1, *(n // gcd(n, x) for x, n in zip(a.coords, a.group.invariant_factors)))


def enumerate_elements(G: FiniteAbelianGroup, cap: int = DEFAULT_ELEMENT_CAP) -> list[GroupElement]:
    """All elements of ``G`` in lexicographic order of coordinates."""
    if G.order > cap:
        raise BudgetExceeded(f"|G| = {G.order} exceeds element cap {cap}")
    return [GroupElement(G, c) for c in product(*(range(n) for n in G.invariant_factors))]


_GROUP_RE = re.compile(r"^\s*(\d+\s*(,\s*\d+\s*)*)?$")
_ELEM_RE = re.compile(r"^\s*\(\s*(-?\d+\s*(,\s*-?\d+\s*)*)?,?\s*\)\s*$")


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse ``"n1,n2,...,nk"``; ``""`` is the trivial group."""
    if not _GROUP_RE.match(text):
        raise ValueError(f"bad group literal {text!r}")
    text = text.strip()
    return FiniteAbelianGroup(tuple(int(t) for t in text.split(",")) if text else ())


def parse_element(G: FiniteAbelianGroup, text: str) -> GroupElement:
    """Parse ``"(c1,...,ck)"``; coordinates are reduced into range."""
    m = _ELEM_RE.match(text)
    if not m:
        raise ValueError(f"bad element literal {text!r}")
    body = m.group(1)
    coords = tuple(int(t) for t in body.split(",")) if body else ()
    return G.element(coords)


def format_element(a: GroupElement) -> str:
    return "(" + ",".join(map(str, a.coords)) + ")"
