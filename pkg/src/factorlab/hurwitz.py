"""Hurwitz quaternions: the maximal order Z<1, i, j, (1+i+j+k)/2>.

Elements are stored as ``num = (A, B, C, D)`` with a flag ``halved``; the
value is ``(A + Bi + Cj + Dk) / 2`` when halved (all of A..D odd) and
``A + Bi + Cj + Dk`` otherwise.  The ring is left and right norm-Euclidean,
hence every one-sided ideal is principal, the class group is trivial, and
the length of every rigid factorization of ``x`` is ``Omega(nr(x))``.

Associate classes come in two flavours: the *left* orbit ``{e x : e unit}``
(generator of the left ideal ``Hx``) and the *right* orbit ``{x e}``
(generator of the right ideal ``xH``).  Both are canonicalized by taking the
lexicographically least ``(halved, A, B, C, D)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import isqrt

from .arith import big_omega, factorize, is_prime
from .errors import BudgetExceeded
from .factor_core import CategoryOracle

NORM_CAP = 10**6


def _qmul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


@dataclass(frozen=True)
class HurwitzQuaternion:
    num: tuple[int, int, int, int]
    halved: bool = False

    def __post_init__(self):
        num = tuple(int(v) for v in self.num)
        if len(num) != 4:
            raise ValueError("need four coefficients")
        halved = bool(self.halved)
        if halved:
            parities = {v % 2 for v in num}
            if parities == {0}:
                num, halved = tuple(v // 2 for v in num), False
            elif parities != {1}:
                raise ValueError(f"(A+Bi+Cj+Dk)/2 with {num} is not a Hurwitz quaternion")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "halved", halved)

    @classmethod
    def from_doubled(cls, doubled) -> HurwitzQuaternion:
        """Element ``(A + Bi + Cj + Dk) / 2`` for any same-parity quadruple."""
        return cls(tuple(doubled), True)

    @classmethod
    def integer(cls, n: int) -> HurwitzQuaternion:
        return cls((n, 0, 0, 0))

    @property
    def doubled(self) -> tuple[int, int, int, int]:
        """Coordinates of ``2x``."""
        return self.num if self.halved else tuple(2 * v for v in self.num)

    def __mul__(self, other):
        if isinstance(other, int):
            other = HurwitzQuaternion.integer(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return multiply(HurwitzQuaternion.integer(other), self)

    def __add__(self, other):
        return HurwitzQuaternion.from_doubled(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __sub__(self, other):
        return HurwitzQuaternion.from_doubled(tuple(a - b for a, b in zip(self.doubled, other.doubled)))

    def __neg__(self):
        return HurwitzQuaternion(tuple(-v for v in self.num), self.halved)

    def sort_key(self):
        return (self.halved, *self.num)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __bool__(self):
        return any(self.num)

    def __str__(self):
        return format_quaternion(self)


def multiply(x: HurwitzQuaternion, y: HurwitzQuaternion) -> HurwitzQuaternion:
    """Quaternion product with ``i^2 = j^2 = -1``, ``ij = -ji = k``."""
    p = _qmul(x.doubled, y.doubled)  # = 4xy
    return HurwitzQuaternion.from_doubled(tuple(v // 2 for v in p))


def conjugate(x: HurwitzQuaternion) -> HurwitzQuaternion:
    a, b, c, d = x.num
    return HurwitzQuaternion((a, -b, -c, -d), x.halved)


def norm(x: HurwitzQuaternion) -> int:
    """Reduced norm ``x * conj(x)``."""
    return sum(v * v for v in x.doubled) // 4


def trace(x: HurwitzQuaternion) -> int:
    """Reduced trace ``x + conj(x)``."""
    return x.doubled[0]


def divide_exact(x: HurwitzQuaternion, n: int) -> HurwitzQuaternion | None:
    """``x / n`` if it is a Hurwitz quaternion, else None."""
    d = x.doubled
    if any(v % n for v in d):
        return None
    q = tuple(v // n for v in d)
    if len({v % 2 for v in q}) != 1:
        return None
    return HurwitzQuaternion.from_doubled(q)


def left_quotient(u: HurwitzQuaternion, a: HurwitzQuaternion) -> HurwitzQuaternion | None:
    """``u^-1 a`` if integral (i.e. ``u`` left-divides ``a``), else None."""
    return divide_exact(conjugate(u) * a, norm(u))


def right_quotient(a: HurwitzQuaternion, u: HurwitzQuaternion) -> HurwitzQuaternion | None:
    """``a u^-1`` if integral (i.e. ``u`` right-divides ``a``), else None."""
    return divide_exact(a * conjugate(u), norm(u))


ONE = HurwitzQuaternion((1, 0, 0, 0))
I = HurwitzQuaternion((0, 1, 0, 0))
J = HurwitzQuaternion((0, 0, 1, 0))
K = HurwitzQuaternion((0, 0, 0, 1))


def _sum_of_four_squares(N: int):
    """All integer quadruples with ``A^2 + B^2 + C^2 + D^2 = N``."""
    out = set()
    a = 0
    while 4 * a * a <= N:
        b = a
        while a * a + 3 * b * b <= N:
            c = b
            while a * a + b * b + 2 * c * c <= N:
                rest = N - a * a - b * b - c * c
                d = isqrt(rest)
                if d * d == rest and d >= c:
                    for perm in set(permutations((a, b, c, d))):
                        for signs in product((1, -1), repeat=4):
                            out.add(tuple(s * v for s, v in zip(signs, perm)))
                c += 1
            b += 1
        a += 1
    return sorted(out)


@lru_cache(maxsize=None)
def _all_of_norm(n: int) -> tuple[HurwitzQuaternion, ...]:
    """Every Hurwitz quaternion of reduced norm ``n``."""
    quads = _sum_of_four_squares(4 * n)
    return tuple(HurwitzQuaternion.from_doubled(q) for q in quads if len({v % 2 for v in q}) == 1)


@lru_cache(maxsize=1)
def units() -> tuple[HurwitzQuaternion, ...]:
    """The 24 units: +-1, +-i, +-j, +-k and (+-1 +-i +-j +-k)/2."""
    return tuple(sorted(_all_of_norm(1)))


def _key_of_doubled(d):
    # (halved, A, B, C, D) for the element with doubled coordinates d
    if d[0] % 2:
        return (True, *d)
    return (False, d[0] // 2, d[1] // 2, d[2] // 2, d[3] // 2)


@lru_cache(maxsize=1)
def _unit_doubles():
    return tuple(e.doubled for e in units())


def _canonical(x: HurwitzQuaternion, left: bool) -> HurwitzQuaternion:
    X = x.doubled
    if left:
        prods = (_qmul(E, X) for E in _unit_doubles())
    else:
        prods = (_qmul(X, E) for E in _unit_doubles())
    best = min(_key_of_doubled(tuple(v // 2 for v in p)) for p in prods)
    return HurwitzQuaternion(best[1:], best[0])


def canonical_left(x: HurwitzQuaternion) -> HurwitzQuaternion:
    """Least element of ``{e x : e unit}``."""
    return _canonical(x, True)


def canonical_right(x: HurwitzQuaternion) -> HurwitzQuaternion:
    """Least element of ``{x e : e unit}``."""
    return _canonical(x, False)


def is_unit(x: HurwitzQuaternion) -> bool:
    return norm(x) == 1


def is_atom(x: HurwitzQuaternion) -> bool:
    """Atoms are exactly the elements of prime reduced norm."""
    return is_prime(norm(x))


def _classes(n: int, canon, cap: int):
    if n < 1:
        raise ValueError("norm must be >= 1")
    if n > cap:
        raise BudgetExceeded(f"norm {n} exceeds cap {cap}")
    return sorted({canon(x) for x in _all_of_norm(n)})


def elements_of_norm(n: int, cap: int = NORM_CAP) -> list[HurwitzQuaternion]:
    """One representative per left-associate class ``{e x}`` of norm ``n``."""
    return _classes(n, canonical_left, cap)


@lru_cache(maxsize=None)
def right_classes_of_norm(n: int, cap: int = NORM_CAP) -> tuple[HurwitzQuaternion, ...]:
    """One representative per right-associate class ``{x e}`` of norm ``n``."""
    return tuple(_classes(n, canonical_right, cap))


def _nearest_candidates(t):
    """Hurwitz points near ``t`` (4 Fractions): 16 Lipschitz and 16 half-integer corners."""
    floors = [v.__floor__() for v in t]
    for offs in product((0, 1), repeat=4):
        yield HurwitzQuaternion(tuple(f + o for f, o in zip(floors, offs)))
    # odd integers bracketing 2t, i.e. the half-integer corners around t
    odd_lo = [f if f % 2 else f - 1 for f in ((2 * v).__floor__() for v in t)]
    for offs in product((0, 2), repeat=4):
        yield HurwitzQuaternion.from_doubled(tuple(h + o for h, o in zip(odd_lo, offs)))


def right_divmod(x: HurwitzQuaternion, y: HurwitzQuaternion):
    """``(q, r)`` with ``x = q y + r`` and ``nr(r) < nr(y)``.

    ``q`` is the nearest Hurwitz point to ``x y^-1``; ties in remainder norm
    are broken by the lexicographic order on ``q``.
    """
    n = norm(y)
    if n == 0:
        raise ZeroDivisionError("division by zero quaternion")
    t = tuple(Fraction(v, 2 * n) for v in (x * conjugate(y)).doubled)
    best = min(((norm(x - q * y), q.sort_key(), q) for q in _nearest_candidates(t)))
    q = best[2]
    r = x - q * y
    assert norm(r) < n
    return q, r


def gcrd(x: HurwitzQuaternion, y: HurwitzQuaternion) -> HurwitzQuaternion:
    """Greatest common right divisor: the generator of ``Hx + Hy``, canonical up to left units."""
    if not x and not y:
        raise ValueError("gcrd(0, 0) is undefined")
    while y:
        _, r = right_divmod(x, y)
        x, y = y, r
    return canonical_left(x)


def gcld(x: HurwitzQuaternion, y: HurwitzQuaternion) -> HurwitzQuaternion:
    """Greatest common left divisor: generator of ``xH + yH``, canonical up to right units."""
    return canonical_right(conjugate(gcrd(conjugate(x), conjugate(y))))


def metacommute(u: HurwitzQuaternion, v: HurwitzQuaternion):
    """For atoms of distinct prime norms p, q return ``(v', u')`` with ``uv = v'u'``, ``nr v' = q``, ``nr u' = p``.

    Found by searching the right-associate classes of norm q; returns the
    list of all class-level solutions (a single pair when the factorization
    theory is as expected).
    """
    p, q = norm(u), norm(v)
    if not (is_prime(p) and is_prime(q)) or p == q:
        raise ValueError("need atoms of distinct prime norms")
    a = u * v
    sols = []
    for w in right_classes_of_norm(q):
        rest = left_quotient(w, a)
        if rest is not None:
            sols.append((w, rest))
    return sols


_TERM_RE = re.compile(
    r"\s*([+-])?\s*(\d+)(?:\s*/\s*(\d+))?\s*(?:\*?\s*([ijk]))?\s*|\s*([+-])?\s*([ijk])\s*"
)


def parse_quaternion(text: str) -> HurwitzQuaternion:
    """Parse ``"a+b*i+c*j+d*k"``; coefficients may be integers or ``n/2``."""
    coeffs = dict.fromkeys("1ijk", Fraction(0))
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty quaternion literal")
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad quaternion literal {text!r}")
        if m.group(2) is not None:
            sign, num, den, unit = m.group(1), int(m.group(2)), m.group(3), m.group(4)
            val = Fraction(num, int(den) if den else 1)
        else:
            sign, unit, val = m.group(5), m.group(6), Fraction(1)
        if sign is None and pos > 0:
            raise ValueError(f"missing operator in {text!r}")
        coeffs[unit or "1"] += -val if sign == "-" else val
        pos = m.end()
    doubled = []
    for key in "1ijk":
        v = 2 * coeffs[key]
        if v.denominator != 1:
            raise ValueError(f"coefficient {coeffs[key]} is not in (1/2)Z")
        doubled.append(int(v))
    if len({v % 2 for v in doubled}) != 1:
        raise ValueError(f"{text!r} is not a Hurwitz quaternion")
    return HurwitzQuaternion.from_doubled(tuple(doubled))


def format_quaternion(x: HurwitzQuaternion) -> str:
    """Format as ``"a+b*i+c*j+d*k"``; inverse of :func:`parse_quaternion`."""
    parts = []
    for v, unit in zip(x.num, ("", "*i", "*j", "*k")):
        if v:
            parts.append((f"{v}/2" if x.halved else str(v)) + unit)
    return "+".join(parts).replace("+-", "-") if parts else "0"


class HurwitzOracle(CategoryOracle):
    """Single-object category view of the nonzero Hurwitz quaternions."""

    def objects(self):
        return [ONE]

    def source(self, x):
        return ONE

    def target(self, x):
        return ONE

    def compose(self, x, y):
        return x * y

    def is_unit(self, x):
        return is_unit(x)

    def atom_left_divisors(self, a):
        """One ``(u, u^-1 a)`` per right-associate class ``uH`` of atoms dividing ``a`` on the left.

        For each prime ``q | nr(a)`` the candidates are the classes of norm
        ``q``.  Unless ``q`` divides ``a`` outright, ``aH + qH`` is itself a
        maximal right ideal, so ``gcld(a, q)`` is the only candidate.
        """
        n = norm(a)
        if n == 0:
            raise ValueError("zero is not cancellative")
        out = []
        for q, _ in factorize(n) if n > 1 else ():
            g = gcld(a, HurwitzQuaternion.integer(q))
            candidates = [g] if norm(g) == q else right_classes_of_norm(q)
            for u in candidates:
                rest = left_quotient(u, a)
                if rest is not None:
                    out.append((u, rest))
        return out

    def canonical_key(self, a):
        return canonical_left(a)

    def size_measure(self, a):
        return big_omega(norm(a))


def oracle() -> HurwitzOracle:
    return HurwitzOracle()


def random_element(rng, max_norm: int, min_norm: int = 1) -> HurwitzQuaternion:
    """Uniform-ish random Hurwitz quaternion with ``min_norm <= nr <= max_norm`` (rejection sampling)."""
    r = isqrt(4 * max_norm)
    while True:
        if rng.random() < 0.5:
            d = [2 * rng.randint(-(r // 2), r // 2) for _ in range(4)]
        else:
            d = [2 * rng.randint(-(r // 2) - 1, r // 2) + 1 for _ in range(4)]
        x = HurwitzQuaternion.from_doubled(d)
        if min_norm <= norm(x) <= max_norm:
            return x


def transfer_map(x: HurwitzQuaternion):
    """``x -> 0^Omega(nr x)``, the map to zero-sum sequences over the trivial class group."""
    from .abelian import FiniteAbelianGroup
    from .zerosum import ZsSequence

    G = FiniteAbelianGroup(())
    return ZsSequence(G, (((), big_omega(norm(x))),))
