"""The maximal order M2(Z): integer 2x2 matrices and their one-sided ideals.

A left ideal ``M2(Z) A`` consists of the matrices whose rows lie in the row
lattice of ``A``, so left ideals of full rank correspond to full-rank
sublattices of Z^2 and are encoded by the Hermite normal form of the rows:

    [[a, b],
     [0, d]]    a > 0, d > 0, 0 <= b < d.

The norm of the ideal is ``a * d = |det A|``.  Right ideals ``A M2(Z)`` are
handled through the transpose, which swaps the two sides.

Factoring an element from the left walks down the lattice of principal right
ideals containing it; maximal steps over a prime ``p`` are the ``p + 1``
sublattices of index ``p``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations

from .arith import big_omega, factorize, is_prime
from .factor_core import CategoryOracle


@dataclass(frozen=True)
class IntMatrix2:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, rows) -> IntMatrix2:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def scalar(cls, n: int) -> IntMatrix2:
        return cls(n, 0, 0, n)

    @classmethod
    def diag(cls, x: int, y: int) -> IntMatrix2:
        return cls(x, 0, 0, y)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def adj(self) -> IntMatrix2:
        """Adjugate: ``A @ adj(A) = det(A) * I``."""
        return IntMatrix2(self.d, -self.b, -self.c, self.a)

    def T(self) -> IntMatrix2:
        return IntMatrix2(self.a, self.c, self.b, self.d)

    def __matmul__(self, o: IntMatrix2) -> IntMatrix2:
        return IntMatrix2(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
        )

    def __neg__(self):
        return IntMatrix2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, k: int) -> IntMatrix2:
        return IntMatrix2(k * self.a, k * self.b, k * self.c, k * self.d)

    def exact_div(self, n: int) -> IntMatrix2 | None:
        if n == 0 or any(v % n for v in (self.a, self.b, self.c, self.d)):
            return None
        return IntMatrix2(self.a // n, self.b // n, self.c // n, self.d // n)

    def __str__(self):
        return format_matrix(self)


IDENTITY = IntMatrix2(1, 0, 0, 1)


def left_quotient(u: IntMatrix2, a: IntMatrix2) -> IntMatrix2 | None:
    """``u^-1 a`` if integral, else None."""
    return (u.adj() @ a).exact_div(u.det())


def right_quotient(a: IntMatrix2, u: IntMatrix2) -> IntMatrix2 | None:
    """``a u^-1`` if integral, else None."""
    return (a @ u.adj()).exact_div(u.det())


def is_unit(A: IntMatrix2) -> bool:
    return abs(A.det()) == 1


def _xgcd(a: int, b: int):
    """``(g, x, y)`` with ``g = x a + y b = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_rows(rows) -> IntMatrix2:
    """Hermite normal form of the lattice spanned by integer 2-vectors (must have rank 2)."""
    # column 0: gcd of first entries by unimodular combination
    a, r1 = 0, (0, 0)
    others = []
    for v in rows:
        v = (int(v[0]), int(v[1]))
        if v[0] == 0:
            others.append(v)
            continue
        g, x, y = _xgcd(r1[0], v[0])
        if r1[0] == 0:
            if v[0] < 0:
                v = (-v[0], -v[1])
            r1 = v
            continue
        new = (x * r1[0] + y * v[0], x * r1[1] + y * v[1])
        # the complementary row, first entry zero
        comp = (v[0] // g * r1[0] - r1[0] // g * v[0], v[0] // g * r1[1] - r1[0] // g * v[1])
        others.append(comp)
        r1 = new
    a = r1[0]
    d = 0
    for _, y in others:
        d = _xgcd(d, y)[0]
    if a == 0 or d == 0:
        raise ValueError("rows do not span a rank-2 lattice")
    b = r1[1] % d
    return IntMatrix2(a, b, 0, d)


@dataclass(frozen=True)
class LeftIdeal2:
    """The left ideal ``M2(Z) * gen``; ``gen`` is kept in Hermite normal form."""

    gen: IntMatrix2

    def __post_init__(self):
        g = self.gen
        if not (g.c == 0 and g.a > 0 and g.d > 0 and 0 <= g.b < g.d):
            raise ValueError(f"{g} is not in Hermite normal form")

    @property
    def norm(self) -> int:
        return self.gen.det()

    def contains(self, A: IntMatrix2) -> bool:
        """``A`` lies in the ideal iff its rows lie in the row lattice of ``gen``."""
        return right_quotient(A, self.gen) is not None

    def __le__(self, other: LeftIdeal2) -> bool:
        return other.contains(self.gen)

    def __lt__(self, other: LeftIdeal2) -> bool:
        return self != other and self <= other

    def sort_key(self):
        g = self.gen
        return (g.a * g.d, g.a, g.b, g.d)

    def __str__(self):
        return format_matrix(self.gen)


ORDER = LeftIdeal2(IDENTITY)


def hnf(A: IntMatrix2) -> LeftIdeal2:
    """Canonical form of the left-associate class ``GL2(Z) A``."""
    if A.det() == 0:
        raise ValueError("singular matrix has no Hermite normal form of full rank")
    return LeftIdeal2(hnf_rows(A.rows()))


def left_ideal(A: IntMatrix2) -> LeftIdeal2:
    return hnf(A)


def right_ideal_key(A: IntMatrix2) -> LeftIdeal2:
    """Canonical form of the right-associate class ``A GL2(Z)`` (via the transpose)."""
    return hnf(A.T())


def ideal_join(I: LeftIdeal2, J: LeftIdeal2) -> LeftIdeal2:
    """``I + J``: the lattice spanned by both row sets."""
    return LeftIdeal2(hnf_rows(I.gen.rows() + J.gen.rows()))


def ideal_meet(I: LeftIdeal2, J: LeftIdeal2) -> LeftIdeal2:
    """``I`` intersected with ``J``, through dual lattices.

    ``L1 & L2 = (L1* + L2*)*`` where the dual of the row lattice of ``B`` is
    spanned by the rows of ``B^-T = adj(B)^T / det B``.  Everything is scaled
    to a common denominator ``D`` so the arithmetic stays integral.
    """
    d1, d2 = I.norm, J.norm
    D = d1 * d2
    s1 = I.gen.adj().T().scale(D // d1)
    s2 = J.gen.adj().T().scale(D // d2)
    S = hnf_rows(s1.rows() + s2.rows())  # D * (L1* + L2*)
    # (S / D)* = D * S^-T = D * adj(S)^T / det S
    M = S.adj().T().scale(D).exact_div(S.det())
    assert M is not None
    return LeftIdeal2(hnf_rows(M.rows()))


def scalar_ideal(n: int) -> LeftIdeal2:
    return LeftIdeal2(IntMatrix2.scalar(n))


def maximal_left_ideals_over(p: int) -> list[LeftIdeal2]:
    """The ``p + 1`` left ideals of norm ``p``: ``[[p,0],[0,1]]`` then ``[[1,b],[0,p]]`` for ``0 <= b < p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [LeftIdeal2(IntMatrix2(p, 0, 0, 1))] + [LeftIdeal2(IntMatrix2(1, b, 0, p)) for b in range(p)]


def maximal_subideals(I: LeftIdeal2, p: int) -> list[LeftIdeal2]:
    """Left ideals ``J <= I`` with ``[I : J] = p``, i.e. ``M2(Z) m gen(I)`` for maximal ``m``."""
    return [LeftIdeal2(hnf_rows((m.gen @ I.gen).rows())) for m in maximal_left_ideals_over(p)]


def maximal_chain(I: LeftIdeal2, descending_primes: bool = False, last_choice: bool = False):
    """A maximal chain ``order = J0 > J1 > ... > Jk = I``, returned with the prime index of each step.

    The flags pick different chains: primes of the remaining index are taken
    in ascending (default) or descending order, and among admissible
    sub-ideals the first or last in the deterministic listing is used.
    """
    chain = [ORDER]
    steps = []
    current = ORDER
    while current != I:
        remaining = I.norm // current.norm
        primes = [p for p, _ in factorize(remaining)]
        p = primes[-1] if descending_primes else primes[0]
        options = [J for J in maximal_subideals(current, p) if I <= J]
        if not options:
            raise AssertionError("no maximal step toward the target ideal")
        current = options[-1] if last_choice else options[0]
        chain.append(current)
        steps.append(p)
    return chain, steps


def abstract_norm(I: LeftIdeal2, descending_primes: bool = False, last_choice: bool = False) -> int:
    """Product of the primes labelling the steps of a maximal chain from the order down to ``I``."""
    _, steps = maximal_chain(I, descending_primes, last_choice)
    out = 1
    for p in steps:
        out *= p
    return out


@dataclass(frozen=True)
class Transposition:
    v_prime: IntMatrix2
    u_prime: IntMatrix2
    checks: dict


def transpose(u: IntMatrix2, v: IntMatrix2) -> Transposition:
    """Swap two maximal steps of coprime prime norms: ``u v = v' u'`` with ``|det v'| = q``, ``|det u'| = p``.

    ``u'`` generates the left ideal ``a + p`` (``a = u v``) and ``v'`` the
    right ideal ``a + q``; ``v'`` is then the exact quotient ``a u'^-1``.
    The lattice identities are checked on both sides and returned.
    """
    p, q = abs(u.det()), abs(v.det())
    if not (is_prime(p) and is_prime(q)):
        raise ValueError("transposition needs maximal steps of prime norm")
    if p == q:
        raise ValueError("coprimality required: both steps have norm " + str(p))
    a = u @ v
    Ra = left_ideal(a)
    u_ideal = ideal_join(Ra, scalar_ideal(p))
    u_prime = u_ideal.gen
    v_prime = right_quotient(a, u_prime)
    if v_prime is None:
        raise AssertionError("a is not right-divisible by a + p")
    aR = right_ideal_key(a)
    checks = {
        # suffix side (left ideals)
        "u'^v=a": ideal_meet(u_ideal, left_ideal(v)) == Ra,
        "u'vv=order": ideal_join(u_ideal, left_ideal(v)) == ORDER,
        # prefix side (right ideals, through the transpose)
        "u^v'=a": ideal_meet(right_ideal_key(u), right_ideal_key(v_prime)) == aR,
        "uvv'=order": ideal_join(right_ideal_key(u), right_ideal_key(v_prime)) == ORDER,
        "v'=a+q": right_ideal_key(v_prime) == ideal_join(aR, scalar_ideal(q)),
        "product": v_prime @ u_prime == a,
        "norms": (abs(v_prime.det()), abs(u_prime.det())) == (q, p),
    }
    return Transposition(v_prime, u_prime, checks)


def transposition_solutions(u: IntMatrix2, v: IntMatrix2) -> list[tuple[LeftIdeal2, LeftIdeal2]]:
    """Brute force: all ideal-level ``(v' R, R u')`` with ``uv = v'u'``, ``|det v'| = q``, ``|det u'| = p``."""
    p, q = abs(u.det()), abs(v.det())
    a = u @ v
    out = []
    for m in maximal_left_ideals_over(q):
        w = m.gen.T()  # representative of a right class of norm q
        rest = left_quotient(w, a)
        if rest is not None and abs(rest.det()) == p:
            out.append((right_ideal_key(w), left_ideal(rest)))
    return out


class MatrixOracle(CategoryOracle):
    """Single-object category of nonsingular integer 2x2 matrices."""

    def objects(self):
        return [IDENTITY]

    def source(self, x):
        return IDENTITY

    def target(self, x):
        return IDENTITY

    def compose(self, x, y):
        return x @ y

    def is_unit(self, x):
        return is_unit(x)

    def atom_left_divisors(self, A):
        """One ``(U, U^-1 A)`` per right class ``U GL2(Z)`` of prime determinant left-dividing ``A``.

        Right classes of norm ``p`` are the transposes of the maximal left
        ideals over ``p``; ``U`` left-divides ``A`` iff the left ideal of ``U^T``
        contains ``A^T``.
        """
        det = A.det()
        if det == 0:
            raise ValueError("singular matrices are not cancellative")
        out = []
        for p, _ in factorize(det) if abs(det) > 1 else ():
            for m in maximal_left_ideals_over(p):
                U = m.gen.T()
                rest = left_quotient(U, A)
                if rest is not None:
                    out.append((U, rest))
        return out

    def canonical_key(self, A):
        return hnf(A)

    def size_measure(self, A):
        return big_omega(A.det())


def oracle() -> MatrixOracle:
    return MatrixOracle()


_MAT_RE = re.compile(r"^\s*\[\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*\]\s*$")


def parse_matrix(text: str) -> IntMatrix2:
    m = _MAT_RE.match(text)
    if not m:
        raise ValueError(f"bad matrix literal {text!r}")
    return IntMatrix2(*(int(g) for g in m.groups()))


def format_matrix(A: IntMatrix2) -> str:
    return f"[[{A.a},{A.b}],[{A.c},{A.d}]]"


def det_sequences(zs) -> set[tuple[int, ...]]:
    """Sequence of ``|det|`` of the atoms, per rigid factorization."""
    return {tuple(abs(u.det()) for u in z.atoms) for z in zs}


def all_orderings(primes) -> set[tuple[int, ...]]:
    return set(permutations(primes))


def random_matrix(rng, max_det: int, min_det: int = 1, entry_bound: int | None = None) -> IntMatrix2:
    """Random integer matrix with ``min_det <= |det| <= max_det`` (rejection sampling)."""
    r = entry_bound or max(2, int(max_det ** 0.5))
    while True:
        A = IntMatrix2(*(rng.randint(-r, r) for _ in range(4)))
        if min_det <= abs(A.det()) <= max_det:
            return A


def transfer_map(A: IntMatrix2):
    """``A -> 0^Omega(|det A|)`` over the trivial class group."""
    from .abelian import FiniteAbelianGroup
    from .zerosum import ZsSequence

    G = FiniteAbelianGroup(())
    return ZsSequence(G, (((), big_omega(A.det())),))
