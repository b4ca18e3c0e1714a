"""Rack chains and cochains, integral rack homology, and H_2 of Alexander quandles.

Tuple bases are ordered lexicographically, i.e. ``itertools.product`` order,
so the index of ``(x_1, ..., x_n)`` is its base-``q`` value.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .errors import BadUnit, NotAComplex
from .linalg import IntegerMatrix, SnfResult, invariant_factors, smith_normal_form
from .quandle import FiniteQuandle

__all__ = [
    "FormalChain", "Cochain", "HomologyResult", "IntegerMatrix", "SnfResult",
    "ZZ", "QQ", "ZMod", "CmodZ", "smith_normal_form", "rack_boundary",
    "boundary_matrix", "homology_of_pair", "rack_homology", "coboundary",
    "is_rack_cocycle", "clauwens_h2", "clauwens_h2_class", "det_cocycle",
    "det_cocycle_check",
]


def tuples(q: int, n: int) -> Iterator[tuple]:
    return itertools.product(range(q), repeat=n)


def tuple_index(t: tuple, q: int) -> int:
    i = 0
    for x in t:
        i = i * q + x
    return i


def boundary_terms(t: tuple, op: Callable) -> Iterator[tuple]:
    """(sign, face) pairs of the rack boundary of the generator t."""
    for i in range(1, len(t) + 1):
        s = -1 if i % 2 else 1
        xi = t[i - 1]
        yield s, t[:i - 1] + t[i:]
        yield -s, tuple(op(x, xi) for x in t[:i - 1]) + t[i:]


@dataclass(frozen=True)
class FormalChain:
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {t: c for t, c in self.terms.items() if c}
        for t in clean:
            if len(t) != self.degree:
                raise ValueError("tuple %r in a degree-%d chain" % (t, self.degree))
        object.__setattr__(self, "terms", clean)

    @classmethod
    def generator(cls, *t) -> "FormalChain":
        return cls(len(t), {tuple(t): 1})

    def __add__(self, other):
        terms = dict(self.terms)
        for t, c in other.terms.items():
            terms[t] = terms.get(t, 0) + c
        return FormalChain(self.degree, terms)

    def __neg__(self):
        return FormalChain(self.degree, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return FormalChain(self.degree, {t: k * c for t, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)


def rack_boundary(c: FormalChain, Q: FiniteQuandle) -> FormalChain:
    if c.degree == 0:
        return FormalChain(0)
    out = {}
    for t, coeff in c.terms.items():
        for s, face in boundary_terms(t, Q.op):
            out[face] = out.get(face, 0) + s * coeff
    return FormalChain(c.degree - 1, out)


def boundary_matrix(Q: FiniteQuandle, n: int) -> IntegerMatrix:
    """Matrix of C_n -> C_{n-1} on lexicographic tuple bases.

    For n = 0 this is the 0 x 1 map out of C_0 = Z.
    """
    q = Q.size
    if n == 0:
        return IntegerMatrix(0, 1)
    columns = []
    for t in tuples(q, n):
        col = {}
        for s, face in boundary_terms(t, Q.op):
            r = tuple_index(face, q)
            col[r] = col.get(r, 0) + s
        columns.append(col)
    return IntegerMatrix(q ** (n - 1), q ** n, columns)


@dataclass(frozen=True)
class HomologyResult:
    degree: int
    betti: int
    torsion: tuple = ()

    def record(self, quandle: str = None) -> dict:
        """The JSON homology record."""
        return {"quandle": quandle, "degree": self.degree, "betti": self.betti,
                "torsion": list(self.torsion)}

    def __str__(self):
        parts = ["Z^%d" % self.betti] if self.betti != 1 else ["Z"]
        if self.betti == 0:
            parts = []
        parts += ["Z/%d" % d for d in self.torsion]
        return " + ".join(parts) or "0"


def homology_of_pair(d_n: IntegerMatrix, d_next: IntegerMatrix,
                     degree: int = None) -> HomologyResult:
    """Homology at the middle of C_{n+1} --d_next--> C_n --d_n--> C_{n-1}."""
    if d_n.cols != d_next.rows:
        raise NotAComplex("shapes %r and %r do not compose" % (d_n.shape, d_next.shape))
    if not (d_n @ d_next).is_zero():
        raise NotAComplex("d_n @ d_{n+1} != 0")
    rank_n = len(invariant_factors(d_n))
    inv = invariant_factors(d_next)
    betti = d_n.cols - rank_n - len(inv)
    return HomologyResult(degree, betti, tuple(d for d in inv if d > 1))


def rack_homology(Q: FiniteQuandle, n: int) -> HomologyResult:
    return homology_of_pair(boundary_matrix(Q, n), boundary_matrix(Q, n + 1), n)


# -- coefficient rings ------------------------------------------------------

class _Ring:
    name = "?"
    zero = 0

    def reduce(self, v):
        return v

    def add(self, a, b):
        return self.reduce(a + b)

    def scale(self, k: int, a):
        return self.reduce(k * a)

    def parse(self, s):
        return self.reduce(int(s))

    def format(self, v):
        return str(v)

    def __repr__(self):
        return self.name


class _Integers(_Ring):
    name = "ZZ"


class _Rationals(_Ring):
    name = "QQ"
    zero = Fraction(0)

    def reduce(self, v):
        return Fraction(v)

    def parse(self, s):
        return Fraction(str(s))

    def format(self, v):
        return str(Fraction(v))


class ZMod(_Ring):
    def __init__(self, k: int):
        self.k = k
        self.name = "ZMod(%d)" % k

    def reduce(self, v):
        return v % self.k

    def __eq__(self, other):
        return isinstance(other, ZMod) and other.k == self.k

    def __hash__(self):
        return hash(("ZMod", self.k))


class _ComplexModZ(_Ring):
    """C/Z modelled exactly: (re mod 1, im) with rational parts."""

    name = "CmodZ"
    zero = (Fraction(0), Fraction(0))

    def reduce(self, v):
        if not isinstance(v, tuple):
            v = (Fraction(v), Fraction(0))
        re, im = Fraction(v[0]), Fraction(v[1])
        return (re - math.floor(re), im)

    def add(self, a, b):
        return self.reduce((a[0] + b[0], a[1] + b[1]))

    def scale(self, k, a):
        return self.reduce((k * a[0], k * a[1]))

    def parse(self, s):
        if isinstance(s, (list, tuple)):
            return self.reduce((Fraction(str(s[0])), Fraction(str(s[1]))))
        return self.reduce(Fraction(str(s)))

    def format(self, v):
        return [str(v[0]), str(v[1])]


ZZ = _Integers()
QQ = _Rationals()
CmodZ = _ComplexModZ()


@dataclass(frozen=True)
class Cochain:
    """A total function Q^n -> ring, stored as a dict over tuples."""

    degree: int
    size: int
    values: dict
    ring: object = QQ

    @classmethod
    def from_function(cls, size: int, degree: int, f: Callable, ring=QQ) -> "Cochain":
        return cls(degree, size, {t: ring.reduce(f(t)) for t in tuples(size, degree)}, ring)

    @classmethod
    def constant(cls, size: int, degree: int, c, ring=QQ) -> "Cochain":
        return cls.from_function(size, degree, lambda t: c, ring)

    @classmethod
    def random(cls, size: int, degree: int, rng: random.Random, ring=QQ,
               lo: int = -5, hi: int = 5) -> "Cochain":
        return cls.from_function(size, degree, lambda t: rng.randint(lo, hi), ring)

    def __call__(self, t: tuple):
        return self.values[tuple(t)]

    def evaluate(self, chain: FormalChain):
        acc = self.ring.zero
        for t, c in chain.terms.items():
            acc = self.ring.add(acc, self.ring.scale(c, self.values[t]))
        return acc

    def is_zero(self) -> bool:
        return all(v == self.ring.zero for v in self.values.values())

    def __add__(self, other):
        return Cochain(self.degree, self.size,
                       {t: self.ring.add(v, other.values[t]) for t, v in self.values.items()},
                       self.ring)

    def __sub__(self, other):
        return Cochain(self.degree, self.size,
                       {t: self.ring.add(v, self.ring.scale(-1, other.values[t]))
                        for t, v in self.values.items()}, self.ring)


def coboundary(f: Cochain, Q: FiniteQuandle) -> Cochain:
    """(δf)(t) = f(∂t) on every (n+1)-tuple t."""
    ring = f.ring
    out = {}
    for t in tuples(Q.size, f.degree + 1):
        acc = ring.zero
        for s, face in boundary_terms(t, Q.op):
            acc = ring.add(acc, ring.scale(s, f.values[face]))
        out[t] = acc
    return Cochain(f.degree + 1, Q.size, out, ring)


def is_rack_cocycle(f: Cochain, Q: FiniteQuandle) -> bool:
    return coboundary(f, Q).is_zero()


# -- H_2 of Alexander quandles ----------------------------------------------

def _clauwens_relations(N: int, omega: int) -> IntegerMatrix:
    # Z/N ⊗ Z/N is cyclic of order N on g = 1⊗1, and x⊗y = xy·g.  Relations on
    # g: N·g = 0 and (xy - ω·yx)·g = 0 for every pair x, y.
    rels = [N] + [(x * y - omega * y * x) for x in range(N) for y in range(N)]
    return IntegerMatrix.from_dense([rels])


def _quotient_order(N: int, omega: int) -> tuple:
    """(d, u): the quotient is Z/d, and u is the SNF change of generator."""
    snf = smith_normal_form(_clauwens_relations(N, omega))
    return snf.diagonal[0], snf.left[0, 0]


def clauwens_h2(N: int, omega: int) -> HomologyResult:
    """Z ⊕ (X⊗X)/(x⊗y - ω y⊗x) for X = Z/N, read off an SNF."""
    if N < 1 or math.gcd(omega, N) != 1:
        raise BadUnit(omega, N)
    d, _ = _quotient_order(N, omega)
    return HomologyResult(2, 1, (d,) if d > 1 else ())


def clauwens_h2_class(N: int, omega: int, a: int, b: int) -> tuple:
    """Image (n, [q]) of the generator (a, b) under (a, b) ↦ (1, [(a-b)⊗b]).

    The quotient Z/d is cyclic; its coordinate is taken in the SNF basis of
    the relation module and reduced modulo d.
    """
    if N < 1 or math.gcd(omega, N) != 1:
        raise BadUnit(omega, N)
    d, u = _quotient_order(N, omega)
    return 1, (u * (a - b) * b) % d


def clauwens_h2_chain_class(N: int, omega: int, chain: FormalChain) -> tuple:
    """Linear extension of `clauwens_h2_class` to a 2-chain."""
    d, _ = _quotient_order(N, omega)
    total = coord = 0
    for (a, b), c in chain.terms.items():
        n, v = clauwens_h2_class(N, omega, a, b)
        total += c * n
        coord += c * v
    return total, coord % d


# -- the determinant 2-cocycle on Q^2 with x ◁ y = 2y - x -------------------

def plane_op(x: tuple, y: tuple) -> tuple:
    return (2 * y[0] - x[0], 2 * y[1] - x[1])


def det_cocycle(t: tuple):
    (x1, y1), (x2, y2) = t
    return x1 * y2 - x2 * y1


def coboundary_value(f: Callable, op: Callable, t: tuple):
    """(δf)(t) for a cochain given as a function and an arbitrary quandle op."""
    return sum(s * f(face) for s, face in boundary_terms(tuple(t), op))


def random_rational_triples(count: int, seed: int = 0, bound: int = 9) -> list:
    rng = random.Random(seed)

    def q():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return [tuple((q(), q()) for _ in range(3)) for _ in range(count)]


def det_cocycle_check(triples: Iterable) -> list:
    """[(triple, value of δC, passed)] for each triple of plane points."""
    report = []
    for t in triples:
        t = tuple(tuple(Fraction(c) for c in p) for p in t)
        v = coboundary_value(det_cocycle, plane_op, t)
        report.append((t, v, v == 0))
    return report
