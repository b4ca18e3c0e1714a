"""The Inoue-Kabaya chain map into coinvariant homogeneous chains.

Homogeneous n-chains live on (n+1)-tuples; coinvariants under the diagonal
Inn(Q)-action are represented by lexicographically least orbit members.

For a generator (x_1, ..., x_n) and ι: {2..n} -> {0,1},

    x(ι, i) = (...((x_i ◁^{ι(i+1)} x_{i+1}) ◁^{ι(i+2)} x_{i+2}) ...) ◁^{ι(n)} x_n
    φ_n(x)  = Σ_ι (-1)^{ι(2)+...+ι(n)} (p, x(ι,1), ..., x(ι,n)),   φ_1(a) = (p, a).

``a ◁^0 b`` is taken to be ``a`` (no action).  Reading it as ``b`` breaks
the chain-map identity already in degree 2; `chain_map_failures` with
``convention="literal"`` exhibits that.
"""

from __future__ import annotations

import functools
import itertools
import random
import warnings
from dataclasses import dataclass, field
from typing import Iterable

from .errors import NotCoinvariant
from .homology import QQ, Cochain, FormalChain, ZMod, rack_boundary, tuples
from .linalg import nullspace
from .quandle import FiniteQuandle, inner_group, is_connected


class Coinvariants:
    """Canonical representatives of diagonal Inn(Q)-orbits of tuples."""

    def __init__(self, Q: FiniteQuandle):
        self.Q = Q
        self.perms = inner_group(Q).permutations
        self._cache = {}

    def canonical(self, t: tuple) -> tuple:
        t = tuple(t)
        rep = self._cache.get(t)
        if rep is None:
            rep = min(tuple(g[x] for x in t) for g in self.perms)
            self._cache[t] = rep
        return rep

    def orbit(self, t: tuple) -> set:
        return {tuple(g[x] for x in t) for g in self.perms}

    def representatives(self, length: int) -> list:
        return sorted({self.canonical(t) for t in tuples(self.Q.size, length)})

    def reduce(self, terms: dict) -> dict:
        out = {}
        for t, c in terms.items():
            r = self.canonical(t)
            out[r] = out.get(r, 0) + c
        return {t: c for t, c in out.items() if c}


@functools.lru_cache(maxsize=32)
def coinvariants(Q: FiniteQuandle) -> Coinvariants:
    return Coinvariants(Q)


@dataclass(frozen=True)
class HomogeneousChain:
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for t in self.terms:
            if len(t) != self.degree + 1:
                raise ValueError("tuple %r in homogeneous degree %d" % (t, self.degree))

    def __add__(self, other):
        terms = dict(self.terms)
        for t, c in other.terms.items():
            terms[t] = terms.get(t, 0) + c
        return HomogeneousChain(self.degree, {t: c for t, c in terms.items() if c})

    def __neg__(self):
        return HomogeneousChain(self.degree, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self.terms)


def reduce_chain(terms: dict, degree: int, Q: FiniteQuandle) -> HomogeneousChain:
    return HomogeneousChain(degree, coinvariants(Q).reduce(terms))


def homogeneous_boundary(c: HomogeneousChain, Q: FiniteQuandle) -> HomogeneousChain:
    out = {}
    for t, coeff in c.terms.items():
        for i in range(len(t)):
            face = t[:i] + t[i + 1:]
            out[face] = out.get(face, 0) + (-1) ** i * coeff
    return reduce_chain(out, c.degree - 1, Q)


def iota_maps(n: int) -> Iterable[tuple]:
    """All ι: {2..n} -> {0,1}, as tuples (ι(2), ..., ι(n))."""
    return itertools.product((0, 1), repeat=max(n - 1, 0))


def x_iota(Q: FiniteQuandle, x: tuple, iota: tuple, i: int,
           convention: str = "identity") -> int:
    """x(ι, i) for 1 <= i <= n; ``iota[m - 2]`` holds ι(m)."""
    a = x[i - 1]
    for m in range(i + 1, len(x) + 1):
        if iota[m - 2]:
            a = Q.table[a][x[m - 1]]
        elif convention == "literal":
            a = x[m - 1]
    return a


def ik_terms(Q: FiniteQuandle, x: tuple, p: int = 0,
             convention: str = "identity") -> list:
    """The 2^(n-1) signed homogeneous tuples of φ_n(x), before reduction."""
    n = len(x)
    if n == 1:
        return [(1, (p, x[0]))]
    out = []
    for iota in iota_maps(n):
        sign = -1 if sum(iota) % 2 else 1
        out.append((sign, (p,) + tuple(x_iota(Q, x, iota, i, convention)
                                       for i in range(1, n + 1))))
    return out


def ik_chain_map(c: FormalChain, Q: FiniteQuandle, p: int = 0,
                 convention: str = "identity") -> HomogeneousChain:
    if not is_connected(Q):
        warnings.warn("%s is not connected; φ is used outside its intended setting" % Q,
                      stacklevel=2)
    if c.degree == 0:
        return reduce_chain({(p,): sum(c.terms.values())}, 0, Q)
    terms = {}
    for x, coeff in c.terms.items():
        for s, t in ik_terms(Q, x, p, convention):
            terms[t] = terms.get(t, 0) + s * coeff
    return reduce_chain(terms, c.degree, Q)


def chain_map_failures(Q: FiniteQuandle, n: int, generators: Iterable[tuple] = None,
                       p: int = 0, convention: str = "identity") -> list:
    """Generators x of degree n with ∂φ_n(x) != φ_{n-1}(∂x) in coinvariants."""
    if generators is None:
        generators = tuples(Q.size, n)
    bad = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for x in generators:
            g = FormalChain.generator(*x)
            lhs = homogeneous_boundary(ik_chain_map(g, Q, p, convention), Q)
            dx = rack_boundary(g, Q)
            rhs = ik_chain_map(dx, Q, p, convention) if n > 1 else HomogeneousChain(0)
            if lhs.terms != rhs.terms:
                bad.append(tuple(x))
    return bad


def random_generators(Q: FiniteQuandle, n: int, count: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    return [tuple(rng.randrange(Q.size) for _ in range(n)) for _ in range(count)]


# -- coinvariant cochains and pullback ---------------------------------------

@dataclass(frozen=True)
class HomogeneousCochain:
    """A function on (degree+1)-tuples, constant on Inn(Q)-orbits."""

    degree: int
    values: dict  # canonical representative -> value
    ring: object = QQ

    def __call__(self, t: tuple, Q: FiniteQuandle):
        return self.values.get(coinvariants(Q).canonical(t), self.ring.zero)


def coinvariant_cochain(Q: FiniteQuandle, degree: int, data, ring=QQ) -> HomogeneousCochain:
    """Build from a dict of tuples (any orbit members) or a callable on tuples.

    Raises NotCoinvariant if two tuples in one orbit get different values.
    """
    C = coinvariants(Q)
    if callable(data):
        data = {t: data(t) for t in tuples(Q.size, degree + 1)}
    values, first = {}, {}
    for t, v in data.items():
        t = tuple(t)
        if len(t) != degree + 1:
            raise ValueError("tuple %r for homogeneous degree %d" % (t, degree))
        v = ring.reduce(v)
        r = C.canonical(t)
        if r in values and values[r] != v:
            raise NotCoinvariant(first[r], t)
        values.setdefault(r, v)
        first.setdefault(r, t)
    return HomogeneousCochain(degree, values, ring)


def homogeneous_coboundary(f: HomogeneousCochain, Q: FiniteQuandle) -> HomogeneousCochain:
    ring = f.ring
    C = coinvariants(Q)
    out = {}
    for t in C.representatives(f.degree + 2):
        acc = ring.zero
        for i in range(len(t)):
            acc = ring.add(acc, ring.scale((-1) ** i, f(t[:i] + t[i + 1:], Q)))
        out[t] = acc
    return HomogeneousCochain(f.degree + 1, out, ring)


def is_homogeneous_cocycle(f: HomogeneousCochain, Q: FiniteQuandle) -> bool:
    return all(v == f.ring.zero for v in homogeneous_coboundary(f, Q).values.values())


def pullback_cocycle(f: HomogeneousCochain, Q: FiniteQuandle, p: int = 0) -> Cochain:
    """(φ_q^* f)(x_1..x_q) = f(φ_q(x_1..x_q)), a rack q-cochain."""
    ring = f.ring
    q = f.degree
    out = {}
    for x in tuples(Q.size, q):
        acc = ring.zero
        for s, t in ik_terms(Q, x, p):
            acc = ring.add(acc, ring.scale(s, f(t, Q)))
        out[x] = acc
    return Cochain(q, Q.size, out, ring)


def homogeneous_cocycle_basis(Q: FiniteQuandle, degree: int, modulus: int = None) -> list:
    """Basis of coinvariant cocycles over Q or Z/p, by solving δf = 0."""
    C = coinvariants(Q)
    cols = C.representatives(degree + 1)
    cidx = {r: j for j, r in enumerate(cols)}
    rows = []
    for t in C.representatives(degree + 2):
        row = [0] * len(cols)
        for i in range(len(t)):
            row[cidx[C.canonical(t[:i] + t[i + 1:])]] += (-1) ** i
        rows.append(row)
    ring = QQ if modulus is None else ZMod(modulus)
    return [HomogeneousCochain(degree, dict(zip(cols, v)), ring)
            for v in nullspace(rows, len(cols), modulus)]
