"""Finite quandles given by operation tables.

Elements are always ``0..n-1`` and ``table[x][y]`` is ``x ◁ y``.  The
inner group is stored as an explicit list of permutations, which is all the
orbit computations elsewhere in the package need.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import AxiomViolation, BadUnit

Perm = tuple  # image tuple: p[x] is the image of x


@dataclass(frozen=True)
class FiniteQuandle:
    size: int
    table: tuple
    inv_table: tuple = field(compare=False, repr=False)
    name: str = field(default="table", compare=False)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int, y: int) -> int:
        """The unique z with z ◁ y = x."""
        return self.inv_table[x][y]

    @property
    def elements(self) -> range:
        return range(self.size)

    def power(self, x: int, y: int, k: int) -> int:
        """x ◁^k y; k may be negative."""
        row = self.table if k >= 0 else self.inv_table
        for _ in range(abs(k)):
            x = row[x][y]
        return x

    def __str__(self):
        return self.name


def _check_axioms(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    for x in range(n):
        if table[x][x] != x:
            raise AxiomViolation("Q1", (x,))
    # Q2: smallest (x, y) such that x collides with another element in column y
    bad = []
    for y in range(n):
        seen = {}
        for x in range(n):
            seen.setdefault(table[x][y], []).append(x)
        for xs in seen.values():
            if len(xs) > 1:
                bad.extend((x, y) for x in xs)
    if bad:
        raise AxiomViolation("Q2", min(bad))
    for x, y, z in itertools.product(range(n), repeat=3):
        if table[table[x][y]][z] != table[table[x][z]][table[y][z]]:
            raise AxiomViolation("Q3", (x, y, z))


def from_table(rows: Sequence[Sequence[int]], name: str = "table") -> FiniteQuandle:
    """Validate a raw table and wrap it as a quandle."""
    n = len(rows)
    if n == 0:
        raise ValueError("a quandle needs at least one element")
    table = tuple(tuple(int(v) for v in row) for row in rows)
    for row in table:
        if len(row) != n:
            raise ValueError("table must be square, got a row of length %d" % len(row))
        for v in row:
            if not 0 <= v < n:
                raise ValueError("table entry %d outside 0..%d" % (v, n - 1))
    _check_axioms(table)
    inv = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            inv[table[x][y]][y] = x
    return FiniteQuandle(n, table, tuple(tuple(r) for r in inv), name)


def trivial(n: int) -> FiniteQuandle:
    return from_table([[x] * n for x in range(n)], "trivial:%d" % n)


def dihedral(n: int) -> FiniteQuandle:
    return from_table([[(2 * y - x) % n for y in range(n)] for x in range(n)],
                      "dihedral:%d" % n)


def alexander(modulus: int, omega: int) -> FiniteQuandle:
    """The quandle on Z/N with x ◁ y = ωx + (1-ω)y."""
    if modulus < 1 or math.gcd(omega, modulus) != 1:
        raise BadUnit(omega, modulus)
    N, w = modulus, omega % modulus
    return from_table([[(w * x + (1 - w) * y) % N for y in range(N)] for x in range(N)],
                      "alexander:%d:%d" % (modulus, omega))


def read_table(path) -> list:
    """Read the plain-text table format: n, then n rows of n integers."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("%s: empty quandle file" % path)
    n = int(lines[0])
    rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
    if len(rows) != n:
        raise ValueError("%s: expected %d rows, found %d" % (path, n, len(rows)))
    return rows


def write_table(Q: FiniteQuandle, path) -> None:
    with open(path, "w") as fh:
        fh.write("# %s\n%d\n" % (Q.name, Q.size))
        for row in Q.table:
            fh.write(" ".join(map(str, row)) + "\n")


def make_quandle(desc) -> FiniteQuandle:
    """Build a quandle from a descriptor.

    Accepted forms are the strings ``trivial:n``, ``dihedral:n``,
    ``alexander:N:w`` and ``table:<path>``, or a raw square table.
    """
    if not isinstance(desc, str):
        return from_table(desc)
    kind, _, rest = desc.partition(":")
    try:
        if kind == "trivial":
            return trivial(int(rest))
        if kind == "dihedral":
            return dihedral(int(rest))
        if kind == "alexander":
            N, w = rest.split(":")
            return alexander(int(N), int(w))
    except ValueError as exc:
        raise ValueError("bad quandle descriptor %r: %s" % (desc, exc)) from None
    if kind == "table":
        return from_table(read_table(rest), desc)
    raise ValueError("unknown quandle descriptor %r" % desc)


@dataclass(frozen=True)
class InnerGroup:
    permutations: tuple  # sorted tuple of image tuples, identity first
    generators: tuple    # generators[y] is the right translation (• ◁ y)

    def kappa(self, y: int) -> Perm:
        return self.generators[y]

    @property
    def order(self) -> int:
        return len(self.permutations)


def compose(p: Perm, q: Perm) -> Perm:
    """Right-action product: apply p, then q."""
    return tuple(q[i] for i in p)


@functools.lru_cache(maxsize=64)
def inner_group(Q: FiniteQuandle) -> InnerGroup:
    gens = tuple(tuple(Q.table[x][y] for x in Q.elements) for y in Q.elements)
    identity = tuple(Q.elements)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                r = compose(p, g)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return InnerGroup(tuple(sorted(seen)), gens)


def orbits(Q: FiniteQuandle) -> list:
    """Inn(Q)-orbits of elements, each sorted, in order of least element."""
    left = set(Q.elements)
    out = []
    while left:
        start = min(left)
        orbit = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in Q.elements:
                z = Q.table[x][y]
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        out.append(sorted(orbit))
        left -= orbit
    return out


def is_connected(Q: FiniteQuandle) -> bool:
    return len(orbits(Q)) == 1


def _perm_order(p: Perm) -> int:
    order, seen = 1, set()
    for start in range(len(p)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = p[x]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def quandle_type(Q: FiniteQuandle) -> int:
    """Least n >= 1 with x ◁^n y = x for all x, y."""
    t = 1
    for g in inner_group(Q).generators:
        k = _perm_order(g)
        t = t * k // math.gcd(t, k)
    return t


def is_left_homogeneous(Q: FiniteQuandle) -> bool:
    """True iff every left translation x ↦ a ◁ x is a bijection."""
    return all(len(set(row)) == Q.size for row in Q.table)
