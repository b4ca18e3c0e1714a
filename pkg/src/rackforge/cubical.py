"""Truncated cubical sets, their canonical triangulation, and realization maps.

A cubical set here has no degeneracies.  Cells of degree p are indexed
``0..len(cells[p])-1``; face maps are stored as index tuples keyed by
``(p, i, eps)`` with ``1 <= i <= p``.

The triangulation T(X) has a k-simplex ``(x; S_1; ...; S_k)`` for every
n-cell x (n <= P) and every ordered k-partition S of {1..n}.  Its faces:

    d_0       = (d^1_{S_1} x; θ(S_2); ...; θ(S_k))
    d_i       = merge S_i and S_{i+1}             (0 < i < k)
    d_k       = (d^0_{S_k} x; θ(S_1); ...; θ(S_{k-1}))

where d^ε_S applies the single faces at the indices of S in descending
order and θ relabels the surviving indices order-preservingly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CoordinateOutOfRange, DegreeOutOfTruncation, TruncationTooLarge
from .homology import HomologyResult, homology_of_pair
from .linalg import IntegerMatrix
from .quandle import FiniteQuandle, compose, inner_group

MAX_CELLS = 2_000_000


@dataclass(frozen=True)
class TruncatedCubicalSet:
    max_degree: int
    cells: tuple   # cells[p] is a tuple of labels
    faces: dict    # (p, i, eps) -> tuple of indices into cells[p-1]

    def face(self, p: int, i: int, eps: int, x: int) -> int:
        return self.faces[(p, i, eps)][x]

    def face_set(self, p: int, S, eps: int, x: int) -> int:
        """Apply the faces at the indices in S, largest index first."""
        for i in sorted(S, reverse=True):
            x = self.faces[(p, i, eps)][x]
            p -= 1
        return x

    def num_cells(self, p: int) -> int:
        return len(self.cells[p])


@dataclass(frozen=True)
class OrderedPartition:
    n: int
    blocks: tuple  # tuple of sorted tuples, 1-based

    def __post_init__(self):
        seen = [e for b in self.blocks for e in b]
        if any(not b for b in self.blocks):
            raise ValueError("empty block in %r" % (self.blocks,))
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError("%r is not a partition of [%d]" % (self.blocks, self.n))

    @property
    def k(self) -> int:
        return len(self.blocks)

    def __str__(self):
        return ";".join("{%s}" % ",".join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True)
class RightAction:
    """A finite right Inn(Q)-set Y, given by y·κ(x) for each y, x."""

    size: int
    table: tuple  # table[y][x] = y·κ(x)
    name: str = "Y"


def point_action(Q: FiniteQuandle) -> RightAction:
    return RightAction(1, ((0,) * Q.size,), "point")


def quandle_action(Q: FiniteQuandle) -> RightAction:
    return RightAction(Q.size, Q.table, "quandle")


def inner_action(Q: FiniteQuandle) -> RightAction:
    """Y = Inn(Q) acted on by right multiplication with κ(x) = (• ◁ x)."""
    G = inner_group(Q)
    idx = {g: i for i, g in enumerate(G.permutations)}
    table = tuple(tuple(idx[compose(g, G.kappa(x))] for x in Q.elements)
                  for g in G.permutations)
    return RightAction(len(G.permutations), table, "inner")


def rack_space(Q: FiniteQuandle, Y: RightAction = None, P: int = 3) -> TruncatedCubicalSet:
    """Cells Y x Q^p for p <= P with the rack-space face maps."""
    if P < 1:
        raise ValueError("truncation degree must be at least 1")
    Y = Y or point_action(Q)
    q = Q.size
    total = sum(Y.size * q ** p for p in range(P + 1))
    if total > MAX_CELLS:
        raise TruncationTooLarge("%d cells exceeds the budget of %d" % (total, MAX_CELLS))
    cells = tuple(tuple((y,) + t for y in range(Y.size)
                        for t in itertools.product(range(q), repeat=p))
                  for p in range(P + 1))

    def index(label):
        i = 0
        for x in label[1:]:
            i = i * q + x
        return label[0] * q ** (len(label) - 1) + i

    faces = {}
    for p in range(1, P + 1):
        for j in range(1, p + 1):
            f0, f1 = [], []
            for label in cells[p]:
                y, xs = label[0], label[1:]
                xj = xs[j - 1]
                f0.append(index((y,) + xs[:j - 1] + xs[j:]))
                f1.append(index((Y.table[y][xj],)
                                + tuple(Q.table[x][xj] for x in xs[:j - 1]) + xs[j:]))
            faces[(p, j, 0)] = tuple(f0)
            faces[(p, j, 1)] = tuple(f1)
    return TruncatedCubicalSet(P, cells, faces)


def cubical_identity_failures(X: TruncatedCubicalSet) -> list:
    """Witnesses (p, i, j, eps, eta, x) where d^η_{j-1} d^ε_i != d^ε_i d^η_j."""
    bad = []
    for p in range(2, X.max_degree + 1):
        for i in range(1, p):
            for j in range(i + 1, p + 1):
                for eps in (0, 1):
                    for eta in (0, 1):
                        a = X.faces[(p, i, eps)]
                        b = X.faces[(p - 1, j - 1, eta)]
                        c = X.faces[(p, j, eta)]
                        d = X.faces[(p - 1, i, eps)]
                        for x in range(X.num_cells(p)):
                            if b[a[x]] != d[c[x]]:
                                bad.append((p, i, j, eps, eta, x))
    return bad


def cubical_boundary_matrix(X: TruncatedCubicalSet, p: int) -> IntegerMatrix:
    """∂ = Σ (-1)^i (d^0_i - d^1_i); for p = 0 the 0 x |X_0| zero map."""
    if p == 0:
        return IntegerMatrix(0, X.num_cells(0))
    columns = [{} for _ in range(X.num_cells(p))]
    for i in range(1, p + 1):
        s = -1 if i % 2 else 1
        f0, f1 = X.faces[(p, i, 0)], X.faces[(p, i, 1)]
        for x, col in enumerate(columns):
            col[f0[x]] = col.get(f0[x], 0) + s
            col[f1[x]] = col.get(f1[x], 0) - s
    return IntegerMatrix(X.num_cells(p - 1), X.num_cells(p), columns)


def cubical_homology(X: TruncatedCubicalSet, n: int) -> HomologyResult:
    if not 0 <= n <= X.max_degree - 1:
        raise DegreeOutOfTruncation("degree %d needs cells up to %d, truncation is %d"
                                    % (n, n + 1, X.max_degree))
    return homology_of_pair(cubical_boundary_matrix(X, n),
                            cubical_boundary_matrix(X, n + 1), n)


# -- triangulation ----------------------------------------------------------

def ordered_partitions(n: int, k: int) -> list:
    """All ordered k-partitions of {1..n}, ordered by block assignment."""
    if k == 0:
        return [OrderedPartition(0, ())] if n == 0 else []
    out = []
    for assign in itertools.product(range(k), repeat=n):
        if len(set(assign)) != k:
            continue
        blocks = tuple(tuple(e + 1 for e in range(n) if assign[e] == b) for b in range(k))
        out.append(OrderedPartition(n, blocks))
    return out


def relabel(S: Sequence[int], block: Sequence[int]) -> tuple:
    """θ_S applied to a block disjoint from S."""
    return tuple(e - sum(1 for s in S if s < e) for e in block)


@dataclass(frozen=True)
class Simplex:
    cell_degree: int
    cell: int
    partition: OrderedPartition


@dataclass(frozen=True)
class TruncatedDeltaSet:
    max_degree: int
    simplices: tuple  # simplices[k] is a tuple of Simplex
    faces: tuple      # faces[k][s] = tuple of k+1 face indices (empty for k = 0)
    source: TruncatedCubicalSet = field(default=None, compare=False, repr=False)
    lookup: tuple = field(default=None, compare=False, repr=False)

    def index(self, k: int, simplex: Simplex) -> int:
        return self.lookup[k][simplex]

    def num_simplices(self, k: int) -> int:
        return len(self.simplices[k])


def simplex_face(X: TruncatedCubicalSet, s: Simplex, i: int) -> Simplex:
    blocks = s.partition.blocks
    k, n = len(blocks), s.cell_degree
    if i == 0:
        S = blocks[0]
        x = X.face_set(n, S, 1, s.cell)
        rest = tuple(relabel(S, b) for b in blocks[1:])
        return Simplex(n - len(S), x, OrderedPartition(n - len(S), rest))
    if i == k:
        S = blocks[-1]
        x = X.face_set(n, S, 0, s.cell)
        rest = tuple(relabel(S, b) for b in blocks[:-1])
        return Simplex(n - len(S), x, OrderedPartition(n - len(S), rest))
    merged = tuple(sorted(blocks[i - 1] + blocks[i]))
    return Simplex(n, s.cell, OrderedPartition(n, blocks[:i - 1] + (merged,) + blocks[i + 1:]))


def triangulate(X: TruncatedCubicalSet) -> TruncatedDeltaSet:
    P = X.max_degree
    parts = {(n, k): ordered_partitions(n, k) for n in range(P + 1) for k in range(n + 1)}
    simplices = []
    for k in range(P + 1):
        level = [Simplex(n, x, S) for n in range(k, P + 1)
                 for x in range(X.num_cells(n)) for S in parts[(n, k)]]
        simplices.append(tuple(level))
    lookup = [{s: i for i, s in enumerate(level)} for level in simplices]
    faces = [tuple(() for _ in simplices[0])]
    for k in range(1, P + 1):
        faces.append(tuple(tuple(lookup[k - 1][simplex_face(X, s, i)] for i in range(k + 1))
                           for s in simplices[k]))
    return TruncatedDeltaSet(P, tuple(simplices), tuple(faces), X, tuple(lookup))


def simplicial_identity_failures(T: TruncatedDeltaSet) -> list:
    """Witnesses (k, i, j, s) where d_{j-1} d_i != d_i d_j."""
    bad = []
    for k in range(2, T.max_degree + 1):
        for s, fs in enumerate(T.faces[k]):
            for j in range(1, k + 1):
                for i in range(j):
                    if T.faces[k - 1][fs[i]][j - 1] != T.faces[k - 1][fs[j]][i]:
                        bad.append((k, i, j, s))
    return bad


def delta_boundary_matrix(T: TruncatedDeltaSet, k: int) -> IntegerMatrix:
    if k == 0:
        return IntegerMatrix(0, T.num_simplices(0))
    columns = []
    for fs in T.faces[k]:
        col = {}
        for i, f in enumerate(fs):
            col[f] = col.get(f, 0) + (-1 if i % 2 else 1)
        columns.append(col)
    return IntegerMatrix(T.num_simplices(k - 1), T.num_simplices(k), columns)


def delta_homology(T: TruncatedDeltaSet, n: int) -> HomologyResult:
    if not 0 <= n <= T.max_degree - 1:
        raise DegreeOutOfTruncation("degree %d needs simplices up to %d, truncation is %d"
                                    % (n, n + 1, T.max_degree))
    return homology_of_pair(delta_boundary_matrix(T, n), delta_boundary_matrix(T, n + 1), n)


def export_delta_set(T: TruncatedDeltaSet, k: int) -> dict:
    """JSON-ready record of the degree-k simplices and their faces."""
    X = T.source
    out = []
    for s in T.simplices[k]:
        label = X.cells[s.cell_degree][s.cell] if X is not None else s.cell
        out.append({"cell": list(label), "cell_degree": s.cell_degree,
                    "partition": [list(b) for b in s.partition.blocks]})
    return {"degree": k, "simplices": out, "faces": [list(f) for f in T.faces[k]]}


# -- realization maps -------------------------------------------------------

def phi_point(t: Sequence, cell: int) -> tuple:
    """Send (t, x) in I^p x X_p to (barycentric point, simplex) of T(X).

    Coordinates are sorted descending, ties by ascending index; the simplex
    is (x; {i_1}; ...; {i_p}).
    """
    t = [Fraction(v) for v in t]
    for v in t:
        if not 0 <= v <= 1:
            raise CoordinateOutOfRange("coordinate %s outside [0, 1]" % v)
    p = len(t)
    order = sorted(range(p), key=lambda i: (-t[i], i))
    sorted_t = [t[i] for i in order]
    bary = [1 - sorted_t[0]] if p else [Fraction(1)]
    bary += [sorted_t[m] - sorted_t[m + 1] for m in range(p - 1)]
    if p:
        bary.append(sorted_t[-1])
    part = OrderedPartition(p, tuple((i + 1,) for i in order))
    return tuple(bary), Simplex(p, cell, part)


def psi_point(b: Sequence, s: Simplex) -> tuple:
    """Inverse of `phi_point`: t_i is the barycentric mass from i's block on."""
    b = [Fraction(v) for v in b]
    blocks = s.partition.blocks
    if len(b) != len(blocks) + 1:
        raise ValueError("%d barycentric coordinates for a %d-simplex" % (len(b), len(blocks)))
    if any(v < 0 for v in b) or sum(b) != 1:
        raise CoordinateOutOfRange("not a point of the simplex: %r" % (b,))
    tails = [sum(b[j:], Fraction(0)) for j in range(len(b))]
    t = [Fraction(0)] * s.cell_degree
    for j, block in enumerate(blocks, start=1):
        for i in block:
            t[i - 1] = tails[j]
    return tuple(t), s.cell


def cube_canonical(X: TruncatedCubicalSet, t: Sequence, p: int, cell: int) -> tuple:
    """Canonical representative of (t, x) in the realization ‖X‖.

    Every coordinate equal to 0 or 1 is pushed into the cell through the
    matching face map, so the result has all coordinates strictly inside.
    """
    t = list(t)
    for i in range(p, 0, -1):
        if t[i - 1] in (0, 1):
            cell = X.faces[(p, i, int(t[i - 1]))][cell]
            del t[i - 1]
            p -= 1
    return tuple(t), p, cell


def simplex_coface(b: Sequence, i: int) -> tuple:
    """The coface ε^i: insert a zero barycentric coordinate at position i."""
    b = tuple(b)
    return b[:i] + (Fraction(0),) + b[i:]
