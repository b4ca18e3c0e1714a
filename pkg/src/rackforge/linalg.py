"""Exact integer and field linear algebra.

`IntegerMatrix` stores columns sparsely because boundary matrices of rack
spaces and their triangulations are overwhelmingly zero.  Two SNF routes are
provided: `smith_normal_form` keeps the unimodular transforms and works on a
dense copy; `invariant_factors` only wants the diagonal and first strips all
unit pivots sparsely, which is what makes the triangulation pipeline fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class IntegerMatrix:
    """rows x cols integer matrix with sparse columns."""

    __slots__ = ("rows", "cols", "_columns")

    def __init__(self, rows: int, cols: int, columns: Iterable[dict] = None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            self._columns = tuple({} for _ in range(cols))
        else:
            self._columns = tuple({i: v for i, v in c.items() if v} for c in columns)
            if len(self._columns) != cols:
                raise ValueError("expected %d columns, got %d" % (cols, len(self._columns)))
            for c in self._columns:
                for i in c:
                    if not 0 <= i < rows:
                        raise ValueError("row index %d out of range" % i)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int = None) -> "IntegerMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        columns = [{} for _ in range(cols)]
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    columns[j][i] = int(v)
        return cls(rows, cols, columns)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, [{j: 1} for j in range(n)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def column(self, j: int) -> dict:
        return self._columns[j]

    def __getitem__(self, idx):
        i, j = idx
        return self._columns[j].get(i, 0)

    def to_dense(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self._columns):
            for i, v in c.items():
                out[i][j] = v
        return out

    def transpose(self) -> "IntegerMatrix":
        columns = [{} for _ in range(self.rows)]
        for j, c in enumerate(self._columns):
            for i, v in c.items():
                columns[i][j] = v
        return IntegerMatrix(self.cols, self.rows, columns)

    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def is_zero(self) -> bool:
        return not any(self._columns)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %r @ %r" % (self.shape, other.shape))
        out = []
        for c in other._columns:
            acc = {}
            for k, v in c.items():
                for i, w in self._columns[k].items():
                    acc[i] = acc.get(i, 0) + w * v
            out.append(acc)
        return IntegerMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __hash__(self):
        return hash((self.rows, self.cols,
                     tuple(tuple(sorted(c.items())) for c in self._columns)))

    def __repr__(self):
        return "IntegerMatrix(%d, %d, nnz=%d)" % (self.rows, self.cols, self.nnz())

    def dump(self) -> str:
        """Plain-text rows of integers, for debugging."""
        return "\n".join(" ".join(map(str, row)) for row in self.to_dense())


@dataclass(frozen=True)
class SnfResult:
    diagonal: tuple
    left: IntegerMatrix
    right: IntegerMatrix


def _min_abs_entry(A, t, m, n):
    best = None
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def _snf_dense(A, L=None, R=None):
    """In-place SNF of the dense list-of-lists A; returns the nonzero diagonal.

    If L (m x m) and R (n x n) are given they accumulate the row and column
    operations so that L @ A_in @ R == A_out.
    """
    m = len(A)
    n = len(A[0]) if m else 0

    def swap_rows(i, k):
        if i != k:
            A[i], A[k] = A[k], A[i]
            if L is not None:
                L[i], L[k] = L[k], L[i]

    def swap_cols(j, k):
        if j != k:
            for row in A:
                row[j], row[k] = row[k], row[j]
            if R is not None:
                for row in R:
                    row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        rd, rs = A[dst], A[src]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if L is not None:
            ld, ls = L[dst], L[src]
            for j in range(m):
                if ls[j]:
                    ld[j] -= q * ls[j]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if R is not None:
            for row in R:
                if row[src]:
                    row[dst] -= q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = _min_abs_entry(A, t, m, n)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    clean = clean and A[t][j] == 0
            if not clean:
                # a smaller remainder is left in row or column t: make it the pivot
                cand = [(abs(A[i][t]), 0, i) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), 1, j) for j in range(t + 1, n) if A[t][j]]
                _, kind, k = min(cand)
                if kind == 0:
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if L is not None:
                L[t] = [-v for v in L[t]]
        diag.append(A[t][t])
        t += 1
    return diag


def smith_normal_form(M: IntegerMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms: left @ M @ right = D."""
    A = M.to_dense()
    L = [[int(i == j) for j in range(M.rows)] for i in range(M.rows)]
    R = [[int(i == j) for j in range(M.cols)] for i in range(M.cols)]
    diag = _snf_dense(A, L, R)
    return SnfResult(tuple(diag), IntegerMatrix.from_dense(L, M.rows),
                     IntegerMatrix.from_dense(R, M.cols))


def invariant_factors(M: IntegerMatrix) -> list:
    """Nonzero invariant factors of M in divisibility order (1s included)."""
    rows = {}
    colrows = {}
    for j in range(M.cols):
        c = M.column(j)
        if c:
            colrows[j] = set(c)
            for i, v in c.items():
                rows.setdefault(i, {})[j] = v
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(colrows):
            if c not in colrows:
                continue
            cand = [r for r in colrows[c] if abs(rows[r][c]) == 1]
            if not cand:
                continue
            r = min(cand, key=lambda r: (len(rows[r]), r))
            prow = rows.pop(r)
            for k in prow:
                colrows[k].discard(r)
            pv = prow[c]
            for r2 in sorted(colrows[c]):
                row2 = rows[r2]
                q = row2[c] * pv
                for k, v in prow.items():
                    nv = row2.get(k, 0) - q * v
                    if nv:
                        if k not in row2:
                            colrows[k].add(r2)
                        row2[k] = nv
                    else:
                        row2.pop(k, None)
                        colrows[k].discard(r2)
                if not row2:
                    del rows[r2]
            for k in prow:
                if not colrows.get(k, True):
                    del colrows[k]
            units += 1
            progress = True
    if not rows:
        return [1] * units
    rkeys = sorted(rows)
    ckeys = sorted(colrows)
    cidx = {c: j for j, c in enumerate(ckeys)}
    dense = []
    for r in rkeys:
        row = [0] * len(ckeys)
        for k, v in rows[r].items():
            row[cidx[k]] = v
        dense.append(row)
    return [1] * units + _snf_dense(dense)


def rank(M: IntegerMatrix) -> int:
    return len(invariant_factors(M))


def nullspace(rows: Sequence[Sequence], ncols: int, modulus: int = None) -> list:
    """Basis of {v : A v = 0} over Q (modulus None) or over Z/p (p prime).

    Vectors are returned as lists of Fractions or of ints in 0..p-1, one per
    free column in increasing order, each with a 1 in its own free column.
    """
    if modulus is None:
        A = [[Fraction(v) for v in row] for row in rows]
        inv = lambda a: 1 / a
        norm = lambda a: a
    else:
        p = modulus
        A = [[v % p for v in row] for row in rows]
        inv = lambda a: pow(a, -1, p)
        norm = lambda a: a % p
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = inv(A[r][c])
        A[r] = [norm(v * s) for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [norm(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    zero = Fraction(0) if modulus is None else 0
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for i, c in enumerate(pivots):
            v[c] = norm(-A[i][f])
        basis.append(v)
    return basis
