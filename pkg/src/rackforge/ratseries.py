"""Truncated integer power series and rational homotopy ranks of rack spaces.

The Poincaré series of the rack space of a quandle Q is ``1/(1 - s·P_Q(s))``
(and ``P_G(s)/(1 - s·P_Q(s))`` with a G-fibre).  Ranks are the exponents of
its Milnor-Moore factorization

    F(s) = Π (1 + s^{odd k})^{u_k} / (1 - s^{even k})^{u_k},

peeled off degree by degree.  This is only meaningful under the hypotheses
that make the cohomology a Hopf algebra of the above shape (compact connected
structure group, invariant forms computing the cohomology); nothing here
checks those.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NegativeRank, NonUnitConstantTerm


@dataclass(frozen=True)
class IntSeries:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")

    @classmethod
    def from_poly(cls, poly: Sequence[int], N: int) -> "IntSeries":
        c = list(poly[:N + 1]) + [0] * max(0, N + 1 - len(poly))
        return cls(tuple(c))

    @classmethod
    def one(cls, N: int) -> "IntSeries":
        return cls.from_poly([1], N)

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def _match(self, other):
        if isinstance(other, int):
            other = IntSeries.from_poly([other], self.N)
        return other, min(self.N, other.N)

    def __add__(self, other):
        other, N = self._match(other)
        return IntSeries(tuple(self[k] + other[k] for k in range(N + 1)))

    __radd__ = __add__

    def __neg__(self):
        return IntSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other, N = self._match(other)
        return IntSeries(tuple(self[k] - other[k] for k in range(N + 1)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other, N = self._match(other)
        a, b = self.coeffs, other.coeffs
        out = [0] * (N + 1)
        for i in range(N + 1):
            if a[i]:
                ai = a[i]
                for j in range(N + 1 - i):
                    out[i + j] += ai * b[j]
        return IntSeries(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = IntSeries.one(self.N)
        base = self
        if e < 0:
            base, e = base.inverse(), -e
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "IntSeries":
        a = self.coeffs
        if a[0] not in (1, -1):
            raise NonUnitConstantTerm("constant term %d is not a unit in Z" % a[0])
        b = [0] * len(a)
        b[0] = a[0]
        for k in range(1, len(a)):
            b[k] = -a[0] * sum(a[i] * b[k - i] for i in range(1, k + 1))
        return IntSeries(tuple(b))

    def __truediv__(self, other):
        other, _ = self._match(other)
        return self * other.inverse()


def series_mul(a: IntSeries, b: IntSeries) -> IntSeries:
    return a * b


def series_inverse(a: IntSeries) -> IntSeries:
    return a.inverse()


def poincare_poly(betti: Sequence[int], N: int) -> IntSeries:
    return IntSeries.from_poly(list(betti), N)


def _shift(a: IntSeries) -> IntSeries:
    return IntSeries((0,) + a.coeffs[:-1])


def bq_series(betti_Q: Sequence[int], N: int) -> IntSeries:
    """1 / (1 - s·P_Q(s)): degree n collects dim H^i(Q^j) over i + j = n."""
    return (1 - _shift(poincare_poly(betti_Q, N))).inverse()


def bgq_series(betti_Q: Sequence[int], betti_G: Sequence[int], N: int) -> IntSeries:
    return poincare_poly(betti_G, N) * bq_series(betti_Q, N)


def euler_factor(k: int, u: int, N: int) -> IntSeries:
    """(1 + s^k)^u for odd k, (1 - s^k)^(-u) for even k."""
    if k % 2:
        return IntSeries.from_poly([1] + [0] * (k - 1) + [1], N) ** u
    return IntSeries.from_poly([1] + [0] * (k - 1) + [-1], N) ** (-u)


def euler_product(u: Sequence[int], N: int) -> IntSeries:
    """Product of the Euler factors for ranks u[0] = u_1, u[1] = u_2, ..."""
    R = IntSeries.one(N)
    for k, uk in enumerate(u[:N], start=1):
        if uk:
            R = R * euler_factor(k, uk, N)
    return R


def extract_ranks(F: IntSeries, N: int = None) -> list:
    """Ranks u_1..u_N with euler_product(u, N) == F through degree N."""
    N = F.N if N is None else N
    if F[0] != 1:
        raise ValueError("series must start with 1")
    F = IntSeries(F.coeffs[:N + 1])
    R = IntSeries.one(N)
    ranks = []
    for k in range(1, N + 1):
        u = F[k] - R[k]
        if u < 0:
            raise NegativeRank(k, u)
        ranks.append(u)
        if u:
            R = R * euler_factor(k, u, N)
    return ranks


@dataclass(frozen=True)
class FibrationReport:
    ranks_total: tuple
    ranks_base: tuple
    ranks_fibre: tuple
    discrepancy: tuple = None  # (k, total, base + fibre) at the first mismatch

    @property
    def ok(self) -> bool:
        return self.discrepancy is None


def fibration_rank_check(betti_Q: Sequence[int], betti_G: Sequence[int],
                         ranks_G: Sequence[int], N: int) -> FibrationReport:
    """Check ranks(B_G Q) = ranks(BQ) + ranks(G) degree by degree."""
    total = extract_ranks(bgq_series(betti_Q, betti_G, N), N)
    base = extract_ranks(bq_series(betti_Q, N), N)
    fibre = list(ranks_G[:N]) + [0] * max(0, N - len(ranks_G))
    bad = next(((k + 1, total[k], base[k] + fibre[k]) for k in range(N)
                if total[k] != base[k] + fibre[k]), None)
    return FibrationReport(tuple(total), tuple(base), tuple(fibre), bad)


def sphere_betti(d: int) -> list:
    return [1] + [0] * (d - 1) + [1] if d else [2]


def ranks_tsv(ranks: Sequence[int]) -> str:
    lines = ["k\trank"] + ["%d\t%d" % (k, u) for k, u in enumerate(ranks, start=1)]
    return "\n".join(lines) + "\n"
