"""Averaging operators on rational rack cochains of a finite quandle.

With ``avg`` the uniform average over Q,

    φ_n^j(h)(x)  = avg_{y_1..y_j} h(x_1◁y_1, ..., x_j◁y_j, x_{j+1}, ..., x_n)
    D_n^j(k)(x)  = avg_{y_1..y_j} k(x_1◁y_1, ..., x_{j-1}◁y_{j-1}, x_j, y_j, x_{j+1}, ..., x_{n-1})

with φ^0 = id, φ_n^{n+1} = φ_n^n and D_n^n = 0.  On any finite quandle

    δ D_n^j + D_{n+1}^j δ = (-1)^j (φ_n^j - φ_n^{j-1}),

so a cocycle f telescopes to φ_n^n(f) plus a coboundary.  φ_n^n(f) is a
constant when Q is left-homogeneous (every x ↦ a◁x bijective); without that
it need not be, see `left_average_failures`.  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IndexOutOfRange, NoConsistentSigns, NotACocycle, NotHomogeneous
from .homology import QQ, Cochain, boundary_matrix, coboundary, tuples
from .linalg import nullspace
from .quandle import FiniteQuandle, is_left_homogeneous

# Cochains here are homology.Cochain over QQ.
RationalCochain = Cochain

# (cross, rhs) in  δ∘D^j + cross·D^j∘δ = rhs(j)·(φ^j − φ^{j−1}), rhs(j) = (-1)^j.
HOMOTOPY_CROSS_SIGN = 1


def homotopy_rhs_sign(j: int) -> int:
    return -1 if j % 2 else 1


def rational_cochain(Q: FiniteQuandle, degree: int, f) -> Cochain:
    """From a callable on tuples or a dict of values (missing entries are 0)."""
    if callable(f):
        return Cochain.from_function(Q.size, degree, f, QQ)
    return Cochain.from_function(Q.size, degree, lambda t: f.get(t, 0), QQ)


def indicator(Q: FiniteQuandle, degree: int, t: tuple) -> Cochain:
    t = tuple(t)
    return Cochain.from_function(Q.size, degree, lambda s: int(s == t), QQ)


def _check_homogeneous(Q: FiniteQuandle):
    if not is_left_homogeneous(Q):
        warnings.warn("%s is not left-homogeneous; the top average need not be constant" % Q,
                      stacklevel=3)


def face0(h: Cochain, i: int) -> Cochain:
    n = h.degree
    if not 1 <= i <= n + 1:
        raise IndexOutOfRange("face index %d outside 1..%d" % (i, n + 1))
    vals = h.values
    return Cochain(n + 1, h.size,
                   {x: vals[x[:i - 1] + x[i:]] for x in tuples(h.size, n + 1)}, h.ring)


def face1(h: Cochain, i: int, Q: FiniteQuandle) -> Cochain:
    n = h.degree
    if not 1 <= i <= n + 1:
        raise IndexOutOfRange("face index %d outside 1..%d" % (i, n + 1))
    T, vals = Q.table, h.values
    out = {}
    for x in tuples(h.size, n + 1):
        xi = x[i - 1]
        out[x] = vals[tuple(T[a][xi] for a in x[:i - 1]) + x[i:]]
    return Cochain(n + 1, h.size, out, h.ring)


def face_coboundary(h: Cochain, Q: FiniteQuandle) -> Cochain:
    """Σ_i (-1)^i (∂_i^0 h - ∂_i^1 h); equals homology.coboundary."""
    out = {x: Fraction(0) for x in tuples(h.size, h.degree + 1)}
    for i in range(1, h.degree + 2):
        s = -1 if i % 2 else 1
        a, b = face0(h, i).values, face1(h, i, Q).values
        for x in out:
            out[x] += s * (a[x] - b[x])
    return Cochain(h.degree + 1, h.size, out, QQ)


def _integer_values(values: dict) -> tuple:
    """(integer values, common denominator) so sums can run over ints."""
    den = 1
    for v in values.values():
        d = Fraction(v).denominator
        den = den * d // math.gcd(den, d)
    return {t: int(Fraction(v) * den) for t, v in values.items()}, den


def phi_avg(h: Cochain, j: int, Q: FiniteQuandle) -> Cochain:
    n = h.degree
    if not 0 <= j <= n + 1:
        raise IndexOutOfRange("φ index %d outside 0..%d" % (j, n + 1))
    j = min(j, n)
    if j == 0:
        return h
    _check_homogeneous(Q)
    T, q = Q.table, Q.size
    vals, den = _integer_values(h.values)
    denom = den * q ** j
    out = {}
    for x in tuples(q, n):
        cols = [[T[x[k]][y] for y in range(q)] for k in range(j)]
        tail = x[j:]
        out[x] = Fraction(sum(vals[head + tail] for head in itertools.product(*cols)), denom)
    return Cochain(n, h.size, out, QQ)


def d_avg(k: Cochain, j: int, Q: FiniteQuandle) -> Cochain:
    n = k.degree
    if not 1 <= j <= n:
        raise IndexOutOfRange("D index %d outside 1..%d" % (j, n))
    q = Q.size
    if j == n:
        return Cochain.constant(q, n - 1, 0, QQ)
    T = Q.table
    vals, den = _integer_values(k.values)
    denom = den * q ** j
    out = {}
    for x in tuples(q, n - 1):
        cols = [[T[x[m]][y] for y in range(q)] for m in range(j - 1)]
        cols.append([x[j - 1]])
        cols.append(range(q))
        tail = x[j:]
        out[x] = Fraction(sum(vals[head + tail] for head in itertools.product(*cols)), denom)
    return Cochain(n - 1, q, out, QQ)


def left_average(K, x: int, Q: FiniteQuandle) -> Fraction:
    """(1/|Q|) Σ_y K(x◁y) for K a sequence indexed by Q."""
    return Fraction(sum(K[Q.table[x][y]] for y in range(Q.size)), Q.size)


def left_average_failures(Q: FiniteQuandle) -> list:
    """Witnesses (a, x, x') where the average of the indicator of {a} over
    x◁Q differs from that over x'◁Q.  Empty iff Q is left-homogeneous; this
    is exactly what makes φ_n^n land in constants.
    """
    bad = []
    for a in range(Q.size):
        K = [int(b == a) for b in range(Q.size)]
        avgs = [left_average(K, x, Q) for x in range(Q.size)]
        for x in range(1, Q.size):
            if avgs[x] != avgs[0]:
                bad.append((a, 0, x))
    return bad


# -- commutation identities ---------------------------------------------------

IDENTITIES = (
    "face0(D^j h, i) == face1(D^j h, i)            1<=i<=j<=n",
    "D^j(face0(h, i)) == D^j(face1(h, i))          1<=i<=j<=n",
    "D^j(face0(h, j+1)) == phi^(j-1)(h)            1<=j<=n",
    "D^j(face1(h, j+1)) == phi^j(h)                1<=j<=n",
    "D^j(face0(h, i+1)) == face0(D^j h, i)         1<=j<i<=n",
    "D^j(face1(h, i+1)) == face1(D^j h, i)         1<=j<i<=n",
)


@dataclass
class IdentityReport:
    quandle: str
    degree: int
    checked: int = 0
    failures: list = field(default_factory=list)  # (identity no., i, j, witness tuple)

    @property
    def ok(self) -> bool:
        return not self.failures


def _first_difference(a: Cochain, b: Cochain):
    return next((t for t, v in a.values.items() if b.values[t] != v), None)


def _face(h, i, eps, Q):
    return face1(h, i, Q) if eps else face0(h, i)


def _identity_pairs(h: Cochain, Q: FiniteQuandle):
    """Yield (identity no., i, j, lhs, rhs) for a cochain h of degree n."""
    n = h.degree
    D = {j: d_avg(h, j, Q) for j in range(1, n + 1)}
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            yield 1, i, j, face0(D[j], i), face1(D[j], i, Q)
            yield 2, i, j, d_avg(face0(h, i), j, Q), d_avg(face1(h, i, Q), j, Q)
        yield 3, j + 1, j, d_avg(face0(h, j + 1), j, Q), phi_avg(h, j - 1, Q)
        yield 4, j + 1, j, d_avg(face1(h, j + 1, Q), j, Q), phi_avg(h, j, Q)
        for i in range(j + 1, n + 1):
            for eps in (0, 1):
                yield 5 + eps, i, j, d_avg(_face(h, i + 1, eps, Q), j, Q), \
                    _face(D[j], i, eps, Q)


def verify_commutation_identities(Q: FiniteQuandle, n: int, cochains=None,
                                  samples: int = 20, seed: int = 0) -> IdentityReport:
    """Check the six identities on degree-n cochains.

    By default every indicator cochain is used for n <= 3 (which covers all
    cochains, everything being linear) and ``samples`` seeded random ones
    above that.
    """
    if cochains is None:
        if n <= 3:
            cochains = [indicator(Q, n, t) for t in tuples(Q.size, n)]
        else:
            rng = random.Random(seed)
            cochains = [Cochain.random(Q.size, n, rng) for _ in range(samples)]
    report = IdentityReport(str(Q), n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for h in cochains:
            for no, i, j, lhs, rhs in _identity_pairs(h, Q):
                report.checked += 1
                w = _first_difference(lhs, rhs)
                if w is not None:
                    report.failures.append((no, i, j, w))
    return report


# -- homotopy signs and trivialization --------------------------------------

@dataclass(frozen=True)
class HomotopyReport:
    quandle: str
    degree: int
    j: int
    signs: tuple  # all (cross, rhs) consistent on every tested cochain

    @property
    def unique(self):
        return len(self.signs) == 1


def _homotopy_parts(h: Cochain, j: int, Q: FiniteQuandle):
    n = h.degree
    dD = coboundary(d_avg(h, j, Q), Q) if n >= 1 else None
    Dd = d_avg(coboundary(h, Q), j, Q)
    diff = phi_avg(h, j, Q) - phi_avg(h, j - 1, Q)
    return dD, Dd, diff


def _signs_hold(parts, cross, rhs) -> bool:
    dD, Dd, diff = parts
    return all(dD.values[t] + cross * Dd.values[t] == rhs * diff.values[t]
               for t in diff.values)


def homotopy_identity_check(Q: FiniteQuandle, n: int, j: int, samples: int = 10,
                            seed: int = 0) -> HomotopyReport:
    """Find the signs with δD^j + cross·D^jδ = rhs·(φ^j - φ^{j-1}) on degree n.

    The search runs over indicator cochains, then the surviving choices are
    re-checked on seeded random cochains.  Raises NoConsistentSigns if none
    survive.
    """
    if not 1 <= j <= n:
        raise IndexOutOfRange("homotopy index %d outside 1..%d" % (j, n))
    rng = random.Random(seed)
    cochains = [indicator(Q, n, t) for t in tuples(Q.size, n)]
    cochains += [Cochain.random(Q.size, n, rng) for _ in range(samples)]
    alive = [(c, r) for c in (1, -1) for r in (1, -1)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for h in cochains:
            parts = _homotopy_parts(h, j, Q)
            alive = [s for s in alive if _signs_hold(parts, *s)]
            if not alive:
                raise NoConsistentSigns("no sign choice works for %s, n=%d, j=%d" % (Q, n, j))
    return HomotopyReport(str(Q), n, j, tuple(alive))


@dataclass(frozen=True)
class Trivialization:
    constant: Fraction
    primitive: Cochain  # g with f = constant + δg


def trivialize_cocycle(f: Cochain, Q: FiniteQuandle) -> Trivialization:
    """Write a rational cocycle f of degree n >= 1 as c + δg.

    g = Σ_{j=1}^{n} (-1)^{j+1} D_n^j(f), c = φ_n^n(f) (constant).
    """
    if not is_left_homogeneous(Q):
        raise NotHomogeneous("%s is not left-homogeneous" % Q)
    n = f.degree
    if n < 1:
        raise ValueError("degree must be at least 1")
    f = Cochain(n, f.size, {t: Fraction(v) for t, v in f.values.items()}, QQ)
    df = coboundary(f, Q)
    w = next((t for t, v in df.values.items() if v), None)
    if w is not None:
        raise NotACocycle(w)
    top = phi_avg(f, n, Q)
    c = top.values[next(iter(top.values))]
    g = Cochain.constant(Q.size, n - 1, 0, QQ)
    for j in range(1, n + 1):
        term = d_avg(f, j, Q)
        g = g + term if j % 2 else g - term
    return Trivialization(c, g)


def reconstruct(t: Trivialization, Q: FiniteQuandle) -> Cochain:
    dg = coboundary(t.primitive, Q)
    return Cochain(dg.degree, dg.size, {x: v + t.constant for x, v in dg.values.items()}, QQ)


def cocycle_basis(Q: FiniteQuandle, n: int) -> list:
    """A basis of rational rack n-cocycles (the kernel of δ over Q)."""
    d = boundary_matrix(Q, n + 1)  # columns: (n+1)-tuples, rows: n-tuples
    rows = d.transpose().to_dense()
    basis = nullspace(rows, d.rows)
    keys = list(tuples(Q.size, n))
    return [Cochain(n, Q.size, dict(zip(keys, v)), QQ) for v in basis]
