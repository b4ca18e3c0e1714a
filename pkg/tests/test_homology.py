import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ as SZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from rackforge.errors import BadUnit, NotAComplex
from rackforge.homology import (QQ, ZZ, CmodZ, Cochain, FormalChain, HomologyResult, ZMod,
                                boundary_matrix, clauwens_h2, clauwens_h2_chain_class,
                                clauwens_h2_class, coboundary, det_cocycle_check,
                                homology_of_pair, is_rack_cocycle, rack_boundary,
                                rack_homology, random_rational_triples, tuple_index, tuples)
from rackforge.linalg import IntegerMatrix
from rackforge.quandle import alexander, dihedral, orbits, trivial

D3 = dihedral(3)


def gen(*t):
    return FormalChain.generator(*t)


def test_boundary_examples():
    assert not rack_boundary(gen(1), D3)
    assert rack_boundary(gen(0, 1), D3).terms == {(0,): 1, (2,): -1}
    assert not rack_boundary(rack_boundary(gen(0, 1, 2), D3), D3)
    assert rack_boundary(FormalChain(0, {(): 3}), D3).degree == 0


def test_chain_arithmetic():
    c = gen(0, 1) + 2 * gen(1, 2) - gen(0, 1)
    assert c.terms == {(1, 2): 2}
    assert (-c).terms == {(1, 2): -2}
    with pytest.raises(ValueError):
        FormalChain(2, {(0,): 1})


def test_boundary_matrix_shapes():
    assert boundary_matrix(D3, 1).shape == (1, 3) and boundary_matrix(D3, 1).is_zero()
    assert boundary_matrix(D3, 0).shape == (0, 1)
    d2 = boundary_matrix(D3, 2)
    assert d2.shape == (3, 9)
    assert d2.column(tuple_index((0, 1), 3)) == {0: 1, 2: -1}
    for n in range(1, 4):
        assert boundary_matrix(trivial(3), n).is_zero()


@pytest.mark.parametrize("Q", [D3, dihedral(4), alexander(5, 2)], ids=str)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_matrix_columns_match_chain_boundary(Q, n):
    d = boundary_matrix(Q, n)
    for t in tuples(Q.size, n):
        expect = {tuple_index(f, Q.size): c for f, c in rack_boundary(gen(*t), Q).terms.items()}
        assert d.column(tuple_index(t, Q.size)) == expect


@pytest.mark.parametrize("Q", [trivial(2), D3, dihedral(4), alexander(5, 2)], ids=str)
def test_boundary_squares_to_zero(Q):
    for n in range(1, 5):
        assert (boundary_matrix(Q, n) @ boundary_matrix(Q, n + 1)).is_zero()


def test_homology_of_pair():
    zero = IntegerMatrix(1, 1)
    assert homology_of_pair(zero, zero) == HomologyResult(None, 1, ())
    assert homology_of_pair(zero, IntegerMatrix.from_dense([[3]])).torsion == (3,)
    assert homology_of_pair(zero, IntegerMatrix.from_dense([[3]])).betti == 0
    with pytest.raises(NotAComplex):
        one = IntegerMatrix.from_dense([[1]])
        homology_of_pair(one, one)
    with pytest.raises(NotAComplex):
        homology_of_pair(IntegerMatrix(1, 2), IntegerMatrix(3, 1))


def test_point_has_z_in_every_degree():
    for n in range(7):
        assert rack_homology(trivial(1), n) == HomologyResult(n, 1, ())


def test_dihedral3_goldens():
    assert [str(rack_homology(D3, n)) for n in range(5)] == \
        ["Z", "Z", "Z", "Z + Z/3", "Z + Z/3 + Z/3"]


def _sympy_homology(Q, n):
    # independent route: sympy SNF on dense matrices
    def factors(M):
        if M.rows == 0 or M.cols == 0:
            return []
        return [abs(int(d)) for d in sympy_invariant_factors(Matrix(M.to_dense()), domain=SZZ)
                if d]
    dn, dn1 = boundary_matrix(Q, n), boundary_matrix(Q, n + 1)
    inv = factors(dn1)
    return dn.cols - len(factors(dn)) - len(inv), tuple(d for d in inv if d > 1)


@pytest.mark.parametrize("Q,n", [(D3, 2), (D3, 3), (dihedral(4), 2), (alexander(5, 2), 2)],
                         ids=str)
def test_homology_against_sympy(Q, n):
    H = rack_homology(Q, n)
    assert (H.betti, H.torsion) == _sympy_homology(Q, n)


@pytest.mark.parametrize("Q", [trivial(1), trivial(2), trivial(3), D3, dihedral(5),
                               alexander(5, 2)], ids=str)
def test_rational_betti_is_orbit_power(Q):
    k = len(orbits(Q))
    for n in range(4):
        assert rack_homology(Q, n).betti == k ** n


def test_result_formatting():
    H = HomologyResult(3, 1, (3,))
    assert str(H) == "Z + Z/3"
    assert str(HomologyResult(1, 0, ())) == "0"
    assert str(HomologyResult(1, 2, (2, 2))) == "Z^2 + Z/2 + Z/2"
    assert H.record("dihedral:3") == {"quandle": "dihedral:3", "degree": 3, "betti": 1,
                                      "torsion": [3]}


# -- cochains ----------------------------------------------------------------

RINGS = [QQ, ZZ, ZMod(3), ZMod(8), CmodZ]


@pytest.mark.parametrize("ring", RINGS, ids=repr)
def test_constant_cochains_are_cocycles(ring):
    for n in range(1, 4):
        assert is_rack_cocycle(Cochain.constant(3, n, ring.parse("1/3") if ring in (QQ, CmodZ)
                                                else 1, ring), D3)


@pytest.mark.parametrize("ring", RINGS, ids=repr)
@pytest.mark.parametrize("Q", [D3, dihedral(4)], ids=str)
def test_coboundary_squares_to_zero(ring, Q):
    rng = random.Random(7)
    for n in range(1, 3):
        g = Cochain.random(Q.size, n, rng, ring)
        assert coboundary(coboundary(g, Q), Q).is_zero()
        assert is_rack_cocycle(coboundary(g, Q), Q)


def test_mod3_cocycle_decided_by_brute_force():
    Z3 = ZMod(3)
    f = Cochain.from_function(3, 2, lambda t: (t[0] - t[1]) * t[1], Z3)

    def brute(x, y, z):
        # δf(x,y,z) = f(∂(x,y,z)) written out in full
        op = D3.op
        v = (-f((y, z)) + f((y, z)) + f((x, z)) - f((op(x, y), z))
             - f((x, y)) + f((op(x, z), op(y, z))))
        return v % 3

    expect = all(brute(*t) == 0 for t in itertools.product(range(3), repeat=3))
    assert is_rack_cocycle(f, D3) == expect
    assert coboundary(f, D3).values == {t: brute(*t) for t in tuples(3, 3)}


def test_cochain_evaluation_is_dual_to_boundary():
    rng = random.Random(3)
    f = Cochain.random(3, 2, rng)
    for t in tuples(3, 3):
        assert coboundary(f, D3)(t) == f.evaluate(rack_boundary(gen(*t), D3))


def test_c_mod_z_reduction():
    assert CmodZ.reduce((Fraction(5, 2), 3)) == (Fraction(1, 2), Fraction(3))
    assert CmodZ.add((Fraction(3, 4), 0), (Fraction(1, 2), 1)) == (Fraction(1, 4), Fraction(1))
    assert CmodZ.parse(["-1/3", "2"]) == (Fraction(2, 3), Fraction(2))


# -- H_2 of Alexander quandles -----------------------------------------------

def test_clauwens_examples():
    assert clauwens_h2(3, 2) == HomologyResult(2, 1, ())
    assert clauwens_h2(5, 2) == HomologyResult(2, 1, ())
    assert clauwens_h2(4, 3) == HomologyResult(2, 1, (2,))
    with pytest.raises(BadUnit):
        clauwens_h2(6, 2)


def test_clauwens_quotient_order_is_gcd():
    for N in range(1, 9):
        for w in range(N):
            if math.gcd(w, N) == 1:
                d = math.gcd(N, 1 - w)
                assert clauwens_h2(N, w).torsion == ((d,) if d > 1 else ())


CONNECTED_ALEXANDER = [(3, 2), (5, 2), (5, 3), (5, 4), (7, 2), (7, 3), (7, 4), (7, 5), (7, 6)]


@pytest.mark.parametrize("N,w", CONNECTED_ALEXANDER)
def test_clauwens_agrees_with_rack_homology_when_connected(N, w):
    assert clauwens_h2(N, w) == rack_homology(alexander(N, w), 2)


# SNF-pipeline values for disconnected Alexander quandles; the two-summand
# formula does not describe these.
DISCONNECTED_H2 = {
    (2, 1): (4, ()), (3, 1): (9, ()), (4, 1): (16, ()), (4, 3): (4, (2, 2)),
    (6, 5): (4, ()), (8, 3): (4, (2, 2)), (8, 5): (16, (2, 2, 2, 2)), (8, 7): (4, (2, 2)),
}


@pytest.mark.parametrize("key", sorted(DISCONNECTED_H2), ids=str)
def test_disconnected_alexander_goldens(key):
    H = rack_homology(alexander(*key), 2)
    assert (H.betti, H.torsion) == DISCONNECTED_H2[key]
    assert clauwens_h2(*key) != H


def test_clauwens_class():
    assert clauwens_h2_class(4, 3, 2, 2) == (1, 0)
    # (1 - 3)·3 = -6 ≡ 0 in Z/2
    assert clauwens_h2_class(4, 3, 1, 3) == (1, 0)
    assert clauwens_h2_class(4, 3, 0, 1) == (1, 1)
    for a, b in itertools.product(range(4), repeat=2):
        assert clauwens_h2_class(4, 3, a, b)[1] == ((a - b) * b) % 2


@pytest.mark.parametrize("N", [2, 3, 4])
def test_clauwens_class_vanishes_on_boundaries(N):
    for w in range(1, N):
        if math.gcd(w, N) != 1:
            continue
        Q = alexander(N, w)
        for t in tuples(N, 3):
            assert clauwens_h2_chain_class(N, w, rack_boundary(gen(*t), Q)) == (0, 0)


def test_determinant_cocycle():
    assert det_cocycle_check([((0, 0), (0, 0), (0, 0))])[0][2]
    assert det_cocycle_check([((1, 0), (0, 1), (1, 1))])[0][1] == 0
    report = det_cocycle_check(random_rational_triples(100, seed=0))
    assert len(report) == 100 and all(ok for _, _, ok in report)


@given(st.lists(st.tuples(st.fractions(), st.fractions()), min_size=3, max_size=3))
def test_determinant_cocycle_property(points):
    assert det_cocycle_check([tuple(points)])[0][1] == 0
