import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rackforge.averaging import (HOMOTOPY_CROSS_SIGN, cocycle_basis, d_avg, face0, face1,
                                 face_coboundary, homotopy_identity_check, homotopy_rhs_sign,
                                 indicator, left_average, left_average_failures, phi_avg,
                                 rational_cochain, reconstruct, trivialize_cocycle,
                                 verify_commutation_identities)
from rackforge.errors import IndexOutOfRange, NotACocycle, NotHomogeneous
from rackforge.homology import Cochain, coboundary, rack_homology
from rackforge.quandle import dihedral, trivial

D3, D5 = dihedral(3), dihedral(5)

warnings.filterwarnings("ignore", message=".*left-homogeneous.*")


def const(Q, n, c):
    return rational_cochain(Q, n, lambda t: c)


def test_faces():
    c = const(D3, 2, Fraction(3, 4))
    for i in (1, 2, 3):
        assert face0(c, i).values == const(D3, 3, Fraction(3, 4)).values
    h = rational_cochain(D3, 1, lambda t: t[0])
    assert face1(h, 1, D3).values == face0(h, 1).values
    f = face1(h, 2, D3)
    assert all(f((x1, x2)) == (2 * x2 - x1) % 3 for x1 in range(3) for x2 in range(3))
    with pytest.raises(IndexOutOfRange):
        face0(h, 3)
    with pytest.raises(IndexOutOfRange):
        face1(h, 0, D3)


@pytest.mark.parametrize("Q", [D3, dihedral(4), trivial(2)], ids=str)
def test_face_coboundary_matches_rack_coboundary(Q):
    rng = random.Random(2)
    for n in (1, 2, 3):
        h = Cochain.random(Q.size, n, rng)
        assert face_coboundary(h, Q).values == coboundary(h, Q).values
        assert face_coboundary(face_coboundary(h, Q), Q).is_zero()


def test_phi_examples():
    h = indicator(D3, 2, (0, 1))
    assert phi_avg(h, 0, D3) is h
    c = const(D3, 2, 7)
    for j in range(4):
        assert phi_avg(c, j, D3).values == c.values
    one = rational_cochain(D3, 1, {(0,): 1})
    assert set(phi_avg(one, 1, D3).values.values()) == {Fraction(1, 3)}
    assert phi_avg(h, 3, D3).values == phi_avg(h, 2, D3).values
    with pytest.raises(IndexOutOfRange):
        phi_avg(h, 4, D3)


def test_d_examples():
    h = indicator(D3, 2, (0, 1))
    assert d_avg(h, 2, D3).is_zero()
    assert d_avg(const(D3, 3, 5), 1, D3).values == const(D3, 2, 5).values
    k = rational_cochain(D3, 2, lambda t: int(t[0] == t[1]))
    assert set(d_avg(k, 1, D3).values.values()) == {Fraction(1, 3)}
    with pytest.raises(IndexOutOfRange):
        d_avg(h, 0, D3)


def test_left_averages():
    # independent of x, unchanged by x -> x ◁ w, and the two substitutions agree
    for Q in (D3, D5):
        for a in Q.elements:
            K = [int(b == a) for b in Q.elements]
            vals = {left_average(K, x, Q) for x in Q.elements}
            assert vals == {Fraction(1, Q.size)}
            for x in Q.elements:
                for w in Q.elements:
                    assert left_average(K, Q.op(x, w), Q) == left_average(K, x, Q)
                    s1 = sum(K[Q.op(Q.op(x, y), w)] for y in Q.elements)
                    s2 = sum(K[Q.op(Q.op(x, w), y)] for y in Q.elements)
                    assert s1 == s2
        assert left_average_failures(Q) == []


def test_left_average_failures_without_homogeneity():
    assert left_average_failures(trivial(2)) == [(0, 0, 1), (1, 0, 1)]
    assert left_average_failures(dihedral(4))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_commutation_identities_exhaustive_dihedral3(n):
    report = verify_commutation_identities(D3, n)
    assert report.checked > 0 and report.ok, report.failures[:5]


def test_commutation_identities_seeded_dihedral5():
    report = verify_commutation_identities(D5, 3, cochains=[
        Cochain.random(5, 3, random.Random(s)) for s in range(5)])
    assert report.ok


@pytest.mark.parametrize("Q", [trivial(2), dihedral(4)], ids=str)
def test_commutation_identities_without_homogeneity(Q):
    # only right translations enter these identities
    assert verify_commutation_identities(Q, 2).ok


def test_identities_3_and_4_with_faces_applied_after_d_fail():
    # ∂_{j+1}^ε (D^j h) against φ^{j-1}h, φ^j h
    bad = 0
    for t in [(0, 1), (1, 2)]:
        h = indicator(D3, 2, t)
        D = d_avg(h, 1, D3)
        bad += face0(D, 2).values != phi_avg(h, 0, D3).values
        bad += face1(D, 2, D3).values != phi_avg(h, 1, D3).values
    assert bad == 4


@pytest.mark.parametrize("Q,n", [(D3, 2), (D3, 3), (D5, 2), (D5, 3)], ids=str)
def test_homotopy_signs(Q, n):
    for j in range(1, n + 1):
        report = homotopy_identity_check(Q, n, j, samples=3)
        assert (HOMOTOPY_CROSS_SIGN, homotopy_rhs_sign(j)) in report.signs
        if j < n:
            assert report.unique


def test_homotopy_sign_constant():
    assert HOMOTOPY_CROSS_SIGN == 1
    assert [homotopy_rhs_sign(j) for j in (1, 2, 3)] == [-1, 1, -1]


def test_homotopy_on_constants():
    for j in (1, 2):
        c = const(D3, 2, 4)
        lhs = coboundary(d_avg(c, j, D3), D3) + d_avg(coboundary(c, D3), j, D3)
        rhs = phi_avg(c, j, D3) - phi_avg(c, j - 1, D3)
        assert lhs.is_zero() and rhs.is_zero()


def test_trivialize_constant():
    t = trivialize_cocycle(const(D3, 2, Fraction(5, 2)), D3)
    assert t.constant == Fraction(5, 2)
    assert coboundary(t.primitive, D3).is_zero()


@pytest.mark.parametrize("Q", [D3, D5], ids=str)
def test_trivialize_kernel_basis(Q):
    basis = cocycle_basis(Q, 2)
    assert basis
    for f in basis:
        t = trivialize_cocycle(f, Q)
        assert reconstruct(t, Q).values == f.values


@given(st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_trivialize_random_combination_dihedral5(coeffs):
    basis = cocycle_basis(D5, 2)
    f = const(D5, 2, 0)
    for c, b in zip(coeffs, basis):
        f = f + Cochain(2, 5, {t: c * v for t, v in b.values.items()}, b.ring)
    assert reconstruct(trivialize_cocycle(f, D5), D5).values == f.values


@pytest.mark.parametrize("Q", [D3, D5], ids=str)
def test_rational_cohomology_has_rank_one(Q):
    # the cocycle space is coboundaries plus constants
    for n in (1, 2, 3):
        k = len(cocycle_basis(Q, n))
        d_prev = len(cocycle_basis(Q, n - 1))
        coboundaries = Q.size ** (n - 1) - d_prev
        assert k - coboundaries == 1 == rack_homology(Q, n).betti


def test_averages_preserve_cocycles():
    for f in cocycle_basis(D3, 2):
        for j in range(3):
            assert coboundary(phi_avg(f, j, D3), D3).is_zero()


def test_trivialize_errors():
    with pytest.raises(NotHomogeneous):
        trivialize_cocycle(const(trivial(2), 1, 1), trivial(2))
    with pytest.raises(NotACocycle):
        trivialize_cocycle(indicator(D3, 1, (0,)), D3)
