from fractions import Fraction

import pytest

from equibundle.rootdata import CartanType, RootDatumError, build_root_datum, cartan_matrix

from conftest import datum


def test_a1_adjoint(A1):
    assert A1.positive_roots == ((1,),)
    assert A1.central_character_group == (2,)


def test_a2_sc_roots():
    d = datum("A2", "sc")
    assert len(d.positive_roots) == 3
    assert d.central_character_group == ()


def test_g2_self_adjoint():
    d = datum("G2")
    assert len(d.positive_roots) == 6
    assert d.central_character_group == ()
    assert datum("G2", "sc").central_character_group == ()


@pytest.mark.parametrize("text,n", [("A3", 6), ("B2", 4), ("C3", 9), ("D4", 12), ("F4", 24), ("E6", 36)])
def test_positive_root_counts(text, n):
    assert len(datum(text, "sc").positive_roots) == n


def test_central_character_groups(A2):
    assert A2.central_character_group == (3,)
    assert datum("B2").central_character_group == (2,)
    assert datum("D4").central_character_group == (2, 2)
    assert datum("A1xA1").central_character_group == (2, 2)


def test_fundamental_coweights_dual(A2):
    for i, c in enumerate(A2.fundamental_coweights):
        for j, a in enumerate(A2.simple_roots):
            assert A2.pairing_root(c, a) == int(i == j)


def test_pairing(A1):
    assert A1.pairing(A1.fundamental_coweights[0], (1,)) == Fraction(1, 2)
    assert A1.pairing((0,), (5,)) == 0


def test_is_dominant(A2):
    assert A2.is_dominant((1, 0))
    assert not A2.is_dominant((-1, 0))
    # alpha_1 = (2, -1) in fundamental-weight coordinates
    assert A2.root_to_weight(A2.simple_roots[0]) == (2, -1)
    assert not A2.is_dominant((2, -1))


def test_parabolic_split(A1, A2):
    zero, pos, neg = A1.parabolic_split(A1.fundamental_coweights[0])
    assert (len(zero), len(pos), len(neg)) == (0, 1, 1)
    zero, pos, neg = A2.parabolic_split((0, 0))
    assert len(zero) == 6 and not pos and not neg
    zero, pos, neg = A2.parabolic_split(A2.fundamental_coweights[0])
    assert sorted(zero) == sorted([(0, 1), (0, -1)])
    assert sorted(pos) == sorted([(1, 0), (1, 1)])


def test_parabolic_split_partitions_roots():
    d = datum("B3")
    tau = (1, 0, 2)
    zero, pos, neg = d.parabolic_split(tau)
    assert sorted(zero + pos + neg) == sorted(d.roots)
    assert sorted(neg) == sorted(tuple(-x for x in a) for a in pos)


def test_integral_pairing_on_weight_lattice(A2):
    for b in A2.weight_lattice_basis:
        for c in A2.coweight_lattice_basis:
            assert A2.pairing(c, b).denominator == 1


def test_torus_factor():
    d = datum("A1", "adjoint", torus=1)
    assert d.rank == 2
    assert d.pairing((0, 1), (0, 3)) == 3
    assert d.pairing((1, 0), (0, 3)) == 0


def test_cartan_orientation():
    # a_ij = <alpha_i^vee, alpha_j>; long root first for B2
    assert cartan_matrix("B", 2) == [[2, -1], [-2, 2]]
    assert cartan_matrix("G", 2)[0][1] * cartan_matrix("G", 2)[1][0] == 3


def test_bad_inputs():
    with pytest.raises(RootDatumError):
        CartanType((("A", 0),))
    with pytest.raises(RootDatumError):
        build_root_datum(CartanType.parse("A1"), [[3]])
