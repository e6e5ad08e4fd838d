from fractions import Fraction

import pytest

from equibundle.exactla import (
    AmbientMismatch,
    SubspaceQ,
    brute_force_adapted_basis,
    common_adapted_basis,
    contains,
    determinant,
    intersect,
    inverse,
    matmul,
    nullspace,
    rank,
    rref,
    smith_normal_form,
    solve,
    subspace_sum,
    to_q,
)

E = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_to_q_accepts_strings():
    assert to_q("3/6") == Fraction(1, 2)
    assert to_q(-4) == -4


def test_rref_identity_fixed():
    assert [list(r) for r in rref(E)] == E


def test_rref_dependent_rows():
    r = rref([[2, 4], [1, 2]])
    assert [list(x) for x in r][0] == [1, 2]
    assert rank([[2, 4], [1, 2]]) == 1


def test_rref_of_invertible_is_identity():
    m = [[2, 1, 0, 3], [1, 1, 1, 1], [0, 2, 5, 1], [4, 0, 1, 2]]
    assert determinant(m) != 0
    assert [list(r) for r in rref(m)] == [[int(i == j) for j in range(4)] for i in range(4)]


def test_inverse_and_solve():
    m = [[2, 1], [1, 1]]
    assert [list(r) for r in matmul(m, inverse(m))] == [[1, 0], [0, 1]]
    assert list(solve(m, [3, 2])) == [1, 1]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


def test_nullspace():
    ker = nullspace([[1, 1, 1]], 3)
    assert len(ker) == 2
    assert all(sum(v) == 0 for v in ker)


def test_intersect_coordinate():
    u = SubspaceQ.span(3, [[1, 0, 0], [0, 1, 0]])
    w = SubspaceQ.span(3, [[0, 1, 0], [0, 0, 1]])
    assert intersect(u, w) == SubspaceQ.span(3, [[0, 1, 0]])
    assert intersect(u, u) == u


def test_sum_and_contains():
    a = SubspaceQ.span(3, [[1, 0, 0]])
    b = SubspaceQ.span(3, [[0, 1, 0]])
    assert subspace_sum(a, b) == SubspaceQ.span(3, [[1, 0, 0], [0, 1, 0]])
    assert subspace_sum(a, SubspaceQ.zero(3)) == a
    assert contains(SubspaceQ.full(3), a)
    assert not contains(a, b)


def test_canonical_form_independent_of_spanning_set():
    a = SubspaceQ.span(3, [[1, 1, 0], [0, 1, 1]])
    b = SubspaceQ.span(3, [[1, 2, 1], ["1/2", 0, "-1/2"]])
    assert a == b
    assert a.to_json() == b.to_json()


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        intersect(SubspaceQ.full(2), SubspaceQ.full(3))


def test_adapted_basis_single_chain():
    fam = [SubspaceQ.zero(2), SubspaceQ.span(2, [[1, 0]]), SubspaceQ.full(2)]
    ab = common_adapted_basis(fam)
    assert ab is not None and ab.spans(fam)
    assert len(ab.vectors) == 2


def test_adapted_basis_two_lines():
    fam = [SubspaceQ.span(2, [[1, 0]]), SubspaceQ.span(2, [[1, 1]])]
    ab = common_adapted_basis(fam)
    assert ab is not None and ab.spans(fam)


def test_three_lines_in_plane_absent():
    fam = [SubspaceQ.span(2, [v]) for v in ([1, 0], [0, 1], [1, 1])]
    assert common_adapted_basis(fam) is None
    assert brute_force_adapted_basis(fam) is None


def test_smith_normal_form():
    snf = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert list(snf.diag[: snf.rank]) == [2, 6, 12]
    # U A V = D
    a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    d = matmul(matmul(snf.U, a), snf.V)
    for i in range(3):
        for j in range(3):
            assert d[i][j] == (snf.diag[i] if i == j else 0)
