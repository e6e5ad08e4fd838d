import pytest

from equibundle.exactla import commutator, is_zero_matrix
from equibundle.repcore import (
    RepError,
    adjoint_rep,
    check_rep,
    freudenthal,
    fundamental_rep_A,
    highest_weight_submodule,
    irrep,
    sl2_irrep,
    tensor,
    trivial_rep,
    weyl_dim,
)

from conftest import datum


def test_sl2_irreps(A1):
    assert sl2_irrep(A1, 0).dim == 1
    v2 = sl2_irrep(A1, 2)
    assert sorted(v2.weights) == [(-2,), (0,), (2,)]
    v3 = sl2_irrep(A1, 3)
    h = commutator(v3.e[0], v3.f[0])
    for i, w in enumerate(v3.weights):
        assert h[i][i] == w[0]


def test_fundamental_reps():
    d = datum("A2", "sc")
    v1 = fundamental_rep_A(d, 1)
    v2 = fundamental_rep_A(d, 2)
    assert v1.dim == v2.dim == 3
    assert sorted(v2.weights) == sorted(tuple(-x for x in w) for w in v1.weights)
    assert fundamental_rep_A(datum("A3", "sc"), 2).dim == 6


def test_tensor(A1):
    v1 = sl2_irrep(A1, 1)
    t = tensor(v1, v1)
    assert t.dim == 4
    assert sorted(t.weights) == [(-2,), (0,), (0,), (2,)]
    assert check_rep(t) == []
    assert tensor(v1, trivial_rep(A1, 1)).character == v1.character


def test_tensor_central_characters_add(A1):
    v1 = sl2_irrep(A1, 1)
    assert v1.central_character == (1,)
    assert tensor(v1, v1).central_character == (0,)


def test_highest_weight_submodule(A1):
    v1 = sl2_irrep(A1, 1)
    sub = highest_weight_submodule(tensor(v1, v1), (2,))
    assert sub.dim == 3
    v4 = sl2_irrep(A1, 4)
    assert highest_weight_submodule(v4, (4,)).dim == 5


def test_a2_adjoint_inside_tensor():
    d = datum("A2", "sc")
    t = tensor(fundamental_rep_A(d, 1), fundamental_rep_A(d, 2))
    sub = highest_weight_submodule(t, (1, 1))
    assert sub.dim == 8 == weyl_dim(d, (1, 1))


def test_weyl_and_freudenthal(A1, A2):
    assert weyl_dim(A2, (0, 0)) == 1
    assert freudenthal(A2, (0, 0)) == {(0, 0): 1}
    for n in range(6):
        assert weyl_dim(A1, (n,)) == n + 1
    m = freudenthal(A2, (1, 1))
    assert sum(m.values()) == 8
    assert m[(0, 0)] == 2


@pytest.mark.parametrize("lam,dim", [((2, 1), 15), ((3, 0), 10), ((2, 2), 27)])
def test_a2_irreps_match_oracles(A2, lam, dim):
    v = irrep(A2, lam)
    assert v.dim == dim == weyl_dim(A2, lam)
    assert v.character == freudenthal(A2, lam)


def test_root_action(A2):
    ad = adjoint_rep(A2)
    assert ad.root_action((1, 0)) == ad.e[0]
    m = ad.root_action((1, 1))
    assert not is_zero_matrix(m)
    for j, wj in enumerate(ad.weights):
        for i, wi in enumerate(ad.weights):
            if m[i][j]:
                assert tuple(a - b for a, b in zip(wi, wj)) == (1, 1)
    triv = trivial_rep(A2, 2)
    assert is_zero_matrix(triv.root_action((1, 1)))


def test_check_rep_rejects_bad_bracket(A1):
    v = sl2_irrep(A1, 2)
    bad = type(v)(v.datum, v.weights, v.e, (v.e[0],), v.labels)
    assert check_rep(bad)


def test_dimension_cap(A2, monkeypatch):
    monkeypatch.setenv("EQUIBUNDLE_MAX_DIM", "10")
    with pytest.raises(RepError):
        irrep(A2, (2, 2))
