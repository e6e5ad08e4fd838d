import pytest

from equibundle.fans import (
    Cone,
    Fan,
    FanError,
    in_cone,
    is_pointed,
    is_smooth,
    make_fan,
    maps_to_sigma0,
    sigma0,
    validate_fan,
)

from conftest import datum


def test_sigma0_a1(A1):
    f = sigma0(A1)
    assert f.rays == ((1,),)
    assert f.cones == ((), (0,))


def test_sigma0_counts(A2):
    f = sigma0(A2)
    assert len(f.rays) == 2
    assert len(f.cones) == 4
    assert len(sigma0(datum("B3")).cones) == 8


def test_smoothness():
    assert is_smooth(Cone(((1, 0), (0, 1))))
    assert not is_smooth(Cone(((1, 0), (1, 2))))
    assert is_smooth(Cone(((0, 1), (1, 0))))


@pytest.mark.parametrize("text", ["A1", "A2", "A3", "B2", "C3", "G2", "A1xA2", "D4", "F4"])
def test_sigma0_valid_for_adjoint(text):
    f = sigma0(datum(text))
    assert validate_fan(f).ok
    assert all(is_smooth(f.cone(c)) for c in f.cones)


def test_maps_to_sigma0(A1):
    assert maps_to_sigma0(sigma0(A1))
    assert not maps_to_sigma0(make_fan(A1, [[-1]]))
    assert maps_to_sigma0(make_fan(A1, [], []))


def test_validate_fan_flags(A1):
    assert validate_fan(make_fan(A1, [], [])).ok
    rep = validate_fan(make_fan(A1, [[-1]]))
    assert rep.sigma0 and not rep.ok


def test_non_smooth_cone_named():
    d = datum("A2", "sc")
    rep = validate_fan(Fan(d, ((2, 1), (1, 2)), ((0, 1),)))
    assert rep.smooth == ["cone [0, 1] is not smooth"]


def test_bad_intersection():
    d = datum("A1xA1")
    f = make_fan(d, [[1, 0], [0, 1], [1, 1]], [[0, 1], [0, 2]])
    assert validate_fan(f).intersections


def test_pointed_and_membership():
    assert is_pointed([(1, 0), (0, 1)])
    assert not is_pointed([(1, 0), (-1, 0)])
    assert in_cone([(1, 0), (0, 1)], (2, 3))
    assert not in_cone([(1, 0), (0, 1)], (-1, 3))


def test_make_fan_errors(A1):
    with pytest.raises(FanError):
        make_fan(A1, [[1]], [[1]])
    with pytest.raises(FanError):
        make_fan(A1, [[1, 0]])
