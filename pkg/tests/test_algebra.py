import pytest

from brouwerlab.algebra import build_bn, check_brouwer_laws, upset_brouwer_algebra
from brouwerlab.errors import CarrierTooLarge, InvalidN, NotInCarrier
from brouwerlab.poset import antichain, poset_from_covers


def v_algebra():
    return upset_brouwer_algebra(poset_from_covers(["r", "x", "y"], [("r", "x"), ("r", "y")]))


@pytest.mark.parametrize("n, size", [(1, 2), (2, 5), (3, 19), (4, 167)])
def test_bn_sizes(n, size):
    assert len(build_bn(n)) == size


def test_bn_zero_rejected():
    with pytest.raises(InvalidN):
        build_bn(0)


def test_bn2_carrier_labels():
    b = build_bn(2)
    assert [b.world_set(u) for u in b.elements] == [
        [], ["{1}"], ["{2}"], ["{1}", "{2}"], ["{1}", "{2}", "{1,2}"],
    ]
    assert b.bottom == b.elements[-1] and b.top == 0


def test_singleton_poset_is_boolean():
    alg = upset_brouwer_algebra(poset_from_covers(["a"], []))
    assert len(alg) == 2
    assert alg.imp(alg.top, alg.top) == alg.bottom
    assert alg.neg(alg.bottom) == alg.top


def test_v_algebra_implication():
    alg = v_algebra()
    x, y = alg.space.mask_of(["x"]), alg.space.mask_of(["y"])
    assert len(alg) == 5
    assert alg.bottom == alg.space.full and alg.top == 0
    assert alg.imp(x, y) == y


@pytest.mark.parametrize("alg", [build_bn(1), build_bn(2), build_bn(3), v_algebra(),
                                 upset_brouwer_algebra(antichain(4))])
def test_laws(alg):
    assert all(check_brouwer_laws(alg).values())


def test_carrier_cap():
    with pytest.raises(CarrierTooLarge):
        upset_brouwer_algebra(antichain(6), cap=50)


def test_require():
    b = build_bn(2)
    with pytest.raises(NotInCarrier):
        b.require(0b100)  # {{1,2}} alone is not an up-set
