import pytest

from brouwerlab.errors import CyclicOrder, DuplicateElement, InputFormatError, UnknownElement
from brouwerlab.poset import (
    antichain,
    brute_force_upset_count,
    chain,
    enumerate_upsets,
    parse_poset_text,
    poset_from_covers,
)


def v_poset():
    return poset_from_covers(["r", "x", "y"], [("r", "x"), ("r", "y")])


def test_singleton():
    p = poset_from_covers(["a"], [])
    assert p.leq == {("a", "a")}


def test_v_poset_relation():
    p = v_poset()
    assert len(p.leq) == 5
    assert p.le("r", "x") and p.le("r", "y")
    assert not p.le("x", "y")
    p.validate()


def test_transitive_closure():
    p = poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.le("a", "c")


def test_cycle_rejected():
    with pytest.raises(CyclicOrder):
        poset_from_covers(["a", "b"], [("a", "b"), ("b", "a")])


def test_duplicate_and_unknown():
    with pytest.raises(DuplicateElement):
        poset_from_covers(["a", "a"], [])
    with pytest.raises(UnknownElement):
        poset_from_covers(["a"], [("a", "z")])


@pytest.mark.parametrize("p, count", [
    (poset_from_covers(["a"], []), 2),
    (v_poset(), 5),
    (chain(2), 3),
    (chain(4), 5),
    (antichain(3), 8),
])
def test_upset_counts(p, count):
    ups = enumerate_upsets(p)
    assert len(ups) == count == brute_force_upset_count(p)
    assert all(p.is_upset(u) for u in ups)


def test_upset_order_is_canonical():
    ups = enumerate_upsets(v_poset())
    assert ups == sorted(ups, key=lambda m: (bin(m).count("1"), m))
    assert ups[0] == 0 and ups[-1] == v_poset().full


def test_parse_text():
    p = parse_poset_text("""
        # the V
        elements: r x y
        covers: r<x r<y
    """)
    assert p.elements == ("r", "x", "y") and len(p.leq) == 5


def test_parse_text_errors():
    with pytest.raises(InputFormatError):
        parse_poset_text("elements: a\ncovers: a-b")
    with pytest.raises(InputFormatError):
        parse_poset_text("nodes: a")
