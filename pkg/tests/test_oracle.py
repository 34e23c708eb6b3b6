import pytest

from cycleportrait import (
    SignVector,
    brute_force_decompose,
    cycle_vertex,
    decompose,
    recompose,
)


def test_small_anchors():
    assert list(brute_force_decompose(SignVector.from_pattern("+-+"))) == [0, 2, 4]
    assert list(brute_force_decompose(SignVector.from_pattern("-+-"))) == [1, 3, 5]


def test_anchor_sum_by_hand():
    # (+,+,+) + (-,-,+) + (+,-,-) = (+,-,+)
    total = [
        sum(v.sign(e) for v in (cycle_vertex(3, 0), cycle_vertex(3, 2), cycle_vertex(3, 4)))
        for e in (1, 2, 3)
    ]
    assert total == [1, -1, 1]


def test_dimension_cap():
    with pytest.raises(ValueError, match="capped"):
        brute_force_decompose(cycle_vertex(11, 0))


@pytest.mark.parametrize("t", range(3, 7))
def test_matches_decompose_exhaustively(t):
    # the full range 3..10 runs in the acceptance suite
    for code in range(1 << t):
        v = SignVector.from_bits([(code >> i) & 1 for i in range(t)])
        slow = brute_force_decompose(v)
        assert slow == decompose(v)
        assert recompose(t, slow) == v
