import math

import pytest
from hypothesis import given

from gq.blocksets import EVENS, ODDS, BlockSet, block_midpoint
from gq.errors import NotAccumulating
from strategies import blocksets

HORIZON = range(200)


def brute(a):
    return {k for k in HORIZON if k in a}


def test_text_round_trip():
    assert BlockSet.parse("pre=;per=10") == EVENS
    assert str(EVENS) == "pre=;per=10"
    assert BlockSet.parse(" pre=110 ; per=0 ") == BlockSet.finite([0, 1])


def test_bad_text():
    with pytest.raises(ValueError):
        BlockSet.parse("pre=2;per=1")
    with pytest.raises(ValueError):
        BlockSet.parse("pre=1;per=")


def test_canonical_form_is_minimal():
    a = BlockSet([1, 0, 1, 0], [1, 0, 1, 0])
    assert (a.preperiod, a.period) == ((), (True, False))
    b = BlockSet([0, 1, 1], [1, 1])
    assert (b.preperiod, b.period) == ((False,), (True,))


def test_complement_and_partition():
    assert ~EVENS == ODDS
    assert (EVENS & ODDS).is_empty()
    assert (EVENS | ODDS).is_full()


def test_accumulates():
    assert EVENS.accumulates()
    assert not BlockSet.finite([0, 1, 2]).accumulates()
    assert BlockSet.full().accumulates()


def test_sample_epsilons():
    assert BlockSet.full().sample_epsilons(3) == [0.75, 0.375, 0.1875]
    assert EVENS.sample_epsilons(2) == [block_midpoint(0), block_midpoint(2)]
    with pytest.raises(NotAccumulating):
        BlockSet.finite([3]).sample_epsilons(1)


def test_midpoints_lie_inside_their_blocks():
    for k in range(60):
        eps = block_midpoint(k)
        assert 2.0 ** -(k + 1) < eps <= 2.0 ** -k


@given(blocksets, blocksets)
def test_boolean_ops_match_brute_force(a, b):
    sa, sb, full = brute(a), brute(b), set(HORIZON)
    assert brute(a | b) == sa | sb
    assert brute(a & b) == sa & sb
    assert brute(a - b) == sa - sb
    assert brute(a ^ b) == sa ^ sb
    assert brute(~a) == full - sa
    assert a.issubset(b) == (sa <= sb)


@given(blocksets, blocksets, blocksets)
def test_boolean_algebra_laws(a, b, c):
    assert (a | b) | c == a | (b | c)
    assert a & (b | c) == (a & b) | (a & c)
    assert ~(a | b) == ~a & ~b
    assert ~(a & b) == ~a | ~b
    assert ~~a == a


@given(blocksets)
def test_canonicalization_idempotent(a):
    again = BlockSet(a.preperiod, a.period)
    assert (again.preperiod, again.period) == (a.preperiod, a.period)
    assert BlockSet.parse(str(a)) == a


@given(blocksets)
def test_set_or_complement_accumulates(a):
    assert a.accumulates() or (~a).accumulates()
    assert a.accumulates() == any(a.period)


@given(blocksets)
def test_sample_epsilons_decrease_inside_set(a):
    if not a.accumulates():
        return
    eps = a.sample_epsilons(5)
    assert all(x > y for x, y in zip(eps, eps[1:]))
    assert [k for k in HORIZON if k in a][:5] == [round(math.log2(0.75 / e)) for e in eps]
