import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coretorus.slopes import (Slope, SlopeTriple, at_least_golden_power,
                              binet_check, elementary_move, fib,
                              golden_power_cmp, intersection, lucas, mediant,
                              normalize_slope, slope_seq)


def test_slope_normalization():
    assert normalize_slope(-1, 2) == Slope(1, -2)
    assert normalize_slope(0, -3) == Slope(0, 1)
    assert normalize_slope(4, 6) == Slope(2, 3)
    with pytest.raises(ValueError):
        normalize_slope(0, 0)
    with pytest.raises(ValueError):
        Slope(2, 4)
    with pytest.raises(ValueError):
        Slope(-1, 0)


def test_intersection_examples():
    assert intersection(Slope(1, 0), Slope(0, 1)) == 1
    assert intersection(Slope(2, 1), Slope(0, 1)) == 2
    # |n x - y| form for pre-core slopes
    for n in range(-5, 6):
        s = normalize_slope(1, n)
        assert intersection(s, Slope(3, 2)) == abs(n * 3 - 2)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(-50, 50))
def test_intersection_symmetric(ax, ay, bx, by):
    if (ax, ay) == (0, 0) or (bx, by) == (0, 0):
        return
    a, b = normalize_slope(ax, ay), normalize_slope(bx, by)
    assert intersection(a, b) == intersection(b, a)
    assert (intersection(a, b) == 0) == (a == b)


def test_slope_seq_values():
    assert slope_seq(0) == Slope(1, 0)
    assert slope_seq(1) == Slope(1, 1)
    assert slope_seq(2) == Slope(2, 1)
    assert slope_seq(3) == Slope(3, 2)
    assert slope_seq(4) == Slope(5, 3)


def test_slope_seq_recursion_exact():
    for i in range(41):
        a, b, c = slope_seq(i), slope_seq(i + 1), slope_seq(i + 2)
        assert (c.x, c.y) == (a.x + b.x, a.y + b.y)
        assert c == mediant(a, b)


def test_slope_seq_growth_golden():
    # x_{i+2} is at least the (i+1)-st power of the golden ratio
    for i in range(41):
        assert at_least_golden_power(slope_seq(i + 2).x, i + 1)


def test_binet():
    assert binet_check(0)
    assert fib(10) == 55 and binet_check(10)
    assert all(binet_check(i) for i in range(1, 41))
    with pytest.raises(ValueError):
        binet_check(100)


def test_lucas_and_golden_cmp():
    assert [lucas(i) for i in range(6)] == [2, 1, 3, 4, 7, 11]
    phi = (1 + math.sqrt(5)) / 2
    for k in range(-6, 15):
        for val in (Fraction(1, 3), 1, 2, 5, Fraction(13, 3), 89):
            expect = (float(val) > phi ** k) - (float(val) < phi ** k)
            got = golden_power_cmp(val, k)
            if abs(float(val) - phi ** k) > 1e-9:
                assert got == expect, (val, k)


def test_triple_validation():
    t = SlopeTriple({Slope(1, 0), Slope(1, 1), Slope(2, 1)})
    assert Slope(2, 1) in t
    with pytest.raises(ValueError):
        SlopeTriple({Slope(1, 0), Slope(1, 1), Slope(5, 3)})
    with pytest.raises(ValueError):
        SlopeTriple({Slope(1, 0), Slope(1, 1)})


def test_elementary_move_family_step():
    t = SlopeTriple({Slope(1, 0), Slope(1, 1), Slope(2, 1)})
    t1 = elementary_move(t, Slope(1, 0))
    assert set(t1) == {Slope(1, 1), Slope(2, 1), Slope(3, 2)}
    t2 = elementary_move(t1, Slope(1, 1))
    assert set(t2) == {Slope(2, 1), Slope(3, 2), Slope(5, 3)}


def test_elementary_move_backtrack_inserts_other_diagonal():
    # removing the mediant of the other two walks back up the tree: the
    # inserted edge is the other diagonal, not the removed one again
    t = SlopeTriple({Slope(1, 0), Slope(1, 1), Slope(2, 1)})
    back = elementary_move(t, Slope(2, 1))
    assert set(back) == {Slope(1, 0), Slope(1, 1), Slope(0, 1)}
    assert mediant(Slope(1, 0), Slope(1, 1)) == Slope(2, 1)
    # flipping the inserted edge again returns to the start
    assert set(elementary_move(back, Slope(0, 1))) == set(t)


def test_random_farey_walks_preserve_invariants():
    rng = random.Random(20260808)
    t = SlopeTriple({slope_seq(0), slope_seq(1), slope_seq(2)})
    for _ in range(1000):
        removed = rng.choice(sorted(t))
        t = elementary_move(t, removed)
        slopes = sorted(t)
        for i in range(3):
            for j in range(i + 1, 3):
                assert intersection(slopes[i], slopes[j]) == 1
