import math
from fractions import Fraction

import pytest

from rpq import (
    CapacityError,
    ConstraintSet,
    ModeMixError,
    ValidationError,
    count_points,
    enumerate_points,
    weighted_sum,
)


def test_enumeration_listings():
    assert enumerate_points(ConstraintSet((1, 1), 0, 1)) == ((0, 0), (0, 1), (1, 0))
    assert enumerate_points(ConstraintSet((1, 1), 1, 2)) == ((0, 1), (1, 0), (1, 1))
    assert enumerate_points(ConstraintSet((2,), 0, 2)) == ((0,), (1,), (2,))


def test_enumeration_is_sorted_and_duplicate_free():
    points = enumerate_points(ConstraintSet((2, 1, 3), 2, 4))
    assert list(points) == sorted(set(points))
    assert all(2 <= sum(p) <= 4 for p in points)


def test_count_matches_enumeration():
    for upper in ((1, 1, 1), (2, 3), (1, 2, 1, 2)):
        for smin in range(0, sum(upper) + 1):
            for smax in range(smin, sum(upper) + 1):
                c = ConstraintSet(upper, smin, smax)
                assert count_points(c) == len(enumerate_points(c))


def test_capacity_one_window_cardinality():
    # points of {0,1}^k with sum in {n-1, n} number C(k, n) + C(k, n-1)
    for k in range(1, 11):
        for n in range(1, k + 1):
            c = ConstraintSet((1,) * k, n - 1, n)
            assert count_points(c) == math.comb(k, n) + math.comb(k, n - 1)


def test_empty_window():
    c = ConstraintSet((1, 1), 5, 6)
    assert enumerate_points(c) == ()
    assert weighted_sum(c, lambda x: Fraction(1)) == 0


def test_weighted_sum_values():
    c = ConstraintSet((1, 1), 0, 1)
    assert weighted_sum(c, lambda x: 1) == 3
    q = Fraction(1, 2)
    c = ConstraintSet((1, 1), 1, 2)
    total = weighted_sum(c, lambda r: q ** (r[0] + 2 * r[1]))
    assert total == Fraction(7, 8)


def test_weighted_sum_linearity_and_order_invariance():
    c = ConstraintSet((2, 2), 1, 3)
    f = lambda x: Fraction(x[0] + 1, 3)
    g = lambda x: Fraction(x[1] ** 2 + 1, 5)
    lhs = weighted_sum(c, lambda x: 2 * f(x) + 7 * g(x))
    assert lhs == 2 * weighted_sum(c, f) + 7 * weighted_sum(c, g)
    forward = [f(x) for x in enumerate_points(c)]
    assert sum(reversed(forward)) == weighted_sum(c, f)


def test_mode_mix_rejected():
    c = ConstraintSet((1,), 0, 1)
    with pytest.raises(ModeMixError):
        weighted_sum(c, lambda x: 0.5 if x[0] else Fraction(1, 2))


def test_validation():
    with pytest.raises(ValidationError):
        ConstraintSet((1, -1), 0, 1)
    with pytest.raises(ValidationError):
        ConstraintSet((1, 1), 2, 1)


def test_capacity_guards():
    with pytest.raises(CapacityError):
        ConstraintSet((1,) * 21, 0, 21)
    with pytest.raises(CapacityError):
        count_points(ConstraintSet((9,) * 14, 0, 126))


def test_reproducibility():
    c = ConstraintSet((3, 3, 3), 2, 7)
    w = lambda x: Fraction(2, 3) ** sum(x)
    assert weighted_sum(c, w) == weighted_sum(c, w)
    assert enumerate_points(c) == enumerate_points(c)
