"""Exact enumeration of constrained integer boxes.

The brute-force ground truth behind every closed form in the package:
a box `lower[j] <= x[j] <= upper[j]` intersected with a coordinate-sum
window `sum_min <= sum(x) <= sum_max`, enumerated in lexicographic order
and summed with exact arithmetic.  Hard guards keep everything desk-scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Tuple

from .errors import CapacityError, ValidationError
from .scalars import Scalar, check_uniform_mode

SupportPoint = Tuple[int, ...]

MAX_DIM = 20
MAX_POINTS = 10_000_000
MAX_SUM = 1_000_000


@dataclass(frozen=True)
class ConstraintSet:
    """Integer box with per-coordinate bounds and a coordinate-sum window."""

    upper: Tuple[int, ...]
    sum_min: int
    sum_max: int
    lower: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.lower:
            object.__setattr__(self, "lower", (0,) * len(self.upper))
        if len(self.lower) != len(self.upper):
            raise ValidationError("lower/upper bound vectors differ in length")
        for lo, up in zip(self.lower, self.upper):
            if not 0 <= lo <= up:
                raise ValidationError(f"need 0 <= lower <= upper per coordinate, got [{lo}, {up}]")
        if self.sum_min > self.sum_max:
            raise ValidationError(f"sum window is inverted: [{self.sum_min}, {self.sum_max}]")
        if self.dim > MAX_DIM:
            raise CapacityError(f"dimension {self.dim} exceeds the guard ({MAX_DIM})")

    @property
    def dim(self) -> int:
        return len(self.upper)


def count_points(constraints: ConstraintSet) -> int:
    """Number of admissible points, by a sum-indexed recursion (no listing)."""
    lo_total = sum(constraints.lower)
    up_total = sum(constraints.upper)
    smax = min(constraints.sum_max, up_total)
    smin = max(constraints.sum_min, lo_total)
    if smin > smax:
        return 0
    if smax > MAX_SUM:
        raise CapacityError(f"sum window up to {smax} exceeds the guard ({MAX_SUM})")
    ways = [0] * (smax + 1)
    ways[0] = 1
    for lo, up in zip(constraints.lower, constraints.upper):
        nxt = [0] * (smax + 1)
        for s, w in enumerate(ways):
            if not w:
                continue
            for v in range(lo, min(up, smax - s) + 1):
                nxt[s + v] += w
        ways = nxt
    total = sum(ways[smin : smax + 1])
    if total > MAX_POINTS:
        raise CapacityError(f"{total} lattice points exceed the guard ({MAX_POINTS})")
    return total


def iter_points(constraints: ConstraintSet) -> Iterator[SupportPoint]:
    """Lexicographically ordered stream of admissible points."""
    dim = constraints.dim
    lower, upper = constraints.lower, constraints.upper
    lo_suffix = [0] * (dim + 1)
    up_suffix = [0] * (dim + 1)
    for i in range(dim - 1, -1, -1):
        lo_suffix[i] = lo_suffix[i + 1] + lower[i]
        up_suffix[i] = up_suffix[i + 1] + upper[i]
    point = [0] * dim

    def rec(i: int, s: int) -> Iterator[SupportPoint]:
        if i == dim:
            if constraints.sum_min <= s <= constraints.sum_max:
                yield tuple(point)
            return
        lo = max(lower[i], constraints.sum_min - s - up_suffix[i + 1])
        up = min(upper[i], constraints.sum_max - s - lo_suffix[i + 1])
        for v in range(lo, up + 1):
            point[i] = v
            yield from rec(i + 1, s + v)
        point[i] = lower[i]

    return rec(0, 0)


def enumerate_points(constraints: ConstraintSet) -> Tuple[SupportPoint, ...]:
    """Complete, duplicate-free, lexicographic enumeration.

    Counts first so the capacity guard fires before any large listing, then
    self-checks the listing against the independent count.
    """
    expected = count_points(constraints)
    points = tuple(iter_points(constraints))
    if len(points) != expected:
        raise AssertionError(
            f"enumeration self-check failed: {len(points)} points listed, {expected} counted"
        )
    return points


def weighted_sum(constraints: ConstraintSet, weight: Callable[[SupportPoint], Scalar]) -> Scalar:
    """Sum of `weight` over the enumeration, refusing mixed-mode terms."""
    count_points(constraints)
    total: Scalar = 0
    terms = []
    for x in iter_points(constraints):
        terms.append(weight(x))
    check_uniform_mode(terms, "weighted_sum")
    for t in terms:
        total += t
    return total
