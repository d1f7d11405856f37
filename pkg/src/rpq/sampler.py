"""Deterministic inverse-CDF sampling from enumerated tables.

The uniform source is SplitMix64 (Steele, Lea & Flood's constants): state
advances by the golden-gamma increment 0x9E3779B97F4A7C15 and each output
is finalized with the 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB xor-multiply
mix.  A variate is the top 53 bits of one output, read as the exact
rational mantissa / 2^53, so draws are reproducible bit-for-bit on any
platform.

Selection rule: a variate u picks the first support point (in the table's
lexicographic order) whose cumulative probability exceeds u.  Thresholds
are exact rationals in exact mode; u < F is decided by integer comparison
against ceil(F * 2^53), which never misassigns a boundary and never lands
on a zero-probability point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .errors import ValidationError
from .first_kind import FirstKindParams, joint_pmf
from .lattice import SupportPoint
from .pmf import PmfTable
from .scalars import Scalar

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MANTISSA_BITS = 53
_MANTISSA_DENOM = 1 << _MANTISSA_BITS


class SplitMix64:
    """Counter-based 64-bit generator with a fully specified stream."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN_GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_mantissa(self) -> int:
        """Top 53 bits of one output: the variate is mantissa / 2^53."""
        return self.next_uint64() >> (64 - _MANTISSA_BITS)


@dataclass(frozen=True)
class SampleBatch:
    params: Mapping[str, object]
    seed: int
    count: int
    draws: Tuple[SupportPoint, ...]
    empirical: Tuple[Tuple[SupportPoint, Fraction], ...]

    def empirical_map(self) -> Dict[SupportPoint, Fraction]:
        return dict(self.empirical)


def _integer_thresholds(table: PmfTable) -> list:
    """ceil(F_i * 2^53) per cumulative probability F_i; mantissa < threshold
    is exactly the event u < F_i."""
    thresholds = []
    cumulative: Scalar = 0
    for prob in table.probabilities:
        cumulative += prob
        if table.exact:
            frac = Fraction(cumulative) * _MANTISSA_DENOM
            thresholds.append(-(-frac.numerator // frac.denominator))
        else:
            thresholds.append(cumulative * _MANTISSA_DENOM)
    return thresholds


def _empirical(draws, count) -> Tuple[Tuple[SupportPoint, Fraction], ...]:
    counts = Counter(draws)
    return tuple((point, Fraction(c, count)) for point, c in sorted(counts.items()))


def sample(table: PmfTable, seed: int, count: int) -> SampleBatch:
    """Draw `count` inverse-CDF samples from a normalized table."""
    if count < 1:
        raise ValidationError(f"count: need count >= 1, got {count}")
    thresholds = _integer_thresholds(table)
    support = table.support
    gen = SplitMix64(seed)
    draws = []
    if table.exact:
        for _ in range(count):
            mantissa = gen.next_mantissa()
            for i, bound in enumerate(thresholds):
                if mantissa < bound:
                    draws.append(support[i])
                    break
    else:
        for _ in range(count):
            u = gen.next_mantissa()
            for i, bound in enumerate(thresholds):
                if u < bound:
                    draws.append(support[i])
                    break
            else:
                draws.append(support[-1])
    draws = tuple(draws)
    return SampleBatch(dict(table.params), seed, count, draws, _empirical(draws, count))


def _prefix_masses(table: PmfTable) -> Dict[SupportPoint, Scalar]:
    """Mass of every support-point prefix, including the empty one."""
    masses: Dict[SupportPoint, Scalar] = {}
    for point, weight in zip(table.support, table.weights):
        for cut in range(len(point) + 1):
            key = point[:cut]
            masses[key] = masses[key] + weight if key in masses else weight
    return masses


def path_probabilities(params: FirstKindParams) -> Dict[SupportPoint, Scalar]:
    """Chain-rule probability of each support point, coordinate by
    coordinate; equals the joint probability exactly."""
    table = joint_pmf(params)
    masses = _prefix_masses(table)
    out = {}
    for point in table.support:
        prob: Scalar = 1 if table.exact else 1.0
        for cut in range(1, len(point) + 1):
            prob *= masses[point[:cut]] / masses[point[: cut - 1]]
        out[point] = prob
    return out


def sequential_sample(params: FirstKindParams, seed: int, count: int) -> SampleBatch:
    """Draw occupancy vectors one coordinate at a time.

    Each coordinate consumes one variate and is decided by the conditional
    law given the prefix drawn so far, so the induced distribution is
    exactly the joint law; only the variate stream differs from `sample`.
    """
    if count < 1:
        raise ValidationError(f"count: need count >= 1, got {count}")
    table = joint_pmf(params)
    masses = _prefix_masses(table)
    k = params.k
    gen = SplitMix64(seed)
    draws = []
    for _ in range(count):
        prefix: SupportPoint = ()
        for _coord in range(k):
            zero_mass = masses.get(prefix + (0,), 0)
            total = masses[prefix]
            if table.exact:
                frac = Fraction(zero_mass) / total * _MANTISSA_DENOM
                bound = -(-frac.numerator // frac.denominator)
                value = 0 if gen.next_mantissa() < bound else 1
            else:
                value = 0 if gen.next_mantissa() < (zero_mass / total) * _MANTISSA_DENOM else 1
            prefix = prefix + (value,)
        draws.append(prefix)
    draws = tuple(draws)
    batch_params = dict(table.params)
    batch_params["sampler"] = "sequential"
    return SampleBatch(batch_params, seed, count, draws, _empirical(draws, count))
