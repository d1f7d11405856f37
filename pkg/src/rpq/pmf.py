"""Probability tables over enumerated supports, and moment reports.

A table's probabilities are always weight / (enumerated sum of weights);
closed-form normalizers and closed-form probability values ride along as
cross-check records, never as the source of truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Tuple

from .algebra import AlgebraSpec, MonomialFit, fit_monomial
from .errors import ModeMixError, ValidationError
from .lattice import SupportPoint
from .scalars import Scalar, scalars_close


@dataclass(frozen=True)
class ClosedFormCheck:
    """Closed-form distribution (normalized) compared point-by-point."""

    probabilities: Tuple[Scalar, ...]
    pointwise_equal: bool


@dataclass(frozen=True)
class PmfTable:
    kind: str
    params: Mapping[str, object]
    coord_labels: Tuple[str, ...]
    support: Tuple[SupportPoint, ...]
    weights: Tuple[Scalar, ...]
    z_enumerated: Scalar
    probabilities: Tuple[Scalar, ...]
    exact: bool
    tol: float
    z_closed_form: Optional[Scalar] = None
    z_discrepancy: Optional[MonomialFit] = None
    closed_form_check: Optional[ClosedFormCheck] = None

    def probability(self, point: SupportPoint) -> Scalar:
        try:
            return self.probabilities[self.support.index(point)]
        except ValueError:
            return Fraction(0) if self.exact else 0.0

    def as_mapping(self) -> dict:
        return dict(zip(self.support, self.probabilities))


def make_table(
    *,
    kind: str,
    params: Mapping[str, object],
    coord_labels: Sequence[str],
    support: Sequence[SupportPoint],
    weights: Sequence[Scalar],
    alg: AlgebraSpec,
    z_closed_form: Optional[Scalar] = None,
    fit_bound: int = 0,
    closed_values: Optional[Sequence[Scalar]] = None,
) -> PmfTable:
    """Normalize weights into a table and attach the cross-check records."""
    support = tuple(support)
    weights = tuple(weights)
    if not support:
        raise ValidationError(f"{kind} table: empty support")
    if len(support) != len(weights):
        raise ValidationError(f"{kind} table: {len(support)} points vs {len(weights)} weights")
    z = weights[0]
    for w in weights[1:]:
        z = z + w
    if z <= 0:
        raise ValidationError(f"{kind} table: nonpositive normalizer {z}")
    probabilities = tuple(w / z for w in weights)
    for prob in probabilities:
        if prob < 0:
            raise ValidationError(f"{kind} table: negative probability {prob}")
    total = sum(probabilities)
    if not scalars_close(total, 1, alg.exact, alg.tol):
        raise ValidationError(f"{kind} table: probabilities sum to {total}, not 1")

    z_fit = None
    if z_closed_form is not None:
        z_fit = fit_monomial(alg, z, z_closed_form, fit_bound)

    check = None
    if closed_values is not None:
        closed_values = tuple(closed_values)
        if len(closed_values) != len(support):
            raise ValidationError(f"{kind} table: closed-form values mismatch support size")
        closed_total = sum(closed_values)
        if closed_total <= 0:
            raise ValidationError(f"{kind} table: closed form sums to {closed_total}")
        closed_probs = tuple(v / closed_total for v in closed_values)
        equal = all(
            scalars_close(a, b, alg.exact, alg.tol) for a, b in zip(closed_probs, probabilities)
        )
        check = ClosedFormCheck(closed_probs, equal)

    return PmfTable(
        kind=kind,
        params=dict(params),
        coord_labels=tuple(coord_labels),
        support=support,
        weights=weights,
        z_enumerated=z,
        probabilities=probabilities,
        exact=alg.exact,
        tol=alg.tol,
        z_closed_form=z_closed_form,
        z_discrepancy=z_fit,
        closed_form_check=check,
    )


def oracle_expectation(table: PmfTable, functional: Callable[[SupportPoint], Scalar]) -> Scalar:
    """Exact expectation of an arbitrary functional over a table."""
    total: Scalar = 0
    for point, prob in zip(table.support, table.probabilities):
        value = functional(point)
        if table.exact and isinstance(value, float):
            raise ModeMixError("float functional value on an exact table")
        if not table.exact and isinstance(value, Fraction):
            raise ModeMixError("Fraction functional value on an approximate table")
        total += value * prob
    return total


@dataclass(frozen=True)
class MomentReport:
    """One closed-form-vs-oracle comparison for a named moment."""

    quantity: str
    oracle_value: Scalar
    closed_form: Optional[Scalar]
    match: Optional[bool]
    note: str = ""


def compare_moment(
    quantity: str,
    oracle_value: Scalar,
    closed_form: Optional[Scalar],
    alg: AlgebraSpec,
    note: str = "",
) -> MomentReport:
    match = None if closed_form is None else alg.close(oracle_value, closed_form)
    return MomentReport(quantity, oracle_value, closed_form, match, note)
