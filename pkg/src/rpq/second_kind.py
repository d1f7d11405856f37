"""Occupancy distributions for unlimited-capacity urns (Bose-Einstein
statistics).

n indistinguishable balls land in k+1 distinguishable urns of unlimited
capacity; the overflow urn absorbs the remainder, so the first k occupancy
counts (X_1..X_k) range over {0..n}^k with sum at most n and no further cap.

Joint weights are

    Phi(x) = tau1^(-E(x) + 2kn + C(k+1,2)) * tau2^(E(x)),
    E(x)   = sum_j (k - j + 1) x_j,

normalized by their enumerated sum.  The closed-form normalizer is the
base-algebra [k+n over n]: that is what the enumerated sum equals whenever
tau1 = 1 (an inverse-parameter normalizer would be off by (tau1*tau2)^(-nk)
and would not normalize even there).  As in the capacity-one family, all
derived tables carry the exact law induced by the joint, with closed forms
attached as cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Sequence

from .algebra import (
    AlgebraSpec,
    binomial_or_zero,
    deformed_binomial,
    deformed_factorial,
    deformed_falling_factorial,
    deformed_number,
    inverse_algebra,
)
from .errors import ValidationError, ZeroProbabilityEventError
from .first_kind import ConstructionReport, GroupingScheme, _accumulate
from .lattice import ConstraintSet, SupportPoint, enumerate_points
from .pmf import PmfTable, compare_moment, make_table, oracle_expectation
from .scalars import Scalar
from ._coerce import coerce_theta

KIND = "second"


@dataclass(frozen=True)
class SecondKindParams:
    """k+1 unlimited-capacity urns, n balls, under a given deformation."""

    alg: AlgebraSpec
    k: int
    n: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValidationError(f"k: need k >= 1, got {self.k}")
        if self.n < 0:
            raise ValidationError(f"n: need n >= 0, got {self.n}")

    def describe(self) -> dict:
        out = {"kind": KIND, "k": self.k, "n": self.n}
        out.update(self.alg.describe())
        return out


def support_constraints(params: SecondKindParams) -> ConstraintSet:
    return ConstraintSet(upper=(params.n,) * params.k, sum_min=0, sum_max=params.n)


def _phi_constant_exponent(k: int, n: int) -> int:
    return 2 * k * n + comb(k + 1, 2)


def joint_weight(params: SecondKindParams, x: SupportPoint) -> Scalar:
    alg, k, n = params.alg, params.k, params.n
    e = sum((k - j) * x[j] for j in range(k))
    return alg.tau1 ** (_phi_constant_exponent(k, n) - e) * alg.tau2**e


@lru_cache(maxsize=None)
def joint_pmf(params: SecondKindParams) -> PmfTable:
    """Joint law of (X_1..X_k); closed-form normalizer [k+n over n]."""
    alg, k, n = params.alg, params.k, params.n
    support = enumerate_points(support_constraints(params))
    weights = [joint_weight(params, x) for x in support]
    return make_table(
        kind=KIND,
        params=params.describe(),
        coord_labels=tuple(f"x{j}" for j in range(1, k + 1)),
        support=support,
        weights=weights,
        alg=alg,
        z_closed_form=deformed_binomial(alg, k + n, n),
        fit_bound=_phi_constant_exponent(k, n) + k * n,
    )


def _marginal_closed_weight(params: SecondKindParams, prefix: SupportPoint) -> Scalar:
    alg, k, n = params.alg, params.k, params.n
    r = len(prefix)
    y = sum(prefix)
    e = sum((k - j) * prefix[j] for j in range(r))
    tail = binomial_or_zero(alg, k - r + n - y, n - y)
    return alg.tau1 ** (_phi_constant_exponent(k, n) - e) * alg.tau2**e * tail


def marginal_pmf(params: SecondKindParams, r: int) -> PmfTable:
    """Law of (X_1..X_r), 1 <= r < k, by exact summation of the joint."""
    if not 1 <= r < params.k:
        raise ValidationError(f"r: marginal needs 1 <= r < k, got r={r}, k={params.k}")
    joint = joint_pmf(params)
    support, masses = _accumulate(joint, lambda x: x[:r])
    table_params = params.describe()
    table_params.update({"table": "marginal", "r": r})
    return make_table(
        kind=f"{KIND}-marginal",
        params=table_params,
        coord_labels=tuple(f"x{j}" for j in range(1, r + 1)),
        support=support,
        weights=masses,
        alg=params.alg,
        z_closed_form=deformed_binomial(params.alg, params.k + params.n, params.n),
        fit_bound=_phi_constant_exponent(params.k, params.n) + params.k * params.n,
        closed_values=[_marginal_closed_weight(params, p) for p in support],
    )


def _conditional_closed_value(
    params: SecondKindParams, given: SupportPoint, suffix: SupportPoint
) -> Scalar:
    alg, k, n = params.alg, params.k, params.n
    r = len(given)
    m = r + len(suffix)
    y_r = sum(given)
    y_m = y_r + sum(suffix)
    e = sum((k - (r + j)) * suffix[j] for j in range(len(suffix)))
    numerator = binomial_or_zero(alg, k - m + n - y_m, n - y_m)
    denominator = deformed_binomial(alg, k - r + n - y_r, n - y_r)
    return alg.tau1 ** (-e) * alg.tau2**e * numerator / denominator


def conditional_pmf(params: SecondKindParams, given: Sequence[int], m: int) -> PmfTable:
    """Law of (X_{r+1}..X_m) given (X_1..X_r) = `given`, via the chain rule."""
    given = tuple(given)
    r = len(given)
    if not 1 <= r < m <= params.k:
        raise ValidationError(f"conditional needs 1 <= r < m <= k, got r={r}, m={m}, k={params.k}")
    if any(v < 0 for v in given):
        raise ValidationError(f"given: occupancies are nonnegative, got {given}")
    if sum(given) > params.n:
        raise ZeroProbabilityEventError(f"given: prefix places {sum(given)} > n = {params.n} balls")
    joint = joint_pmf(params)
    acc: Dict[SupportPoint, Scalar] = {}
    for x, w in zip(joint.support, joint.weights):
        if x[:r] == given:
            key = x[r:m]
            acc[key] = acc[key] + w if key in acc else w
    if not acc:
        raise ZeroProbabilityEventError(f"conditioning event {given} has probability zero")
    support = tuple(sorted(acc))
    masses = tuple(acc[p] for p in support)
    table_params = params.describe()
    table_params.update({"table": "conditional", "given": list(given), "m": m})
    return make_table(
        kind=f"{KIND}-conditional",
        params=table_params,
        coord_labels=tuple(f"x{j}" for j in range(r + 1, m + 1)),
        support=support,
        weights=masses,
        alg=params.alg,
        closed_values=[_conditional_closed_value(params, given, s) for s in support],
    )


def _grouped_closed_weight(params: SecondKindParams, scheme: GroupingScheme, y: SupportPoint) -> Scalar:
    alg, k, n = params.alg, params.k, params.n
    s = scheme.partial_sums
    e1 = e2 = 0
    z = 0
    value = 1 if alg.exact else 1.0
    for j, (m_j, y_j) in enumerate(zip(scheme.sizes, y)):
        z += y_j
        e1 += (n - z - s[j]) * (m_j - 1)
        e2 += (k - s[j] + 1) * y_j
        value *= binomial_or_zero(alg, m_j + y_j - 1, y_j)
    return alg.tau1**e1 * alg.tau2**e2 * value


def _grouped_marginal_closed_weight(
    params: SecondKindParams, scheme: GroupingScheme, prefix: SupportPoint
) -> Scalar:
    alg, k, n = params.alg, params.k, params.n
    s = scheme.partial_sums
    nu = len(prefix)
    z_nu = sum(prefix)
    e1 = e2 = 0
    z = 0
    value = 1 if alg.exact else 1.0
    for j in range(nu):
        m_j, y_j = scheme.sizes[j], prefix[j]
        z += y_j
        e1 += (n - z - s[j]) * (m_j - 1)
        e2 += (k - s[j] + 1) * y_j
        value *= binomial_or_zero(alg, m_j + y_j - 1, y_j)
    tail = binomial_or_zero(alg, k - s[nu - 1] + n - z_nu, n - z_nu)
    return alg.tau1**e1 * alg.tau2**e2 * value * tail


def grouped_pmf(params: SecondKindParams, scheme: GroupingScheme) -> PmfTable:
    """Law of the block sums (Y_1..Y_r), as the pushforward of the joint."""
    scheme.validate_for(params.k)
    joint = joint_pmf(params)
    support, masses = _accumulate(joint, scheme.project)
    table_params = params.describe()
    table_params.update({"table": "grouped", "scheme": list(scheme.sizes)})
    return make_table(
        kind=f"{KIND}-grouped",
        params=table_params,
        coord_labels=tuple(f"y{j}" for j in range(1, len(scheme.sizes) + 1)),
        support=support,
        weights=masses,
        alg=params.alg,
        z_closed_form=deformed_binomial(params.alg, params.k + params.n, params.n),
        fit_bound=_phi_constant_exponent(params.k, params.n) + params.k * params.n,
        closed_values=[_grouped_closed_weight(params, scheme, y) for y in support],
    )


def grouped_marginal_pmf(params: SecondKindParams, scheme: GroupingScheme, nu: int) -> PmfTable:
    """Law of the leading blocks (Y_1..Y_nu), 1 <= nu < r."""
    scheme.validate_for(params.k)
    if not 1 <= nu < len(scheme.sizes):
        raise ValidationError(f"nu: need 1 <= nu < {len(scheme.sizes)}, got {nu}")
    grouped = grouped_pmf(params, scheme)
    support, masses = _accumulate(grouped, lambda y: y[:nu])
    table_params = params.describe()
    table_params.update({"table": "grouped-marginal", "scheme": list(scheme.sizes), "nu": nu})
    return make_table(
        kind=f"{KIND}-grouped-marginal",
        params=table_params,
        coord_labels=tuple(f"y{j}" for j in range(1, nu + 1)),
        support=support,
        weights=masses,
        alg=params.alg,
        z_closed_form=deformed_binomial(params.alg, params.k + params.n, params.n),
        fit_bound=_phi_constant_exponent(params.k, params.n) + params.k * params.n,
        closed_values=[_grouped_marginal_closed_weight(params, scheme, p) for p in support],
    )


def grouped_conditional_pmf(
    params: SecondKindParams, scheme: GroupingScheme, given: Sequence[int]
) -> PmfTable:
    """Law of the trailing blocks given the leading block counts."""
    scheme.validate_for(params.k)
    given = tuple(given)
    nu = len(given)
    if not 1 <= nu < len(scheme.sizes):
        raise ValidationError(f"given: need 1 <= len(given) < {len(scheme.sizes)}, got {nu}")
    grouped = grouped_pmf(params, scheme)
    acc: Dict[SupportPoint, Scalar] = {}
    for y, w in zip(grouped.support, grouped.weights):
        if y[:nu] == given:
            acc[y[nu:]] = acc[y[nu:]] + w if y[nu:] in acc else w
    if not acc:
        raise ZeroProbabilityEventError(f"conditioning event {given} has probability zero")
    support = tuple(sorted(acc))
    masses = tuple(acc[p] for p in support)
    prefix_weight = _grouped_marginal_closed_weight(params, scheme, given)
    closed = [
        _grouped_closed_weight(params, scheme, given + suffix) / prefix_weight
        for suffix in support
    ]
    table_params = params.describe()
    table_params.update(
        {"table": "grouped-conditional", "scheme": list(scheme.sizes), "given": list(given)}
    )
    return make_table(
        kind=f"{KIND}-grouped-conditional",
        params=table_params,
        coord_labels=tuple(f"y{j}" for j in range(nu + 1, len(scheme.sizes) + 1)),
        support=support,
        weights=masses,
        alg=params.alg,
        closed_values=closed,
    )


def geometric_construction_check(alg: AlgebraSpec, k: int, n: int, theta) -> ConstructionReport:
    """Condition k+1 independent failure counts on n total failures.

    W_j counts failures between the (j-1)-th and j-th success of a trials
    scheme whose per-trial failure odds scale by tau2/tau1; conditioning on
    sum(W) = n truncates every W_j to {0..n}, so the check is finite and
    exact.  The conditional law of (W_1..W_k) is compared with the
    unlimited-capacity joint law under the inverse-parameter algebra.
    """
    params = SecondKindParams(alg, k, n)
    theta = coerce_theta(theta, alg)
    if alg.tau1 is None or alg.tau2 is None:
        raise ValidationError("construction check needs structure constants")
    for j in range(1, k + 2):
        if alg.tau1 ** (j - 1) - theta * alg.tau2 ** (j - 1) <= 0:
            raise ValidationError(
                f"theta: trial {j} has success probability outside (0,1) for theta={theta}"
            )
    outcomes = enumerate_points(ConstraintSet(upper=(n,) * (k + 1), sum_min=n, sum_max=n))
    masses = []
    for w in outcomes:
        mass = 1 if alg.exact else 1.0
        for j, w_j in enumerate(w, start=1):
            mass *= (
                alg.tau1 ** ((1 - j) * (w_j + 1))
                * (theta * alg.tau2 ** (j - 1)) ** w_j
                * (alg.tau1 ** (j - 1) - theta * alg.tau2 ** (j - 1))
            )
        masses.append(mass)
    total = sum(masses)
    support = tuple(w[:k] for w in outcomes)
    construction = tuple(m / total for m in masses)
    model = joint_pmf(SecondKindParams(inverse_algebra(alg), k, n))
    if model.support != support:
        return ConstructionReport(
            "geometric", theta, support, construction, model.probabilities, False,
            note="support mismatch",
        )
    match = all(alg.close(a, b) for a, b in zip(construction, model.probabilities))
    return ConstructionReport("geometric", theta, support, construction, model.probabilities, match)


def factorial_moment_closed_form(alg: AlgebraSpec, k: int, n: int, i: int) -> Scalar:
    """Closed form of E([X1][X1-1]...[X1-i+1]); zero once i > n."""
    if i < 1:
        raise ValidationError(f"i: moment order must be >= 1, got {i}")
    if i > n:
        return Fraction(0) if alg.exact else 0.0
    return (
        alg.tau1 ** (_phi_constant_exponent(k, n) - k * i)
        * alg.tau2 ** (k * i)
        * deformed_falling_factorial(alg, n, i)
        * deformed_factorial(alg, i)
        / deformed_falling_factorial(alg, k + i, i)
    )


def mixed_closed_form(alg: AlgebraSpec, k: int, n: int, i2: int) -> Scalar:
    """Closed form of E(tau1^(-i2 X1) tau2^(i2 X1) [X2]_(i2))."""
    if i2 < 1:
        raise ValidationError(f"i2: moment order must be >= 1, got {i2}")
    if i2 > n:
        return Fraction(0) if alg.exact else 0.0
    return (
        alg.tau1 ** (_phi_constant_exponent(k, n) + (1 - k) * i2)
        * alg.tau2 ** ((k - 1) * i2)
        * deformed_factorial(alg, i2)
        * deformed_falling_factorial(alg, n, i2)
        / deformed_falling_factorial(alg, k + i2, i2)
    )


def variance_closed_form(alg: AlgebraSpec, k: int, n: int):
    """Closed form of V([X1]), evaluable only when tau1 = 1.

    The printed general form carries a stray tau1^(1-x1) with x1 unbound, so
    for tau1 != 1 it is not a number; the oracle value is authoritative and
    the report flags the formula instead of guessing.
    """
    if alg.tau1 != 1:
        return None
    t2 = alg.tau2
    term1 = (
        t2 ** (2 * k + 1)
        * deformed_falling_factorial(alg, n, 2)
        * deformed_factorial(alg, 2)
        / deformed_falling_factorial(alg, k + 2, 2)
    )
    term2 = t2**k * deformed_number(alg, n) / deformed_number(alg, k + 1)
    mean = t2**k * deformed_number(alg, n) / deformed_number(alg, k + 1)
    return term1 + term2 - mean**2


def covariance_closed_form(alg: AlgebraSpec, k: int, n: int) -> Scalar:
    """Closed form of Cov([X1], tau1^(-X1) tau2^(X1) [X2]).

    The denominator factor is tau1^(2k(1-n) - C(k+1,2)); enumeration at
    (k, n) = (2, 1) rules out reading it as a power of tau2.
    """
    if n == 0:
        return Fraction(0) if alg.exact else 0.0
    nabla = alg.tau2 * deformed_number(alg, n - 1) * deformed_number(alg, k + 1)
    nabla -= alg.tau1 * deformed_number(alg, n) * deformed_number(alg, k + 2)
    return (
        alg.tau2 ** (2 * k - 1)
        * deformed_number(alg, n)
        * nabla
        / (
            alg.tau1 ** (2 * k * (1 - n) - comb(k + 1, 2))
            * deformed_number(alg, k + 1) ** 2
            * deformed_number(alg, k + 2)
        )
    )


def bivariate_table(params: SecondKindParams) -> PmfTable:
    """Oracle law of (X_1, X_2): the joint at k = 2, else the 2-prefix marginal."""
    if params.k < 2:
        raise ValidationError(f"k: bivariate table needs k >= 2, got {params.k}")
    if params.k == 2:
        return joint_pmf(params)
    return marginal_pmf(params, 2)


def bivariate_moments(params: SecondKindParams, i1: int = 1, i2: int = 1) -> list:
    """Closed-form factorial moments, variance and covariance of (X_1, X_2)
    against exact oracle expectations over the bivariate law."""
    if i1 < 1 or i2 < 1:
        raise ValidationError(f"moment orders must be >= 1, got i1={i1}, i2={i2}")
    alg = params.alg
    k, n = params.k, params.n
    table = bivariate_table(params)

    def fall(x, i):
        return deformed_falling_factorial(alg, x, i)

    fact_o = oracle_expectation(table, lambda x: fall(x[0], i1))
    mean_o = oracle_expectation(table, lambda x: deformed_number(alg, x[0]))
    var_o = oracle_expectation(table, lambda x: deformed_number(alg, x[0]) ** 2) - mean_o**2
    mixed_o = oracle_expectation(
        table, lambda x: alg.tau1 ** (-i2 * x[0]) * alg.tau2 ** (i2 * x[0]) * fall(x[1], i2)
    )
    cross_o = oracle_expectation(
        table,
        lambda x: deformed_number(alg, x[0])
        * alg.tau1 ** (-x[0])
        * alg.tau2 ** (x[0])
        * deformed_number(alg, x[1]),
    )
    mixed1_o = oracle_expectation(
        table, lambda x: alg.tau1 ** (-x[0]) * alg.tau2 ** (x[0]) * deformed_number(alg, x[1])
    )
    cov_o = cross_o - mean_o * mixed1_o

    variance_closed = variance_closed_form(alg, k, n)
    variance_note = "" if variance_closed is not None else "printed form unevaluable for tau1 != 1"
    return [
        compare_moment(
            f"factorial-moment[i1={i1}]", fact_o, factorial_moment_closed_form(alg, k, n, i1), alg
        ),
        compare_moment("variance", var_o, variance_closed, alg, note=variance_note),
        compare_moment(f"mixed[i2={i2}]", mixed_o, mixed_closed_form(alg, k, n, i2), alg),
        compare_moment("covariance", cov_o, covariance_closed_form(alg, k, n), alg),
    ]
