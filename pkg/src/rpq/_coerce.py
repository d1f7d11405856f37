"""Coercion of user-supplied scalars to an algebra's arithmetic mode."""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraSpec
from .errors import ModeMixError, ValidationError
from .scalars import Scalar, parse_scalar


def coerce_theta(theta, alg: AlgebraSpec) -> Scalar:
    """Validate a trial parameter theta in (0, 1) in the algebra's mode."""
    if isinstance(theta, str):
        theta = parse_scalar(theta)
    if isinstance(theta, bool) or not isinstance(theta, (Fraction, float, int)):
        raise ValidationError(f"theta: not a number: {theta!r}")
    if alg.exact and isinstance(theta, float):
        raise ModeMixError("theta: float parameter with an exact algebra; pass a rational")
    if not alg.exact:
        theta = float(theta)
    elif not isinstance(theta, Fraction):
        theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValidationError(f"theta: need 0 < theta < 1, got {theta}")
    return theta
