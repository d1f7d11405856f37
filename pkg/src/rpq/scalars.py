"""Scalar values in two modes: exact rationals and tolerance-checked floats.

Exact values are `fractions.Fraction`; approximate values are `float`.
Plain ints are neutral constants that combine with either mode.  Nothing in
this package silently mixes the two: callers use :func:`check_uniform_mode`
at boundaries where user-supplied values enter a computation.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

from .errors import ModeMixError, ValidationError

Scalar = Union[Fraction, float, int]

DEFAULT_TOL = 1e-10

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def is_exact(value: Scalar) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def parse_scalar(text: str) -> Scalar:
    """Parse "a/b" or integer strings to Fraction; decimal strings to float.

    Decimal notation deliberately lands in approximate mode, so "1/2" and
    "0.5" are not interchangeable inputs.
    """
    text = text.strip()
    if _RATIONAL_RE.match(text):
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValidationError(f"zero denominator in rational {text!r}") from None
    try:
        return float(text)
    except ValueError:
        raise ValidationError(f"not a rational or decimal number: {text!r}") from None


def check_uniform_mode(values: Iterable[Scalar], where: str) -> None:
    """Raise ModeMixError if both Fractions and floats appear in `values`."""
    saw_exact = saw_float = False
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (Fraction, float, int)):
            raise ValidationError(f"{where}: non-numeric value {v!r}")
        if isinstance(v, float):
            saw_float = True
        elif isinstance(v, Fraction):
            saw_exact = True
    if saw_exact and saw_float:
        raise ModeMixError(f"{where}: exact and approximate values mixed")


def scalars_close(a: Scalar, b: Scalar, exact: bool, tol: float = DEFAULT_TOL) -> bool:
    if exact:
        return a == b
    return math.isclose(a, b, rel_tol=tol, abs_tol=tol)


def scalar_str(value: Scalar) -> str:
    """Deterministic string form: "4/7" style for rationals, repr for floats."""
    if isinstance(value, float):
        return repr(value)
    return str(Fraction(value))
