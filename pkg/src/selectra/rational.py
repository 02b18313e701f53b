"""Exact scalars: rationals plus the two infinities.

Everything geometric in this package is a ``fractions.Fraction``.  The only
floats that ever appear are ``float('inf')`` and ``float('-inf')``, used as
order sentinels for unbounded interval endpoints and extended scalar fields.
Comparing a Fraction against an infinity is exact; arithmetic with an
infinity is never performed (the helpers below encode the finite fallback
rules explicitly).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Fraction
ExtRat = Union[Fraction, float]

NEG_INF: float = float("-inf")
POS_INF: float = float("inf")


def is_finite(value: ExtRat) -> bool:
    return not isinstance(value, float)


def require_finite(value: ExtRat) -> Fraction:
    if isinstance(value, float):
        raise ValueError("expected a finite rational, got %r" % value)
    return value


def midpoint_rule(lo: ExtRat, hi: ExtRat) -> Fraction:
    """Canonical interior point of the interval (lo, hi).

    Finite bounds take the midpoint; (-inf, c) maps to c - 1, (c, +inf) to
    c + 1 and the whole line to 0.  These are the deterministic rules the
    selection engines rely on.
    """
    lo_fin, hi_fin = is_finite(lo), is_finite(hi)
    if lo_fin and hi_fin:
        return (lo + hi) / 2
    if lo_fin:
        return lo + 1
    if hi_fin:
        return hi - 1
    return Fraction(0)


def parse_scalar(token) -> ExtRat:
    """Parse an extended rational from JSON: int, 'p/q', 'inf' or '-inf'."""
    if isinstance(token, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, float):
        raise ValueError("floats are rejected; encode rationals as 'p/q' strings")
    if isinstance(token, str):
        text = token.strip()
        if text == "inf":
            return POS_INF
        if text == "-inf":
            return NEG_INF
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("bad rational %r" % token) from exc
    raise ValueError("bad rational %r" % token)


def parse_rational(token) -> Fraction:
    value = parse_scalar(token)
    return require_finite(value)


def format_scalar(value: ExtRat):
    """Canonical JSON form: ints stay ints, other rationals become 'p/q'."""
    if isinstance(value, float):
        if value == POS_INF:
            return "inf"
        if value == NEG_INF:
            return "-inf"
        raise ValueError("only infinities may be floats, got %r" % value)
    if value.denominator == 1:
        return int(value)
    return "%d/%d" % (value.numerator, value.denominator)
