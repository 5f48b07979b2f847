"""Exact arithmetic on the rational unit interval.

All membership values and homomorphism values in this package are
``fractions.Fraction`` instances restricted to [0, 1].  The operations below
are the standard many-valued connectives on that interval: truncated sum,
Lukasiewicz product, involutive negation, lattice join/meet and the
symmetric distance.  Everything is exact; no floats anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError

UnitRational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def unit(numerator, denominator=None) -> Fraction:
    """Build a unit-interval rational, validating the bounds."""
    value = Fraction(numerator) if denominator is None else Fraction(numerator, denominator)
    if value < 0 or value > 1:
        raise InputError(f"value {value} lies outside [0, 1]")
    return value


def parse_unit(text: str) -> Fraction:
    """Parse the textual form ``p/q`` (lowest terms; ``0`` and ``1`` accepted)."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {text!r}") from exc
    if value < 0 or value > 1:
        raise InputError(f"value {value} lies outside [0, 1]")
    return value


def format_unit(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def mv_add(a: Fraction, b: Fraction) -> Fraction:
    """Truncated sum: min(1, a+b)."""
    s = a + b
    return s if s <= ONE else ONE


def mv_mul(a: Fraction, b: Fraction) -> Fraction:
    """Lukasiewicz product: max(0, a+b-1)."""
    s = a + b - 1
    return s if s >= ZERO else ZERO


def mv_neg(a: Fraction) -> Fraction:
    return ONE - a


def mv_sub(a: Fraction, b: Fraction) -> Fraction:
    """Truncated difference a (.) b* = max(0, a-b)."""
    s = a - b
    return s if s >= ZERO else ZERO


def join(a: Fraction, b: Fraction) -> Fraction:
    return a if a >= b else b


def meet(a: Fraction, b: Fraction) -> Fraction:
    return a if a <= b else b


def dist(a: Fraction, b: Fraction) -> Fraction:
    """Symmetric distance (a-b) (+) (b-a); equals |a-b| on the interval."""
    return mv_add(mv_sub(a, b), mv_sub(b, a))


def nfold_add(n: int, a: Fraction) -> Fraction:
    """n-fold truncated sum: min(1, n*a)."""
    if n < 1:
        raise InputError("multiplicity must be >= 1")
    s = n * a
    return s if s <= ONE else ONE


def nfold_mul(n: int, a: Fraction) -> Fraction:
    """n-fold product: max(0, n*a - n + 1)."""
    if n < 1:
        raise InputError("exponent must be >= 1")
    s = n * a - n + 1
    return s if s >= ZERO else ZERO


def chain_values(n: int) -> tuple[Fraction, ...]:
    """The n+1 equally spaced values 0, 1/n, ..., 1."""
    if n < 1:
        raise InputError("chain order must be >= 1")
    return tuple(Fraction(k, n) for k in range(n + 1))


def in_chain(x: Fraction, n: int) -> bool:
    return 0 <= x <= 1 and n % x.denominator == 0


def common_grid(values) -> int:
    """Least n such that every value lies on the 1/n grid."""
    return math.lcm(1, *(v.denominator for v in values))
