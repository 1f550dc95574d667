"""Shared independent oracles for the test suite.

Everything here is deliberately written from scratch against the library
under test: different formulas where possible (a different arctangent
decomposition for pi), plain Fraction loops with their own tail bounds
elsewhere.  Each oracle returns a (lower, upper) rational bracket that
provably contains the target.
"""

from __future__ import annotations

import math
from fractions import Fraction


def atan_recip_bracket(q: int, terms: int) -> tuple[Fraction, Fraction]:
    """Bracket of arctan(1/q) from the alternating series, exact rationals."""
    total = Fraction(0)
    sign = 1
    for k in range(terms):
        total += Fraction(sign, (2 * k + 1) * q ** (2 * k + 1))
        sign = -sign
    leftover = Fraction(1, (2 * terms + 1) * q ** (2 * terms + 1))
    if sign > 0:
        return total, total + leftover
    return total - leftover, total


def pi_bracket(terms: int = 60) -> tuple[Fraction, Fraction]:
    """pi from pi/4 = arctan(1/2) + arctan(1/3) (not the formula under test)."""
    lo2, hi2 = atan_recip_bracket(2, terms)
    lo3, hi3 = atan_recip_bracket(3, terms)
    return 4 * (lo2 + lo3), 4 * (hi2 + hi3)


def ln_bracket(r: Fraction, terms: int = 80) -> tuple[Fraction, Fraction]:
    """Bracket of ln(r) for rational r > 0 via ln(r) = 2 atanh((r-1)/(r+1)).

    All series terms share one sign pattern: atanh(u) = sum u^(2k+1)/(2k+1)
    with remainder below |u|^(2T+1) / ((2T+1)(1 - u^2)).
    """
    r = Fraction(r)
    if r <= 0:
        raise ValueError("ln oracle needs a positive rational")
    u = (r - 1) / (r + 1)
    total = Fraction(0)
    for k in range(terms):
        total += u ** (2 * k + 1) / (2 * k + 1)
    rem = abs(u) ** (2 * terms + 1) / ((2 * terms + 1) * (1 - u * u))
    if u >= 0:
        return 2 * total, 2 * (total + rem)
    return 2 * (total - rem), 2 * total


def sqrt_bracket(r: Fraction, bits: int = 200) -> tuple[Fraction, Fraction]:
    """Dyadic bracket of sqrt(r) for rational r >= 0 via integer isqrt."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("sqrt oracle needs a nonnegative rational")
    scale = 1 << bits
    root = math.isqrt(r.numerator * r.denominator * scale * scale)
    lo = Fraction(root, r.denominator * scale)
    hi = Fraction(root + 1, r.denominator * scale)
    return lo, hi


def decimal_digits(num: int, den: int, places: int) -> str:
    """Decimal expansion of num/den (0 < num < den) by long division."""
    digits = []
    rem = num
    for _ in range(places):
        rem *= 10
        digits.append(str(rem // den))
        rem %= den
    return "".join(digits)
