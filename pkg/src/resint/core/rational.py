"""Rational scalars.

Coefficients are stored as ``int`` when integral and as
:class:`fractions.Fraction` otherwise; ``norm`` restores that invariant.
"""

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _RationalABC

Rational = Fraction


def norm(c):
    """Collapse an integral Fraction to int."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def to_rational(x):
    """Coerce ints, Fractions and strings such as ``"-3/4"`` to a normalized scalar."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return norm(x)
    if isinstance(x, _RationalABC):
        return norm(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return norm(Fraction(x.strip()))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def make_rational(num, den=1):
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return norm(Fraction(num, den))


def rational_str(c) -> str:
    c = norm(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def content_of(coeffs):
    """Positive rational g with every coefficient / g an integer and the integer gcd 1."""
    num_g = 0
    den_l = 1
    for c in coeffs:
        if isinstance(c, int):
            num_g = gcd(num_g, c)
        else:
            num_g = gcd(num_g, c.numerator)
            den_l = lcm(den_l, c.denominator)
    if num_g == 0:
        return 0
    return make_rational(num_g, den_l)
