"""Exact rational scalars.

All coefficient arithmetic in this package runs on exact rationals.  We use
gmpy2's mpq when available (markedly faster for the large numerators that show
up in high-order series) and fall back to fractions.Fraction otherwise.  The
rest of the package only goes through the helpers defined here, so the backend
is interchangeable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

try:
    from gmpy2 import mpq as _mpq, mpz as _mpz

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpq = None
    _mpz = None
    _HAVE_GMPY2 = False

RationalLike = Union[int, str, Fraction, "Rat"]

if _HAVE_GMPY2:
    Rat = type(_mpq(0))

    def QQ(num: RationalLike = 0, den: int | None = None):
        """Build an exact rational from ints, strings like '3/4', or Fractions."""
        if den is not None:
            return _mpq(num, den)
        if isinstance(num, Fraction):
            return _mpq(num.numerator, num.denominator)
        return _mpq(num)

else:  # pragma: no cover
    Rat = Fraction

    def QQ(num: RationalLike = 0, den: int | None = None):
        if den is not None:
            return Fraction(num, den)
        return Fraction(num)


QQ0 = QQ(0)
QQ1 = QQ(1)


def rat_numer(x) -> int:
    return int(x.numerator)


def rat_denom(x) -> int:
    return int(x.denominator)


def to_fraction(x) -> Fraction:
    """Convert a backend rational (or int) to fractions.Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def frac_str(x) -> str:
    """Canonical text for a rational: 'p' or 'p/q' with q > 0."""
    n, d = int(x.numerator), int(x.denominator)
    if d == 1:
        return str(n)
    return f"{n}/{d}"


def parse_frac(text: str) -> Fraction:
    """Parse 'p' or 'p/q' into a Fraction."""
    return Fraction(text.strip())
