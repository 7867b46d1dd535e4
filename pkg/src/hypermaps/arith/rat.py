"""Exact rational numbers.

Everything in this package is computed over arbitrary-precision rationals:
always reduced, positive denominator, no rounding anywhere.  gmpy2's mpq is
used when available (same semantics as fractions.Fraction, much faster);
otherwise we fall back to the stdlib.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    Rat = Fraction

ZERO = Rat(0)
ONE = Rat(1)


def rat(num, den=1):
    """Exact rational num/den from integers."""
    return Rat(num, den)


def as_int_pair(q) -> tuple[int, int]:
    """(numerator, denominator) as plain ints, denominator > 0."""
    return int(q.numerator), int(q.denominator)


def rat_str(q) -> str:
    """Render as 'n' or 'n/d'; never a decimal."""
    n, d = as_int_pair(q)
    return str(n) if d == 1 else f"{n}/{d}"
