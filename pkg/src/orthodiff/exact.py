"""Exact rational scalars and the combinatorial symbols built on them.

``Rat`` is :class:`fractions.Fraction`: always in lowest terms with a
positive denominator, and immutable.  The helpers here add the textual
"p/q" form and the rising factorial / generalized binomial.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

Rat = Fraction

_RAT_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


class RatParseError(ValueError):
    pass


def parse_rat(text: str) -> Fraction:
    """Parse ``"p"``, ``"-p"`` or ``"p/q"`` (decimal digits only)."""
    m = _RAT_RE.match(text.strip())
    if m is None:
        raise RatParseError(f"not a rational: {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise RatParseError(f"zero denominator: {text!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign else value


def format_rat(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rat(value) -> Fraction:
    if isinstance(value, str):
        return parse_rat(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted on the exact path")
    return Fraction(value)


def is_integer(q) -> bool:
    return Fraction(q).denominator == 1


def is_nonneg_integer(q) -> bool:
    q = Fraction(q)
    return q.denominator == 1 and q >= 0


@lru_cache(maxsize=None)
def pochhammer(q, k: int) -> Fraction:
    """Rising factorial q(q+1)...(q+k-1); 1 for k = 0."""
    if k < 0:
        raise ValueError(f"pochhammer: negative length {k}")
    q = Fraction(q)
    out = Fraction(1)
    for t in range(k):
        out *= q + t
    return out


def factorial(k: int) -> int:
    return math.factorial(k)


@lru_cache(maxsize=None)
def gen_binomial(q, k: int) -> Fraction:
    """Binomial coefficient with rational top argument.

    ``gen_binomial(q, k) = (q-k+1)_k / k!``.  A negative lower index gives 0,
    which is the convention the degenerate small-n cases rely on
    (e.g. ``gen_binomial(n + alpha, n - 1)`` at ``n = 0``).
    """
    if k < 0:
        return Fraction(0)
    q = Fraction(q)
    return pochhammer(q - k + 1, k) / math.factorial(k)
