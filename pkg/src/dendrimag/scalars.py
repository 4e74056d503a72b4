"""Exact scalar arithmetic: rational numbers and Bernoulli numbers.

The scalar field throughout the exact half of this package is the rationals,
represented by ``fractions.Fraction`` (arbitrary precision, always in lowest
terms, positive denominator).  This module adds the serialization helpers
("p/q" strings) used by every JSON payload, and the Bernoulli numbers that
drive the Magnus recursion.

Bernoulli convention
--------------------
``bernoulli(m)`` returns B_m for the generating function

    z / (exp(z) - 1) = sum_{m >= 0} (B_m / m!) z^m
                     = 1 - z/2 + z^2/12 - z^4/720 + ...

so B_0 = 1, B_1 = -1/2, B_2 = 1/6, B_3 = 0, B_4 = -1/30.  The sign of B_1 is
load-bearing: with B_1 = +1/2 the weighted Magnus fixed point no longer
exponentiates to the solution of X = 1 + lambda a < X.  Use
``bernoulli_weight(m)`` for the combination B_m/m! (the z^m coefficient of the
generating function) that appears in the expansion formulas.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

__all__ = [
    "Fraction",
    "bernoulli",
    "bernoulli_weight",
    "rational_str",
    "parse_rational",
]


def rational_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", or plain "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse the "p/q" / "p" format produced by :func:`rational_str`."""
    return Fraction(s.strip())


_bernoulli_cache = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """B_m as an exact Fraction (B_1 = -1/2 convention, see module docstring).

    Computed by the binomial recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for
    m >= 1, with B_0 = 1.  Results are memoized; the cache is grown under a
    lock so concurrent callers are safe.
    """
    if m < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {m}")
    if m < len(_bernoulli_cache):
        return _bernoulli_cache[m]
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= m:
            k = len(_bernoulli_cache)
            # C(k+1, k) B_k = -sum_{j<k} C(k+1, j) B_j
            acc = Fraction(0)
            for j in range(k):
                acc += comb(k + 1, j) * _bernoulli_cache[j]
            _bernoulli_cache.append(-acc / (k + 1))
        return _bernoulli_cache[m]


def bernoulli_weight(m: int) -> Fraction:
    """B_m / m!, the z^m coefficient of z/(exp(z) - 1)."""
    f = 1
    for i in range(2, m + 1):
        f *= i
    return bernoulli(m) / f
