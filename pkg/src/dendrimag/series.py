"""Truncated formal power series over pluggable coefficient spaces.

A :class:`TruncatedSeries` holds coefficients c_0..c_N of a series in one
formal parameter lambda, modulo lambda^(N+1).  Truncation is a hard contract:
every operation carries the order bound along and discards higher degrees,
so there is no silent precision loss and no hidden convergence question.

Coefficients live in a :class:`CoeffSpace`: anything with addition, rational
scaling and a zero test.  Spaces that additionally declare an associative
product and a unit support the multiplicative layer (Cauchy product,
``series_exp``, ``series_log``, ``bch``).  The same engine therefore serves
rational scalars, rational matrices, polynomials, grid sequences, tree linear
combinations and unital dendriform elements.

exp/log are the grading-safe versions: ``series_exp`` requires a zero constant
term (such inputs are nilpotent modulo lambda^(N+1), so the sums terminate)
and ``series_log`` requires constant term equal to the unit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

__all__ = [
    "CoeffSpace",
    "FractionSpace",
    "RATIONALS",
    "TruncatedSeries",
    "AssocContext",
    "NonNilpotentInput",
    "BadConstantTerm",
    "series_exp",
    "series_log",
    "bch",
]


class NonNilpotentInput(ValueError):
    """Raised when series_exp / bch gets a series with nonzero constant term."""


class BadConstantTerm(ValueError):
    """Raised when series_log gets a series whose constant term is not the unit."""


class CoeffSpace:
    """Declared-operations contract for series coefficients.

    Subclasses must implement ``zero``, ``add``, ``scale`` and ``is_zero``.
    Spaces with a product additionally implement ``mul`` and ``one`` and
    report ``has_product = True``.
    """

    has_product = False

    def zero(self) -> Any:
        raise NotImplementedError

    def add(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def scale(self, c: Fraction, x: Any) -> Any:
        raise NotImplementedError

    def is_zero(self, x: Any) -> bool:
        raise NotImplementedError

    def neg(self, x: Any) -> Any:
        return self.scale(Fraction(-1), x)

    def sub(self, x: Any, y: Any) -> Any:
        return self.add(x, self.neg(y))

    def eq(self, x: Any, y: Any) -> bool:
        return self.is_zero(self.sub(x, y))

    def mul(self, x: Any, y: Any) -> Any:
        raise NotImplementedError(f"{type(self).__name__} declares no product")

    def one(self) -> Any:
        raise NotImplementedError(f"{type(self).__name__} declares no unit")

    def element_json(self, x: Any) -> Any:
        """JSON-serializable form of one coefficient (spaces override)."""
        return str(x)


class FractionSpace(CoeffSpace):
    """The rationals themselves, as a coefficient space."""

    has_product = True

    def zero(self) -> Fraction:
        return Fraction(0)

    def add(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def scale(self, c: Fraction, x: Fraction) -> Fraction:
        return c * x

    def is_zero(self, x: Fraction) -> bool:
        return x == 0

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def one(self) -> Fraction:
        return Fraction(1)

    def element_json(self, x: Fraction) -> str:
        from .scalars import rational_str

        return rational_str(x)


RATIONALS = FractionSpace()


class TruncatedSeries:
    """Coefficients c_0..c_order of a formal series modulo lambda^(order+1)."""

    __slots__ = ("space", "order", "coeffs")

    def __init__(self, space: CoeffSpace, order: int, coeffs: Sequence[Any] = ()):
        if order < 0:
            raise ValueError(f"order must be >= 0, got {order}")
        if len(coeffs) > order + 1:
            raise ValueError(f"{len(coeffs)} coefficients exceed order {order}")
        cs = list(coeffs)
        cs.extend(space.zero() for _ in range(order + 1 - len(cs)))
        self.space = space
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, space: CoeffSpace, order: int) -> "TruncatedSeries":
        return cls(space, order)

    @classmethod
    def one(cls, space: CoeffSpace, order: int) -> "TruncatedSeries":
        return cls(space, order, [space.one()])

    @classmethod
    def single(cls, space: CoeffSpace, order: int, degree: int, x: Any) -> "TruncatedSeries":
        """The series x * lambda^degree."""
        if not 0 <= degree <= order:
            raise ValueError(f"degree {degree} outside 0..{order}")
        cs = [space.zero()] * (degree + 1)
        cs[degree] = x
        return cls(space, order, cs)

    def coeff(self, k: int) -> Any:
        return self.coeffs[k]

    def _require_same(self, other: "TruncatedSeries") -> None:
        if self.space is not other.space or self.order != other.order:
            raise ValueError("series must share coefficient space and order")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same(other)
        add = self.space.add
        return TruncatedSeries(
            self.space, self.order, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(Fraction(-1))

    def scale(self, c: Fraction) -> "TruncatedSeries":
        sc = self.space.scale
        return TruncatedSeries(self.space, self.order, [sc(c, a) for a in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product, truncated; requires the space to declare a product."""
        self._require_same(other)
        sp = self.space
        out = [sp.zero() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if sp.is_zero(a):
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if sp.is_zero(b):
                    continue
                out[i + j] = sp.add(out[i + j], sp.mul(a, b))
        return TruncatedSeries(sp, self.order, out)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by lambda^k (same order bound; top k coefficients fall off)."""
        if k < 0:
            raise ValueError("shift must be >= 0")
        sp = self.space
        cs = [sp.zero()] * min(k, self.order + 1) + list(self.coeffs[: self.order + 1 - k])
        return TruncatedSeries(sp, self.order, cs)

    def truncated(self, m: int) -> "TruncatedSeries":
        """The same series modulo lambda^(m+1), m <= order."""
        if m > self.order:
            raise ValueError(f"cannot extend order {self.order} to {m}")
        return TruncatedSeries(self.space, m, self.coeffs[: m + 1])

    def map_coeffs(
        self, f: Callable[[Any], Any], space: CoeffSpace | None = None
    ) -> "TruncatedSeries":
        return TruncatedSeries(space or self.space, self.order, [f(c) for c in self.coeffs])

    def is_zero(self) -> bool:
        return all(self.space.is_zero(c) for c in self.coeffs)

    def low_degree(self) -> int | None:
        """Smallest degree with nonzero coefficient, or None for the zero series."""
        for k, c in enumerate(self.coeffs):
            if not self.space.is_zero(c):
                return k
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.space is not other.space or self.order != other.order:
            return NotImplemented
        return all(self.space.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        raise TypeError("TruncatedSeries is not hashable")

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={list(self.coeffs)!r})"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [self.space.element_json(c) for c in self.coeffs],
        }


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term: sum_n s^n / n! mod lambda^(N+1)."""
    sp = s.space
    if not sp.is_zero(s.coeff(0)):
        raise NonNilpotentInput("series_exp needs a zero constant term")
    result = TruncatedSeries.one(sp, s.order)
    term = result
    for n in range(1, s.order + 1):
        term = (term * s).scale(Fraction(1, n))
        result = result + term
    return result


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """log of a series with unit constant term: sum_{n>0} -(-1)^n x^n / n, x = s - 1."""
    sp = s.space
    if not sp.eq(s.coeff(0), sp.one()):
        raise BadConstantTerm("series_log needs constant term equal to the unit")
    x = s - TruncatedSeries.one(sp, s.order)
    result = TruncatedSeries.zero(sp, s.order)
    power = TruncatedSeries.one(sp, s.order)
    for n in range(1, s.order + 1):
        power = power * x
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
    return result


def bch(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """log(exp(x) exp(y)) - x - y, computed in the ambient truncated algebra.

    Both inputs need zero constant terms.  The result starts at the degree of
    [x, y]/2, so in a graded setting bch strictly raises the grade.
    """
    sp = x.space
    if not sp.is_zero(x.coeff(0)) or not sp.is_zero(y.coeff(0)):
        raise NonNilpotentInput("bch needs zero constant terms")
    return series_log(series_exp(x) * series_exp(y)) - x - y


class AssocContext:
    """A coefficient space with product and unit, plus a fixed truncation order.

    Elements with zero constant term are nilpotent modulo lambda^(N+1), which
    is what makes exp/log/bch total on their stated domains.
    """

    def __init__(self, space: CoeffSpace, order: int):
        if not space.has_product:
            raise TypeError("AssocContext needs a space with product and unit")
        self.space = space
        self.order = order

    def zero(self) -> TruncatedSeries:
        return TruncatedSeries.zero(self.space, self.order)

    def one(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.space, self.order)

    def single(self, degree: int, x: Any) -> TruncatedSeries:
        return TruncatedSeries.single(self.space, self.order, degree, x)

    def series(self, coeffs: Iterable[Any]) -> TruncatedSeries:
        return TruncatedSeries(self.space, self.order, list(coeffs))

    exp = staticmethod(series_exp)
    log = staticmethod(series_log)
    bch = staticmethod(bch)
