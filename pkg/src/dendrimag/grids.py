"""Exact sequences on a uniform grid, with summation and difference operators.

A :class:`GridSeq` stores the values (f(theta*1), ..., f(theta*M)) of a
rational-valued function on a uniform grid of spacing theta; positions
outside the stored window are read as zero, i.e. sequences are finitely
supported on the unbounded grid.  Pointwise products make fixed-window
sequences a commutative algebra, which carries three summation operators:

    sum_incl(f)(m)   = theta * sum_{k=1..m}   f(k theta)    (weight -theta)
    sum_strict(f)(m) = theta * sum_{k=1..m-1} f(k theta)    (weight +theta)
    tail_sum(f)(m)   = theta * sum_{k=m+1..M} f(k theta)    (weight +theta)

each staying inside the window, each Rota-Baxter of the indicated weight:
inclusive lower sums double-count the diagonal of a product of sums, strict
ones miss it.  ``tail_sum`` is the forward summation that builds the
summation tridendriform instance.

The finite-difference operator of step -theta,

    diff(f)(x) = (f(x - theta) - f(x)) / theta,

obeys the skew-derivation rule d(fg) = d(f) g + f d(g) + theta d(f) d(g)
and telescopes against the forward summation: shift_sum(diff(f)) = f.
``diff`` extends the window by one slot; ``shift_sum`` needs a total sum of
zero (always true of differences) to keep its output finitely supported.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from .scalars import rational_str
from .series import CoeffSpace

__all__ = ["GridSeq", "GridSpace", "NonSummable", "random_gridseq"]


class NonSummable(ValueError):
    """shift_sum input has nonzero total, so its tail sums never vanish."""


class GridSeq:
    __slots__ = ("theta", "values")

    def __init__(self, theta: Fraction, values: Iterable[Fraction | int]):
        self.theta = Fraction(theta)
        self.values = tuple(Fraction(v) for v in values)

    def _zip(self, other: "GridSeq"):
        if self.theta != other.theta:
            raise ValueError("grid spacing mismatch")
        n = max(len(self.values), len(other.values))
        a = self.values + (Fraction(0),) * (n - len(self.values))
        b = other.values + (Fraction(0),) * (n - len(other.values))
        return a, b

    def __add__(self, other: "GridSeq") -> "GridSeq":
        a, b = self._zip(other)
        return GridSeq(self.theta, [x + y for x, y in zip(a, b)])

    def __sub__(self, other: "GridSeq") -> "GridSeq":
        a, b = self._zip(other)
        return GridSeq(self.theta, [x - y for x, y in zip(a, b)])

    def __neg__(self) -> "GridSeq":
        return self.scale(Fraction(-1))

    def scale(self, c: Fraction) -> "GridSeq":
        return GridSeq(self.theta, [c * v for v in self.values])

    def __mul__(self, other: "GridSeq") -> "GridSeq":
        a, b = self._zip(other)
        return GridSeq(self.theta, [x * y for x, y in zip(a, b)])

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridSeq):
            return NotImplemented
        a, b = self._zip(other)
        return a == b

    def __hash__(self):
        vals = list(self.values)
        while vals and vals[-1] == 0:
            vals.pop()
        return hash((self.theta, tuple(vals)))

    def __repr__(self) -> str:
        return f"GridSeq(theta={rational_str(self.theta)}, {[rational_str(v) for v in self.values]})"

    # -- summation operators (window-preserving) ---------------------------
    def sum_incl(self) -> "GridSeq":
        acc = Fraction(0)
        out = []
        for v in self.values:
            acc += v
            out.append(self.theta * acc)
        return GridSeq(self.theta, out)

    def sum_strict(self) -> "GridSeq":
        acc = Fraction(0)
        out = []
        for v in self.values:
            out.append(self.theta * acc)
            acc += v
        return GridSeq(self.theta, out)

    def tail_sum(self) -> "GridSeq":
        acc = Fraction(0)
        out = []
        for v in reversed(self.values):
            out.append(self.theta * acc)
            acc += v
        return GridSeq(self.theta, list(reversed(out)))

    # -- unbounded-grid operators ------------------------------------------
    def diff(self) -> "GridSeq":
        """(f(x - theta) - f(x))/theta, supported on one extra right slot."""
        padded = (Fraction(0),) + self.values + (Fraction(0),)
        return GridSeq(
            self.theta, [(padded[i] - padded[i + 1]) / self.theta for i in range(len(padded) - 1)]
        )

    def shift_sum(self) -> "GridSeq":
        """theta * sum of values strictly beyond each position, on the full grid.

        Requires total sum zero; otherwise the tail below the window is the
        nonzero constant theta*total and the result is not finitely supported.
        """
        if sum(self.values, Fraction(0)) != 0:
            raise NonSummable("total must vanish for a finitely supported tail sum")
        return self.tail_sum()

    def to_json(self) -> dict:
        return {
            "theta": rational_str(self.theta),
            "values": [rational_str(v) for v in self.values],
        }


class GridSpace(CoeffSpace):
    """Fixed-window grid sequences as a commutative coefficient algebra."""

    has_product = True

    def __init__(self, theta: Fraction, length: int):
        self.theta = Fraction(theta)
        self.length = length

    def zero(self) -> GridSeq:
        return GridSeq(self.theta, [0] * self.length)

    def add(self, x: GridSeq, y: GridSeq) -> GridSeq:
        return x + y

    def scale(self, c: Fraction, x: GridSeq) -> GridSeq:
        return x.scale(c)

    def is_zero(self, x: GridSeq) -> bool:
        return x.is_zero()

    def eq(self, x: GridSeq, y: GridSeq) -> bool:
        return x == y

    def mul(self, x: GridSeq, y: GridSeq) -> GridSeq:
        return x * y

    def one(self) -> GridSeq:
        return GridSeq(self.theta, [1] * self.length)

    def element_json(self, x: GridSeq):
        return x.to_json()


def random_gridseq(rng: random.Random, theta: Fraction, length: int, span: int = 4) -> GridSeq:
    return GridSeq(
        theta, [Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(length)]
    )
