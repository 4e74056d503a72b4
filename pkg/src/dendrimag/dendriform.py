"""Dendriform, tridendriform and pre-Lie contracts, with the adjoined unit.

A dendriform algebra splits an associative product into two half-products,
written here ``prec`` (x "absorbed from the right") and ``succ``:

    (a prec b) prec c = a prec (b * c)            (A1)
    (a succ b) prec c = a succ (b prec c)         (A2)
     a succ (b succ c) = (a * b) succ c           (A3)

with a * b := a prec b + a succ b associative.  The derived bilinear maps

    a rhd b := a succ b - b prec a        (left pre-Lie)
    a lhd b := a prec b - b succ a        (right pre-Lie)

satisfy the pre-Lie identities and share one Lie bracket with ``*``.

Contracts here are verified by sampling, not by proof: every concrete
instance registers a sample generator, and the checkers in this module
evaluate the axioms as exact equalities on the samples (the free models get
exhaustive basis checks in their own modules).

The unit is adjoined structurally: a :class:`UnitalDendElem` is a rational
multiple of the formal unit plus a carrier element, with

    a prec 1 = a = 1 succ a,   1 prec a = 0 = a succ 1,

while "1 prec 1" and "1 succ 1" stay undefined and raise
:class:`UndefinedUnitProduct`.  The sum product extends totally
(1 * 1 = 1).  On top of this sit the word power sums and the order-by-order
solvers for

    X = 1 + lambda a prec X,        Y = 1 - Y succ lambda a.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

from .report import VerificationReport
from .series import CoeffSpace, TruncatedSeries

__all__ = [
    "UndefinedUnitProduct",
    "Dendriform",
    "Tridendriform",
    "DendriformFromTridendriform",
    "AssocDendriform",
    "UnitalDendElem",
    "UnitalSpace",
    "word_left",
    "word_right",
    "solve_left",
    "solve_right",
    "series_half_prec",
    "series_half_succ",
    "lift_to_unital",
    "check_dendriform_axioms",
    "check_prelie_identities",
    "check_tridendriform_axioms",
    "check_unit_rules",
    "sample_tuples",
]


class UndefinedUnitProduct(ValueError):
    """Half-product of two elements that both carry the formal unit."""


@dataclass(frozen=True)
class UnitalDendElem:
    """scalar * 1 + vec, with 1 the adjoined dendriform unit."""

    scalar: Fraction
    vec: Any


class Dendriform:
    """Base contract: a carrier coefficient space plus prec/succ.

    ``commutative`` flags the Zinbiel case (x succ y = y prec x), which
    sample-based checkers verify when set.
    """

    name = "dendriform"
    commutative = False

    def __init__(self, space: CoeffSpace):
        self.space = space
        self._unital_space: UnitalSpace | None = None

    # -- carrier products -------------------------------------------------
    def prec(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def succ(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def star(self, a: Any, b: Any) -> Any:
        return self.space.add(self.prec(a, b), self.succ(a, b))

    def rhd(self, a: Any, b: Any) -> Any:
        return self.space.sub(self.succ(a, b), self.prec(b, a))

    def lhd(self, a: Any, b: Any) -> Any:
        return self.space.sub(self.prec(a, b), self.succ(b, a))

    def sample(self, rng: random.Random) -> Any:
        raise NotImplementedError(f"{self.name} registers no sample generator")

    # -- adjoined unit -----------------------------------------------------
    @property
    def unital_space(self) -> "UnitalSpace":
        if self._unital_space is None:
            self._unital_space = UnitalSpace(self)
        return self._unital_space

    def unit(self) -> UnitalDendElem:
        return UnitalDendElem(Fraction(1), self.space.zero())

    def embed(self, a: Any) -> UnitalDendElem:
        return UnitalDendElem(Fraction(0), a)

    def half_prec(self, x: UnitalDendElem, y: UnitalDendElem) -> UnitalDendElem:
        """Bilinear extension of prec; undefined on unit (x) unit pairs."""
        if x.scalar != 0 and y.scalar != 0:
            raise UndefinedUnitProduct("1 prec 1 is not defined")
        sp = self.space
        out = sp.scale(y.scalar, x.vec)  # x.vec prec 1 = x.vec; 1 prec y.vec = 0
        if not (sp.is_zero(x.vec) or sp.is_zero(y.vec)):
            out = sp.add(out, self.prec(x.vec, y.vec))
        return UnitalDendElem(Fraction(0), out)

    def half_succ(self, x: UnitalDendElem, y: UnitalDendElem) -> UnitalDendElem:
        if x.scalar != 0 and y.scalar != 0:
            raise UndefinedUnitProduct("1 succ 1 is not defined")
        sp = self.space
        out = sp.scale(x.scalar, y.vec)  # 1 succ y.vec = y.vec; x.vec succ 1 = 0
        if not (sp.is_zero(x.vec) or sp.is_zero(y.vec)):
            out = sp.add(out, self.succ(x.vec, y.vec))
        return UnitalDendElem(Fraction(0), out)

    def unital_star(self, x: UnitalDendElem, y: UnitalDendElem) -> UnitalDendElem:
        """Total: the unit cases follow the unit rules, never the half-products."""
        sp = self.space
        vec = sp.add(sp.scale(x.scalar, y.vec), sp.scale(y.scalar, x.vec))
        if not (sp.is_zero(x.vec) or sp.is_zero(y.vec)):
            vec = sp.add(vec, self.star(x.vec, y.vec))
        return UnitalDendElem(x.scalar * y.scalar, vec)


class Tridendriform:
    """Three operations lt, gt, dot whose sum is associative (seven axioms)."""

    name = "tridendriform"

    def __init__(self, space: CoeffSpace):
        self.space = space

    def lt(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def gt(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def dot(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def star(self, a: Any, b: Any) -> Any:
        sp = self.space
        return sp.add(sp.add(self.lt(a, b), self.gt(a, b)), self.dot(a, b))

    def sample(self, rng: random.Random) -> Any:
        raise NotImplementedError(f"{self.name} registers no sample generator")

    def as_dendriform(self) -> "DendriformFromTridendriform":
        """Collapse dot into the left half: prec = lt + dot, succ = gt."""
        return DendriformFromTridendriform(self)


class DendriformFromTridendriform(Dendriform):
    def __init__(self, tri: Tridendriform):
        super().__init__(tri.space)
        self.tri = tri
        self.name = f"{tri.name}-as-dendriform"

    def prec(self, a, b):
        return self.space.add(self.tri.lt(a, b), self.tri.dot(a, b))

    def succ(self, a, b):
        return self.tri.gt(a, b)

    def sample(self, rng):
        return self.tri.sample(rng)


class AssocDendriform(Dendriform):
    """Associative degeneration: prec is the ambient product, succ is zero.

    Here a lhd b reduces to a * b and a rhd b to -(b * a); the left fixed
    point X = 1 + lambda a prec X becomes the geometric series of a.
    """

    def __init__(self, space: CoeffSpace, sampler: Callable[[random.Random], Any], name: str):
        if not space.has_product:
            raise TypeError("associative degeneration needs a space with a product")
        super().__init__(space)
        self._sampler = sampler
        self.name = name

    def prec(self, a, b):
        return self.space.mul(a, b)

    def succ(self, a, b):
        return self.space.zero()

    def sample(self, rng):
        return self._sampler(rng)


class UnitalSpace(CoeffSpace):
    """UnitalDendElem as a coefficient space; the product is the total star."""

    has_product = True

    def __init__(self, dend: Dendriform):
        self.dend = dend
        self.carrier = dend.space

    def zero(self) -> UnitalDendElem:
        return UnitalDendElem(Fraction(0), self.carrier.zero())

    def add(self, x: UnitalDendElem, y: UnitalDendElem) -> UnitalDendElem:
        return UnitalDendElem(x.scalar + y.scalar, self.carrier.add(x.vec, y.vec))

    def scale(self, c: Fraction, x: UnitalDendElem) -> UnitalDendElem:
        return UnitalDendElem(c * x.scalar, self.carrier.scale(c, x.vec))

    def is_zero(self, x: UnitalDendElem) -> bool:
        return x.scalar == 0 and self.carrier.is_zero(x.vec)

    def mul(self, x: UnitalDendElem, y: UnitalDendElem) -> UnitalDendElem:
        return self.dend.unital_star(x, y)

    def one(self) -> UnitalDendElem:
        return UnitalDendElem(Fraction(1), self.carrier.zero())

    def element_json(self, x: UnitalDendElem):
        from .scalars import rational_str

        return {"unit": rational_str(x.scalar), "carrier": self.carrier.element_json(x.vec)}


# -- word power sums and the two fundamental equations ----------------------


def word_left(dend: Dendriform, a: Any, n: int) -> UnitalDendElem:
    """w(0) = 1, w(n) = a prec w(n-1)."""
    if n < 0:
        raise ValueError("word index must be >= 0")
    w = dend.unit()
    xa = dend.embed(a)
    for _ in range(n):
        w = dend.half_prec(xa, w)
    return w


def word_right(dend: Dendriform, a: Any, n: int) -> UnitalDendElem:
    """w(0) = 1, w(n) = w(n-1) succ a."""
    if n < 0:
        raise ValueError("word index must be >= 0")
    w = dend.unit()
    xa = dend.embed(a)
    for _ in range(n):
        w = dend.half_succ(w, xa)
    return w


def solve_left(dend: Dendriform, a: Any, order: int) -> TruncatedSeries:
    """The unique X with X = 1 + lambda a prec X, modulo lambda^(order+1)."""
    usp = dend.unital_space
    coeffs = [usp.one()]
    xa = dend.embed(a)
    for _ in range(order):
        coeffs.append(dend.half_prec(xa, coeffs[-1]))
    return TruncatedSeries(usp, order, coeffs)


def solve_right(dend: Dendriform, a: Any, order: int) -> TruncatedSeries:
    """The unique Y with Y = 1 - Y succ lambda a, modulo lambda^(order+1)."""
    usp = dend.unital_space
    coeffs = [usp.one()]
    xa = dend.embed(a)
    for _ in range(order):
        coeffs.append(usp.scale(Fraction(-1), dend.half_succ(coeffs[-1], xa)))
    return TruncatedSeries(usp, order, coeffs)


def _series_bilinear(dend, op, sx: TruncatedSeries, sy: TruncatedSeries) -> TruncatedSeries:
    usp = dend.unital_space
    if sx.space is not usp or sy.space is not usp or sx.order != sy.order:
        raise ValueError("series must live over the instance's unital space")
    out = [usp.zero() for _ in range(sx.order + 1)]
    for i, a in enumerate(sx.coeffs):
        if usp.is_zero(a):
            continue
        for j in range(sx.order + 1 - i):
            b = sy.coeffs[j]
            if usp.is_zero(b):
                continue
            out[i + j] = usp.add(out[i + j], op(a, b))
    return TruncatedSeries(usp, sx.order, out)


def series_half_prec(dend: Dendriform, sx: TruncatedSeries, sy: TruncatedSeries) -> TruncatedSeries:
    """Degree-wise bilinear prec on unital series (unit-unit pairs must cancel)."""
    return _series_bilinear(dend, dend.half_prec, sx, sy)


def series_half_succ(dend: Dendriform, sx: TruncatedSeries, sy: TruncatedSeries) -> TruncatedSeries:
    return _series_bilinear(dend, dend.half_succ, sx, sy)


def lift_to_unital(dend: Dendriform, s: TruncatedSeries) -> TruncatedSeries:
    """Reinterpret a carrier-coefficient series over the unital space."""
    if s.space is not dend.space:
        raise ValueError("series does not live over this instance's carrier")
    return s.map_coeffs(dend.embed, dend.unital_space)


# -- sample-based contract checks -------------------------------------------


def sample_tuples(instance, rng: random.Random, count: int, arity: int) -> list[tuple]:
    return [tuple(instance.sample(rng) for _ in range(arity)) for _ in range(count)]


def check_dendriform_axioms(
    dend: Dendriform, triples: Iterable[tuple], name: str | None = None
) -> VerificationReport:
    """(A1)-(A3), star associativity, and the Zinbiel flag when declared."""
    rep = VerificationReport(name or f"dendriform axioms [{dend.name}]")
    eq = dend.space.eq
    bad = [0, 0, 0, 0, 0]
    n = 0
    for a, b, c in triples:
        n += 1
        if not eq(dend.prec(dend.prec(a, b), c), dend.prec(a, dend.star(b, c))):
            bad[0] += 1
        if not eq(dend.prec(dend.succ(a, b), c), dend.succ(a, dend.prec(b, c))):
            bad[1] += 1
        if not eq(dend.succ(a, dend.succ(b, c)), dend.succ(dend.star(a, b), c)):
            bad[2] += 1
        if not eq(dend.star(dend.star(a, b), c), dend.star(a, dend.star(b, c))):
            bad[3] += 1
        if dend.commutative and not eq(dend.succ(a, b), dend.prec(b, a)):
            bad[4] += 1
    rep.add("(A1) (a<b)<c = a<(b*c)", bad[0] == 0, f"{n - bad[0]}/{n} triples")
    rep.add("(A2) (a>b)<c = a>(b<c)", bad[1] == 0, f"{n - bad[1]}/{n} triples")
    rep.add("(A3) a>(b>c) = (a*b)>c", bad[2] == 0, f"{n - bad[2]}/{n} triples")
    rep.add("star associativity", bad[3] == 0, f"{n - bad[3]}/{n} triples")
    if dend.commutative:
        rep.add("Zinbiel flag: x>y = y<x", bad[4] == 0, f"{n - bad[4]}/{n} triples")
    return rep


def check_prelie_identities(
    dend: Dendriform, triples: Iterable[tuple], name: str | None = None
) -> VerificationReport:
    """Left/right pre-Lie identities for rhd/lhd and the shared Lie bracket."""
    rep = VerificationReport(name or f"pre-Lie identities [{dend.name}]")
    sp = dend.space
    eq, sub = sp.eq, sp.sub
    bad = [0, 0, 0]
    n = 0
    for a, b, c in triples:
        n += 1
        lhs = sub(dend.rhd(dend.rhd(a, b), c), dend.rhd(a, dend.rhd(b, c)))
        rhs = sub(dend.rhd(dend.rhd(b, a), c), dend.rhd(b, dend.rhd(a, c)))
        if not eq(lhs, rhs):
            bad[0] += 1
        lhs = sub(dend.lhd(dend.lhd(a, b), c), dend.lhd(a, dend.lhd(b, c)))
        rhs = sub(dend.lhd(dend.lhd(a, c), b), dend.lhd(a, dend.lhd(c, b)))
        if not eq(lhs, rhs):
            bad[1] += 1
        br_star = sub(dend.star(a, b), dend.star(b, a))
        br_rhd = sub(dend.rhd(a, b), dend.rhd(b, a))
        br_lhd = sub(dend.lhd(a, b), dend.lhd(b, a))
        if not (eq(br_star, br_rhd) and eq(br_star, br_lhd)):
            bad[2] += 1
    rep.add("left pre-Lie identity for rhd", bad[0] == 0, f"{n - bad[0]}/{n} triples")
    rep.add("right pre-Lie identity for lhd", bad[1] == 0, f"{n - bad[1]}/{n} triples")
    rep.add("brackets of *, rhd, lhd coincide", bad[2] == 0, f"{n - bad[2]}/{n} triples")
    return rep


def check_tridendriform_axioms(
    tri: Tridendriform, triples: Iterable[tuple], name: str | None = None
) -> VerificationReport:
    """The seven axioms plus associativity of the three-term sum product."""
    rep = VerificationReport(name or f"tridendriform axioms [{tri.name}]")
    eq = tri.space.eq
    axioms = [
        ("(x<y)<z = x<(y*z)", lambda x, y, z: (tri.lt(tri.lt(x, y), z), tri.lt(x, tri.star(y, z)))),
        ("(x>y)<z = x>(y<z)", lambda x, y, z: (tri.lt(tri.gt(x, y), z), tri.gt(x, tri.lt(y, z)))),
        ("(x*y)>z = x>(y>z)", lambda x, y, z: (tri.gt(tri.star(x, y), z), tri.gt(x, tri.gt(y, z)))),
        ("(x>y).z = x>(y.z)", lambda x, y, z: (tri.dot(tri.gt(x, y), z), tri.gt(x, tri.dot(y, z)))),
        ("(x<y).z = x.(y>z)", lambda x, y, z: (tri.dot(tri.lt(x, y), z), tri.dot(x, tri.gt(y, z)))),
        ("(x.y)<z = x.(y<z)", lambda x, y, z: (tri.lt(tri.dot(x, y), z), tri.dot(x, tri.lt(y, z)))),
        ("(x.y).z = x.(y.z)", lambda x, y, z: (tri.dot(tri.dot(x, y), z), tri.dot(x, tri.dot(y, z)))),
        (
            "star associativity",
            lambda x, y, z: (tri.star(tri.star(x, y), z), tri.star(x, tri.star(y, z))),
        ),
    ]
    triples = list(triples)
    for label, fn in axioms:
        bad = 0
        for x, y, z in triples:
            lhs, rhs = fn(x, y, z)
            if not eq(lhs, rhs):
                bad += 1
        rep.add(label, bad == 0, f"{len(triples) - bad}/{len(triples)} triples")
    return rep


def check_unit_rules(dend: Dendriform, elems: Iterable[Any]) -> VerificationReport:
    """Unit adjunction rules, including rejection of the unit-unit half-products."""
    rep = VerificationReport(f"unit adjunction [{dend.name}]")
    usp = dend.unital_space
    one = usp.one()
    bad = 0
    n = 0
    for a in elems:
        n += 1
        x = dend.embed(a)
        ok = (
            usp.eq(dend.half_prec(x, one), x)
            and usp.eq(dend.half_succ(one, x), x)
            and usp.is_zero(dend.half_prec(one, x))
            and usp.is_zero(dend.half_succ(x, one))
            and usp.eq(dend.unital_star(x, one), x)
            and usp.eq(dend.unital_star(one, x), x)
        )
        if not ok:
            bad += 1
    rep.add("a<1 = a = 1>a and 1<a = 0 = a>1", bad == 0, f"{n - bad}/{n} samples")
    rep.add("1*1 = 1", usp.eq(dend.unital_star(one, one), one))
    for label, op in (("1<1", dend.half_prec), ("1>1", dend.half_succ)):
        try:
            op(one, one)
        except UndefinedUnitProduct:
            rep.add(f"{label} rejected", True)
        else:
            rep.add(f"{label} rejected", False, "no error raised")
    return rep
