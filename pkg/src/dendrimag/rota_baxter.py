"""Rota-Baxter algebras of arbitrary weight and their identity suite.

A Rota-Baxter operator of weight theta on an associative algebra is a linear
map R with

    R(a) R(b) = R( R(a) b + a R(b) + theta a b ),                    (RB)

a generalized integration by parts.  The companion map Rt := -theta id - R
satisfies (RB) with the same weight, and both images are subalgebras.  Every
such operator induces:

  * a tridendriform structure  a<b = aR(b), a>b = R(a)b, a.b = theta ab;
  * a dendriform structure     a prec b = aR(b) + theta ab = -a Rt(b),
                               a succ b = R(a)b;
  * a left pre-Lie product     a rhd b = [R(a), b] - theta ba;
  * the double product         a *t b = aR(b) + R(a)b + theta ab, for which
    R and -Rt are algebra morphisms: R(a *t b) = R(a)R(b) and
    Rt(a *t b) = -Rt(a)Rt(b).

On the adjoined dendriform unit the operator extends by R(1u) = 1 and
Rt(1u) = -1 (1u annihilates the carrier multiplicatively), which is exactly
what makes unital exponentials land where they should.

The checks in this module verify, per lambda-degree and with exact rational
arithmetic, the factorization theory this buys:

  * Atkinson: Yh (1 - theta lambda a) Xh = 1 for the order-by-order
    solutions of Xh = 1 - lambda Rt(a Xh) and Yh = 1 - lambda R(Yh a);
  * the exponential forms Xh = exp(-Rt(W)), Yh = exp(-R(W)) with W the
    Magnus series of the induced dendriform structure, and the corresponding
    ordered products over the Fer factors;
  * Spitzer's classical identity (commutative carrier)
        1 + sum_n lambda^n R(aR(a...R(a))) = exp(R(log(1 + theta a lambda)/theta)),
    with the weight-zero degeneration exp(lambda R(a));
  * the weight-theta BCH recursion chi (theta != 0), defined by
        exp(-theta alpha) = exp(R chi(alpha)) exp(Rt chi(alpha)),
    its two equivalent fixed-point forms, the bridge W = chi(alpha_theta)
    with alpha_theta = -log(1 - theta lambda a)/theta, and the change of
    variable chi(alpha) = W((1 - exp(-theta alpha))/theta).

Sign conventions follow the weight normalization in (RB) above throughout:
an idempotent projection onto a subalgebra has weight -1, inclusive grid
sums weight -theta, strict grid sums weight +theta.  Under this one
convention both Spitzer forms hold verbatim with their stated signs; they
concern different equations (Y = 1 + lambda R(aY) versus
Yh = 1 - lambda R(Yh a)), not different normalizations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .dendriform import Dendriform, Tridendriform, UnitalDendElem
from .magnus_fer import fer, magnus, magnus_from_series
from .report import VerificationReport
from .series import CoeffSpace, TruncatedSeries, bch, series_exp, series_log

__all__ = [
    "RotaBaxter",
    "ZeroWeight",
    "RBTridendriform",
    "RBDendriform",
    "PreLieView",
    "InducedStructures",
    "induced_structures",
    "double_product",
    "check_rb_relation",
    "atkinson_factor",
    "rb_magnus",
    "bch_recursion",
    "atkinson_check",
    "factor_exponentials_check",
    "factor_products_check",
    "spitzer_classical_check",
    "spitzer_noncommutative_check",
    "exp_image_check",
    "classical_magnus_check",
]


class ZeroWeight(ValueError):
    """The BCH recursion divides by the weight; weight-zero callers use the
    classical Magnus recursion instead."""


class RotaBaxter:
    """A carrier algebra, a weight, an operator, and a sample generator."""

    def __init__(
        self,
        name: str,
        space: CoeffSpace,
        weight: Fraction,
        operator: Callable[[Any], Any],
        sampler: Callable[[random.Random], Any],
        commutative: bool = False,
    ):
        if not space.has_product:
            raise TypeError("Rota-Baxter carrier needs an associative product with unit")
        self.name = name
        self.space = space
        self.weight = Fraction(weight)
        self.r = operator
        self._sampler = sampler
        self.commutative = commutative
        self._dend: RBDendriform | None = None

    def r_tilde(self, x: Any) -> Any:
        return self.space.sub(self.space.scale(-self.weight, x), self.r(x))

    def sample(self, rng: random.Random) -> Any:
        return self._sampler(rng)

    def rescaled(self, c: Fraction) -> "RotaBaxter":
        """c*R is Rota-Baxter of weight c*theta; used to sweep weights."""
        c = Fraction(c)
        return RotaBaxter(
            f"{self.name} (rescaled x{c})",
            self.space,
            c * self.weight,
            lambda x: self.space.scale(c, self.r(x)),
            self._sampler,
            self.commutative,
        )

    def dendriform(self) -> "RBDendriform":
        if self._dend is None:
            self._dend = RBDendriform(self)
        return self._dend

    # -- unit convention: R(1u) = 1, Rt(1u) = -1 ---------------------------
    def unital_r(self, x: UnitalDendElem) -> Any:
        return self.space.add(self.space.scale(x.scalar, self.space.one()), self.r(x.vec))

    def unital_r_tilde(self, x: UnitalDendElem) -> Any:
        return self.space.add(
            self.space.scale(-x.scalar, self.space.one()), self.r_tilde(x.vec)
        )


class RBTridendriform(Tridendriform):
    def __init__(self, rb: RotaBaxter):
        super().__init__(rb.space)
        self.rb = rb
        self.name = f"tridendriform from {rb.name}"

    def lt(self, a, b):
        return self.space.mul(a, self.rb.r(b))

    def gt(self, a, b):
        return self.space.mul(self.rb.r(a), b)

    def dot(self, a, b):
        return self.space.scale(self.rb.weight, self.space.mul(a, b))

    def sample(self, rng):
        return self.rb.sample(rng)


class RBDendriform(Dendriform):
    """prec = aR(b) + theta ab = -a Rt(b), succ = R(a) b."""

    def __init__(self, rb: RotaBaxter):
        super().__init__(rb.space)
        self.rb = rb
        self.name = f"dendriform from {rb.name}"
        # commutative carrier + weight 0 collapses succ to the prec flip
        self.commutative = rb.commutative and rb.weight == 0

    def prec(self, a, b):
        sp = self.space
        return sp.neg(sp.mul(a, self.rb.r_tilde(b)))

    def succ(self, a, b):
        return self.space.mul(self.rb.r(a), b)

    def sample(self, rng):
        return self.rb.sample(rng)


class PreLieView:
    """The derived pre-Lie pair of a dendriform instance, as an ops bundle."""

    def __init__(self, dend: Dendriform):
        self.dend = dend
        self.space = dend.space
        self.name = f"pre-Lie view of {dend.name}"

    def rhd(self, a, b):
        return self.dend.rhd(a, b)

    def lhd(self, a, b):
        return self.dend.lhd(a, b)


@dataclass(frozen=True)
class InducedStructures:
    tridendriform: RBTridendriform
    dendriform: RBDendriform
    prelie: PreLieView


def induced_structures(rb: RotaBaxter) -> InducedStructures:
    dend = rb.dendriform()
    return InducedStructures(RBTridendriform(rb), dend, PreLieView(dend))


def double_product(rb: RotaBaxter, a: Any, b: Any) -> Any:
    """a *t b = aR(b) + R(a)b + theta ab; R and -Rt are morphisms for it."""
    sp = rb.space
    return sp.add(
        sp.add(sp.mul(a, rb.r(b)), sp.mul(rb.r(a), b)),
        sp.scale(rb.weight, sp.mul(a, b)),
    )


def check_rb_relation(rb: RotaBaxter, samples: int, seed: int = 0) -> VerificationReport:
    """(RB) for R and for Rt, plus the morphism identities for the double product."""
    rep = VerificationReport(f"Rota-Baxter relation [{rb.name}], weight {rb.weight}")
    sp = rb.space
    rng = random.Random(seed)
    theta = rb.weight
    bad = [0, 0, 0, 0, 0]
    for _ in range(samples):
        a, b = rb.sample(rng), rb.sample(rng)
        for idx, (op,) in enumerate([(rb.r,), (rb.r_tilde,)]):
            inner = sp.add(
                sp.add(sp.mul(op(a), b), sp.mul(a, op(b))), sp.scale(theta, sp.mul(a, b))
            )
            if not sp.eq(sp.mul(op(a), op(b)), op(inner)):
                bad[idx] += 1
        d = double_product(rb, a, b)
        if not sp.eq(rb.r(d), sp.mul(rb.r(a), rb.r(b))):
            bad[2] += 1
        if not sp.eq(rb.r_tilde(d), sp.neg(sp.mul(rb.r_tilde(a), rb.r_tilde(b)))):
            bad[3] += 1
        if rb.commutative and not sp.eq(sp.mul(a, b), sp.mul(b, a)):
            bad[4] += 1
    n = samples
    rep.add("R(a)R(b) = R(R(a)b + aR(b) + theta ab)", bad[0] == 0, f"{n - bad[0]}/{n} pairs")
    rep.add("Rt satisfies the same weight relation", bad[1] == 0, f"{n - bad[1]}/{n} pairs")
    rep.add("R(a *t b) = R(a)R(b) (image of R closed)", bad[2] == 0, f"{n - bad[2]}/{n} pairs")
    rep.add("Rt(a *t b) = -Rt(a)Rt(b) (image of Rt closed)", bad[3] == 0, f"{n - bad[3]}/{n} pairs")
    if rb.commutative:
        rep.add("declared commutative carrier", bad[4] == 0, f"{n - bad[4]}/{n} pairs")
    return rep


# -- series helpers over the carrier ----------------------------------------


def _one_minus_theta_a(rb: RotaBaxter, a: Any, order: int) -> TruncatedSeries:
    s = TruncatedSeries.single(rb.space, order, 1, rb.space.scale(-rb.weight, a))
    return TruncatedSeries.one(rb.space, order) + s


def _apply(op: Callable[[Any], Any], s: TruncatedSeries) -> TruncatedSeries:
    return s.map_coeffs(op)


def _per_degree(rep, label, lhs: TruncatedSeries, rhs: TruncatedSeries):
    diff = lhs - rhs
    bad = [k for k in range(diff.order + 1) if not diff.space.is_zero(diff.coeff(k))]
    rep.add(label, not bad, f"nonzero residual at degrees {bad}" if bad else "all residuals zero")


def atkinson_factor(rb: RotaBaxter, a: Any, side: str, order: int) -> TruncatedSeries:
    """Order-by-order solution of Xh = 1 - lambda Rt(a Xh) (side "X") or
    Yh = 1 - lambda R(Yh a) (side "Y")."""
    sp = rb.space
    coeffs = [sp.one()]
    for _ in range(order):
        if side == "X":
            coeffs.append(sp.neg(rb.r_tilde(sp.mul(a, coeffs[-1]))))
        elif side == "Y":
            coeffs.append(sp.neg(rb.r(sp.mul(coeffs[-1], a))))
        else:
            raise ValueError(f"side must be 'X' or 'Y', got {side!r}")
    return TruncatedSeries(sp, order, coeffs)


def rb_magnus(rb: RotaBaxter, a: Any, order: int, variant: str = "left_rhd") -> TruncatedSeries:
    """Magnus series of the induced dendriform structure (carrier coefficients)."""
    return magnus(rb.dendriform(), a, order, variant)


def bch_recursion(
    rb: RotaBaxter, alpha: TruncatedSeries, variant: str = "two_sided"
) -> TruncatedSeries:
    """The weight-theta BCH recursion chi, solved by ascending degree.

    chi is the unique deformation of the identity on lambda*A[[lambda]] with
    exp(-theta alpha) = exp(R chi(alpha)) exp(Rt chi(alpha)).  Fixed-point
    forms (the bch terms raise the degree, so each coefficient closes):

      two_sided:  chi = alpha + (1/theta) bch(R chi, Rt chi)
      one_sided:  chi = alpha + (1/theta) bch(theta alpha, R chi)
    """
    if rb.weight == 0:
        raise ZeroWeight("weight-zero instances use the classical Magnus recursion")
    if variant not in ("two_sided", "one_sided"):
        raise ValueError(f"unknown variant {variant!r}")
    sp = rb.space
    if alpha.space is not sp:
        raise ValueError("alpha must live over the instance carrier")
    if not sp.is_zero(alpha.coeff(0)):
        raise ValueError("alpha needs zero constant term")
    n_max = alpha.order
    theta = rb.weight
    chi = [sp.zero() for _ in range(n_max + 1)]
    if n_max >= 1:
        chi[1] = alpha.coeff(1)
    for n in range(2, n_max + 1):
        known = TruncatedSeries(sp, n_max, chi)
        if variant == "two_sided":
            corr = bch(_apply(rb.r, known), _apply(rb.r_tilde, known))
        else:
            corr = bch(alpha.scale(theta), _apply(rb.r, known))
        chi[n] = sp.add(alpha.coeff(n), sp.scale(1 / theta, corr.coeff(n)))
    return TruncatedSeries(sp, n_max, chi)


def atkinson_check(rb: RotaBaxter, a: Any, order: int) -> VerificationReport:
    """Yh (1 - theta lambda a) Xh = 1, and the Magnus-exponential splitting
    1 - theta lambda a = exp(R(W)) exp(Rt(W))."""
    rep = VerificationReport(f"Atkinson factorization [{rb.name}]")
    one = TruncatedSeries.one(rb.space, order)
    xh = atkinson_factor(rb, a, "X", order)
    yh = atkinson_factor(rb, a, "Y", order)
    lam_a = TruncatedSeries.single(rb.space, order, 1, a)
    _per_degree(rep, "Xh substituted back into Xh = 1 - lambda Rt(a Xh)", xh, one - _apply(rb.r_tilde, lam_a * xh))
    _per_degree(rep, "Yh substituted back into Yh = 1 - lambda R(Yh a)", yh, one - _apply(rb.r, yh * lam_a))
    mid = _one_minus_theta_a(rb, a, order)
    _per_degree(rep, "Yh (1 - theta lambda a) Xh = 1", yh * mid * xh, one)
    w = rb_magnus(rb, a, order)
    _per_degree(
        rep,
        "1 - theta lambda a = exp(R(W)) exp(Rt(W))",
        mid,
        series_exp(_apply(rb.r, w)) * series_exp(_apply(rb.r_tilde, w)),
    )
    return rep


def factor_exponentials_check(rb: RotaBaxter, a: Any, order: int) -> VerificationReport:
    """Xh = exp(-Rt(W)) and Yh = exp(-R(W)) with W the induced Magnus series."""
    rep = VerificationReport(f"factor exponentials [{rb.name}]")
    w = rb_magnus(rb, a, order)
    _per_degree(
        rep,
        "Xh = exp(-Rt(W))",
        atkinson_factor(rb, a, "X", order),
        series_exp(-_apply(rb.r_tilde, w)),
    )
    _per_degree(
        rep,
        "Yh = exp(-R(W))",
        atkinson_factor(rb, a, "Y", order),
        series_exp(-_apply(rb.r, w)),
    )
    return rep


def factor_products_check(rb: RotaBaxter, a: Any, order: int) -> VerificationReport:
    """Ordered Fer products solve the factor recursions:
    forward product of exp(-Rt(U_n)) is Xh, reversed product of exp(-R(U_n)) is Yh."""
    rep = VerificationReport(f"factor products [{rb.name}]")
    factors = fer(rb.dendriform(), a, order)
    prod = TruncatedSeries.one(rb.space, order)
    for u in factors:
        prod = prod * series_exp(-_apply(rb.r_tilde, u))
    _per_degree(rep, "forward product of exp(-Rt(U_n)) = Xh", prod, atkinson_factor(rb, a, "X", order))
    prod = TruncatedSeries.one(rb.space, order)
    for u in reversed(factors):
        prod = prod * series_exp(-_apply(rb.r, u))
    _per_degree(rep, "reversed product of exp(-R(U_n)) = Yh", prod, atkinson_factor(rb, a, "Y", order))
    return rep


def _iterated_series(rb: RotaBaxter, a: Any, order: int) -> TruncatedSeries:
    """1 + sum_n lambda^n R(a R(a ... R(a)))  (innermost first)."""
    sp = rb.space
    coeffs = [sp.one()]
    z = sp.one()
    for _ in range(order):
        z = rb.r(sp.mul(a, z))
        coeffs.append(z)
    return TruncatedSeries(sp, order, coeffs)


def spitzer_classical_check(rb: RotaBaxter, a: Any, order: int) -> VerificationReport:
    """Commutative carriers: the iterated-R series is one exponential.

    For weight theta != 0 the exponent is R(log(1 + theta a lambda)/theta);
    at theta = 0 it degenerates to lambda R(a).
    """
    if not rb.commutative:
        raise ValueError("classical Spitzer requires a commutative carrier")
    rep = VerificationReport(f"classical Spitzer [{rb.name}], weight {rb.weight}")
    sp = rb.space
    lhs = _iterated_series(rb, a, order)
    if rb.weight != 0:
        inner = series_log(
            TruncatedSeries.one(sp, order)
            + TruncatedSeries.single(sp, order, 1, sp.scale(rb.weight, a))
        ).scale(1 / rb.weight)
        rhs = series_exp(_apply(rb.r, inner))
        label = "iterated series = exp(R(log(1 + theta a lambda)/theta))"
    else:
        rhs = series_exp(TruncatedSeries.single(sp, order, 1, rb.r(a)))
        label = "iterated series = exp(lambda R(a)) at weight zero"
    _per_degree(rep, label, lhs, rhs)
    return rep


def spitzer_noncommutative_check(
    rb: RotaBaxter, a: Any, order: int, alpha: TruncatedSeries | None = None
) -> VerificationReport:
    """The BCH-recursion bridge between Magnus and the iterated-R series.

    Checks, per degree through the given order:
      * W = chi(alpha_t) with alpha_t = -log(1 - theta lambda a)/theta;
      * the two chi fixed-point forms agree, and the defining factorization
        exp(-theta alpha_t) = exp(R chi) exp(Rt chi) holds;
      * the iterated series 1 + sum lambda^n R(aR(...)) equals
        exp(R(chi(log(1 + theta a lambda)/theta)));
      * the change of variable chi(alpha) = W((1 - exp(-theta alpha))/theta)
        on the supplied alpha (defaults to lambda a).
    """
    if rb.weight == 0:
        raise ZeroWeight("use spitzer_classical_check / classical_magnus_check at weight zero")
    rep = VerificationReport(f"non-commutative Spitzer [{rb.name}], weight {rb.weight}")
    sp = rb.space
    theta = rb.weight
    one = TruncatedSeries.one(sp, order)

    alpha_t = -series_log(_one_minus_theta_a(rb, a, order)).scale(1 / theta)
    chi_two = bch_recursion(rb, alpha_t, "two_sided")
    chi_one = bch_recursion(rb, alpha_t, "one_sided")
    _per_degree(rep, "two-sided and one-sided chi forms agree", chi_two, chi_one)

    w = rb_magnus(rb, a, order)
    _per_degree(rep, "W = chi(-log(1 - theta lambda a)/theta)", w, chi_two)

    _per_degree(
        rep,
        "exp(-theta alpha) = exp(R chi) exp(Rt chi)",
        series_exp(alpha_t.scale(-theta)),
        series_exp(_apply(rb.r, chi_two)) * series_exp(_apply(rb.r_tilde, chi_two)),
    )

    plus = series_log(
        one + TruncatedSeries.single(sp, order, 1, sp.scale(theta, a))
    ).scale(1 / theta)
    _per_degree(
        rep,
        "iterated series = exp(R(chi(log(1 + theta a lambda)/theta)))",
        _iterated_series(rb, a, order),
        series_exp(_apply(rb.r, bch_recursion(rb, plus))),
    )

    if alpha is None:
        alpha = TruncatedSeries.single(sp, order, 1, a)
    substituted = (one - series_exp(alpha.scale(-theta))).scale(1 / theta)
    _per_degree(
        rep,
        "chi(alpha) = W((1 - exp(-theta alpha))/theta)",
        bch_recursion(rb, alpha),
        magnus_from_series(rb.dendriform(), substituted),
    )
    return rep


def exp_image_check(rb: RotaBaxter, a: Any, order: int) -> VerificationReport:
    """R maps the double-product exponential to the plain exponential:
    R(exp_{*t}(lambda a)) = exp(lambda R(a)), using R(1u) = 1."""
    rep = VerificationReport(f"exponential image [{rb.name}]")
    sp = rb.space
    coeffs = [sp.one()]  # degree 0: R applied to the dendriform unit
    power = None
    fact = 1
    for n in range(1, order + 1):
        power = a if power is None else double_product(rb, power, a)
        fact *= n
        coeffs.append(sp.scale(Fraction(1, fact), rb.r(power)))
    lhs = TruncatedSeries(sp, order, coeffs)
    rhs = series_exp(TruncatedSeries.single(sp, order, 1, rb.r(a)))
    _per_degree(rep, "R(exp_*t(lambda a)) = exp(lambda R(a))", lhs, rhs)
    return rep


class _AdjointOps:
    """rhd(x, y) = [R(x), y]: the weight-zero shape of the induced pre-Lie."""

    def __init__(self, rb: RotaBaxter):
        self.rb = rb
        self.space = rb.space

    def rhd(self, x, y):
        sp = self.space
        rx = self.rb.r(x)
        return sp.sub(sp.mul(rx, y), sp.mul(y, rx))


def classical_magnus_check(rb: RotaBaxter, a: Any, order: int) -> VerificationReport:
    """At weight zero the induced recursion is the commutator-form Magnus
    recursion: rhd coincides with ad_{R(.)} and both fixed points agree."""
    if rb.weight != 0:
        raise ValueError("classical reduction concerns weight-zero instances")
    rep = VerificationReport(f"classical Magnus reduction [{rb.name}]")
    _per_degree(
        rep,
        "induced recursion = ad_{R(.)} recursion",
        magnus(rb.dendriform(), a, order),
        magnus(_AdjointOps(rb), a, order),
    )
    return rep
