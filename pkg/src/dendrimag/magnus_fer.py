"""Pre-Lie Magnus and Fer expansions, generic over any dendriform instance.

Both expansions solve the pair of fixed-point equations

    X = 1 + lambda a prec X,        Y = 1 - Y succ lambda a

in the unital series algebra over a dendriform carrier.

Magnus form: there is a unique series W in lambda*A[[lambda]] with
X = exp*(W) and Y = exp*(-W), and it satisfies the Bernoulli-weighted
fixed point, in two equivalent shapes:

    W = sum_m (-1)^m (B_m/m!) (. lhd W)^m (lambda a)      (right form)
    W = sum_m (B_m/m!) (W rhd .)^m (lambda a)             (left form)

Each operator application raises the lambda-degree, so the degree-n
coefficient only involves lower ones and the recursion closes order by
order; that grading argument is the entire evaluation strategy here (no
iteration-to-convergence).

Fer form: X is an ordered product exp*(U_0) * exp*(U_1) * ... with
U_0 = lambda a and

    U_{n+1} = sum_{l>0} ((-1)^l l / (l+1)!) (U_n rhd .)^l (U_n),

and Y the reversed product of exp*(-U_n).  The lowest degree of U_n is
2^n, so floor(log2 N) + 1 factors saturate order N.

A "pre-Lie ops" bundle is anything with a ``space`` and ``rhd`` (and
``lhd`` for the right Magnus form); every Dendriform instance qualifies,
as do the free rooted-tree and formal-expression models.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .dendriform import (
    Dendriform,
    lift_to_unital,
    series_half_prec,
    series_half_succ,
    solve_left,
    solve_right,
)
from .lincomb import LinComb
from .prelie_expr import eval_rooted, formal_ops
from .report import VerificationReport
from .scalars import bernoulli_weight
from .series import TruncatedSeries, series_exp

__all__ = [
    "magnus",
    "magnus_from_series",
    "verify_magnus",
    "fer",
    "fer_depth",
    "verify_fer",
    "magnus_free_component",
    "beta_integral",
    "power_sum_bridge_check",
]

MAGNUS_VARIANTS = ("left_rhd", "right_lhd")


def magnus_from_series(ops, b: TruncatedSeries, variant: str = "left_rhd") -> TruncatedSeries:
    """The Magnus fixed point W(b) for a series input b in lambda*A[[lambda]].

    Solved by ascending degree; ``variant`` selects the left (rhd-based) or
    right (lhd-based) shape of the recursion, which must agree.
    """
    sp = ops.space
    if b.space is not sp:
        raise ValueError("input series must live over the ops' carrier space")
    if not sp.is_zero(b.coeff(0)):
        raise ValueError("Magnus input needs zero constant term")
    if variant == "left_rhd":
        apply_op = ops.rhd  # W rhd x
        weight = bernoulli_weight
    elif variant == "right_lhd":
        apply_op = lambda w, x: ops.lhd(x, w)  # x lhd W
        weight = lambda m: Fraction(-1) ** m * bernoulli_weight(m)
    else:
        raise ValueError(f"unknown variant {variant!r}; use one of {MAGNUS_VARIANTS}")

    N = b.order
    omega = [sp.zero() for _ in range(N + 1)]
    # powers[m][k]: degree-k coefficient of the m-th operator power applied to b.
    # Entry [m][n] is final once written: it only involves omega below degree n.
    powers = [list(b.coeffs)]
    for n in range(1, N + 1):
        acc = powers[0][n]
        for m in range(1, n):
            if len(powers) <= m:
                powers.append([sp.zero() for _ in range(N + 1)])
            val = sp.zero()
            for i in range(1, n):
                w = omega[i]
                if sp.is_zero(w):
                    continue
                p = powers[m - 1][n - i]
                if sp.is_zero(p):
                    continue
                val = sp.add(val, apply_op(w, p))
            powers[m][n] = val
            acc = sp.add(acc, sp.scale(weight(m), val))
        omega[n] = acc
    return TruncatedSeries(sp, N, omega)


def magnus(ops, a, order: int, variant: str = "left_rhd") -> TruncatedSeries:
    """The Magnus series for the single-element input lambda*a."""
    if order < 1:
        raise ValueError("order must be >= 1")
    b = TruncatedSeries.single(ops.space, order, 1, a)
    return magnus_from_series(ops, b, variant)


def _per_degree(rep: VerificationReport, label: str, lhs: TruncatedSeries, rhs: TruncatedSeries):
    diff = lhs - rhs
    bad = [k for k in range(diff.order + 1) if not diff.space.is_zero(diff.coeff(k))]
    rep.add(label, not bad, f"nonzero residual at degrees {bad}" if bad else "all residuals zero")


def verify_magnus(dend: Dendriform, a, order: int) -> VerificationReport:
    """exp*(W) against the left solution and exp*(-W) against the right one."""
    rep = VerificationReport(f"magnus order {order} [{dend.name}]")
    w_left = magnus(dend, a, order, "left_rhd")
    w_right = magnus(dend, a, order, "right_lhd")
    _per_degree(rep, "left and right recursion shapes agree", w_left, w_right)
    w = lift_to_unital(dend, w_left)
    _per_degree(rep, "exp*(W) solves X = 1 + lambda a<X", series_exp(w), solve_left(dend, a, order))
    _per_degree(rep, "exp*(-W) solves Y = 1 - Y>lambda a", series_exp(-w), solve_right(dend, a, order))
    return rep


def fer_depth(order: int) -> int:
    """floor(log2 N) + 1; U_n vanishes modulo lambda^(N+1) beyond this index."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return order.bit_length()  # == floor(log2(order)) + 1


def _series_rhd(ops, s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    sp = ops.space
    out = [sp.zero() for _ in range(s.order + 1)]
    for i, x in enumerate(s.coeffs):
        if sp.is_zero(x):
            continue
        for j in range(s.order + 1 - i):
            y = t.coeffs[j]
            if sp.is_zero(y):
                continue
            out[i + j] = sp.add(out[i + j], ops.rhd(x, y))
    return TruncatedSeries(sp, s.order, out)


def fer_step_series(ops, u: TruncatedSeries) -> TruncatedSeries:
    """One Fer correction: sum_{l>0} ((-1)^l l/(l+1)!) (u rhd .)^l (u)."""
    sp = ops.space
    out = TruncatedSeries.zero(sp, u.order)
    q = u
    fact = 1  # (l+1)! running value
    for l in range(1, u.order + 1):
        q = _series_rhd(ops, u, q)
        if q.is_zero():
            break
        fact *= l + 1
        out = out + q.scale(Fraction((-1) ** l * l, fact))
    return out


def fer(ops, a, order: int) -> list[TruncatedSeries]:
    """The Fer factors U_0..U_k, k = fer_depth(order), truncated at ``order``."""
    u = TruncatedSeries.single(ops.space, order, 1, a)
    factors = [u]
    for _ in range(fer_depth(order)):
        u = fer_step_series(ops, u)
        factors.append(u)
    return factors


def _fer_closed_step(dend: Dendriform, u_unital: TruncatedSeries) -> TruncatedSeries:
    """The two-term closed recursion (exp*(-u) - 1) < exp*(u) + exp*(-u) > u < exp*(u)."""
    one = TruncatedSeries.one(dend.unital_space, u_unital.order)
    e_plus = series_exp(u_unital)
    e_minus = series_exp(-u_unital)
    first = series_half_prec(dend, e_minus - one, e_plus)
    second = series_half_prec(dend, series_half_succ(dend, e_minus, u_unital), e_plus)
    return first + second


def verify_fer(dend: Dendriform, a, order: int, exact_onsets: bool = False) -> VerificationReport:
    """Ordered exponential products against both fixed points, plus onsets
    and agreement of the pre-Lie form with the closed two-term recursion.

    Generically the n-th correction starts at degree >= 2^n (or vanishes,
    e.g. whenever the pre-Lie product degenerates); ``exact_onsets`` upgrades
    this to equality, which holds in the free model.
    """
    rep = VerificationReport(f"fer order {order} [{dend.name}]")
    factors = fer(dend, a, order)
    lifted = [lift_to_unital(dend, u) for u in factors]

    prod = TruncatedSeries.one(dend.unital_space, order)
    for u in lifted:
        prod = prod * series_exp(u)
    _per_degree(rep, f"forward product of {len(factors)} exponentials equals X", prod, solve_left(dend, a, order))

    prod = TruncatedSeries.one(dend.unital_space, order)
    for u in reversed(lifted):
        prod = prod * series_exp(-u)
    _per_degree(rep, "reversed product of negated exponentials equals Y", prod, solve_right(dend, a, order))

    for n, u in enumerate(factors):
        onset = u.low_degree()
        expected = 2**n
        if expected > order:
            rep.add(f"U_{n} vanishes modulo truncation", onset is None, f"low degree {onset}")
        elif exact_onsets:
            rep.add(f"U_{n} has lowest degree {expected}", onset == expected, f"low degree {onset}")
        else:
            rep.add(
                f"U_{n} starts at degree >= {expected}",
                onset is None or onset >= expected,
                f"low degree {onset}",
            )

    for n in (1, 2):
        if n >= len(factors):
            break
        closed = _fer_closed_step(dend, lifted[n - 1])
        _per_degree(rep, f"pre-Lie form of U_{n} matches the closed recursion", lifted[n], closed)
    return rep


def magnus_free_component(n: int) -> tuple[LinComb, LinComb]:
    """Degree-n Magnus coefficient for the free generator.

    Returns (raw, rooted): the combination of formal pre-Lie monomials
    exactly as the recursion produces it, and its expansion in the
    rooted-tree basis.
    """
    if not 1 <= n <= 8:
        raise ValueError("supported degrees are 1..8")
    ops = formal_ops()
    series = magnus(ops, ops.generator(), n)
    raw = series.coeff(n)
    return raw, eval_rooted(raw)


def beta_integral(p: int, q: int) -> Fraction:
    """Exact integral of (1-s)^q s^p over [0, 1], by binomial expansion.

    Validates the identity p! q! / (p+q+1)! used in deriving the Magnus
    fixed point; the library itself never calls it.
    """
    if p < 0 or q < 0:
        raise ValueError("exponents must be >= 0")
    return sum(
        (Fraction((-1) ** j * comb(q, j), p + j + 1) for j in range(q + 1)),
        Fraction(0),
    )


def power_sum_bridge_check(dend: Dendriform, a, order: int, n_max: int) -> VerificationReport:
    """sum_{p+q=n} W^*p > W < W^*q = W^*(n+1) for the Magnus series W."""
    rep = VerificationReport(f"power-sum bridge [{dend.name}]")
    w = lift_to_unital(dend, magnus(dend, a, order))
    powers = [TruncatedSeries.one(dend.unital_space, order)]
    for _ in range(n_max + 1):
        powers.append(powers[-1] * w)
    for n in range(n_max + 1):
        total = TruncatedSeries.zero(dend.unital_space, order)
        for p in range(n + 1):
            q = n - p
            total = total + series_half_prec(dend, series_half_succ(dend, powers[p], w), powers[q])
        _per_degree(rep, f"n = {n}", total, powers[n + 1])
    return rep
