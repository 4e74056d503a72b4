import math
from fractions import Fraction

import pytest

from dendrimag.dendriform import lift_to_unital, series_half_prec, series_half_succ, solve_left
from dendrimag.lincomb import LinComb
from dendrimag.magnus_fer import (
    beta_integral,
    fer,
    fer_depth,
    magnus,
    magnus_free_component,
    power_sum_bridge_check,
    verify_fer,
    verify_magnus,
)
from dendrimag.pbt import free_dendriform
from dendrimag.prelie_expr import GEN, PreLieExpr, eval_rooted, monomial_count, rewrite_reduce
from dendrimag.rooted import RootedTree, VERTEX
from dendrimag.series import TruncatedSeries, series_exp, series_log


def expr(shape):
    if shape == "a":
        return GEN
    left, right = shape
    return PreLieExpr(expr(left), expr(right))


AA = ("a", "a")


def test_low_degree_components_match_closed_forms():
    raw1, _ = magnus_free_component(1)
    assert raw1 == LinComb.single(GEN)
    raw2, rooted2 = magnus_free_component(2)
    assert raw2 == LinComb.single(expr(AA), Fraction(-1, 2))
    assert rooted2 == LinComb.single(RootedTree((VERTEX,)), Fraction(-1, 2))
    raw3, _ = magnus_free_component(3)
    assert raw3 == (
        LinComb.single(expr((AA, "a")), Fraction(1, 4))
        + LinComb.single(expr(("a", AA)), Fraction(1, 12))
    )


def test_degree_four_component_and_reduction():
    raw4, rooted4 = magnus_free_component(4)
    expected = (
        LinComb.single(expr(((AA, "a"), "a")), Fraction(-1, 8))
        + LinComb.single(expr((("a", AA), "a")), Fraction(-1, 24))
        + LinComb.single(expr(("a", (AA, "a"))), Fraction(-1, 24))
        + LinComb.single(expr((AA, AA)), Fraction(-1, 24))
    )
    assert raw4 == expected
    assert monomial_count(raw4) == 4

    reduced = rewrite_reduce(raw4)
    assert reduced == (
        LinComb.single(expr(((AA, "a"), "a")), Fraction(-1, 6))
        + LinComb.single(expr(("a", (AA, "a"))), Fraction(-1, 12))
    )
    assert eval_rooted(reduced) == rooted4


def test_degree_five_counts():
    raw5, rooted5 = magnus_free_component(5)
    assert monomial_count(raw5) == 10
    reduced5 = rewrite_reduce(raw5, budget=8000, beam=24)
    assert monomial_count(reduced5) == 7
    assert eval_rooted(reduced5) == rooted5


def test_magnus_zero_input(tri_rb):
    dend = tri_rb.dendriform()
    w = magnus(dend, dend.space.zero(), 4)
    assert w.is_zero()
    x = solve_left(dend, dend.space.zero(), 4)
    assert x == TruncatedSeries.one(dend.unital_space, 4)


def test_magnus_variants_agree_everywhere(tri_rb, grid_strict, poly_matrix, rng):
    free = free_dendriform()
    assert magnus(free, free.generator(), 8) == magnus(free, free.generator(), 8, "right_lhd")
    for rb in (tri_rb, grid_strict, poly_matrix):
        dend = rb.dendriform()
        a = rb.sample(rng)
        assert magnus(dend, a, 6) == magnus(dend, a, 6, "right_lhd")


def test_magnus_rejects_bad_variant_and_order(tri_rb):
    dend = tri_rb.dendriform()
    with pytest.raises(ValueError):
        magnus(dend, dend.space.zero(), 3, "sideways")
    with pytest.raises(ValueError):
        magnus(dend, dend.space.zero(), 0)


def test_verify_magnus_free_model_order_8():
    free = free_dendriform()
    rep = verify_magnus(free, free.generator(), 8)
    assert rep.ok, rep.summary()


def test_verify_magnus_instances_order_6(tri_rb, grid_strict, poly_scalar, poly_matrix, rng):
    for rb in (tri_rb, grid_strict, poly_scalar, poly_matrix):
        rep = verify_magnus(rb.dendriform(), rb.sample(rng), 6)
        assert rep.ok, rep.summary()


def test_associative_degeneration_log_form(assoc_dend, rng):
    a = assoc_dend.sample(rng)
    order = 8
    w = lift_to_unital(assoc_dend, magnus(assoc_dend, a, order))
    usp = assoc_dend.unital_space
    one = TruncatedSeries.one(usp, order)
    lam_a = TruncatedSeries.single(usp, order, 1, assoc_dend.embed(a))
    assert w == -series_log(one - lam_a)
    assert series_exp(w) == solve_left(assoc_dend, a, order)


def test_fer_factor_low_degrees():
    free = free_dendriform()
    a = free.generator()
    factors = fer(free, a, 6)
    u0, u1 = factors[0], factors[1]
    assert u0 == TruncatedSeries.single(free.space, 6, 1, a)
    aa = free.rhd(a, a)
    assert u1.coeff(2) == aa.scale(Fraction(-1, 2))
    assert u1.coeff(3) == free.rhd(a, aa).scale(Fraction(1, 3))
    assert u1.coeff(4) == free.rhd(a, free.rhd(a, aa)).scale(Fraction(-1, 8))


def test_fer_depth():
    assert fer_depth(1) == 1
    assert fer_depth(3) == 2
    assert fer_depth(6) == 3
    assert fer_depth(8) == 4
    with pytest.raises(ValueError):
        fer_depth(0)


def test_verify_fer_free_model():
    free = free_dendriform()
    rep = verify_fer(free, free.generator(), 6, exact_onsets=True)
    assert rep.ok, rep.summary()
    rep = verify_fer(free, free.generator(), 8, exact_onsets=True)
    assert rep.ok, rep.summary()


def test_verify_fer_zero_input(tri_rb):
    dend = tri_rb.dendriform()
    rep = verify_fer(dend, dend.space.zero(), 4)
    assert rep.ok, rep.summary()


def test_verify_fer_instances(tri_rb, grid_strict, poly_scalar, poly_matrix, rng):
    for rb in (tri_rb, grid_strict, poly_scalar, poly_matrix):
        rep = verify_fer(rb.dendriform(), rb.sample(rng), 6)
        assert rep.ok, rep.summary()


@pytest.mark.parametrize("p", range(9))
@pytest.mark.parametrize("q", range(9))
def test_beta_integral_closed_form(p, q):
    assert beta_integral(p, q) == Fraction(
        math.factorial(p) * math.factorial(q), math.factorial(p + q + 1)
    )


def test_power_sum_bridge_free_model():
    free = free_dendriform()
    rep = power_sum_bridge_check(free, free.generator(), 6, 5)
    assert rep.ok, rep.summary()


def test_left_absorption_integral_identity():
    # (exp*(-b) - 1) < exp*(b) expands to the exact weighted double sum
    # -sum_{p,q} (-1)^p / (p! q! (p+q+1)) b^*p > b < b^*q  for b = lambda a
    free = free_dendriform()
    order = 5
    usp = free.unital_space
    b = TruncatedSeries.single(usp, order, 1, free.embed(free.generator()))
    one = TruncatedSeries.one(usp, order)
    lhs = series_half_prec(free, series_exp(-b) - one, series_exp(b))
    rhs = TruncatedSeries.zero(usp, order)
    powers = [one]
    for _ in range(order):
        powers.append(powers[-1] * b)
    for p in range(order + 1):
        for q in range(order + 1 - p):
            mid = series_half_prec(free, series_half_succ(free, powers[p], b), powers[q])
            rhs = rhs + mid.scale(Fraction((-1) ** (p + 1), math.factorial(p) * math.factorial(q) * (p + q + 1)))
    assert lhs == rhs
