from fractions import Fraction

import pytest

from dendrimag.dendriform import check_dendriform_axioms, check_prelie_identities
from dendrimag.lincomb import LinComb
from dendrimag.pbt import (
    GENERATOR,
    LEAF,
    PBT,
    ascii_render,
    free_dendriform,
    parse_tree,
    trees_of_degree,
)
from dendrimag.rooted import RootedTree, VERTEX, graft, rooted_ops, rooted_trees_of_degree

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
ROOTED_COUNTS = [1, 1, 2, 4, 9, 20, 48, 115]


@pytest.mark.parametrize("n", range(9))
def test_catalan_counts(n):
    assert len(trees_of_degree(n)) == CATALAN[n]


@pytest.mark.parametrize("n", range(1, 9))
def test_rooted_tree_counts(n):
    assert len(rooted_trees_of_degree(n)) == ROOTED_COUNTS[n - 1]


def test_tree_string_grammar_roundtrip():
    for n in range(6):
        for t in trees_of_degree(n):
            assert parse_tree(str(t)) is t
    assert str(LEAF) == "o"
    assert str(GENERATOR) == "(o^o)"
    assert "o" in ascii_render(GENERATOR)


def test_interning_gives_identity_equality():
    assert PBT(LEAF, LEAF) is GENERATOR
    assert RootedTree((VERTEX,)) is RootedTree((VERTEX,))
    # child order does not matter for rooted trees
    ladder = RootedTree((VERTEX,))
    assert RootedTree((ladder, VERTEX)) is RootedTree((VERTEX, ladder))


def test_generator_products():
    dend = free_dendriform()
    a = dend.generator()
    left = dend.prec(a, a)
    right = dend.succ(a, a)
    assert left.support_count() == 1 and right.support_count() == 1
    (tl, cl), = left.sorted_terms()
    (tr, cr), = right.sorted_terms()
    assert cl == 1 and cr == 1 and tl is not tr
    assert {tl, tr} == set(trees_of_degree(2))
    assert dend.star(a, a) == left + right


def test_unit_rules_through_unital_layer():
    dend = free_dendriform()
    a = dend.embed(dend.generator())
    one = dend.unital_space.one()
    assert dend.unital_space.eq(dend.half_prec(a, one), a)
    assert dend.unital_space.is_zero(dend.half_succ(a, one))


def _basis_triples(kind, max_total):
    degrees = []
    for i in range(1, max_total - 1):
        for j in range(1, max_total - i):
            for k in range(1, max_total - i - j + 1):
                degrees.append((i, j, k))
    for i, j, k in degrees:
        for s in kind(i):
            for t in kind(j):
                for u in kind(k):
                    yield (LinComb.single(s), LinComb.single(t), LinComb.single(u))


def test_free_dendriform_axioms_exhaustive_degree_6():
    dend = free_dendriform()
    triples = list(_basis_triples(trees_of_degree, 6))
    rep = check_dendriform_axioms(dend, triples)
    assert rep.ok, rep.summary()
    rep = check_prelie_identities(dend, triples)
    assert rep.ok, rep.summary()


def test_grafting_examples():
    a = LinComb.single(VERTEX)
    ladder2 = RootedTree((VERTEX,))
    assert graft(a, a) == LinComb.single(ladder2)
    ladder3 = RootedTree((ladder2,))
    cherry = RootedTree((VERTEX, VERTEX))
    assert graft(a, LinComb.single(ladder2)) == LinComb.single(ladder3) + LinComb.single(cherry)
    # grafting a ladder onto the single vertex gives the 3-chain
    assert graft(LinComb.single(ladder2), a) == LinComb.single(ladder3)


def test_free_prelie_identity_exhaustive_degree_6():
    ops = rooted_ops()
    for a, b, c in _basis_triples(rooted_trees_of_degree, 6):
        lhs = ops.rhd(ops.rhd(a, b), c) - ops.rhd(a, ops.rhd(b, c))
        rhs = ops.rhd(ops.rhd(b, a), c) - ops.rhd(b, ops.rhd(a, c))
        assert lhs == rhs


def test_grafting_degree_additive(rng):
    ops = rooted_ops()
    for _ in range(20):
        s = rng.choice(rooted_trees_of_degree(rng.randint(1, 3)))
        t = rng.choice(rooted_trees_of_degree(rng.randint(1, 3)))
        out = graft(LinComb.single(s), LinComb.single(t))
        assert all(tree.degree == s.degree + t.degree for tree, _ in out.sorted_terms())
        # number of graft positions equals the vertex count of t
        assert sum(out.terms.values()) == t.degree


def test_lincomb_normalization():
    a = LinComb.single(VERTEX, Fraction(1, 2))
    b = LinComb.single(VERTEX, Fraction(-1, 2))
    assert (a + b).is_zero()
    assert (a + b).support_count() == 0
    assert a.scale(Fraction(0)).is_zero()
    assert str(LinComb.zero()) == "0"
