from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from fregsurf.corpus import A, E8, chain, continued_fraction, rdp_star, star, triple_folding, twisted_chain, twisted_star
from fregsurf.graph_core import (
    BranchNotChain,
    Chain,
    DualGraph,
    Edge,
    InvariantViolation,
    NotNegativeDefinite,
    Other,
    Star,
    TwistedChain,
    TwistedStar,
    Vertex,
    branch_index_bound,
    canonical_degrees,
    center_branches,
    classify_shape,
    different_on_center,
    discrepancies,
    intersection_matrix,
    is_negative_definite,
    lattice_determinant,
    pair_degree,
)


def hj_numerator(bs):
    """m for the continued fraction [b1, ..., bn] via p_k = b_k p_{k-1} - p_{k-2}."""
    p0, p1 = 1, bs[-1]
    for b in reversed(bs[:-1]):
        p0, p1 = p1, b * p1 - p0
    return p1


def test_small_chain_matrix():
    g = DualGraph.build([("a", -2), ("b", -3)], [("a", "b")])
    assert intersection_matrix(g) == [[-2, 1], [1, -3]]
    assert canonical_degrees(g) == [0, 1]
    assert discrepancies(g) == [Fraction(-1, 5), Fraction(-2, 5)]


@pytest.mark.parametrize("n", range(1, 13))
def test_An_determinant(n):
    assert lattice_determinant(intersection_matrix(A(n))) == n + 1


@pytest.mark.parametrize("t,det", [((2, 2, 2), 4), ((2, 2, 5), 4), ((2, 3, 3), 3), ((2, 3, 4), 2), ((2, 3, 5), 1)])
def test_rdp_star_determinants(t, det):
    # D_n: 4, E6: 3, E7: 2, E8: 1
    assert lattice_determinant(intersection_matrix(rdp_star(t))) == det


def test_E8_shape_and_different():
    g = E8()
    shape = classify_shape(g)
    assert shape == Star((2, 3, 5), (1, 2, 4), "C")
    assert different_on_center(g, "C") == [Fraction(1, 2), Fraction(2, 3), Fraction(4, 5)]
    assert branch_index_bound(center_branches(g, "C")) == 30


@pytest.mark.parametrize(
    "g",
    [A(4), rdp_star((2, 2, 4)), E8(), twisted_chain([-2, -4, -4]), twisted_star([-4], -2, [-2, -2]), triple_folding()],
    ids=["A4", "D6", "E8", "tchain", "tstar", "triple"],
)
def test_discrepancies_vanish_on_minus_two_curves(g):
    assert all(v.self_int == -2 * v.degree for v in g.vertices)
    assert discrepancies(g) == [0] * len(g)


coprime = st.integers(2, 40).flatmap(lambda m: st.tuples(st.just(m), st.sampled_from([q for q in range(1, m) if gcd(m, q) == 1])))


@given(coprime)
def test_cyclic_quotient_chain(mq):
    m, q = mq
    bs = continued_fraction(m, q)
    assert hj_numerator(bs) == m
    g = chain([-b for b in bs])
    assert lattice_determinant(intersection_matrix(g)) == m
    qq = pow(q, -1, m)
    a = discrepancies(g)
    # log discrepancies at the two ends are (1+q)/m and (1+q')/m
    assert a[0] == Fraction(1 + q, m) - 1
    assert a[-1] == Fraction(1 + qq, m) - 1
    assert isinstance(classify_shape(g), Chain)


@given(st.lists(st.integers(2, 5), min_size=1, max_size=6))
def test_discrepancies_solve_the_adjunction_system(bs):
    g = chain([-b for b in bs])
    m = intersection_matrix(g)
    a = discrepancies(g)
    assert [sum(m[i][j] * a[j] for j in range(len(a))) for i in range(len(a))] == canonical_degrees(g)
    assert is_negative_definite(m)


@given(st.permutations(list(range(8))))
def test_relabeling_preserves_invariants(perm):
    g = E8()
    h = g.relabel({v: f"w{perm[k]}" for k, v in enumerate(g.ids)})
    assert classify_shape(h).type == (2, 3, 5)
    assert lattice_determinant(intersection_matrix(h)) == 1
    assert sorted(discrepancies(h)) == sorted(discrepancies(g))


def test_pair_degree_with_full_boundary():
    g = A(3)
    # (K + E1 + E2 + E3) . E1 = 0 - 2 + 1
    assert pair_degree(g, [1, 1, 1], "E1") == -1
    assert pair_degree(g, [1, 1, 1], "E2") == 0


def test_twisted_shapes():
    assert classify_shape(twisted_chain([-1, -4, -6])) == TwistedChain(3, ("T1", "T2", "T3"))
    ts = classify_shape(twisted_star([-4], -2, [-2, -2]))
    assert isinstance(ts, TwistedStar) and ts.type == (2, 2, 3) and ts.fold == 2 and ts.center == "C"
    ts = classify_shape(twisted_star([-4, -4], -2, [-2]))
    assert ts.type == (2, 3, 3)
    tri = classify_shape(triple_folding())
    assert tri.type == (2, 2, 2) and tri.fold == 3
    br = center_branches(twisted_star([-4], -2, [-2, -2]), "C")
    assert [(b.determinant, b.point_degree) for b in br] == [(2, 2), (3, 1)]


def test_other_shapes():
    cyc = DualGraph.build([("a", -3), ("b", -3), ("c", -3)], [("a", "b"), ("b", "c"), ("a", "c")])
    assert isinstance(classify_shape(cyc), Other)
    four = star(-2, [[-2], [-2], [-2]])
    four = DualGraph(four.vertices + (Vertex("w1", -2),), four.edges + (Edge("C", "w1"),))
    assert isinstance(classify_shape(four), Other)
    two_nodes = DualGraph.build(
        [("a", -2), ("b", -2), ("c", -2), ("d", -2), ("e", -2), ("f", -2)],
        [("a", "b"), ("b", "c"), ("b", "d"), ("d", "e"), ("d", "f")],
    )
    assert isinstance(classify_shape(two_nodes), Other)


def test_invariant_violations():
    with pytest.raises(InvariantViolation):
        DualGraph.build([("a", 1)])
    with pytest.raises(InvariantViolation):
        DualGraph.build([("a", -2), ("b", -2)])  # disconnected
    with pytest.raises(InvariantViolation):
        DualGraph.build([("a", -2)], [("a", "a")])
    with pytest.raises(InvariantViolation):
        DualGraph.build([("a", -2, 0)])
    with pytest.raises(NotNegativeDefinite):
        lattice_determinant(intersection_matrix(DualGraph.build([("a", -1), ("b", -1)], [("a", "b")])))


def test_branch_must_be_chain():
    g = DualGraph.build(
        [("c", -2), ("x", -2), ("y", -2), ("z", -2), ("z2", -2), ("z3", -2)],
        [("c", "x"), ("c", "y"), ("c", "z"), ("z", "z2"), ("z", "z3")],
    )
    with pytest.raises(BranchNotChain):
        center_branches(g, "c")
