from itertools import product

import pytest
from hypothesis import given, strategies as st

from fregsurf.cartier_engine import DegreeOverflow, GradedFormSpace, NotClosed, compositions


def brute_counts(space, i, m):
    """Count closed forms, forms in Z_2 and forms in B_2 of one slice by
    running through every coefficient vector."""
    basis = space.basis(i, m)
    z = z2 = b2 = 0
    for coeffs in product(range(space.q), repeat=len(basis)):
        form = {b: c for b, c in zip(basis, coeffs) if c}
        if space.exterior_derivative(form):
            continue
        z += 1
        c1 = space.cartier(form)
        if space.exterior_derivative(c1):
            continue
        z2 += 1
        b2 += not space.cartier(c1)
    return z, z2, b2


def test_compositions():
    assert sorted(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert len(list(compositions(4, 3))) == 15


def test_exterior_derivative_signs():
    S = GradedFormSpace(3, 2, 9)
    # d(x y dx) = x dy ^ dx = -x dx ^ dy
    assert S.exterior_derivative({((1, 1), (0,)): 1}) == {((1, 0), (0, 1)): 2}
    # d(x^3) = 0 in characteristic 3
    assert S.exterior_derivative({((3, 0), ()): 1}) == {}


def test_cartier_on_one_variable():
    S = GradedFormSpace(3, 1, 12)
    assert S.cartier({((2,), (0,)): 1}) == {((0,), (0,)): 1}  # x^2 dx -> dx
    assert S.cartier({((5,), (0,)): 1}) == {((1,), (0,)): 1}  # x^5 dx -> x dx
    assert S.cartier({((3,), (0,)): 1}) == {}  # exact: d(x^4 / 4)
    assert S.cartier({((6,), ()): 1}) == {((2,), ()): 1}  # x^6 -> x^2


def test_cartier_is_p_inverse_linear():
    S = GradedFormSpace(3, 1, 9, s=2)
    F = S.F
    for a in range(1, 9):
        assert S.cartier({((2,), (0,)): a}) == {((0,), (0,)): F.frob_inv(a)}


def test_cartier_on_two_variables():
    S = GradedFormSpace(2, 2, 8)
    # y^2 x dx -> y dx
    assert S.cartier({((1, 2), (0,)): 1}) == {((0, 1), (0,)): 1}
    # x y dx ^ dy -> dx ^ dy
    assert S.cartier({((1, 1), (0, 1)): 1}) == {((0, 0), (0, 1)): 1}


def test_not_closed_and_overflow():
    S = GradedFormSpace(3, 2, 6)
    with pytest.raises(NotClosed):
        S.cartier({((1, 0), (1,)): 1})  # x dy
    with pytest.raises(DegreeOverflow):
        S.exterior_derivative({((7, 0), ()): 1})
    with pytest.raises(DegreeOverflow):
        S.inverse_cartier({((3, 0), ()): 1})


@given(st.sampled_from([(2, 2), (3, 2), (2, 3), (5, 2)]), st.data())
def test_d_squared_vanishes(pn, data):
    p, n = pn
    S = GradedFormSpace(p, n, 10)
    i = data.draw(st.integers(0, n))
    m = data.draw(st.integers(i, 10))
    basis = S.basis(i, m)
    if not basis:
        return
    picks = data.draw(st.lists(st.sampled_from(basis), min_size=1, max_size=4))
    form = {b: data.draw(st.integers(1, p - 1)) for b in picks}
    assert S.exterior_derivative(S.exterior_derivative(form)) == {}


@given(st.sampled_from([(2, 2), (3, 2), (3, 3)]), st.data())
def test_cartier_undoes_inverse_cartier(pn, data):
    p, n = pn
    S = GradedFormSpace(p, n, 3 * p)
    i = data.draw(st.integers(0, n))
    m = data.draw(st.integers(i, 3))
    basis = S.basis(i, m)
    if not basis:
        return
    b = data.draw(st.sampled_from(basis))
    inv = S.inverse_cartier({b: 1})
    assert S.exterior_derivative(inv) == {}
    assert S.cartier(inv) == {b: 1}


@pytest.mark.parametrize("p,n,M", [(2, 2, 8), (3, 2, 9), (2, 3, 6), (5, 1, 25)])
def test_block_dimensions_match_full_slice_ranks(p, n, M):
    S = GradedFormSpace(p, n, M)
    for i in range(n + 1):
        for m in range(M + 1):
            if S.dim_omega(i, m) == 0:
                continue
            assert S.Z_space(i, m).dim == S.dim_omega(i, m) - S.slice_d_rank(i, m)
            assert S.B_space(i, m).dim == S.slice_d_rank(i - 1, m) if i else S.B_space(i, m).dim == 0


@pytest.mark.parametrize("p,n,i,m", [(2, 2, 1, 3), (2, 2, 1, 4), (2, 2, 0, 4), (3, 2, 1, 3), (2, 3, 1, 2), (2, 2, 2, 4)])
def test_iterated_spaces_against_brute_force(p, n, i, m):
    S = GradedFormSpace(p, n, m)
    z, z2, b2 = brute_counts(S, i, m)
    assert z == S.q ** S.Z_space(i, m).dim
    assert z2 == S.q ** S.Z_n_space(i, m, 2).dim
    assert b2 == S.q ** S.B_n_space(i, m, 2).dim


def test_first_level_spaces_are_Z_and_B():
    S = GradedFormSpace(3, 2, 9)
    for i in range(3):
        for m in range(10):
            if S.dim_omega(i, m):
                assert S.Z_n_space(i, m, 1).dim == S.Z_space(i, m).dim
                assert S.B_n_space(i, m, 1).dim == S.B_space(i, m).dim


def test_subspace_membership():
    S = GradedFormSpace(3, 1, 9)
    Z = S.Z_space(1, 3)
    assert Z.contains({((2,), (0,)): 1})
    B = S.B_space(1, 3)
    assert not B.contains({((2,), (0,)): 1})
    assert B <= Z


@pytest.mark.parametrize("window", [(2, 2, 8, 2), (3, 2, 9, 1), (3, 2, 9, 2), (2, 1, 16, 3)])
def test_sequence_report_small_windows(window):
    p, n, M, levels = window
    rep = GradedFormSpace(p, n, M).verify_sequences(n, M, levels)
    assert rep.ok, {k: v for k, v in rep.checks.items() if v[1]}
    assert all(c[0] > 0 for c in rep.checks.values())


def test_sequence_report_over_f9():
    rep = GradedFormSpace(3, 2, 9, s=2).verify_sequences(2, 9, 2)
    assert rep.ok and rep.failures() == 0


def test_sabotaged_operator_is_detected(monkeypatch):
    S = GradedFormSpace(3, 2, 9)
    good = S.inverse_cartier

    def swapped(form):
        # attach the x_j^(p-1) factor to the wrong differential
        return {(f, tuple(1 - k for k in I)): c for (f, I), c in good(form).items()}

    monkeypatch.setattr(S, "inverse_cartier", swapped)
    with pytest.raises(NotClosed):
        S.cartier(S.inverse_cartier({((0, 0), (0,)): 1}))
