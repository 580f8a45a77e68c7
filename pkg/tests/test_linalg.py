from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fregsurf.finite_field import field
from fregsurf.linalg import (
    SingularMatrix,
    bareiss_det,
    frac_det,
    frac_solve,
    left_kernel,
    rank,
    rref,
    solve_in_span,
)


def cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square)
def test_determinants_agree_with_cofactor_expansion(m):
    d = cofactor_det(m)
    assert bareiss_det(m) == d
    assert frac_det([[Fraction(x) for x in r] for r in m]) == d


@given(square, st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_frac_solve_solves(m, b):
    n = len(m)
    b = b[:n]
    if cofactor_det(m) == 0:
        with pytest.raises(SingularMatrix):
            frac_solve(m, b)
        return
    x = frac_solve(m, b)
    assert [sum(Fraction(m[i][j]) * x[j] for j in range(n)) for i in range(n)] == b


mod_rows = st.integers(1, 4).flatmap(
    lambda w: st.lists(st.lists(st.integers(0, 4), min_size=w, max_size=w), min_size=1, max_size=5)
)


@given(mod_rows)
def test_rank_nullity_over_f5(rows):
    F = field(5)
    r = rank(rows, F)
    ker = left_kernel(rows, F)
    assert r + len(ker) == len(rows)
    for k in ker:
        combo = [sum(k[i] * rows[i][j] for i in range(len(rows))) % 5 for j in range(len(rows[0]))]
        assert combo == [0] * len(rows[0])


@given(mod_rows)
def test_rref_pivots_are_unit_columns(rows):
    F = field(5)
    red, piv = rref(rows, F)
    for i, c in enumerate(piv):
        assert [r[c] for r in red[: len(piv)]] == [1 if k == i else 0 for k in range(len(piv))]


def test_solve_in_span():
    F = field(3)
    rows = [[1, 0, 1], [0, 1, 1]]
    coeffs = solve_in_span(rows, [2, 1, 0], F)
    assert [sum(c * r[j] for c, r in zip(coeffs, rows)) % 3 for j in range(3)] == [2, 1, 0]
    assert solve_in_span(rows, [0, 0, 1], F) is None
