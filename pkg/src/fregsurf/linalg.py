"""Dense linear algebra over a finite field and over the rationals.

Vectors are lists; a "row system" is a list of vectors of equal length.
The finite-field routines take a GF instance for the arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .finite_field import GF


class SingularMatrix(ValueError):
    pass


def rref(rows, F: GF):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, F: GF) -> int:
    return len(rref(rows, F)[0])


def left_kernel(rows, F: GF):
    """Basis of {c : sum_j c_j rows[j] = 0}, as vectors of length len(rows)."""
    n = len(rows)
    if n == 0:
        return []
    width = len(rows[0])
    aug = [list(r) + [1 if k == j else 0 for k in range(n)] for j, r in enumerate(rows)]
    red, piv = rref(aug, F)
    out = []
    for row, c in zip(red, piv):
        if c >= width:
            out.append(row[width:])
    return out


def solve_in_span(rows, v, F: GF):
    """Coefficients c with sum c_j rows[j] = v, or None if v is not in the span."""
    if not rows:
        return [] if not any(v) else None
    # a kernel vector of [rows; -v] with last entry 1 is a solution; the
    # last entry is a linear functional, so checking the basis suffices
    ker = left_kernel([list(r) for r in rows] + [[F.neg(x) for x in v]], F)
    for kv in ker:
        if kv[-1]:
            t = F.inv(kv[-1])
            return [F.mul(t, x) for x in kv[:-1]]
    return None


def row_space_basis(rows, F: GF):
    return rref(rows, F)[0]


def frac_det(m) -> Fraction:
    """Determinant by Fraction Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((k for k in range(c, n) if a[k][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for k in range(c + 1, n):
            if a[k][c]:
                f = a[k][c] / a[c][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[c])]
    return det


def bareiss_det(m) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def frac_solve(m, b):
    """Solve m x = b exactly over Q.  Raises SingularMatrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, b)]
    for c in range(n):
        piv = next((k for k in range(c, n) if a[k][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for k in range(n):
            if k != c and a[k][c]:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[c])]
    return [row[n] for row in a]
