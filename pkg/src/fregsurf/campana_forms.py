"""Index combinatorics of symmetric powers of log forms with fractional poles.

Local model: coordinates x_1..x_N, boundary x_s = 0 with coefficient c_s
for s in a set of r boundary coordinates.  A basis of the m-th symmetric
power of i-forms is indexed by multisets A of size m over the increasing
i-tuples of [N]; the element for A is divided by prod x_s^floor(c_s A(s)),
where A(s) counts the tuples in A that contain s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, floor

MAX_N = 6
MAX_M = 8


class EnumerationTooLarge(ValueError):
    pass


def sigma(i: int, N: int) -> list:
    return list(combinations(range(1, N + 1), i)) if i >= 0 else []


def theta(i: int, m: int, N: int) -> list:
    """Index functions A: sigma(i, N) -> N of total mass m, as sorted tuples of
    (tuple, multiplicity) pairs."""
    _guard(N, m)
    dom = sigma(i, N)
    if not dom:
        return [()] if m == 0 else []
    out = []
    for ms in combinations_with_replacement(dom, m):
        A = {}
        for a in ms:
            A[a] = A.get(a, 0) + 1
        out.append(tuple(sorted(A.items())))
    return out


def theta_size(i: int, m: int, N: int) -> int:
    k = comb(N, i) if 0 <= i <= N else 0
    if k == 0:
        return 1 if m == 0 else 0
    return comb(k + m - 1, m)


def _guard(N: int, m: int):
    if N > MAX_N or m > MAX_M:
        raise EnumerationTooLarge(
            f"N={N}, m={m} exceeds the enumeration caps (N<={MAX_N}, m<={MAX_M}); "
            f"index set size is about {theta_size(min(N // 2, N), m, N)} per form degree"
        )


def weight_at(A, s: int) -> int:
    return sum(k for a, k in A if s in a)


@dataclass(frozen=True)
class CampanaLocalModel:
    N: int
    coeffs: tuple  # boundary coefficients c_1..c_r
    i: int
    m: int
    split: int = 0  # M: coordinates 1..M come from the residue-field direction

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if any(not 0 < c <= 1 for c in coeffs):
            raise ValueError("boundary coefficients must lie in (0, 1]")
        if not 0 <= self.split <= self.N:
            raise ValueError("split must satisfy 0 <= M <= N")
        if self.split + len(coeffs) > self.N:
            raise ValueError("boundary coordinates do not fit after the split")
        if self.i < 0 or self.m < 0:
            raise ValueError("i and m must be nonnegative")

    @property
    def boundary_coordinates(self) -> tuple:
        """Boundary lives on x_{M+1}, ..., x_{M+r}: the residue-field
        coordinates 1..M are never boundary components."""
        return tuple(range(self.split + 1, self.split + 1 + len(self.coeffs)))


def denominators(model: CampanaLocalModel, A) -> tuple:
    return tuple(
        floor(c * weight_at(A, s)) for c, s in zip(model.coeffs, model.boundary_coordinates)
    )


def rank_sym_c(model: CampanaLocalModel):
    """(rank, [(A, denominator exponents)])."""
    basis = theta(model.i, model.m, model.N)
    return len(basis), [(A, denominators(model, A)) for A in basis]


def log_rank(i: int, m: int, N: int) -> int:
    """Rank of the m-th symmetric power of log i-forms: C(C(N,i)+m-1, m)."""
    return theta_size(i, m, N)


# -- filtrations --------------------------------------------------------------------


def sigma_level(i: int, N: int, M: int, level: int) -> list:
    """Tuples a in sigma(i, N) with a_level <= M (all of them for level 0,
    none for level > i)."""
    if level == 0:
        return sigma(i, N)
    if level > i:
        return []
    return [a for a in sigma(i, N) if a[level - 1] <= M]


def _mass(A, S) -> int:
    return sum(k for a, k in A if a in S)


def lambda_set(i: int, m: int, N: int, M: int, level: int, l: int) -> list:
    S = set(sigma_level(i, N, M, level))
    S1 = set(sigma_level(i, N, M, level + 1))
    return [A for A in theta(i, m, N) if all(a in S for a, _ in A) and _mass(A, S1) >= l]


def delta_set(i: int, m: int, N: int, M: int, level: int, l: int) -> list:
    """Maps of mass m - l on ([M] choose level) x ([N]-[M] choose i-level)."""
    if m - l < 0 or level < 0 or i - level < 0:
        dom = []
    else:
        dom = [
            tuple(sorted(u + v))
            for u in combinations(range(1, M + 1), level)
            for v in combinations(range(M + 1, N + 1), i - level)
        ]
    k = m - l
    if k < 0:
        return []
    if not dom:
        return [()] if k == 0 else []
    return [tuple(ms) for ms in combinations_with_replacement(sorted(dom), k)]


@dataclass(frozen=True)
class FiltrationCell:
    level: int
    l: int
    lam: int  # |Lambda^{level,l}_{i,m}|
    lam_next: int  # |Lambda^{level,l+1}_{i,m}|
    lam_inner: int  # |Lambda^{level+1,0}_{i,l}|
    delta: int  # |Delta^{level,l}_{i,m}|

    @property
    def identity_holds(self) -> bool:
        return self.lam - self.lam_next == self.lam_inner * self.delta


def filtration_dims(model: CampanaLocalModel, level: int, l: int) -> FiltrationCell:
    i, m, N, M = model.i, model.m, model.N, model.split
    _guard(N, m)
    return FiltrationCell(
        level,
        l,
        len(lambda_set(i, m, N, M, level, l)),
        len(lambda_set(i, m, N, M, level, l + 1)),
        len(lambda_set(i, l, N, M, level + 1, 0)) if l <= MAX_M else 0,
        len(delta_set(i, m, N, M, level, l)),
    )


def denominator_bounds(model: CampanaLocalModel, level: int, l: int):
    """Split each A in Lambda^{level,l} - Lambda^{level,l+1} as B + C with B the
    part on sigma_{level+1} and check floor(cB) + floor(cC) <= floor(c(B+C))
    <= floor(cB) + floor(cC) + 1 at every boundary coordinate.

    Returns (checked, bounds_ok, exact), exact counting the cases with equality
    on the left.  Equality always holds when level >= i - 1 or l = m.
    """
    i, m, N, M = model.i, model.m, model.N, model.split
    S1 = set(sigma_level(i, N, M, level + 1))
    layer = set(lambda_set(i, m, N, M, level, l)) - set(lambda_set(i, m, N, M, level, l + 1))
    checked = exact = 0
    ok = True
    for A in sorted(layer):
        Bpart = tuple((a, k) for a, k in A if a in S1)
        Cpart = tuple((a, k) for a, k in A if a not in S1)
        for c, s in zip(model.coeffs, model.boundary_coordinates):
            b, cc = weight_at(Bpart, s), weight_at(Cpart, s)
            lo, hi = floor_bracket_check(c, b, cc)
            ok = ok and lo and hi
            checked += 1
            exact += floor(c * b) + floor(c * cc) == floor(c * (b + cc))
    return checked, ok, exact


def floor_bracket_check(c, B: int, C: int) -> tuple:
    c = Fraction(c)
    lhs = floor(c * B) + floor(c * C)
    mid = floor(c * (B + C))
    return lhs <= mid, mid <= lhs + 1


# -- vanishing on curves ------------------------------------------------------------------


def curve_vanishing_certificate(degK_plus_D, m: int, degG: int) -> bool:
    """H^0 of O(floor(m (K+D)) - G) vanishes on a genus-zero curve when its degree is negative."""
    return floor(Fraction(degK_plus_D) * m) - degG < 0


@dataclass(frozen=True)
class VanishingPiece:
    path: tuple  # (level, l) steps of the filtration walk
    rank: int
    degree: int
    vanishes: bool


def claim_walk(M: int, i: int, m: int, degK_plus_D, degG: int):
    """Walk the filtration of the m-th symmetric power of i-forms on a curve E
    over a residue field with M separable directions (so N = M + 1).

    Each graded piece is a sum of line bundles O(floor(k (K_E + D))) (when the
    curve direction appears, k = mass carried) or trivial bundles; the walk
    lists every atomic piece with its rank and degree and certifies
    H^0(piece(-G)) = 0.  Returns (pieces, total_rank, all_vanish).
    """
    N = M + 1
    _guard(N, m)
    c = Fraction(degK_plus_D)
    pieces = []

    def walk(level, mass, path, deg):
        if level > i:
            if mass == 0:
                pieces.append((path, 1, deg))
            return
        for l in range(mass + 1):
            k = mass - l
            d = len(delta_set(i, mass, N, M, level, l))
            if d == 0:
                continue
            extra = floor(c * k) if (i - level == 1 and k > 0) else 0
            sub = []
            before = len(pieces)
            walk(level + 1, l, path + ((level, l),), deg + extra)
            for idx in range(before, len(pieces)):
                pth, r, dg = pieces[idx]
                sub.append((pth, r * d, dg))
            del pieces[before:]
            pieces.extend(sub)

    walk(0, m, (), 0)
    out = [VanishingPiece(pth, r, dg, dg - degG < 0) for pth, r, dg in pieces]
    total = sum(x.rank for x in out)
    return out, total, all(x.vanishes for x in out)
