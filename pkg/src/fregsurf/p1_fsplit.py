"""Frobenius splitting of pairs (P^1, D) over a finite field.

Two independent routes: a lookup table over standard weights, and a
direct oracle.  The oracle uses that a section g*F of O(2(Q-1)) (Q = p^e)
has trace equal to its coefficient at t^(Q-1), so the Frobenius twisted
by ceil((Q-1)D) splits iff F = prod (t - lambda_i)^(m_i) has a nonzero
coefficient in the window t^(Q-1-j), 0 <= j <= J.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .finite_field import GF, binom_mod_p, field

INF = None


class DegenerateLambda(ValueError):
    pass


class NonStandardCoefficient(ValueError):
    pass


@dataclass(frozen=True)
class P1Point:
    location: int | None  # element of F_q, or None for infinity
    coefficient: Fraction


@dataclass(frozen=True)
class P1Pair:
    p: int
    points: tuple
    s: int = 1

    def __post_init__(self):
        F = self.field
        locs = [pt.location for pt in self.points]
        if len(set(locs)) != len(locs):
            raise ValueError("point locations must be distinct")
        for pt in self.points:
            if pt.location is not None:
                F.check(pt.location)
            if not 0 <= pt.coefficient <= 1:
                raise ValueError("coefficients must lie in [0, 1]")

    @property
    def q(self) -> int:
        return self.p ** self.s

    @property
    def field(self) -> GF:
        return field(self.p, self.s)

    @classmethod
    def from_weights(cls, p: int, weights, locations=None, s: int | None = None) -> "P1Pair":
        """Points with coefficients (d-1)/d.  Default locations 0, 1, inf, then
        -1, 2, 3, ...; the field is enlarged until enough rational points exist."""
        weights = list(weights)
        if s is None:
            s = 1
            while p ** s + 1 < len(weights):
                s += 1
        if locations is None:
            F = field(p, s)
            pool = [0, 1, INF] + [x for x in [F.neg(1)] + list(range(2, F.q)) if x not in (0, 1)]
            seen, locations = set(), []
            for x in pool:
                if x not in seen:
                    seen.add(x)
                    locations.append(x)
            locations = locations[: len(weights)]
        pts = tuple(P1Point(loc, Fraction(d - 1, d)) for loc, d in zip(locations, weights))
        return cls(p, pts, s)

    @classmethod
    def four_point(cls, p: int, lam: int, s: int = 1) -> "P1Pair":
        """The pair 1/2 (inf + 0 + (-1) + lam)."""
        F = field(p, s)
        if lam in (0, F.neg(1)):
            raise DegenerateLambda(f"lambda={lam} collides with 0 or -1")
        half = Fraction(1, 2)
        locs = (INF, 0, F.neg(1), lam)
        return cls(p, tuple(P1Point(x, half) for x in locs), s)

    def standard_weights(self):
        """Sorted weights d with coefficient (d-1)/d; points with coefficient 0 are dropped."""
        out = []
        for pt in self.points:
            c = pt.coefficient
            if c == 0:
                continue
            if c == 1 or (1 / (1 - c)).denominator != 1:
                raise NonStandardCoefficient(f"coefficient {c} is not of the form (d-1)/d")
            out.append(int(1 / (1 - c)))
        return tuple(sorted(out))


# -- table ---------------------------------------------------------------------

# Weight configurations covered by the table: the F-regular triples, the
# three boundary triples with deg(K + D) = 0, and two with deg(K + D) > 0.
REGULAR_WEIGHTS = ((2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 2, 6), (2, 3, 3), (2, 3, 4), (2, 3, 5))
BOUNDARY_WEIGHTS = ((3, 3, 3), (2, 4, 4), (2, 3, 6))
LISTED_WEIGHTS = REGULAR_WEIGHTS + BOUNDARY_WEIGHTS + ((2, 3, 7), (3, 3, 4))


def table_globally_f_regular(weights, p: int) -> bool:
    w = tuple(sorted(d for d in weights if d > 1))
    if len(w) <= 2:
        return True  # at most two boundary points: a toric pair
    if len(w) != 3:
        return False
    if w[:2] == (2, 2):
        return p != 2
    if w in ((2, 3, 3), (2, 3, 4)):
        return p > 3
    if w == (2, 3, 5):
        return p > 5
    return False


@dataclass(frozen=True)
class TableAnswer:
    verdict: str  # "Yes", "No" or "LambdaTest"
    case: str = ""
    lam: int | None = None


def normalized_lambda(pair: P1Pair) -> int:
    """Image of the fourth point under the Moebius map sending the first three
    (infinity first, when present) to inf, 0, -1."""
    F = pair.field
    locs = [pt.location for pt in pair.points]
    if len(locs) != 4:
        raise ValueError("need exactly four points")
    if INF in locs:
        locs.remove(INF)
        a, b, z = locs
        # z -> -(z - a) / (b - a)
        return F.neg(F.div(F.sub(z, a), F.sub(b, a)))
    P1, P2, P3, z = locs
    num = F.mul(F.sub(z, P2), F.sub(P3, P1))
    den = F.mul(F.sub(z, P1), F.sub(P3, P2))
    return F.neg(F.div(num, den))


def table_sharply_f_split(pair: P1Pair) -> TableAnswer:
    p = pair.p
    w = pair.standard_weights()
    if table_globally_f_regular(w, p):
        return TableAnswer("Yes", "F-regular" if len(w) == 3 else "toric")
    if w in ((3, 3, 3), (2, 3, 6)):
        return TableAnswer("Yes", "p=1 mod 3") if p % 3 == 1 else TableAnswer("No")
    if w == (2, 4, 4):
        return TableAnswer("Yes", "p=1 mod 4") if p % 4 == 1 else TableAnswer("No")
    if w == (2, 2, 2, 2):
        if p == 2:
            return TableAnswer("No")
        return TableAnswer("LambdaTest", "four points", normalized_lambda(pair))
    return TableAnswer("No")


def lambda_hasse_test(lam: int, p: int, s: int = 1, printed_sign: bool = False) -> bool:
    """Is the coefficient of x^n in (x+1)^n (x-lam)^n nonzero?  n = (p-1)/2.

    With points at inf, 0, -1, lam this is the Hasse invariant of
    y^2 = x(x+1)(x-lam).  printed_sign=True uses (x+lam)^n instead, the form
    whose roots are -1 and -lam.
    """
    if p == 2:
        raise ValueError("the Hasse test needs an odd characteristic")
    F = field(p, s)
    if lam in (0, F.neg(1)):
        raise DegenerateLambda(f"lambda={lam} collides with 0 or -1")
    n = (p - 1) // 2
    root = lam if printed_sign else F.neg(lam)
    # coefficient of x^n in sum_i C(n,i) x^i * sum_k C(n,k) x^k root^(n-k)
    total = 0
    for k in range(n + 1):
        c = binom_mod_p(n, n - k, p) * binom_mod_p(n, k, p) % p
        total = F.add(total, F.mul(F.from_int(c), F.pow(root, n - k)))
    return total != 0


def resolve_sharply_f_split(pair: P1Pair) -> tuple:
    """Table verdict with the four-point case settled by the Hasse test."""
    ans = table_sharply_f_split(pair)
    if ans.verdict == "LambdaTest":
        return lambda_hasse_test(ans.lam, pair.p, pair.s), ans
    return ans.verdict == "Yes", ans


# -- oracle --------------------------------------------------------------------


@dataclass(frozen=True)
class SplitWitness:
    e: int
    j: int
    coefficient: int


@dataclass(frozen=True)
class OracleResult:
    verdict: str  # "Yes", "No" or "Undecided"
    witness: SplitWitness | None
    e_max: int


def _linear(F: GF, lam: int) -> dict:
    return {1: 1, 0: F.neg(lam)} if lam else {1: 1}


def _digit_layers(F: GF, factors) -> list:
    """Write prod f_i^(m_i) as prod_k H_k(t^(p^k)) using f^(p^k) = (sigma^k f)(t^(p^k)):
    H_k is the product of (sigma^k f_i)^(k-th base-p digit of m_i), kept dense."""
    p = F.p
    layers = []
    k = 0
    ms = [m for _, _, m in factors]
    while any(ms):
        H = [1]
        for (f, _, _), m in zip(factors, ms):
            digit = m % p
            if not digit:
                continue
            g = [0] * (max(f) + 1)
            for e, c in f.items():
                g[e] = F.frob(c, k)
            for _ in range(digit):
                out = [0] * (len(H) + len(g) - 1)
                for a, ca in enumerate(H):
                    if ca:
                        for b, cb in enumerate(g):
                            if cb:
                                out[a + b] = F.add(out[a + b], F.mul(ca, cb))
                H = out
        layers.append(H)
        ms = [m // p for m in ms]
        k += 1
    return layers


def _layered_coefficient(F: GF, layers, N: int, memo: dict, k: int = 0) -> int:
    """Coefficient of t^N in prod_{j >= k} H_j(t^(p^(j-k)))."""
    if k == len(layers):
        return 1 if N == 0 else 0
    key = (k, N)
    if key in memo:
        return memo[key]
    p = F.p
    H = layers[k]
    total = 0
    for a in range(N % p, min(len(H) - 1, N) + 1, p):
        if H[a]:
            rest = _layered_coefficient(F, layers, (N - a) // p, memo, k + 1)
            if rest:
                total = F.add(total, F.mul(H[a], rest))
    memo[key] = total
    return total


def _window_split(F: GF, Q: int, factors, inf_mult: int):
    """factors: list of (poly dict, degree, multiplicity).  Returns (j, coef) or None.

    Scans the coefficients of t^(Q-1-j), 0 <= j <= J, of F = prod f_i^(m_i),
    each extracted digit by digit from the Frobenius layering of F.
    """
    J = 2 * (Q - 1) - inf_mult - sum(deg * m for _, deg, m in factors)
    if J < 0:
        return None
    layers = _digit_layers(F, factors)
    memo = {}
    for j in range(min(J, Q - 1) + 1):
        c = _layered_coefficient(F, layers, Q - 1 - j, memo)
        if c:
            return j, c
    return None


def _point_factors(pair: P1Pair, Q: int, bump: int = 0):
    F = pair.field
    factors, inf_mult = [], 0
    for pt in pair.points:
        if pt.coefficient == 0 and not bump:
            continue
        m = ceil((Q - 1) * pt.coefficient) + (bump if pt.coefficient > 0 else 0)
        if pt.location is INF:
            inf_mult += m
        else:
            factors.append((_linear(F, pt.location), 1, m))
    return factors, inf_mult


def oracle_sharply_f_split(pair: P1Pair, e_max: int = 3) -> OracleResult:
    if e_max < 1:
        raise ValueError("e_max must be >= 1")
    F = pair.field
    for e in range(1, e_max + 1):
        Q = pair.p ** e
        factors, inf_mult = _point_factors(pair, Q)
        hit = _window_split(F, Q, factors, inf_mult)
        if hit:
            return OracleResult("Yes", SplitWitness(e, hit[0], hit[1]), e_max)
    return OracleResult("No", None, e_max)


def augmenting_point(pair: P1Pair):
    """A closed point outside Supp(D): (poly, degree).  Prefers t = 1, then
    t = 2, then any rational point, then a degree-two point."""
    F = pair.field
    supp = {pt.location for pt in pair.points if pt.coefficient > 0}
    for x in [1, F.from_int(2)] + list(F.elements()):
        if x not in supp:
            return _linear(F, x), 1, x
    for b in F.elements():
        for c in F.elements():
            if c and all(F.add(F.add(F.mul(x, x), F.mul(b, x)), c) for x in F.elements()):
                return {2: 1, 1: b, 0: c}, 2, ("quadratic", b, c)
    raise RuntimeError("no test point found")


def oracle_globally_f_regular(pair: P1Pair, e_max: int = 3) -> OracleResult:
    """Splitting along ceil((Q-1)D) + Supp(D) + one more point.

    Success at some e proves global F-regularity.  Failure up to e_max is
    reported as No only when the table also predicts No.
    """
    if e_max < 1:
        raise ValueError("e_max must be >= 1")
    F = pair.field
    poly, deg, _ = augmenting_point(pair)
    for e in range(1, e_max + 1):
        Q = pair.p ** e
        factors, inf_mult = _point_factors(pair, Q, bump=1)
        hit = _window_split(F, Q, factors + [(poly, deg, 1)], inf_mult)
        if hit:
            return OracleResult("Yes", SplitWitness(e, hit[0], hit[1]), e_max)
    try:
        predicted = table_globally_f_regular(pair.standard_weights(), pair.p)
    except NonStandardCoefficient:
        predicted = None
    return OracleResult("No" if predicted is False else "Undecided", None, e_max)


def dense_boundary_polynomial(pair: P1Pair, Q: int) -> list:
    """F(t) for exponent Q, expanded densely one linear factor at a time."""
    F = pair.field
    poly = [1]
    for pt in pair.points:
        if pt.location is INF:
            continue
        for _ in range(ceil((Q - 1) * pt.coefficient)):
            new = [0] * (len(poly) + 1)
            for k, c in enumerate(poly):
                new[k + 1] = F.add(new[k + 1], c)
                new[k] = F.sub(new[k], F.mul(pt.location, c))
            poly = new
    return poly


def verify_witness(pair: P1Pair, w: SplitWitness) -> bool:
    """Re-check a sharp splitting witness by dense expansion."""
    Q = pair.p ** w.e
    ms = [ceil((Q - 1) * pt.coefficient) for pt in pair.points]
    J = 2 * (Q - 1) - sum(ms)
    if not 0 <= w.j <= min(J, Q - 1):
        return False
    poly = dense_boundary_polynomial(pair, Q)
    k = Q - 1 - w.j
    return k < len(poly) and poly[k] == w.coefficient != 0
