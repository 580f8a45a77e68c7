"""Intersection inequalities bounding the central coefficient of a pulled-back
divisor on a star-shaped RDP resolution, and the characteristic bounds they give.

For D on the singular surface with pullback sum a_v E_v + D' (D' the strict
transform), 0 = pi^*D . E_v and D' . E_v >= 0 give sum_w a_w (E_w . E_v) <= 0
for every exceptional curve E_v.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph_core import DualGraph, center_branches, classify_shape, intersection_matrix, Star
from .p1_fsplit import P1Pair, P1Point, oracle_sharply_f_split, table_sharply_f_split
from .singularity_classify import is_rdp


class NotRdpStar(ValueError):
    pass


class EmptyFeasible(ValueError):
    pass


@dataclass(frozen=True)
class Inequality:
    """sum coeffs[name] * x_name <= 0; `row` names the vertex it comes from."""

    row: str
    coeffs: tuple  # ((name, int), ...)

    def value(self, point: dict) -> int:
        return sum(c * point[n] for n, c in self.coeffs)

    def holds(self, point: dict) -> bool:
        return self.value(point) <= 0

    def __str__(self):
        pos = " + ".join(n for n, c in self.coeffs if c > 0 for _ in range(c))
        neg = [(n, -c) for n, c in self.coeffs if c < 0]
        lhs = " + ".join(f"{c}{n}" if c != 1 else n for n, c in neg)
        return f"{lhs} >= {pos}"


@dataclass(frozen=True)
class InequalitySystem:
    names: tuple  # variable names, the central one first
    inequalities: tuple
    box: int = 8
    vertex_of: tuple = ()  # ((name, vertex id), ...)
    star_type: tuple = ()

    def with_box(self, box: int) -> "InequalitySystem":
        return InequalitySystem(self.names, self.inequalities, box, self.vertex_of, self.star_type)

    def restrict_rows(self, rows) -> "InequalitySystem":
        rows = set(rows)
        kept = tuple(q for q in self.inequalities if q.row in rows)
        return InequalitySystem(self.names, kept, self.box, self.vertex_of, self.star_type)

    def feasible(self, point: dict) -> bool:
        return all(1 <= point[n] <= self.box for n in self.names) and all(q.holds(point) for q in self.inequalities)


def _labels(g: DualGraph):
    """Name the center a and branch vertices d1.., l1.., r1.. outward, the
    branches ordered by determinant (smallest d, then l, then r)."""
    shape = classify_shape(g)
    branches = center_branches(g, shape.center)
    names = {shape.center: "a"}
    for tag, b in zip("dlr", branches):
        for k, v in enumerate(b.ids, start=1):
            names[v] = f"{tag}{k}"
    return shape, names


def derive_inequalities(g: DualGraph, box: int = 8) -> InequalitySystem:
    shape = classify_shape(g)
    if not isinstance(shape, Star) or not is_rdp(g):
        raise NotRdpStar("expected a star-shaped graph of (-2)-curves")
    shape, names = _labels(g)
    mat = intersection_matrix(g)
    ids = g.ids
    order = sorted(ids, key=lambda v: (names[v] != "a", names[v][0], int(names[v][1:] or 0)))
    ineqs = []
    for v in order:
        k = g.index(v)
        coeffs = tuple((names[w], mat[g.index(w)][k]) for w in order if mat[g.index(w)][k])
        ineqs.append(Inequality(names[v], coeffs))
    return InequalitySystem(
        tuple(names[v] for v in order), tuple(ineqs), box, tuple((names[v], v) for v in order), shape.type
    )


def hand_rows(star_type) -> tuple:
    """The rows used in the classical hand argument for each RDP star type."""
    t = tuple(sorted(star_type))
    if t[:2] == (2, 2):
        return ("a",)
    if t in ((2, 3, 3), (2, 3, 4)):
        return ("a", "l1", "r1")
    if t == (2, 3, 5):
        return ("a", "l1", "r1", "r2", "d1")
    raise NotRdpStar(f"no hand argument recorded for type {t}")


@dataclass(frozen=True)
class CentralCoefficientResult:
    min_a: int
    minimizers: tuple  # full tuples (ordered as system.names) with a = min_a
    profiles: dict  # a -> set of (a, d1, l1, r1) profiles, for a below min_a + 2
    box: int
    names: tuple

    def profile_statement(self, threshold: int) -> bool:
        """True iff every feasible point with a < threshold has a profile in
        profiles[min_a] (used to state results like 'a >= 5 or one profile')."""
        return all(a >= threshold or a == self.min_a for a in self.profiles)


def _search(system: InequalitySystem, a_value: int, want_all: bool, limit: int = 200000):
    names = system.names
    box = system.box
    ineqs = [(dict(q.coeffs), q) for q in system.inequalities]
    involved = [[idx for idx, (cf, _) in enumerate(ineqs) if n in cf] for n in names]
    assign = {names[0]: a_value}
    out = []

    def optimistic(idx):
        cf, _ = ineqs[idx]
        tot = 0
        for n, c in cf.items():
            if n in assign:
                tot += c * assign[n]
            else:
                tot += c * (1 if c > 0 else box)
        return tot <= 0

    def rec(k):
        if k == len(names):
            out.append(tuple(assign[n] for n in names))
            return not want_all or len(out) >= limit
        n = names[k]
        for val in range(1, box + 1):
            assign[n] = val
            if all(optimistic(idx) for idx in involved[k]):
                if rec(k + 1):
                    return True
        del assign[n]
        return False

    if not all(optimistic(idx) for idx in involved[0]):
        return out
    rec(1)
    return out


def minimal_central(system: InequalitySystem) -> CentralCoefficientResult:
    names = system.names
    pos = {n: k for k, n in enumerate(names)}
    prof_names = [n for n in ("a", "d1", "l1", "r1") if n in pos]
    profiles = {}
    min_a = None
    for a in range(1, system.box + 1):
        sols = _search(system, a, want_all=True)
        if sols:
            if min_a is None:
                min_a = a
                minimizers = tuple(sols)
            profiles[a] = {tuple(s[pos[n]] for n in prof_names) for s in sols}
        if min_a is not None and a >= min_a + 1:
            break
    if min_a is None:
        raise EmptyFeasible(f"no integer point in the box 1..{system.box}")
    for s in minimizers:
        assert system.feasible(dict(zip(names, s)))
    return CentralCoefficientResult(min_a, minimizers, profiles, system.box, names)


# -- characteristic bounds ------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeCheck:
    p: int
    route: str
    excluded: bool
    evidence: str


@dataclass(frozen=True)
class CharBoundReport:
    star_type: tuple
    min_a: int
    checks: tuple

    @property
    def smallest_allowed(self) -> int | None:
        allowed = [c.p for c in self.checks if not c.excluded]
        return min(allowed) if allowed else None

    @property
    def excluded(self) -> tuple:
        return tuple(c.p for c in self.checks if c.excluded)


def different_pair(p: int, different) -> P1Pair:
    """The different on the center as a pair on P^1, points at 0, 1, inf."""
    locs = [0, 1, None]
    return P1Pair(p, tuple(P1Point(x, Fraction(c)) for x, c in zip(locs, different)))


def char_bound(star_type, different, p_candidates, min_a: int, e_max: int = 3) -> CharBoundReport:
    """Exclude primes using a central coefficient a = min_a.

    If a/(p-1) > 1 the pair (Y, a/(p-1) C) is not lc, so p is excluded.  For
    type (2,3,5) with a/(p-1) = 1 the center C enters with coefficient one and
    adjunction asks (P^1, different) to be globally sharply F-split; both the
    table and the oracle are consulted.
    """
    t = tuple(sorted(star_type))
    checks = []
    for p in sorted(p_candidates):
        ratio = Fraction(min_a, p - 1)
        if ratio > 1:
            checks.append(PrimeCheck(p, "lc-threshold", True, f"a/(p-1) = {ratio} > 1"))
        elif t == (2, 3, 5) and ratio >= 1:
            pair = different_pair(p, different)
            table = table_sharply_f_split(pair).verdict
            oracle = oracle_sharply_f_split(pair, e_max).verdict
            refused = table == "No" and oracle == "No"
            checks.append(
                PrimeCheck(p, "adjunction", refused, f"a/(p-1) = {ratio}; table={table}, oracle={oracle}")
            )
        else:
            checks.append(PrimeCheck(p, "none", False, f"a/(p-1) = {ratio} < 1" if ratio < 1 else f"a/(p-1) = {ratio}"))
    return CharBoundReport(t, min_a, tuple(checks))
