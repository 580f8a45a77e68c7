"""Generators for standard dual graphs and a seeded test corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .graph_core import DualGraph, Edge, Vertex, is_negative_definite, intersection_matrix


def continued_fraction(m: int, q: int) -> list:
    """Hirzebruch-Jung expansion m/q = b1 - 1/(b2 - ...), all b >= 2."""
    out = []
    x = Fraction(m, q)
    while True:
        b = -((-x.numerator) // x.denominator)  # ceiling
        out.append(b)
        if b == x:
            return out
        x = 1 / (b - x)


def chain(self_ints, prefix="E") -> DualGraph:
    vs = [Vertex(f"{prefix}{k + 1}", s) for k, s in enumerate(self_ints)]
    es = [Edge(vs[k].id, vs[k + 1].id, 1) for k in range(len(vs) - 1)]
    return DualGraph(tuple(vs), tuple(es))


def star(center: int, branches) -> DualGraph:
    """branches: lists of self-intersections, each listed outward from the center."""
    vs = [Vertex("C", center)]
    es = []
    for tag, br in zip("xyz", branches):
        prev = "C"
        for k, s in enumerate(br, start=1):
            v = f"{tag}{k}"
            vs.append(Vertex(v, s))
            es.append(Edge(prev, v, 1))
            prev = v
    return DualGraph(tuple(vs), tuple(es))


def rdp_star(star_type) -> DualGraph:
    """Star of (-2)-curves whose branches have determinants star_type."""
    return star(-2, [[-2] * (d - 1) for d in star_type])


def A(n: int) -> DualGraph:
    return chain([-2] * n)


def E8() -> DualGraph:
    return rdp_star((2, 3, 5))


def twisted_chain(self_ints, seps=None) -> DualGraph:
    """First vertex has degree 1, the rest degree 2, joined by double edges."""
    seps = seps or [True] * len(self_ints)
    vs = [Vertex(f"T{k + 1}", s, 1 if k == 0 else 2, seps[k]) for k, s in enumerate(self_ints)]
    es = [Edge(vs[k].id, vs[k + 1].id, 2) for k in range(len(vs) - 1)]
    return DualGraph(tuple(vs), tuple(es))


def twisted_star(folded, center, unfolded, folded_sep=True) -> DualGraph:
    """Folded chain (degree 2, listed outward from the center), a degree-1
    center, and an unfolded chain of degree-1 curves."""
    vs = [Vertex("C", center)]
    es = []
    prev = "C"
    for k, s in enumerate(folded, start=1):
        vs.append(Vertex(f"F{k}", s, 2, folded_sep))
        es.append(Edge(prev, f"F{k}", 2))
        prev = f"F{k}"
    prev = "C"
    for k, s in enumerate(unfolded, start=1):
        vs.append(Vertex(f"U{k}", s))
        es.append(Edge(prev, f"U{k}", 1))
        prev = f"U{k}"
    return DualGraph(tuple(vs), tuple(es))


def triple_folding(center=-2, folded=-6, sep=True) -> DualGraph:
    return DualGraph((Vertex("C", center), Vertex("F", folded, 3, sep)), (Edge("C", "F", 3),))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: DualGraph
    family: str  # chain, twisted-chain, star, twisted-star, triple
    star_type: tuple = ()


def _branches_with_det(d: int) -> list:
    from math import gcd

    return [continued_fraction(d, q) for q in range(1, d) if gcd(d, q) == 1] if d > 1 else []


def sfr_corpus(seed: int = 0, per_family: int = 3) -> list:
    """Chains n <= 6, stars (2,2,d<=5), (2,3,3), (2,3,4), (2,3,5), twisted
    chains n <= 4 and twisted stars, with seeded random self-intersections.
    Only negative-definite graphs with every discrepancy > -1 are kept."""
    from .singularity_classify import is_klt

    rng = random.Random(seed)
    out = []

    def keep(name, g, family, t=()):
        if is_negative_definite(intersection_matrix(g)) and is_klt(g):
            out.append(CorpusEntry(name, g, family, t))

    for n in range(1, 7):
        keep(f"A{n}", A(n), "chain")
        for k in range(per_family):
            keep(f"chain{n}-{k}", chain([-rng.randint(2, 5) for _ in range(n)]), "chain")
    for t in [(2, 2, d) for d in range(2, 6)] + [(2, 3, 3), (2, 3, 4), (2, 3, 5)]:
        keep(f"rdp{t}", rdp_star(t), "star", t)
        opts = [_branches_with_det(d) for d in t]
        for k in range(per_family):
            br = [[-b for b in rng.choice(o)] for o in opts]
            keep(f"star{t}-{k}", star(-rng.randint(2, 4), br), "star", t)
    for n in range(2, 5):
        keep(f"tchainrdp{n}", twisted_chain([-2] + [-4] * (n - 1)), "twisted-chain")
        for k in range(per_family):
            si = [-rng.randint(1, 4)] + [-2 * rng.randint(2, 4) for _ in range(n - 1)]
            keep(f"tchain{n}-{k}", twisted_chain(si), "twisted-chain")
    # twisted stars: folded branch det f, unfolded det u; type sorted (f, f, u)
    for f, u in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)]:
        t = tuple(sorted((f, f, u)))
        keep(f"tstarrdp{t}", twisted_star([-4] * (f - 1), -2, [-2] * (u - 1)), "twisted-star", t)
        for k in range(per_family):
            fb = [-2 * b for b in rng.choice(_branches_with_det(f))]
            ub = [-b for b in rng.choice(_branches_with_det(u))]
            keep(f"tstar{t}-{k}", twisted_star(fb, -rng.randint(2, 3), ub), "twisted-star", t)
    keep("triple", triple_folding(), "triple", (2, 2, 2))
    return out
