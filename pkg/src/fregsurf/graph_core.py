"""Resolution dual graphs and their intersection theory.

A DualGraph records, for each exceptional curve E_i, the self-intersection
E_i^2, the degree d_i = dim H^0(E_i, O) over the residue field, and
whether that extension is separable; edges carry the intersection number
E_i . E_j.  Every exceptional curve is assumed to have genus zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .linalg import SingularMatrix, bareiss_det, frac_solve


class InvariantViolation(ValueError):
    pass


class NotNegativeDefinite(ValueError):
    pass


class BranchNotChain(ValueError):
    pass


def natural_key(s: str):
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", s))


@dataclass(frozen=True)
class Vertex:
    id: str
    self_int: int
    degree: int = 1
    separable: bool = True
    genus_zero: bool = True


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    mult: int = 1

    def key(self):
        return tuple(sorted((self.u, self.v), key=natural_key))


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple
    edges: tuple = ()
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        verts = tuple(sorted(self.vertices, key=lambda v: natural_key(v.id)))
        ids = [v.id for v in verts]
        if not verts:
            raise InvariantViolation("graph has no vertices")
        if len(set(ids)) != len(ids):
            raise InvariantViolation("duplicate vertex id")
        for v in verts:
            if v.self_int >= 0:
                raise InvariantViolation(f"self_int of {v.id} must be negative")
            if v.degree < 1:
                raise InvariantViolation(f"degree of {v.id} must be >= 1")
        seen = set()
        edges = []
        idset = set(ids)
        for e in self.edges:
            if e.u == e.v:
                raise InvariantViolation(f"loop at {e.u}")
            if e.u not in idset or e.v not in idset:
                raise InvariantViolation(f"edge {e.u}-{e.v} references a missing vertex")
            if e.mult < 1:
                raise InvariantViolation(f"edge {e.u}-{e.v} has multiplicity < 1")
            k = e.key()
            if k in seen:
                raise InvariantViolation(f"more than one edge between {k[0]} and {k[1]}")
            seen.add(k)
            edges.append(Edge(k[0], k[1], e.mult))
        edges.sort(key=lambda e: (natural_key(e.u), natural_key(e.v)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "_index", {i: k for k, i in enumerate(ids)})
        if not self._connected():
            raise InvariantViolation("graph is not connected")

    @classmethod
    def build(cls, vertices, edges=()):
        """Convenience constructor from tuples.

        vertices: (id, self_int[, degree[, separable]]); edges: (u, v[, mult]).
        """
        vs = [Vertex(str(t[0]), *t[1:]) for t in vertices]
        es = [Edge(str(t[0]), str(t[1]), *t[2:]) for t in edges]
        return cls(tuple(vs), tuple(es))

    def _connected(self) -> bool:
        nb = self.adjacency()
        start = self.vertices[0].id
        seen = {start}
        todo = [start]
        while todo:
            for w in nb[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    @property
    def ids(self):
        return [v.id for v in self.vertices]

    def __len__(self):
        return len(self.vertices)

    def index(self, vid: str) -> int:
        return self._index[vid]

    def vertex(self, vid: str) -> Vertex:
        return self.vertices[self._index[vid]]

    def adjacency(self) -> dict:
        nb = {v.id: {} for v in self.vertices}
        for e in self.edges:
            nb[e.u][e.v] = e.mult
            nb[e.v][e.u] = e.mult
        return nb

    def neighbors(self, vid: str) -> dict:
        return self.adjacency()[vid]

    def valence(self, vid: str) -> int:
        return len(self.neighbors(vid))

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1

    def components_without(self, vid: str) -> list:
        """Vertex-id lists of the connected components of g minus vid."""
        nb = self.adjacency()
        rest = [i for i in self.ids if i != vid]
        seen, out = set(), []
        for s in rest:
            if s in seen:
                continue
            comp, todo = [], [s]
            seen.add(s)
            while todo:
                x = todo.pop()
                comp.append(x)
                for w in nb[x]:
                    if w != vid and w not in seen:
                        seen.add(w)
                        todo.append(w)
            out.append(sorted(comp, key=natural_key))
        return out

    def induced(self, ids) -> "DualGraph":
        keep = set(ids)
        return DualGraph(
            tuple(v for v in self.vertices if v.id in keep),
            tuple(e for e in self.edges if e.u in keep and e.v in keep),
        )

    def relabel(self, mapping: dict) -> "DualGraph":
        return DualGraph(
            tuple(Vertex(mapping[v.id], v.self_int, v.degree, v.separable, v.genus_zero) for v in self.vertices),
            tuple(Edge(mapping[e.u], mapping[e.v], e.mult) for e in self.edges),
        )


# -- intersection theory ------------------------------------------------------


def intersection_matrix(g: DualGraph) -> list:
    n = len(g)
    m = [[0] * n for _ in range(n)]
    for k, v in enumerate(g.vertices):
        m[k][k] = v.self_int
    for e in g.edges:
        a, b = g.index(e.u), g.index(e.v)
        m[a][b] = m[b][a] = e.mult
    return m


def leading_minors(m) -> list:
    return [bareiss_det([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def is_negative_definite(m) -> bool:
    """Sylvester's criterion: the order-k leading minor has sign (-1)^k."""
    for k, d in enumerate(leading_minors(m), start=1):
        if d == 0 or (d > 0) != (k % 2 == 0):
            return False
    return True


def lattice_determinant(m) -> int:
    if not is_negative_definite(m):
        raise NotNegativeDefinite("intersection matrix is not negative definite")
    return abs(bareiss_det(m))


def canonical_degrees(g: DualGraph) -> list:
    """K_Y . E_i = -E_i^2 - 2 d_i for genus-zero curves with H^1 = 0."""
    for v in g.vertices:
        if not v.genus_zero:
            raise InvariantViolation(f"vertex {v.id} is not of genus zero")
    return [-v.self_int - 2 * v.degree for v in g.vertices]


def discrepancies(g: DualGraph) -> list:
    """Solve Gamma a = (K . E_j) exactly; a_i is the discrepancy of E_i."""
    return frac_solve(intersection_matrix(g), canonical_degrees(g))


def pair_degree(g: DualGraph, B, i) -> Fraction:
    """(K_Y + sum_j B_j E_j) . E_i, with i a vertex id or index."""
    k = g.index(i) if isinstance(i, str) else i
    m = intersection_matrix(g)
    val = Fraction(canonical_degrees(g)[k])
    for j, b in enumerate(B):
        val += Fraction(b) * m[j][k]
    return val


# -- shapes ---------------------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    n: int
    order: tuple = ()
    kind = "Chain"

    def label(self):
        return f"Chain({self.n})"


@dataclass(frozen=True)
class Star:
    type: tuple
    branch_lengths: tuple
    center: str = ""
    kind = "Star"

    def label(self):
        return "Star" + str(self.type).replace(" ", "")


@dataclass(frozen=True)
class TwistedChain:
    n: int
    order: tuple = ()
    kind = "TwistedChain"

    def label(self):
        return f"TwistedChain({self.n})"


@dataclass(frozen=True)
class TwistedStar:
    type: tuple
    fold: int = 2
    center: str = ""
    kind = "TwistedStar"

    def label(self):
        return "TwistedStar" + str(self.type).replace(" ", "") + ("[triple]" if self.fold == 3 else "")


@dataclass(frozen=True)
class Other:
    reason: str = ""
    kind = "Other"

    def label(self):
        return "Other"


def _path_order(g: DualGraph):
    """Vertex ids along the path if g is a path graph, else None."""
    if not g.is_tree():
        return None
    nb = g.adjacency()
    if any(len(x) > 2 for x in nb.values()):
        return None
    if len(g) == 1:
        return [g.ids[0]]
    ends = sorted((v for v in nb if len(nb[v]) == 1), key=natural_key)
    order, prev = [ends[0]], None
    while len(order) < len(g):
        cur = order[-1]
        nxt = [w for w in nb[cur] if w != prev]
        prev = cur
        order.append(nxt[0])
    return order


def chain_determinant(g: DualGraph, ids, scale: int = 1) -> int:
    """Lattice determinant of the sub-chain on ids, matrix divided by scale."""
    sub = intersection_matrix(g.induced(ids))
    if any(x % scale for row in sub for x in row):
        raise BranchNotChain("branch entries are not divisible by the fold degree")
    return lattice_determinant([[x // scale for x in row] for row in sub])


def _twisted_shape(g: DualGraph, order):
    n = len(order)
    if n == 2:
        d = [g.vertex(v).degree for v in order]
        mult = g.neighbors(order[0])[order[1]]
        if sorted(d) == [1, 3] and mult == 3:
            c = order[d.index(1)]
            f = order[d.index(3)]
            try:
                det = chain_determinant(g, [f], 3)
            except (BranchNotChain, NotNegativeDefinite):
                return None
            return TwistedStar((det, det, det), 3, c)
    for seq in (order, order[::-1]):
        degs = [g.vertex(v).degree for v in seq]
        mults = [g.neighbors(a)[b] for a, b in zip(seq, seq[1:])]
        if n >= 2 and degs[0] == 1 and all(d == 2 for d in degs[1:]) and all(m == 2 for m in mults):
            return TwistedChain(n, tuple(seq))
    for seq in (order, order[::-1]):
        degs = [g.vertex(v).degree for v in seq]
        mults = [g.neighbors(a)[b] for a, b in zip(seq, seq[1:])]
        k = 0
        while k < n and degs[k] == 2:
            k += 1
        # seq = folded (degree 2) ... , center, unfolded (degree 1) ...
        if k == 0 or k + 1 >= n:
            continue
        if any(d != 1 for d in degs[k:]):
            continue
        if any(m != 2 for m in mults[:k]) or any(m != 1 for m in mults[k:]):
            continue
        try:
            df = chain_determinant(g, seq[:k], 2)
            du = chain_determinant(g, seq[k + 1 :], 1)
        except (BranchNotChain, NotNegativeDefinite):
            return None
        return TwistedStar(tuple(sorted((df, df, du))), 2, seq[k])
    return None


def classify_shape(g: DualGraph):
    order = _path_order(g)
    mults = [e.mult for e in g.edges]
    if order is not None and all(m == 1 for m in mults):
        return Chain(len(g), tuple(order))
    if order is not None:
        tw = _twisted_shape(g, order)
        return tw if tw is not None else Other("unrecognised decorated path")
    if not g.is_tree():
        return Other("graph has a cycle")
    nb = g.adjacency()
    high = [v for v in g.ids if len(nb[v]) >= 3]
    if len(high) != 1 or len(nb[high[0]]) != 3:
        return Other("branching pattern is not a star")
    if any(m != 1 for m in mults):
        return Other("star with multiple edges")
    center = high[0]
    try:
        branches = center_branches(g, center)
    except (BranchNotChain, NotNegativeDefinite) as exc:
        return Other(str(exc))
    pairs = sorted((b.determinant, len(b.ids)) for b in branches)
    return Star(tuple(d for d, _ in pairs), tuple(n for _, n in pairs), center)


@dataclass(frozen=True)
class Branch:
    ids: tuple  # ordered from the vertex adjacent to the center outward
    determinant: int
    point_degree: int  # degree of the point where the branch meets the center

    @property
    def coefficient(self) -> Fraction:
        return Fraction(self.determinant - 1, self.determinant)


def center_branches(g: DualGraph, center: str) -> list:
    """Branches at `center`, each a chain attached at one of its ends.

    A branch whose vertices all have degree d, joined to each other and to
    the center by d-fold edges, is a folded chain; its determinant is that
    of the matrix divided by d and its attaching point has degree d.
    """
    nb = g.adjacency()
    out = []
    for comp in g.components_without(center):
        sub = g.induced(comp)
        order = _path_order(sub)
        if order is None:
            raise BranchNotChain(f"component {comp} is not a chain")
        touch = [v for v in comp if center in nb[v]]
        if len(touch) != 1 or touch[0] not in (order[0], order[-1]):
            raise BranchNotChain(f"component {comp} is not attached at an end")
        if order[0] != touch[0]:
            order = order[::-1]
        attach = nb[center][touch[0]]
        degs = {g.vertex(v).degree for v in comp}
        inner = {sub.neighbors(a)[b] for a, b in zip(order, order[1:])}
        if not inner <= {attach} or (attach > 1 and degs != {attach}):
            raise BranchNotChain(f"component {comp} is not a uniformly folded chain")
        det = chain_determinant(g, order, attach)
        out.append(Branch(tuple(order), det, attach))
    out.sort(key=lambda b: (b.determinant, len(b.ids), [natural_key(i) for i in b.ids]))
    return out


def different_on_center(g: DualGraph, center: str) -> list:
    """Coefficients (m_b - 1)/m_b of the different, one per branch."""
    return [b.coefficient for b in center_branches(g, center)]


def branch_index_bound(branches) -> int:
    return lcm(*(b.determinant for b in branches)) if branches else 1


__all__ = [
    "Vertex", "Edge", "DualGraph", "InvariantViolation", "NotNegativeDefinite", "BranchNotChain",
    "SingularMatrix", "intersection_matrix", "is_negative_definite", "lattice_determinant",
    "canonical_degrees", "discrepancies", "pair_degree", "classify_shape", "different_on_center",
    "center_branches", "Chain", "Star", "TwistedChain", "TwistedStar", "Other", "Branch",
]
