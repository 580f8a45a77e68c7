"""Line-based text format for dual graphs.

    v <id> <self_int> [degree] [sep|insep]
    e <id> <id> [mult]
    # comment

Tokens are whitespace separated and lines may come in any order.
"""

from __future__ import annotations

from .graph_core import DualGraph, Edge, Vertex, natural_key


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {tok!r}") from None


def parse_graph_file(text: str) -> DualGraph:
    vertices = {}
    edges = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "v":
            if not 3 <= len(tok) <= 5:
                raise ParseError(ln, "expected: v <id> <self_int> [degree] [sep|insep]")
            vid = tok[1]
            if vid in vertices:
                raise ParseError(ln, f"duplicate vertex id {vid!r}")
            self_int = _int(tok[2], ln, "self-intersection")
            degree = _int(tok[3], ln, "degree") if len(tok) > 3 else 1
            sep = tok[4] if len(tok) > 4 else "sep"
            if sep not in ("sep", "insep"):
                raise ParseError(ln, f"expected sep or insep, got {sep!r}")
            vertices[vid] = (Vertex(vid, self_int, degree, sep == "sep"), ln)
        elif tok[0] == "e":
            if not 3 <= len(tok) <= 4:
                raise ParseError(ln, "expected: e <id> <id> [mult]")
            mult = _int(tok[3], ln, "multiplicity") if len(tok) > 3 else 1
            edges.append((tok[1], tok[2], mult, ln))
        else:
            raise ParseError(ln, f"unknown record type {tok[0]!r}")
    if not vertices:
        raise ParseError(0, "no vertices")
    out_edges = []
    for u, v, mult, ln in edges:
        for w in (u, v):
            if w not in vertices:
                raise ParseError(ln, f"edge refers to unknown vertex {w!r}")
        out_edges.append(Edge(u, v, mult))
    return DualGraph(tuple(v for v, _ in vertices.values()), tuple(out_edges))


def serialize(g: DualGraph) -> str:
    lines = []
    for v in sorted(g.vertices, key=lambda x: natural_key(x.id)):
        lines.append(f"v {v.id} {v.self_int} {v.degree} {'sep' if v.separable else 'insep'}")
    for e in g.edges:
        lines.append(f"e {e.u} {e.v} {e.mult}")
    return "\n".join(lines) + "\n"
