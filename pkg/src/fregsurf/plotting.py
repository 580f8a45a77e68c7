"""Matplotlib figures for CLI reports (Agg backend, written to files)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .graph_core import DualGraph, natural_key  # noqa: E402


def _tree_layout(g: DualGraph) -> dict:
    """Radial layout from a vertex of largest valence; BFS order for cycles."""
    nb = g.adjacency()
    root = max(g.ids, key=lambda v: len(nb[v]))
    pos = {root: (0.0, 0.0)}
    arms = sorted(nb[root], key=natural_key)
    for k, start in enumerate(arms):
        ang = 2 * math.pi * k / max(len(arms), 1)
        prev, cur, r = root, start, 1.0
        while cur is not None and cur not in pos:
            pos[cur] = (r * math.cos(ang), r * math.sin(ang))
            nxt = [w for w in sorted(nb[cur], key=natural_key) if w != prev and w not in pos]
            prev, cur, r = cur, (nxt[0] if nxt else None), r + 1.0
    for k, v in enumerate(v for v in g.ids if v not in pos):
        pos[v] = (0.5 * k, -2.0)
    return pos


def plot_dual_graph(g: DualGraph, path: str, title: str = "") -> str:
    pos = _tree_layout(g)
    fig, ax = plt.subplots(figsize=(5, 4))
    for e in g.edges:
        (x0, y0), (x1, y1) = pos[e.u], pos[e.v]
        ax.plot([x0, x1], [y0, y1], color="0.3", lw=1 + e.mult, zorder=1)
        if e.mult > 1:
            ax.text((x0 + x1) / 2, (y0 + y1) / 2, str(e.mult), color="tab:red", ha="center", va="bottom")
    for v in g.vertices:
        x, y = pos[v.id]
        face = "white" if v.separable else "tab:orange"
        ax.scatter([x], [y], s=300 * v.degree, facecolor=face, edgecolor="black", zorder=2)
        ax.text(x, y + 0.25, f"{v.id}\n{v.self_int}" + (f" d{v.degree}" if v.degree > 1 else ""),
                ha="center", va="bottom", fontsize=8)
    ax.set_axis_off()
    ax.set_title(title or "dual graph")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


_OUTCOME_CODE = {"StronglyFRegular": 2, "Indeterminate": 1, "NotSFR": 0}


def plot_sfr_grid(rows, primes, path: str) -> str:
    """rows: [(label, [outcome per prime])]."""
    from matplotlib.colors import ListedColormap

    data = [[_OUTCOME_CODE[o] for o in outs] for _, outs in rows]
    fig, ax = plt.subplots(figsize=(1 + 0.6 * len(primes), 1 + 0.35 * len(rows)))
    ax.imshow(data, cmap=ListedColormap(["tab:red", "tab:gray", "tab:green"]), vmin=0, vmax=2, aspect="auto")
    ax.set_xticks(range(len(primes)), [str(p) for p in primes])
    ax.set_yticks(range(len(rows)), [lab for lab, _ in rows], fontsize=7)
    ax.set_xlabel("p")
    ax.set_title("strong F-regularity (green yes, red no, gray undecided)", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_cartier_dims(table, path: str, i: int | None = None) -> str:
    """table rows: (i, m, n, dim omega, dim Z, dim B, dim Z_n, dim B_n)."""
    fig, ax = plt.subplots(figsize=(6, 4))
    forms = sorted({r[0] for r in table}) if i is None else [i]
    ns = sorted({r[2] for r in table})
    for fi in forms:
        base = sorted({(r[1], r[3], r[4], r[5]) for r in table if r[0] == fi})
        ms = [b[0] for b in base]
        ax.plot(ms, [b[1] for b in base], "k-", lw=0.8 + 0.6 * fi, label=f"Omega^{fi}")
        for n in ns:
            sel = sorted((r[1], r[6], r[7]) for r in table if r[0] == fi and r[2] == n)
            ax.plot([s[0] for s in sel], [s[1] for s in sel], marker="o", ms=3, lw=0.8, label=f"Z_{n} (i={fi})")
            ax.plot([s[0] for s in sel], [s[2] for s in sel], marker="x", ms=3, lw=0.8, ls="--", label=f"B_{n} (i={fi})")
    ax.set_xlabel("degree m")
    ax.set_ylabel("dimension")
    ax.set_yscale("symlog")
    ax.legend(fontsize=6, ncol=2)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
