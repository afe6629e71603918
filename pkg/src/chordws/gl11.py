"""The gl(1|1) weight system, computed on the graph side.

The Conway graph invariant is ``(-y)^(n/2)`` on graphs whose adjacency
matrix over GF(2) is nondegenerate and 0 otherwise.  Its framed version is

    framed(G) = sum over U with G_U nondegenerate of c^(n-|U|) (-y)^(|U|/2)

and deframing ``F -> sum_U (-c)^(n-|U|) F(G_U)`` inverts the subset sum.
"""

from __future__ import annotations

from typing import Dict

from .chord import ChordDiagram, intersection_graph
from .errors import CapExceeded
from .graph import SimpleGraph, gf2_rank, induced_subgraph
from .poly import C, Y, ZERO, MultiPoly

GL11_CAP = 12


def _nondegenerate_masks(g: SimpleGraph) -> Dict[int, bool]:
    """Nondegeneracy of every induced subgraph, keyed by vertex bitmask."""
    out = {}
    adj = g.adj
    for mask in range(1 << g.n):
        k = bin(mask).count("1")
        if k % 2:
            out[mask] = False
            continue
        rows = [adj[v] & mask for v in range(g.n) if mask >> v & 1]
        out[mask] = gf2_rank(rows) == k
    return out


def conway_graph_invariant(g: SimpleGraph) -> MultiPoly:
    if g.n % 2:
        return ZERO
    if gf2_rank(list(g.adj)) != g.n:
        return ZERO
    return (-Y) ** (g.n // 2)


def framed_conway(g: SimpleGraph, cap: int = GL11_CAP) -> MultiPoly:
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, cap is {cap}")
    n = g.n
    counts: Dict[int, int] = {}
    for mask, ok in _nondegenerate_masks(g).items():
        if ok:
            k = bin(mask).count("1")
            counts[k] = counts.get(k, 0) + 1
    # (-y)^(k/2) c^(n-k) with multiplicity
    return MultiPoly({(n - k, k // 2): num * (-1) ** (k // 2) for k, num in counts.items()})


def deframe(g: SimpleGraph, invariant=framed_conway) -> MultiPoly:
    """``sum_U (-c)^(n-|U|) invariant(G_U)``; equals the Conway invariant for the framed one."""
    total = ZERO
    n = g.n
    cache: Dict[tuple, MultiPoly] = {}
    for mask in range(1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        sub = induced_subgraph(g, vs)
        key = (sub.n, sub.edges)
        if key not in cache:
            cache[key] = invariant(sub)
        total = total + cache[key] * (-C) ** (n - len(vs))
    return total


def gl11_on_diagram(d: ChordDiagram, cap: int = GL11_CAP) -> MultiPoly:
    """Pullback of the framed Conway invariant along the intersection graph."""
    if d.n > cap:
        raise CapExceeded(f"n={d.n} exceeds gl11 cap {cap}")
    return framed_conway(intersection_graph(d), cap=cap)


__all__ = ["conway_graph_invariant", "framed_conway", "deframe", "gl11_on_diagram", "GL11_CAP"]
