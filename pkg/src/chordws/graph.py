"""Simple graphs: canonical labeling, GF(2) rank, 4-term and 2-term operations.

Vertices are ``0..n-1``.  Adjacency is kept as int bitmasks.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from .errors import CapExceeded, NotAdjacent, ParseError

Edge = Tuple[int, int]

CANON_CAP = 10
CIRCLE_CAP = 7


def _norm_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        clean = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge {(i, j)} out of range for n={self.n}")
            clean.add(_norm_edge(i, j))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        return cls(n, frozenset((int(i), int(j)) for i, j in edges))

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> "SimpleGraph":
        n = len(adj)
        return cls(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n) if adj[i] >> j & 1))

    @cached_property
    def adj(self) -> Tuple[int, ...]:
        rows = [0] * self.n
        for i, j in self.edges:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return tuple(rows)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbors(self, v: int) -> List[int]:
        a = self.adj[v]
        return [w for w in range(self.n) if a >> w & 1]

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for v in range(self.n):
                if frontier >> v & 1:
                    nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def components(self) -> List[List[int]]:
        left = set(range(self.n))
        out = []
        while left:
            start = min(left)
            comp, stack = {start}, [start]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            out.append(sorted(comp))
        return out

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return SimpleGraph(self.n, frozenset(_norm_edge(perm[i], perm[j]) for i, j in self.edges))

    def to_text(self) -> str:
        return f"{self.n}; " + ",".join(f"{i}-{j}" for i, j in sorted(self.edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data) -> "SimpleGraph":
        return cls.from_edges(data["n"], data["edges"])

    def __str__(self):
        return self.to_text()


_GRAPH_RE = re.compile(r"^\s*(\d+)\s*;?\s*(.*)$")


def parse_graph(text: str) -> SimpleGraph:
    """Parse ``"n; i-j,i-j,..."``."""
    m = _GRAPH_RE.match(text)
    if not m:
        raise ParseError(f"bad graph text {text!r}")
    n = int(m.group(1))
    edges = []
    body = m.group(2).strip()
    if body:
        for tok in body.split(","):
            tok = tok.strip()
            parts = tok.split("-")
            if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                raise ParseError(f"bad edge {tok!r}")
            edges.append((int(parts[0]), int(parts[1])))
    try:
        return SimpleGraph.from_edges(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n)


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset(itertools.combinations(range(n), 2)))


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset(_norm_edge(i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> SimpleGraph:
    """Star with center 0 and ``leaves`` leaves."""
    return SimpleGraph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


# ---------------------------------------------------------------- canonical labeling


def _refine(adj: Sequence[int], cells: List[List[int]]) -> List[List[int]]:
    """Equitable refinement of an ordered partition (1-dimensional WL)."""
    while True:
        cell_masks = [sum(1 << v for v in cell) for cell in cells]
        new_cells: List[List[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict = {}
            for v in cell:
                sig = tuple(bin(adj[v] & m).count("1") for m in cell_masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
            else:
                new_cells.append(cell)
        cells = new_cells
        if not changed:
            return cells


def _encode(adj: Sequence[int], order: Sequence[int]) -> Tuple[int, ...]:
    out = []
    for v in order:
        row = 0
        a = adj[v]
        for w in order:
            row <<= 1
            if a >> w & 1:
                row |= 1
        out.append(row)
    return tuple(out)


def canonical_order(g: SimpleGraph, cap: int = CANON_CAP) -> List[int]:
    """Vertex order whose adjacency encoding is the canonical one.

    Individualization-refinement search; vertices with identical
    neighbourhoods (twins) are interchangeable, so only one per twin class is
    branched on.
    """
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, cap is {cap}")
    adj = g.adj
    n = g.n
    if n == 0:
        return []
    deg_groups: dict = {}
    for v in range(n):
        deg_groups.setdefault(bin(adj[v]).count("1"), []).append(v)
    start = [deg_groups[d] for d in sorted(deg_groups)]
    best: List = [None, None]

    def twins(v: int, r: int) -> bool:
        drop = ~((1 << v) | (1 << r))
        return adj[v] & drop == adj[r] & drop

    def search(cells: List[List[int]]):
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _encode(adj, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[target]
        reps: List[int] = []
        for v in cell:
            if any(twins(v, r) for r in reps):
                continue
            reps.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search(start)
    return best[1]


def canonical_label(g: SimpleGraph, cap: int = CANON_CAP) -> SimpleGraph:
    """Canonical representative of the isomorphism class of ``g``."""
    order = canonical_order(g, cap)
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm)


def is_isomorphic(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    return canonical_label(g1) == canonical_label(g2)


def graph_key(g: SimpleGraph) -> Tuple[int, FrozenSet[Edge]]:
    """Hashable isomorphism-class key."""
    c = canonical_label(g)
    return (c.n, c.edges)


# ---------------------------------------------------------------- GF(2)


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of a matrix given as int bitmask rows."""
    work = list(rows)
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
    return rank


def adjacency_nondegenerate_gf2(g: SimpleGraph) -> bool:
    """Full rank of the adjacency matrix over GF(2); never true for odd ``n``."""
    if g.n % 2:
        return False
    return gf2_rank(g.adj) == g.n


# ---------------------------------------------------------------- graph operations


def disjoint_union(g1: SimpleGraph, g2: SimpleGraph) -> SimpleGraph:
    shift = g1.n
    return SimpleGraph(g1.n + g2.n, g1.edges | frozenset((i + shift, j + shift) for i, j in g2.edges))


def induced_subgraph(g: SimpleGraph, vertices: Iterable[int]) -> SimpleGraph:
    """Subgraph induced on ``vertices``; they are renumbered in sorted order."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    index = {v: i for i, v in enumerate(vs)}
    return SimpleGraph(len(vs), frozenset((index[i], index[j]) for i, j in g.edges if i in index and j in index))


def induced_subgraph_mask(g: SimpleGraph, mask: int) -> Tuple[int, ...]:
    """Adjacency rows of the subgraph induced by a vertex bitmask (same bit positions)."""
    return tuple(g.adj[v] & mask for v in range(g.n) if mask >> v & 1)


def delete_edge(g: SimpleGraph, a: int, b: int) -> SimpleGraph:
    return SimpleGraph(g.n, g.edges - {_norm_edge(a, b)})


def _check_adjacent(g: SimpleGraph, a: int, b: int) -> None:
    if a == b or not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
        raise NotAdjacent(f"vertices {a} and {b} are not adjacent")


def switch(g: SimpleGraph, a: int, b: int) -> SimpleGraph:
    """Toggle adjacency to ``a`` of every neighbour of ``b`` other than ``a``."""
    edges = set(g.edges)
    for w in g.neighbors(b):
        if w == a:
            continue
        e = _norm_edge(a, w)
        if e in edges:
            edges.remove(e)
        else:
            edges.add(e)
    return SimpleGraph(g.n, frozenset(edges))


@dataclass(frozen=True)
class FourTermElement:
    """The signed combination ``G - G'_AB - G~_AB + G~'_AB``."""

    g: SimpleGraph
    deleted: SimpleGraph
    switched: SimpleGraph
    switched_deleted: SimpleGraph

    SIGNS = (1, -1, -1, 1)

    @property
    def terms(self) -> Tuple[Tuple[int, SimpleGraph], ...]:
        return tuple(zip(self.SIGNS, (self.g, self.deleted, self.switched, self.switched_deleted)))

    def evaluate(self, invariant):
        total = None
        for sign, graph in self.terms:
            v = invariant(graph)
            v = v if sign > 0 else -v
            total = v if total is None else total + v
        return total


def four_term_element(g: SimpleGraph, a: int, b: int) -> FourTermElement:
    _check_adjacent(g, a, b)
    switched = switch(g, a, b)
    return FourTermElement(g, delete_edge(g, a, b), switched, delete_edge(switched, a, b))


def two_term_partner(g: SimpleGraph, a: int, b: int) -> SimpleGraph:
    _check_adjacent(g, a, b)
    return switch(g, a, b)


def whitney_twist_graph(g: SimpleGraph, c1: int, c2: int, side: Iterable[int]) -> SimpleGraph:
    """Swap the adjacencies of ``c1`` and ``c2`` towards the vertex set ``side``.

    ``side`` must be a union of connected components of ``g - {c1, c2}``.
    """
    side = set(side)
    edges = set()
    swap = {c1: c2, c2: c1}
    for i, j in g.edges:
        if i in swap and j in side:
            edges.add(_norm_edge(swap[i], j))
        elif j in swap and i in side:
            edges.add(_norm_edge(i, swap[j]))
        else:
            edges.add((i, j))
    return SimpleGraph(g.n, frozenset(edges))


def glue_vertices(g1: SimpleGraph, x: int, g2: SimpleGraph, z: int) -> SimpleGraph:
    """1-product: identify ``x`` in ``g1`` with ``z`` in ``g2``.

    Vertices of ``g1`` keep their numbers; the rest of ``g2`` follows in order.
    """
    index = {}
    nxt = g1.n
    for v in range(g2.n):
        if v == z:
            index[v] = x
        else:
            index[v] = nxt
            nxt += 1
    edges = set(g1.edges) | {_norm_edge(index[i], index[j]) for i, j in g2.edges}
    return SimpleGraph(g1.n + g2.n - 1, frozenset(edges))


# ---------------------------------------------------------------- graph enumeration


def all_graphs(n: int) -> List[SimpleGraph]:
    """One canonical representative per isomorphism class of ``n``-vertex graphs.

    Built by vertex augmentation: every ``n``-vertex graph arises from an
    ``(n-1)``-vertex graph by adding a vertex with some neighbourhood.
    """
    if n == 0:
        return [SimpleGraph(0)]
    seen = set()
    out = []
    for base in all_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            edges = set(base.edges) | {(v, n - 1) for v in range(n - 1) if mask >> v & 1}
            g = canonical_label(SimpleGraph(n, frozenset(edges)), cap=max(CANON_CAP, n))
            key = g.edges
            if key not in seen:
                seen.add(key)
                out.append(g)
    out.sort(key=lambda g: (len(g.edges), sorted(g.edges)))
    return out


def connected_graphs(n: int) -> List[SimpleGraph]:
    return [g for g in all_graphs(n) if g.is_connected()]


# ---------------------------------------------------------------- circle graph recognition


def realizing_words(g: SimpleGraph, first_only: bool = False) -> List[Tuple[int, ...]]:
    """All double occurrence words over the vertex labels whose labeled
    intersection graph is exactly ``g``.

    Words start with vertex 0 (rotation fixed); reflections are not removed.
    Backtracking places endpoints left to right and checks every crossing of
    a chord at the moment it closes.
    """
    n = g.n
    if n == 0:
        return [()]
    adj = g.adj
    word: List[int] = [0]
    opened = {0: 0}  # label -> position of first endpoint
    closed: dict = {}
    results: List[Tuple[int, ...]] = []
    total = 2 * n

    def crossing_ok(x: int, close_pos: int) -> bool:
        start = opened[x]
        crosses = 0
        for y, p in opened.items():
            if y == x:
                continue
            q = closed.get(y)
            if q is None:
                # y still open: crosses iff it opened inside x's span
                if p > start:
                    crosses |= 1 << y
            else:
                if (p < start < q) or (start < p < close_pos and q > close_pos):
                    crosses |= 1 << y
        # labels not yet opened cannot cross x
        return crosses == adj[x]

    def rec(pos: int):
        if pos == total:
            results.append(tuple(word))
            return first_only
        # close an open chord
        for x in list(opened):
            if x in closed:
                continue
            if not crossing_ok(x, pos):
                continue
            closed[x] = pos
            word.append(x)
            stop = rec(pos + 1)
            word.pop()
            del closed[x]
            if stop:
                return True
        # open a new chord
        if len(opened) < n:
            for y in range(1, n):
                if y in opened:
                    continue
                opened[y] = pos
                word.append(y)
                stop = rec(pos + 1)
                word.pop()
                del opened[y]
                if stop:
                    return True
        return False

    rec(1)
    return results


def is_circle_graph(g: SimpleGraph, cap: int = CIRCLE_CAP):
    """A chord diagram realizing ``g``, or ``None`` if ``g`` is not a circle graph."""
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, cap is {cap}")
    from .chord import ChordDiagram

    words = realizing_words(g, first_only=True)
    if not words:
        return None
    return ChordDiagram(words[0])
