"""Splits, the canonical split decomposition, and realizations of circle graphs.

Components of a decomposition are small graphs whose vertices carry labels:
``("v", i)`` for a vertex of the input graph and ``("m", k)`` for a marker.
Markers come in pairs ``2s, 2s + 1`` and each pair is one dashed edge.
"""

from __future__ import annotations

import random
from collections import deque
from functools import cached_property, lru_cache
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from .chord import ENUM_CAP, ChordDiagram, canonical_word
from .errors import BadMarker, CapExceeded, Disconnected, NoMarkedChord, NotRealizable, Unclassifiable
from .graph import SimpleGraph, realizing_words

DECOMP_CAP = 12

Label = Tuple[str, int]


def _partner(marker: int) -> int:
    return marker ^ 1


# ---------------------------------------------------------------- splits


@dataclass(frozen=True)
class Split:
    parts: Tuple[FrozenSet[int], FrozenSet[int]]
    attachments: Tuple[FrozenSet[int], FrozenSet[int]]


def _mask_to_set(mask: int) -> FrozenSet[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _split_at(adj: Sequence[int], v1: int, full: int) -> Optional[Tuple[int, int]]:
    """``(W1, W2)`` if ``(v1, full - v1)`` is a split, else ``None``.

    Every vertex of ``V1`` with a neighbour across must see the same set ``W2``.
    """
    v2 = full & ~v1
    w1 = 0
    w2 = None
    m = v1
    while m:
        low = m & -m
        out = adj[low.bit_length() - 1] & v2
        if out:
            if w2 is None:
                w2 = out
            elif out != w2:
                return None
            w1 |= low
        m ^= low
    return w1, w2 or 0


@lru_cache(maxsize=4096)
def _scan_masks_cached(n: int, order: Tuple[int, ...]) -> Tuple[int, ...]:
    out = []
    for r in range(1, 1 << n, 2):
        k = bin(r).count("1")
        if k < 2 or n - k < 2:
            continue
        mask = 0
        for i in range(n):
            if r >> i & 1:
                mask |= 1 << order[i]
        out.append(mask)
    return tuple(out)


def _scan_masks(n: int, order: Sequence[int]) -> Tuple[int, ...]:
    """Vertex subsets containing ``order[0]`` with both sides of size >= 2."""
    return _scan_masks_cached(n, tuple(order))


def find_splits(g: SimpleGraph, cap: int = DECOMP_CAP) -> List[Split]:
    """Every split of ``g``, each unordered bipartition once (part containing 0 first)."""
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, cap is {cap}")
    full = (1 << g.n) - 1
    out = []
    for mask in _scan_masks(g.n, list(range(g.n))):
        hit = _split_at(g.adj, mask, full)
        if hit is not None:
            w1, w2 = hit
            out.append(Split((_mask_to_set(mask), _mask_to_set(full & ~mask)), (_mask_to_set(w1), _mask_to_set(w2))))
    return out


def has_split(g: SimpleGraph) -> bool:
    full = (1 << g.n) - 1
    return any(_split_at(g.adj, m, full) is not None for m in _scan_masks(g.n, list(range(g.n))))


# ---------------------------------------------------------------- composition


def compose(g1: SimpleGraph, v1: int, g2: SimpleGraph, v2: int) -> SimpleGraph:
    """Join ``g1`` and ``g2`` along the markers ``v1`` and ``v2``.

    The markers disappear; every neighbour of ``v1`` becomes adjacent to
    every neighbour of ``v2``.  Vertices of ``g1`` come first, in order.
    """
    if not 0 <= v1 < g1.n:
        raise BadMarker(f"marker {v1} not in first graph")
    if not 0 <= v2 < g2.n:
        raise BadMarker(f"marker {v2} not in second graph")
    idx1 = {v: i for i, v in enumerate(v for v in range(g1.n) if v != v1)}
    off = g1.n - 1
    idx2 = {v: off + i for i, v in enumerate(v for v in range(g2.n) if v != v2)}
    edges = {(idx1[i], idx1[j]) for i, j in g1.edges if v1 not in (i, j)}
    edges |= {(idx2[i], idx2[j]) for i, j in g2.edges if v2 not in (i, j)}
    edges |= {(idx1[a], idx2[b]) for a in g1.neighbors(v1) for b in g2.neighbors(v2)}
    return SimpleGraph(g1.n + g2.n - 2, frozenset(edges))


# ---------------------------------------------------------------- components


@dataclass(frozen=True)
class ComponentKind:
    kind: str  # "Prime", "Complete" or "Star"
    center: Optional[int] = None

    def __str__(self):
        return f"Star({self.center})" if self.kind == "Star" else self.kind


def classify_component(g: SimpleGraph) -> ComponentKind:
    """Complete takes precedence (K1, K2, K3 are Complete); then Star; then Prime."""
    n = g.n
    if len(g.edges) == n * (n - 1) // 2:
        return ComponentKind("Complete")
    if n >= 3 and len(g.edges) == n - 1:
        for v in range(n):
            if g.degree(v) == n - 1:
                return ComponentKind("Star", v)
    if n >= 3 and g.is_connected() and not has_split(g):
        return ComponentKind("Prime")
    raise Unclassifiable(f"graph {g.to_text()} is neither prime, complete nor a star")


@dataclass(frozen=True)
class Component:
    graph: SimpleGraph
    labels: Tuple[Label, ...]

    @cached_property
    def kind(self) -> ComponentKind:
        return classify_component(self.graph)

    def markers(self) -> List[int]:
        return [i for i, (t, _) in enumerate(self.labels) if t == "m"]

    def index_of(self, label: Label) -> int:
        return self.labels.index(label)


def _compose_components(a: Component, la: Label, b: Component, lb: Label) -> Component:
    i, j = a.index_of(la), b.index_of(lb)
    g = compose(a.graph, i, b.graph, j)
    labels = tuple(x for x in a.labels if x != la) + tuple(x for x in b.labels if x != lb)
    return Component(g, labels)


@dataclass
class DecompositionTree:
    n: int
    components: List[Component]

    @property
    def kinds(self) -> List[ComponentKind]:
        return [c.kind for c in self.components]

    def marker_home(self) -> Dict[int, Tuple[int, int]]:
        """Marker id -> (component index, local vertex)."""
        out = {}
        for ci, comp in enumerate(self.components):
            for li, (t, k) in enumerate(comp.labels):
                if t == "m":
                    out[k] = (ci, li)
        return out

    @property
    def dashed(self) -> List[Tuple[int, int, int, int]]:
        home = self.marker_home()
        out = []
        for k in sorted(home):
            if k % 2 == 0 and k + 1 in home:
                out.append(home[k] + home[k + 1])
        return out

    def neighbours(self) -> Dict[int, List[Tuple[int, int, int]]]:
        """Component -> list of (own marker, other component, other marker)."""
        home = self.marker_home()
        out: Dict[int, List[Tuple[int, int, int]]] = {i: [] for i in range(len(self.components))}
        for k, (ci, _) in home.items():
            p = _partner(k)
            if p in home:
                out[ci].append((k, home[p][0], p))
        return out

    def to_json(self) -> dict:
        comps = []
        for c in self.components:
            comps.append(
                {
                    "graph": c.graph.to_json(),
                    "kind": str(c.kind),
                    "markers": c.markers(),
                    "labels": [[t, k] for t, k in c.labels],
                }
            )
        return {"components": comps, "dashed": [list(e) for e in self.dashed]}

    def to_text(self) -> str:
        lines = []
        for i, c in enumerate(self.components):
            names = " ".join(f"{k}" if t == "v" else f"*{k}" for t, k in c.labels)
            lines.append(f"[{i}] {c.kind}: {c.graph.to_text()}  labels: {names}")
        for ci, mi, cj, mj in self.dashed:
            lines.append(f"dashed {ci}.{mi} -- {cj}.{mj}")
        return "\n".join(lines)


def _order_rank(order: Sequence[int] | None, n: int) -> Dict[int, int]:
    if order is None:
        return {v: v for v in range(n)}
    return {v: r for r, v in enumerate(order)}


def _split_component(comp: Component, rank: Dict[int, int], next_marker: int):
    g = comp.graph
    # local scan order: input vertices by rank, then markers by id
    local = sorted(range(g.n), key=lambda i: (comp.labels[i][0] == "m", rank.get(comp.labels[i][1], 0) if comp.labels[i][0] == "v" else comp.labels[i][1]))
    full = (1 << g.n) - 1
    for mask in _scan_masks(g.n, local):
        hit = _split_at(g.adj, mask, full)
        if hit is None:
            continue
        w1, w2 = hit
        sides = []
        for part, w, marker in ((mask, w1, next_marker), (full & ~mask, w2, next_marker + 1)):
            vs = [v for v in range(g.n) if part >> v & 1]
            index = {v: i for i, v in enumerate(vs)}
            edges = {(index[i], index[j]) for i, j in g.edges if i in index and j in index}
            m = len(vs)
            edges |= {(index[v], m) for v in vs if w >> v & 1}
            labels = tuple(comp.labels[v] for v in vs) + (("m", marker),)
            sides.append(Component(SimpleGraph(m + 1, frozenset(edges)), labels))
        return sides
    return None


def _mergeable(a: Component, la: Label, b: Component, lb: Label) -> bool:
    ka, kb = a.kind, b.kind
    if ka.kind == "Complete" and kb.kind == "Complete":
        return True
    if ka.kind == "Star" and kb.kind == "Star":
        ca = a.labels[ka.center] == la
        cb = b.labels[kb.center] == lb
        return ca != cb
    return False


def canonical_decomposition(
    g: SimpleGraph, order: Sequence[int] | None = None, cap: int = DECOMP_CAP, merge: bool = True
) -> DecompositionTree:
    """Cunningham's canonical decomposition of a connected graph.

    Components are split until none has a split, then adjacent
    Complete-Complete pairs and center-to-leaf Star-Star pairs are merged.
    ``order`` changes which split is taken first; the result must not
    depend on it.  ``merge=False`` skips the merging pass.
    """
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, cap is {cap}")
    if not g.is_connected():
        raise Disconnected("canonical decomposition needs a connected graph")
    rank = _order_rank(order, g.n)
    todo = [Component(g, tuple(("v", i) for i in range(g.n)))]
    done: List[Component] = []
    next_marker = 0
    while todo:
        comp = todo.pop()
        parts = _split_component(comp, rank, next_marker) if comp.graph.n >= 4 else None
        if parts is None:
            done.append(comp)
        else:
            next_marker += 2
            todo.extend(parts)
    tree = DecompositionTree(g.n, done)
    while merge:
        merged = False
        home = tree.marker_home()
        for k in sorted(home):
            if k % 2:
                continue
            (ci, _), (cj, _) = home[k], home[k + 1]
            a, b = tree.components[ci], tree.components[cj]
            if _mergeable(a, ("m", k), b, ("m", k + 1)):
                new = _compose_components(a, ("m", k), b, ("m", k + 1))
                rest = [c for i, c in enumerate(tree.components) if i not in (ci, cj)]
                tree = DecompositionTree(g.n, rest + [new])
                merged = True
                break
        if not merged:
            break
    tree.components.sort(key=_component_sort_key)
    return tree


def _component_sort_key(c: Component):
    return (-c.graph.n, sorted(c.labels))


def recompose(tree: DecompositionTree) -> SimpleGraph:
    """Contract every dashed edge; the result is labeled by the input vertices."""
    comps = list(tree.components)
    if not comps:
        return SimpleGraph(tree.n)
    while len(comps) > 1:
        home = {}
        for ci, c in enumerate(comps):
            for lab in c.labels:
                if lab[0] == "m":
                    home[lab[1]] = ci
        k = next(k for k in sorted(home) if _partner(k) in home)
        ci, cj = home[k], home[_partner(k)]
        new = _compose_components(comps[ci], ("m", k), comps[cj], ("m", _partner(k)))
        comps = [c for i, c in enumerate(comps) if i not in (ci, cj)] + [new]
    (final,) = comps
    if any(t != "v" for t, _ in final.labels):
        raise BadMarker("unpaired marker left after recomposition")
    perm = [k for _, k in final.labels]
    return SimpleGraph(tree.n, frozenset(tuple(sorted((perm[i], perm[j]))) for i, j in final.graph.edges))


def marker_sides(tree: DecompositionTree) -> Dict[int, FrozenSet[int]]:
    """Marker id -> input vertices reached through its dashed edge."""
    home = {k: ci for k, (ci, _) in tree.marker_home().items()}
    nbrs = tree.neighbours()
    out = {}
    for k, ci in home.items():
        start = home.get(_partner(k))
        if start is None:
            continue
        seen = {ci, start}
        queue = deque([start])
        verts = set()
        while queue:
            c = queue.popleft()
            verts.update(x for t, x in tree.components[c].labels if t == "v")
            for _, other, _ in nbrs[c]:
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
        out[k] = frozenset(verts)
    return out


def decomposition_key(tree: DecompositionTree):
    """Order-free description: each label becomes the set of input vertices behind it."""
    sides = marker_sides(tree)

    def name(lab: Label) -> FrozenSet[int]:
        t, k = lab
        return frozenset([k]) if t == "v" else sides[k]

    key = set()
    for c in tree.components:
        names = [name(lab) for lab in c.labels]
        edges = frozenset(frozenset((names[i], names[j])) for i, j in c.graph.edges)
        key.add((str(c.kind.kind), frozenset(names), edges))
    return frozenset(key)


def validate_decomposition(tree: DecompositionTree, g: SimpleGraph) -> List[str]:
    """Problems with ``tree`` as the canonical decomposition of ``g`` (empty if none)."""
    problems = []
    comps = tree.components
    kinds: List[Optional[ComponentKind]] = []
    for i, c in enumerate(comps):
        n = c.graph.n
        full = n * (n - 1) // 2
        if len(c.graph.edges) == full:
            kinds.append(ComponentKind("Complete"))
        elif n >= 3 and len(c.graph.edges) == n - 1 and any(c.graph.degree(v) == n - 1 for v in range(n)):
            kinds.append(ComponentKind("Star", next(v for v in range(n) if c.graph.degree(v) == n - 1)))
        elif n >= 3 and c.graph.is_connected() and not find_splits(c.graph):
            kinds.append(ComponentKind("Prime"))
        else:
            kinds.append(None)
            problems.append(f"component {i} is not prime, complete or a star")
    home = tree.marker_home()
    counts: Dict[int, int] = {}
    for c in comps:
        for t, k in c.labels:
            if t == "m":
                counts[k] = counts.get(k, 0) + 1
    for k, num in counts.items():
        if num != 1 or _partner(k) not in home:
            problems.append(f"marker {k} is not in exactly one dashed edge")
    edges = tree.dashed
    if len(comps) and len(edges) != len(comps) - 1:
        problems.append("dashed edges do not form a tree")
    for ci, mi, cj, mj in edges:
        ka, kb = kinds[ci], kinds[cj]
        if ka is None or kb is None:
            continue
        if ka.kind == "Complete" and kb.kind == "Complete":
            problems.append(f"complete components {ci} and {cj} are neighbours")
        if ka.kind == "Star" and kb.kind == "Star" and (ka.center == mi) != (kb.center == mj):
            problems.append(f"star components {ci} and {cj} joined center to leaf")
    try:
        if recompose(tree) != g:
            problems.append("recomposition differs from the input")
    except (BadMarker, StopIteration, ValueError) as exc:
        problems.append(f"recomposition failed: {exc}")
    return problems


def random_orders(n: int, count: int, seed: int = 0) -> List[List[int]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        order = list(range(n))
        rng.shuffle(order)
        out.append(order)
    return out


# ---------------------------------------------------------------- marked diagrams


@dataclass(frozen=True)
class MarkedDiagram:
    """A chord diagram with some distinguished (dashed) chords."""

    diagram: ChordDiagram
    marked: FrozenSet[int]

    def to_text(self) -> str:
        return f"{self.diagram.to_text()} marked {','.join(str(x) for x in sorted(self.marked))}"


def _dihedral(word: Tuple) -> Iterable[Tuple]:
    size = len(word)
    rev = word[::-1]
    for k in range(max(size, 1)):
        yield word[k:] + word[:k]
        yield rev[k:] + rev[:k]


def _marked_key(word: Tuple, keep: Set) -> Tuple:
    """Least relabeled form; labels in ``keep`` stay fixed."""
    best = None
    for v in _dihedral(tuple(word)):
        index: Dict[Hashable, int] = {}
        cand = []
        for x in v:
            if x in keep:
                cand.append((1, repr(x)))
            else:
                if x not in index:
                    index[x] = len(index)
                cand.append((0, index[x]))
        cand = tuple(cand)
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def marked_canonical(word: Sequence[Hashable], marked: Iterable[Hashable]) -> MarkedDiagram:
    """Canonical form of a diagram in which the ``marked`` chords are distinguished."""
    marked = set(marked)
    best = ()
    for v in _dihedral(tuple(word)):
        index: Dict[Hashable, int] = {}
        for x in v:
            index.setdefault(x, len(index))
        key = tuple((x in marked, index[x]) for x in v)
        if not best or key < best:
            best = key
    return MarkedDiagram(ChordDiagram(tuple(i for _, i in best)), frozenset(i for m, i in best if m))


def _labeled_realizations(comp: Component) -> List[Tuple[Label, ...]]:
    words = realizing_words(comp.graph)
    return [tuple(comp.labels[x] for x in w) for w in words]


def realize_component(g: SimpleGraph, markers: Iterable[int] = (), cap: int = ENUM_CAP) -> Set[MarkedDiagram]:
    """All realizations of ``g`` up to rotation, reflection and relabeling,
    with the ``markers`` kept as distinguished chords."""
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, cap is {cap}")
    words = realizing_words(g)
    if not words:
        raise NotRealizable(f"graph {g.to_text()} is not a circle graph")
    markers = set(markers)
    return {marked_canonical(w, markers) for w in words}


def _sew_words(w1: Sequence, m1: Hashable, w2: Sequence, m2: Hashable) -> List[Tuple]:
    """The four alternating gluings along the marked chords ``m1`` and ``m2``."""
    w1, w2 = tuple(w1), tuple(w2)
    i = w1.index(m1)
    w1 = w1[i:] + w1[:i]
    j = w1.index(m1, 1)
    a, b = w1[1:j], w1[j + 1 :]
    i = w2.index(m2)
    w2 = w2[i:] + w2[:i]
    j = w2.index(m2, 1)
    c, d = w2[1:j], w2[j + 1 :]
    options = ((c, d), (d, c), (d[::-1], c[::-1]), (c[::-1], d[::-1]))
    return [x + a + y + b for x, y in options]


def _single_mark(d: MarkedDiagram, chosen: Optional[int]) -> int:
    if chosen is not None:
        if chosen not in d.marked:
            raise NoMarkedChord(f"chord {chosen} is not marked")
        return chosen
    if len(d.marked) != 1:
        raise NoMarkedChord(f"expected exactly one marked chord, found {len(d.marked)}")
    return next(iter(d.marked))


def sew(d1: MarkedDiagram, d2: MarkedDiagram, m1: Optional[int] = None, m2: Optional[int] = None) -> List[MarkedDiagram]:
    """Cut out the marked chords and glue the two diagrams along the four alternating orders.

    The results keep any other marked chords of both inputs.
    """
    a = _single_mark(d1, m1)
    b = _single_mark(d2, m2)
    w1 = tuple(("a", x) for x in d1.diagram.word)
    w2 = tuple(("b", x) for x in d2.diagram.word)
    keep = {("a", x) for x in d1.marked if x != a} | {("b", x) for x in d2.marked if x != b}
    out = []
    for w in _sew_words(w1, ("a", a), w2, ("b", b)):
        diagram = ChordDiagram(w)
        index: Dict = {}
        for x in w:
            index.setdefault(x, len(index))
        out.append(MarkedDiagram(diagram, frozenset(index[x] for x in keep)))
    return out


def enumerate_realizations(g: SimpleGraph, cap: int = ENUM_CAP) -> Set[ChordDiagram]:
    """All canonical diagrams whose intersection graph is isomorphic to ``g``.

    Realizes one component, then sews on the neighbouring components in
    every realization and all four orders, walking the decomposition tree.
    """
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, cap is {cap}")
    if g.n == 0:
        return {ChordDiagram(())}
    tree = canonical_decomposition(g)
    comps = tree.components
    reals = [_labeled_realizations(c) for c in comps]
    for c, r in zip(comps, reals):
        if not r:
            raise NotRealizable(f"component {c.graph.to_text()} is not a circle graph")
    nbrs = tree.neighbours()
    # breadth-first order of components with the dashed edge used to attach each
    attach = []
    seen = {0}
    queue = deque([0])
    while queue:
        ci = queue.popleft()
        for own, other, theirs in nbrs[ci]:
            if other not in seen:
                seen.add(other)
                attach.append((own, other, theirs))
                queue.append(other)
    pending = {("m", k) for k in tree.marker_home()}
    partial = {_marked_key(w, pending): w for w in reals[0]}
    for own, other, theirs in attach:
        pending -= {("m", own), ("m", theirs)}
        nxt = {}
        for w in partial.values():
            for r in reals[other]:
                for s in _sew_words(w, ("m", own), r, ("m", theirs)):
                    nxt.setdefault(_marked_key(s, pending), s)
        partial = nxt
    return {ChordDiagram(canonical_word(w)) for w in partial.values()}


def brute_force_realizations(g: SimpleGraph, diagrams: Iterable[ChordDiagram]) -> Set[ChordDiagram]:
    from .chord import intersection_graph
    from .graph import canonical_label

    target = canonical_label(g)
    return {d for d in diagrams if canonical_label(intersection_graph(d)) == target}
