"""Exhaustive checkers for the theorems at small sizes.

Every checker returns a :class:`VerificationReport`.  Checkers take the
operation under test as an argument, so the broken fixtures in
:mod:`chordws.controls` can be plugged in to show that each one can fail.
"""

from __future__ import annotations

import itertools
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Set

from .chord import (
    ChordDiagram,
    canonical_word,
    enumerate_diagrams,
    intersection_graph,
    mutate,
    mutation_orbit,
    one_product,
    twist_blocks,
    whitney_twist,
)
from .decomp import (
    canonical_decomposition,
    decomposition_key,
    enumerate_realizations,
    random_orders,
    realize_component,
    validate_decomposition,
)
from .errors import CapExceeded, NotRealizable
from .gl11 import conway_graph_invariant, deframe, framed_conway, gl11_on_diagram
from .graph import (
    SimpleGraph,
    all_graphs,
    canonical_label,
    connected_graphs,
    disjoint_union,
    four_term_element,
    realizing_words,
    two_term_partner,
    whitney_twist_graph,
)
from .poly import C, MultiPoly, is_quasihomogeneous
from .sl2 import sl2_value

MUTATION_CAP = 6
DEPENDENCE_CAP = 6
MATROID_CAP = 5
DECOMPOSITION_CAP = 8
REALIZABILITY_CAP = 6

WEIGHT_SYSTEMS: Dict[str, Callable[[ChordDiagram], MultiPoly]] = {
    "sl2": sl2_value,
    "gl11": gl11_on_diagram,
}


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    classes_checked: int = 0
    violations: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "PASS" if not self.violations else "FAIL"

    @property
    def vacuous(self) -> bool:
        return self.classes_checked == 0

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "status": self.status,
            "vacuous": self.vacuous,
            "classes_checked": self.classes_checked,
            "violations": self.violations,
            "notes": self.notes,
            "elapsed": round(self.elapsed, 3),
        }

    def to_text(self) -> str:
        head = f"{self.theorem}: {self.status} ({self.classes_checked} classes checked, {len(self.violations)} violations, {self.elapsed:.2f}s)"
        if self.vacuous:
            head += " [vacuous]"
        lines = [head]
        lines += [f"  note: {n}" for n in self.notes]
        lines += [f"  violation: {v}" for v in self.violations[:10]]
        if len(self.violations) > 10:
            lines.append(f"  ... {len(self.violations) - 10} more")
        return "\n".join(lines)


def _check_cap(max_n: int, cap: int) -> None:
    if max_n > cap:
        raise CapExceeded(f"max_n={max_n} exceeds cap {cap}")


def graph_classes(n: int) -> Dict[SimpleGraph, List[ChordDiagram]]:
    """Canonical diagrams with ``n`` chords grouped by canonical intersection graph."""
    groups: Dict[SimpleGraph, List[ChordDiagram]] = defaultdict(list)
    for d in enumerate_diagrams(n):
        groups[canonical_label(intersection_graph(d))].append(d)
    return dict(groups)


# ---------------------------------------------------------------- mutations


def check_mutation_connectivity(max_n: int = MUTATION_CAP, mutate_fn: Callable = mutate, cap: int = MUTATION_CAP) -> VerificationReport:
    """Each intersection-graph class must be exactly one mutation orbit."""
    _check_cap(max_n, cap)
    t0 = time.perf_counter()
    rep = VerificationReport("mutation", {"max_n": max_n})
    for n in range(1, max_n + 1):
        for g, group in graph_classes(n).items():
            rep.classes_checked += 1
            members = set(group)
            start = min(group, key=lambda d: d.word)
            orbit = mutation_orbit(start, mutate_fn=mutate_fn)
            if orbit != members:
                missing = sorted(members - orbit, key=lambda d: d.word)
                extra = sorted(orbit - members, key=lambda d: d.word)
                rep.violations.append(
                    {
                        "n": n,
                        "graph": g.to_text(),
                        "start": start.to_text(),
                        "unreached": [d.to_text() for d in missing],
                        "foreign": [d.to_text() for d in extra],
                    }
                )
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- graph dependence


def check_graph_dependence(ws: str = "sl2", max_n: int = DEPENDENCE_CAP, ws_fn: Optional[Callable] = None, cap: int = DEPENDENCE_CAP) -> VerificationReport:
    """The weight system must take one value on every intersection-graph class."""
    _check_cap(max_n, cap)
    fn = ws_fn if ws_fn is not None else WEIGHT_SYSTEMS[ws]
    t0 = time.perf_counter()
    rep = VerificationReport("graph-dependence", {"ws": ws, "max_n": max_n})
    for n in range(max_n + 1):
        for g, group in graph_classes(n).items():
            rep.classes_checked += 1
            values: Dict[MultiPoly, ChordDiagram] = {}
            for d in group:
                values.setdefault(fn(d), d)
            if len(values) > 1:
                (v1, d1), (v2, d2) = list(values.items())[:2]
                rep.violations.append(
                    {"graph": g.to_text(), "first": d1.to_text(), "first_value": str(v1), "second": d2.to_text(), "second_value": str(v2)}
                )
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- matroid moves


def twist_neighbours(g: SimpleGraph) -> Set[SimpleGraph]:
    """Canonical graphs one Whitney twist away (at every pair of vertices)."""
    out = set()
    for c1, c2 in itertools.combinations(range(g.n), 2):
        rest = [v for v in range(g.n) if v not in (c1, c2)]
        comps = _components(g, rest)
        for r in range(1, len(comps)):
            for chosen in itertools.combinations(comps, r):
                side = set().union(*chosen)
                out.add(canonical_label(whitney_twist_graph(g, c1, c2, side)))
    return out


def reglue_neighbours(g: SimpleGraph) -> Set[SimpleGraph]:
    """Canonical graphs obtained by detaching a block hanging at a cut vertex
    and gluing it to another vertex (a 1-product regrouping)."""
    out = set()
    for x in range(g.n):
        rest = [v for v in range(g.n) if v != x]
        comps = _components(g, rest)
        if len(comps) < 2:
            continue
        for comp in comps:
            if not any(g.has_edge(x, v) for v in comp):
                continue
            for y in range(g.n):
                if y == x or y in comp:
                    continue
                edges = set()
                for i, j in g.edges:
                    if i == x and j in comp:
                        i = y
                    elif j == x and i in comp:
                        j = y
                    edges.add((min(i, j), max(i, j)))
                out.add(canonical_label(SimpleGraph(g.n, frozenset(edges))))
    return out


def _components(g: SimpleGraph, vertices) -> List[Set[int]]:
    left = set(vertices)
    comps = []
    while left:
        v = left.pop()
        comp, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in left:
                    left.remove(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def move_closures(n: int) -> List[Set[SimpleGraph]]:
    """Classes of ``n``-vertex graphs under Whitney twists and 1-product regrouping."""
    graphs = all_graphs(n)
    parent = {g: g for g in graphs}

    def find(g):
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    for g in graphs:
        for h in twist_neighbours(g) | reglue_neighbours(g):
            a, b = find(g), find(h)
            if a != b:
                parent[a] = b
    classes: Dict[SimpleGraph, Set[SimpleGraph]] = defaultdict(set)
    for g in graphs:
        classes[find(g)].add(g)
    return sorted(classes.values(), key=lambda s: min(sorted(x.edges) for x in s))


def check_matroid_moves(max_n: int = MATROID_CAP, ws_fn: Callable = sl2_value, product_max: int = 3, cap: int = MATROID_CAP) -> VerificationReport:
    """sl(2) values along twist / 1-product moves, on diagrams and on graphs."""
    _check_cap(max_n, cap)
    t0 = time.perf_counter()
    rep = VerificationReport("matroid", {"max_n": max_n, "product_max": product_max})

    # 1-product lemma on diagrams
    small = [d for k in range(1, product_max + 1) for d in enumerate_diagrams(k)]
    lemma1 = 0
    for d1, d2 in itertools.product(small, repeat=2):
        target = ws_fn(d1) * ws_fn(d2)
        for x in d1.chords:
            for z in d2.chords:
                lemma1 += 1
                p = one_product(d1, x, d2, z)
                if ws_fn(p) * C != target:
                    rep.violations.append({"lemma": "1-product", "d1": d1.to_text(), "x": x, "d2": d2.to_text(), "z": z})
    rep.notes.append(f"1-product lemma: {lemma1} instances")

    # twist lemma on diagrams
    lemma2 = 0
    for n in range(2, max_n + 1):
        for d in enumerate_diagrams(n):
            value = ws_fn(d)
            for c1, c2 in itertools.combinations(d.chords, 2):
                for block in twist_blocks(d, c1, c2):
                    lemma2 += 1
                    t = whitney_twist(d, c1, c2, block)
                    if ws_fn(t) != value:
                        rep.violations.append({"lemma": "twist", "diagram": d.to_text(), "c1": c1, "c2": c2, "block": list(block), "twisted": t.to_text()})
    rep.notes.append(f"twist lemma: {lemma2} instances")

    # closures of intersection-graph classes under graph moves
    nontrivial = 0
    for n in range(1, max_n + 1):
        values = {}
        for g, group in graph_classes(n).items():
            values[g] = {ws_fn(d) for d in group}
        for cls in move_closures(n):
            realizable = [g for g in cls if g in values]
            if not realizable:
                continue
            rep.classes_checked += 1
            if len(realizable) > 1:
                nontrivial += 1
            seen = set()
            for g in realizable:
                seen |= values[g]
            if len(seen) > 1:
                rep.violations.append(
                    {"closure": sorted(g.to_text() for g in realizable), "values": sorted(str(v) for v in seen)}
                )
    rep.notes.append(f"closures with at least two non-isomorphic circle graphs: {nontrivial}")
    if nontrivial == 0:
        rep.notes.append("no closure joins distinct circle graphs; the graph-move part is vacuous")
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- decomposition


def check_decomposition(
    max_n: int = DECOMPOSITION_CAP,
    decompose_fn: Callable = canonical_decomposition,
    orders: int = 20,
    seed: int = 0,
    realize_max: int = 6,
    min_unique_n: int = 6,
    cap: int = DECOMPOSITION_CAP,
) -> VerificationReport:
    """Validity of every tree, recomposition, order independence and realization sets."""
    _check_cap(max_n, cap)
    t0 = time.perf_counter()
    rep = VerificationReport("decomposition", {"max_n": max_n, "orders": orders, "seed": seed, "realize_max": realize_max})
    order_checked = 0
    for n in range(1, max_n + 1):
        for g in connected_graphs(n):
            rep.classes_checked += 1
            tree = decompose_fn(g)
            problems = validate_decomposition(tree, g)
            if problems:
                rep.violations.append({"graph": g.to_text(), "problems": problems})
                continue
            if n >= min_unique_n and orders:
                order_checked += 1
                key = decomposition_key(tree)
                for order in random_orders(n, orders, seed=seed + n):
                    if decomposition_key(decompose_fn(g, order=order)) != key:
                        rep.violations.append({"graph": g.to_text(), "order": order, "problems": ["order dependent"]})
                        break
    rep.notes.append(f"order independence checked on {order_checked} graphs")

    compared = 0
    for n in range(1, min(realize_max, max_n) + 1):
        groups = graph_classes(n)
        for g in connected_graphs(n):
            brute = set(groups.get(g, ()))
            try:
                found = enumerate_realizations(g)
            except NotRealizable:
                found = set()
            compared += 1
            if found != brute:
                rep.violations.append(
                    {"graph": g.to_text(), "problems": [f"realizations {len(found)} vs brute force {len(brute)}"]}
                )
    rep.notes.append(f"realization sets compared on {compared} connected graphs")
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- realizability


def _rotation_classes(words) -> int:
    seen = set()
    for w in words:
        best = None
        for k in range(len(w)):
            r = w[k:] + w[:k]
            index: Dict[int, int] = {}
            key = tuple(index.setdefault(x, len(index)) for x in r)
            if best is None or key < best:
                best = key
        seen.add(best)
    return len(seen)


def check_realizability(max_n: int = REALIZABILITY_CAP, realize_fn: Callable = realize_component, cap: int = REALIZABILITY_CAP) -> VerificationReport:
    """Find non-circle graphs and count realizations of prime circle graphs.

    A violation is a prime circle graph with more than one realization up
    to rotation, reflection and relabeling, or a scan that finds no
    non-circle graph at all.
    """
    _check_cap(max_n, cap)
    t0 = time.perf_counter()
    rep = VerificationReport("realizability", {"max_n": max_n})
    non_circle = []
    primes = 0
    chiral = 0
    for n in range(1, max_n + 1):
        for g in all_graphs(n):
            words = realizing_words(g, first_only=True)
            if not words:
                non_circle.append(g)
                continue
            if not g.is_connected() or n < 3:
                continue
            tree = canonical_decomposition(g)
            if len(tree.components) != 1 or tree.components[0].kind.kind != "Prime":
                continue
            primes += 1
            rep.classes_checked += 1
            reals = realize_fn(g)
            if len(reals) != 1:
                rep.violations.append({"graph": g.to_text(), "realizations": sorted(r.diagram.to_text() for r in reals)})
            # a realization and its mirror image may differ up to rotation
            for r in reals:
                w = r.diagram.word
                if _rotation_classes([w, w[::-1]]) == 2:
                    chiral += 1
    if not non_circle:
        rep.violations.append({"problem": f"no non-circle graph with at most {max_n} vertices"})
    smallest = min(non_circle, key=lambda g: (g.n, len(g.edges))) if non_circle else None
    rep.notes.append(f"non-circle graphs found: {len(non_circle)}" + (f"; smallest {smallest.to_text()}" if smallest else ""))
    rep.notes.append(f"prime circle graphs: {primes}; realizations not equal to their mirror image up to rotation: {chiral}")
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- framed Conway


def check_framed_conway(max_n: int = DEPENDENCE_CAP, framed_fn: Optional[Callable] = None, cap: int = DEPENDENCE_CAP) -> VerificationReport:
    """Defining properties of the framed Conway graph invariant on all graphs.

    Whether the framed invariant satisfies the 2-term relation is recorded
    as a note, not checked.
    """
    _check_cap(max_n, cap)
    fn = framed_fn if framed_fn is not None else framed_conway
    t0 = time.perf_counter()
    rep = VerificationReport("conway", {"max_n": max_n})
    graphs = {n: all_graphs(n) for n in range(max_n + 1)}
    if fn(SimpleGraph(1)) != C:
        rep.violations.append({"property": "value on K1", "value": str(fn(SimpleGraph(1)))})
    four_terms = two_terms = framed_two_term_fails = 0
    for n, gs in graphs.items():
        for g in gs:
            rep.classes_checked += 1
            value = fn(g)
            if not is_quasihomogeneous(value, n) or value.coefficient(n) != 1:
                rep.violations.append({"property": "quasihomogeneous, unit leading term", "graph": g.to_text(), "value": str(value)})
            if deframe(g, fn) != conway_graph_invariant(g):
                rep.violations.append({"property": "deframing", "graph": g.to_text()})
            for a, b in g.edges:
                for x, y in ((a, b), (b, a)):
                    four_terms += 1
                    total = four_term_element(g, x, y).evaluate(fn)
                    if not total.is_zero():
                        rep.violations.append({"property": "4-term", "graph": g.to_text(), "A": x, "B": y, "sum": str(total)})
                    partner = two_term_partner(g, x, y)
                    two_terms += 1
                    if conway_graph_invariant(partner) != conway_graph_invariant(g):
                        rep.violations.append({"property": "2-term (Conway)", "graph": g.to_text(), "A": x, "B": y})
                    if fn(partner) != value:
                        framed_two_term_fails += 1
    products = 0
    for n1 in range(1, max_n):
        for n2 in range(1, max_n - n1 + 1):
            for g1 in graphs[n1]:
                for g2 in graphs[n2]:
                    products += 1
                    if fn(disjoint_union(g1, g2)) != fn(g1) * fn(g2):
                        rep.violations.append({"property": "multiplicative", "g1": g1.to_text(), "g2": g2.to_text()})
    rep.notes.append(f"4-term elements: {four_terms}; 2-term pairs: {two_terms}; products: {products}")
    rep.notes.append(f"framed invariant breaks the 2-term relation on {framed_two_term_fails} of {two_terms} ordered pairs (observation only)")
    rep.elapsed = time.perf_counter() - t0
    return rep


CHECKERS = {
    "mutation": check_mutation_connectivity,
    "graph-dependence": check_graph_dependence,
    "matroid": check_matroid_moves,
    "decomposition": check_decomposition,
    "realizability": check_realizability,
    "conway": check_framed_conway,
}
