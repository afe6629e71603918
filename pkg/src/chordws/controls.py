"""Deliberately broken operations used as negative controls for the checkers."""

from __future__ import annotations

from .chord import ChordDiagram, MutationSymmetry, Share, intersection_graph, is_share
from .decomp import MarkedDiagram, canonical_decomposition
from .errors import NotAShare, NotRealizable
from .gl11 import framed_conway
from .graph import SimpleGraph, realizing_words
from .poly import C, MultiPoly


def identity_mutation(d: ChordDiagram, s: Share, sym: MutationSymmetry) -> ChordDiagram:
    """A mutation table in which every symmetry acts trivially."""
    if not is_share(d, s.arcs):
        raise NotAShare(f"arcs {s.arcs} do not form a share of {d}")
    return d


def short_chord_count(d: ChordDiagram) -> MultiPoly:
    """``c^k`` with ``k`` the number of chords whose endpoints are two steps apart.

    Invariant under rotation and reflection, but not a function of the
    intersection graph.
    """
    w = d.word
    size = len(w)
    k = sum(1 for i in range(size) if w[i] == w[(i + 2) % size])
    return C**k


def max_degree_power(d: ChordDiagram) -> MultiPoly:
    """``c^(max degree)`` of the intersection graph; not invariant under twists."""
    g = intersection_graph(d)
    return C ** max((g.degree(v) for v in range(g.n)), default=0)


def unmerged_decomposition(g, order=None):
    """Split all the way down and never merge neighbouring complete or star components."""
    return canonical_decomposition(g, order=order, merge=False)


def rotation_only_realizations(g: SimpleGraph):
    """Realizations up to rotation and relabeling only, so mirror images count twice."""
    words = realizing_words(g)
    if not words:
        raise NotRealizable(f"graph {g.to_text()} is not a circle graph")
    out = set()
    for w in words:
        keys = []
        for k in range(len(w)):
            index = {}
            keys.append(tuple(index.setdefault(x, len(index)) for x in w[k:] + w[:k]))
        out.add(MarkedDiagram(ChordDiagram(min(keys)), frozenset()))
    return out


def sign_flipped_conway(g: SimpleGraph) -> MultiPoly:
    """The framed subset sum with ``+y`` in place of ``-y``."""
    return MultiPoly({(dc, dy): coef * (-1) ** dy for (dc, dy), coef in framed_conway(g).items()})


CONTROLS = {
    "mutation": {"mutate_fn": identity_mutation},
    "graph-dependence": {"ws_fn": short_chord_count},
    "matroid": {"ws_fn": max_degree_power},
    "decomposition": {"decompose_fn": unmerged_decomposition},
    "realizability": {"realize_fn": rotation_only_realizations},
    "conway": {"framed_fn": sign_flipped_conway},
}
