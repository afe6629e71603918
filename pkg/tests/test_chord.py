import itertools
import random
from collections import defaultdict
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chordws.chord import (
    EMPTY,
    ChordDiagram,
    MutationSymmetry,
    NONTRIVIAL_SYMMETRIES,
    Share,
    all_pairings,
    canonical_form,
    canonical_word,
    complement_share,
    enumerate_diagrams,
    find_shares,
    intersection_graph,
    is_share,
    mutate,
    mutation_orbit,
    one_product,
    parse,
    product,
    twist_blocks,
    twist_word,
    whitney_twist,
)
from chordws.errors import CapExceeded, ChordNotFound, EmptyDiagram, NotAShare, NotDoubleOccurrence, PreconditionViolated
from chordws.graph import SimpleGraph, canonical_label, disjoint_union, glue_vertices, path_graph, whitney_twist_graph
from chordws.sl2 import sl2_oracle


@st.composite
def diagrams(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    word = [i for i in range(n) for _ in range(2)]
    perm = draw(st.permutations(word)) if word else []
    return ChordDiagram(tuple(perm))


def labeled_graph(word):
    """Intersection graph keeping the labels as given (no renormalization)."""
    pos = defaultdict(list)
    for i, x in enumerate(word):
        pos[x].append(i)
    labels = sorted(pos)
    index = {x: k for k, x in enumerate(labels)}
    edges = set()
    for x, y in itertools.combinations(labels, 2):
        a, b = pos[x]
        c, d = pos[y]
        if (a < c < b) != (a < d < b):
            edges.add((index[x], index[y]))
    return SimpleGraph(len(labels), frozenset(edges))


# ---------------------------------------------------------------- parsing


def test_parse_examples():
    d = parse("abab")
    assert d.n == 2 and d.word == (0, 1, 0, 1)
    assert intersection_graph(d).edges == {(0, 1)}
    with pytest.raises(NotDoubleOccurrence):
        parse("aab")
    assert parse("") == EMPTY and EMPTY.n == 0


def test_parse_integer_form():
    assert parse("0 1 0 1") == parse("abab")
    assert parse("7 3 3 7") == parse("abba")


def test_labels_normalized():
    assert parse("baab").word == (0, 1, 1, 0)


def test_text_and_json_round_trip():
    d = parse("abcacb")
    assert parse(d.to_text()) == d
    assert ChordDiagram.from_json(d.to_json()) == d


def test_large_diagram_uses_integers():
    word = tuple(x for i in range(27) for x in (i, i))
    d = ChordDiagram(word)
    assert " " in d.to_text()
    assert parse(d.to_text()) == d


# ---------------------------------------------------------------- canonical form and enumeration


def test_canonical_examples():
    assert canonical_form(parse("baab")) == canonical_form(parse("abba"))
    assert canonical_form(parse("abab")).to_text() == "abab"
    assert canonical_form(parse("abacbc")) == canonical_form(parse("acbcab"))


@given(diagrams(), st.integers(0, 20), st.booleans())
def test_canonical_invariant_under_symmetries(d, k, flip):
    e = d.rotate(k)
    if flip:
        e = e.reflect()
    assert canonical_form(e) == canonical_form(d)
    assert canonical_form(canonical_form(d)) == canonical_form(d)


def test_enumerate_examples():
    assert enumerate_diagrams(0) == [EMPTY]
    assert [d.to_text() for d in enumerate_diagrams(1)] == ["aa"]
    assert {d.to_text() for d in enumerate_diagrams(2)} == {"aabb", "abab"}
    with pytest.raises(CapExceeded):
        enumerate_diagrams(8)


def _burnside(n):
    size = 2 * n
    group = []
    for r in range(max(size, 1)):
        group.append(lambda p, r=r: (p + r) % size)
        group.append(lambda p, r=r: (r - p) % size)
    fixed = 0
    for word in all_pairings(n):
        pos = defaultdict(list)
        for i, x in enumerate(word):
            pos[x].append(i)
        pairs = {frozenset(v) for v in pos.values()}
        for g in group:
            if {frozenset(map(g, p)) for p in pairs} == pairs:
                fixed += 1
    return Fraction(fixed, len(group))


@pytest.mark.parametrize("n", range(0, 7))
def test_enumeration_matches_burnside(n):
    assert len(enumerate_diagrams(n)) == _burnside(n)


def test_all_pairings_count():
    # (2n-1)!! matchings
    assert [sum(1 for _ in all_pairings(n)) for n in range(1, 6)] == [1, 3, 15, 105, 945]


def test_enumeration_is_canonical_and_distinct():
    for n in range(6):
        ds = enumerate_diagrams(n)
        assert len(set(ds)) == len(ds)
        assert all(canonical_form(d) == d for d in ds)


# ---------------------------------------------------------------- intersection graph


def test_intersection_graph_examples():
    assert intersection_graph(parse("aabb")) == SimpleGraph(2)
    assert intersection_graph(parse("abab")).edges == {(0, 1)}
    assert intersection_graph(parse("abacbc")) == path_graph(3)


# ---------------------------------------------------------------- shares


def test_share_examples():
    d = parse("abacbc")
    shares = find_shares(d)
    chords = {s.chords for s in shares}
    assert frozenset(d.chords) in chords
    assert frozenset() in chords
    assert Share(frozenset({1, 2}), ((1, 1), (3, 3))) in shares


@given(diagrams(max_n=5))
def test_shares_are_valid_and_closed_under_complement(d):
    shares = find_shares(d)
    chord_sets = {s.chords for s in shares}
    for s in shares:
        assert is_share(d, s.arcs)
        assert {d.word[p] for p in s.positions(len(d.word))} == set(s.chords)
        comp = complement_share(d, s)
        assert is_share(d, comp.arcs)
        assert comp.chords in chord_sets


def test_non_share_rejected():
    d = parse("abab")
    with pytest.raises(NotAShare):
        mutate(d, Share(frozenset({0}), ((0, 1), (0, 0))), MutationSymmetry.SWAP_ARCS)


# ---------------------------------------------------------------- mutations


def test_mutation_group_table():
    S, R, T, I = MutationSymmetry.SWAP_ARCS, MutationSymmetry.REVERSE_ARCS, MutationSymmetry.ROTATE_HALF_TURN, MutationSymmetry.IDENTITY
    assert S.compose(R) == T
    for a in MutationSymmetry:
        assert a.compose(a) == I
        assert a.compose(I) == a
        for b in MutationSymmetry:
            assert a.compose(b) == b.compose(a)


def test_mutation_word_action():
    # arcs (0, 2) and (4, 2) of "abcddcba"... use a plain word to read off the table
    word = (0, 1, 2, 2, 1, 0)
    d = ChordDiagram(word)
    s = Share(frozenset({0, 1}), ((0, 2), (4, 2)))
    assert mutate(d, s, MutationSymmetry.IDENTITY).word == d.word
    assert mutate(d, s, MutationSymmetry.SWAP_ARCS) == ChordDiagram((1, 0, 2, 2, 0, 1))
    assert mutate(d, s, MutationSymmetry.REVERSE_ARCS) == ChordDiagram((1, 0, 2, 2, 0, 1))
    assert mutate(d, s, MutationSymmetry.ROTATE_HALF_TURN) == d


def test_mutation_examples():
    d = parse("abacbc")
    whole = Share(frozenset(d.chords), ((0, 6), (0, 0)))
    assert canonical_form(mutate(d, whole, MutationSymmetry.ROTATE_HALF_TURN)) == canonical_form(d)
    s = Share(frozenset({1, 2}), ((1, 1), (3, 3)))
    out = mutate(d, s, MutationSymmetry.SWAP_ARCS)
    assert out == parse("acbcab")
    assert canonical_form(out) == canonical_form(d)


@pytest.mark.parametrize("n", range(1, 6))
def test_mutations_preserve_intersection_graph(n):
    for d in enumerate_diagrams(n):
        g = intersection_graph(d)
        for s in find_shares(d):
            for sym in MutationSymmetry:
                out = mutate(d, s, sym)
                assert out.n == d.n
                assert intersection_graph(out) == g or canonical_label(intersection_graph(out)) == canonical_label(g)


def test_mutations_preserve_labeled_graph():
    # mutations move chords around but keep every crossing
    for d in enumerate_diagrams(4):
        from chordws.chord import _mutate_word

        for s in find_shares(d):
            for sym in NONTRIVIAL_SYMMETRIES:
                assert labeled_graph(_mutate_word(d.word, s.arcs, sym)) == labeled_graph(d.word)


def test_orbit_examples():
    assert mutation_orbit(parse("aa")) == {parse("aa")}
    assert mutation_orbit(parse("abab")) == {parse("abab")}


def test_orbit_contains_start_and_shares_graph():
    for d in enumerate_diagrams(5):
        orbit = mutation_orbit(d)
        assert canonical_form(d) in orbit
        key = canonical_label(intersection_graph(d))
        assert all(canonical_label(intersection_graph(e)) == key for e in orbit)


# ---------------------------------------------------------------- products


def test_product_examples():
    assert product(parse("aa"), parse("bb")) == parse("aabb")
    d = parse("abcacb")
    assert product(EMPTY, d) == d


@given(diagrams(max_n=3), diagrams(max_n=3))
def test_product_graph_is_disjoint_union(d1, d2):
    assert intersection_graph(product(d1, d2)) == disjoint_union(intersection_graph(d1), intersection_graph(d2))


def test_one_product_examples():
    assert one_product(parse("aa"), 0, parse("aa"), 0) == parse("aa")
    assert canonical_form(one_product(parse("abab"), 1, parse("cc"), 0)) == parse("abab")
    with pytest.raises(EmptyDiagram):
        one_product(EMPTY, 0, parse("aa"), 0)
    with pytest.raises(ChordNotFound):
        one_product(parse("aa"), 3, parse("aa"), 0)


def test_one_product_graph_is_vertex_gluing():
    small = [d for n in range(1, 4) for d in enumerate_diagrams(n)]
    for d1, d2 in itertools.product(small, repeat=2):
        for x in d1.chords:
            for z in d2.chords:
                out = one_product(d1, x, d2, z)
                assert out.n == d1.n + d2.n - 1
                glued = glue_vertices(intersection_graph(d1), x, intersection_graph(d2), z)
                assert canonical_label(intersection_graph(out)) == canonical_label(glued)


# ---------------------------------------------------------------- Whitney twist


def test_twist_precondition():
    with pytest.raises(PreconditionViolated):
        whitney_twist(parse("abcabc"), 0, 1)
    with pytest.raises(PreconditionViolated):
        whitney_twist(parse("abab"), 0, 0)
    with pytest.raises(ChordNotFound):
        whitney_twist(parse("abab"), 0, 5)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twist_with_empty_block_is_trivial(n):
    for d in enumerate_diagrams(n):
        for c1, c2 in itertools.permutations(d.chords, 2):
            assert canonical_form(ChordDiagram(twist_word(d.word, c1, c2, set()))) == d


def test_twist_single_chord_block():
    # deleting b and c leaves "aadd"; either one-chord block reflects to itself
    d = parse("abcadbcd")
    blocks = twist_blocks(d, 1, 2)
    assert blocks == [(0, 2), (2, 2)]
    for block in blocks:
        assert canonical_form(whitney_twist(d, 1, 2, block)) == canonical_form(d)


def test_single_chord_block_can_change_the_diagram():
    # a one-chord C2 is not always a no-op: the stubs of c1 and c2 change owner
    d = parse("ababcdcd")
    t = whitney_twist(d, 0, 2, (0, 2))
    assert canonical_form(t) != canonical_form(d)
    assert sl2_oracle(t) == sl2_oracle(d)


def test_twist_changes_canonical_form_but_not_sl2():
    found = None
    for d in enumerate_diagrams(4):
        for c1, c2 in itertools.combinations(d.chords, 2):
            for block in twist_blocks(d, c1, c2):
                t = whitney_twist(d, c1, c2, block)
                if canonical_form(t) != canonical_form(d):
                    found = (d, t)
                    break
    assert found is not None
    d, t = found
    assert sl2_oracle(d) == sl2_oracle(t)


@pytest.mark.parametrize("n", range(4, 6))
def test_twist_realizes_graph_twist(n):
    count = 0
    for d in enumerate_diagrams(n):
        for c1, c2 in itertools.permutations(d.chords, 2):
            rest = [x for x in d.word if x not in (c1, c2)]
            for start, length in twist_blocks(d, c1, c2):
                side = {rest[(start + k) % len(rest)] for k in range(length)}
                out = twist_word(d.word, c1, c2, side)
                assert sorted(out) == sorted(d.word)
                expected = whitney_twist_graph(intersection_graph(d), c1, c2, side)
                assert labeled_graph(out) == expected
                count += 1
    assert count > 0


def test_random_rotation_reflection_keeps_twist_valid():
    rng = random.Random(3)
    ds = enumerate_diagrams(5)
    for _ in range(30):
        d = rng.choice(ds)
        pairs = [(a, b) for a, b in itertools.combinations(d.chords, 2) if twist_blocks(d, a, b)]
        if not pairs:
            continue
        c1, c2 = rng.choice(pairs)
        t = whitney_twist(d, c1, c2)
        assert t.n == d.n
