"""Chord diagrams as double occurrence words.

A diagram with ``n`` chords is a word of length ``2n`` over the labels
``0..n-1`` in which every label occurs twice.  Labels are always normalized
to first-occurrence order, so ``ChordDiagram`` equality is equality of
based (cut) diagrams; use :func:`canonical_form` to compare diagrams up to
rotation and reflection.
"""

from __future__ import annotations

import enum
import string
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

from .errors import (
    CapExceeded,
    ChordNotFound,
    EmptyDiagram,
    NotAShare,
    NotDoubleOccurrence,
    ParseError,
    PreconditionViolated,
)
from .graph import SimpleGraph

ENUM_CAP = 7

Arc = Tuple[int, int]  # (start position, length)


def normalize(word: Iterable) -> Tuple[int, ...]:
    """Relabel chords 0, 1, ... in order of first occurrence."""
    mapping: Dict = {}
    out = []
    for x in word:
        if x not in mapping:
            mapping[x] = len(mapping)
        out.append(mapping[x])
    return tuple(out)


@dataclass(frozen=True)
class ChordDiagram:
    word: Tuple[int, ...]

    def __post_init__(self):
        counts = Counter(self.word)
        bad = [x for x, k in counts.items() if k != 2]
        if bad:
            raise NotDoubleOccurrence(f"labels {sorted(map(str, bad))} do not occur exactly twice")
        object.__setattr__(self, "word", normalize(self.word))

    @property
    def n(self) -> int:
        return len(self.word) // 2

    @property
    def chords(self) -> range:
        return range(self.n)

    def endpoints(self, chord: int) -> Tuple[int, int]:
        if not 0 <= chord < self.n:
            raise ChordNotFound(f"chord {chord} not in diagram with {self.n} chords")
        first = self.word.index(chord)
        return first, self.word.index(chord, first + 1)

    def positions(self) -> List[Tuple[int, int]]:
        pos: List[List[int]] = [[] for _ in range(self.n)]
        for i, x in enumerate(self.word):
            pos[x].append(i)
        return [(p[0], p[1]) for p in pos]

    def partner(self) -> List[int]:
        """``partner()[i]`` is the other endpoint of the chord at position ``i``."""
        out = [0] * len(self.word)
        for p, q in self.positions():
            out[p], out[q] = q, p
        return out

    def rotate(self, k: int) -> "ChordDiagram":
        if not self.word:
            return self
        k %= len(self.word)
        return ChordDiagram(self.word[k:] + self.word[:k])

    def reflect(self) -> "ChordDiagram":
        return ChordDiagram(self.word[::-1])

    def delete_chords(self, chords: Iterable[int]) -> "ChordDiagram":
        drop = set(chords)
        return ChordDiagram(tuple(x for x in self.word if x not in drop))

    def canonical(self) -> "ChordDiagram":
        return canonical_form(self)

    def to_text(self) -> str:
        return format_word(self.word)

    def to_json(self) -> dict:
        return {"word": list(self.word)}

    @classmethod
    def from_json(cls, data) -> "ChordDiagram":
        return cls(tuple(int(x) for x in data["word"]))

    def __str__(self):
        return self.to_text()

    def __len__(self):
        return self.n


EMPTY = ChordDiagram(())


def format_word(word: Sequence[int]) -> str:
    word = normalize(word)
    if len(word) // 2 <= 26:
        return "".join(string.ascii_lowercase[x] for x in word)
    return " ".join(str(x) for x in word)


def parse(text: str) -> ChordDiagram:
    """Parse letters (``"abab"``) or whitespace-separated integers (``"0 1 0 1"``)."""
    text = text.strip()
    if not text:
        return EMPTY
    if any(ch.isspace() for ch in text) or text.isdigit():
        tokens = text.split()
        if not all(t.isdigit() for t in tokens):
            raise ParseError(f"bad integer word {text!r}")
        return ChordDiagram(tuple(int(t) for t in tokens))
    if not all(ch.isalpha() for ch in text):
        raise ParseError(f"bad letter word {text!r}")
    return ChordDiagram(tuple(text))


def chord_label(d: ChordDiagram, text: str) -> int:
    """Resolve a chord given as a letter or an integer."""
    if text.isdigit():
        x = int(text)
    elif len(text) == 1 and text.isalpha():
        x = string.ascii_lowercase.index(text.lower())
    else:
        raise ChordNotFound(f"bad chord name {text!r}")
    if not 0 <= x < d.n:
        raise ChordNotFound(f"chord {text!r} not in {d}")
    return x


# ---------------------------------------------------------------- canonical form


def canonical_word(word: Sequence[int]) -> Tuple[int, ...]:
    """Least normalized word over all rotations and reflections."""
    if not word:
        return ()
    w = tuple(word)
    m = len(w)
    best = None
    for seq in (w, w[::-1]):
        doubled = seq + seq
        for r in range(m):
            mapping: Dict[int, int] = {}
            cand = []
            for x in doubled[r : r + m]:
                y = mapping.get(x)
                if y is None:
                    y = mapping[x] = len(mapping)
                cand.append(y)
            cand = tuple(cand)
            if best is None or cand < best:
                best = cand
    return best


def canonical_form(d: ChordDiagram) -> ChordDiagram:
    return ChordDiagram(canonical_word(d.word))


@lru_cache(maxsize=None)
def _enumerate_words(n: int) -> Tuple[Tuple[int, ...], ...]:
    found: Set[Tuple[int, ...]] = set()
    word: List[int] = []
    open_labels: List[int] = []

    def rec(next_label: int):
        if len(word) == 2 * n:
            found.add(canonical_word(word))
            return
        for i, x in enumerate(open_labels):
            open_labels.pop(i)
            word.append(x)
            rec(next_label)
            word.pop()
            open_labels.insert(i, x)
        if next_label < n:
            open_labels.append(next_label)
            word.append(next_label)
            rec(next_label + 1)
            word.pop()
            open_labels.pop()

    rec(0)
    return tuple(sorted(found))


def enumerate_diagrams(n: int, cap: int = ENUM_CAP) -> List[ChordDiagram]:
    """All diagrams with ``n`` chords, one canonical form each, sorted."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds enumeration cap {cap}")
    return [ChordDiagram(w) for w in _enumerate_words(n)]


def all_pairings(n: int) -> Iterable[Tuple[int, ...]]:
    """Every perfect matching of ``2n`` points as a normalized word."""
    word: List[int] = []
    open_labels: List[int] = []

    def rec(next_label: int):
        if len(word) == 2 * n:
            yield tuple(word)
            return
        for i, x in enumerate(list(open_labels)):
            open_labels.pop(i)
            word.append(x)
            yield from rec(next_label)
            word.pop()
            open_labels.insert(i, x)
        if next_label < n:
            open_labels.append(next_label)
            word.append(next_label)
            yield from rec(next_label + 1)
            word.pop()
            open_labels.pop()

    yield from rec(0)


# ---------------------------------------------------------------- intersection graph


def crosses(d: ChordDiagram, i: int, j: int) -> bool:
    (a, b), (c, e) = d.endpoints(i), d.endpoints(j)
    return (a < c < b) != (a < e < b)


def intersection_graph(d: ChordDiagram) -> SimpleGraph:
    pos = d.positions()
    edges = set()
    for i in range(d.n):
        a, b = pos[i]
        for j in range(i + 1, d.n):
            c, e = pos[j]
            if (a < c < b) != (a < e < b):
                edges.add((i, j))
    return SimpleGraph(d.n, frozenset(edges))


# ---------------------------------------------------------------- shares and mutations


class MutationSymmetry(enum.Enum):
    IDENTITY = "identity"
    SWAP_ARCS = "swap"
    REVERSE_ARCS = "reverse"
    ROTATE_HALF_TURN = "rotate"

    def compose(self, other: "MutationSymmetry") -> "MutationSymmetry":
        """Klein four-group product (every element is its own inverse)."""
        if self is MutationSymmetry.IDENTITY:
            return other
        if other is MutationSymmetry.IDENTITY:
            return self
        if self is other:
            return MutationSymmetry.IDENTITY
        (third,) = set(MutationSymmetry) - {MutationSymmetry.IDENTITY, self, other}
        return third


NONTRIVIAL_SYMMETRIES = (
    MutationSymmetry.SWAP_ARCS,
    MutationSymmetry.REVERSE_ARCS,
    MutationSymmetry.ROTATE_HALF_TURN,
)


@dataclass(frozen=True)
class Share:
    """A chord set together with the two arcs witnessing the share property.

    Each arc is ``(start, length)`` in circle positions; length 0 is an empty
    arc.
    """

    chords: FrozenSet[int]
    arcs: Tuple[Arc, Arc]

    def positions(self, size: int) -> List[int]:
        out = []
        for start, length in self.arcs:
            out.extend((start + k) % size for k in range(length))
        return out


def _arc_mask(start: int, length: int, size: int) -> int:
    m = 0
    for k in range(length):
        m |= 1 << ((start + k) % size)
    return m


def _partner_mask(mask: int, partner: Sequence[int]) -> int:
    out = 0
    for i, p in enumerate(partner):
        if mask >> i & 1:
            out |= 1 << p
    return out


def _intervals(size: int) -> List[Arc]:
    """Nonempty proper cyclic intervals plus the full circle (starting at 0)."""
    out = [(s, l) for l in range(1, size) for s in range(size)]
    if size:
        out.append((0, size))
    return out


def is_share(d: ChordDiagram, arcs: Tuple[Arc, Arc]) -> bool:
    size = len(d.word)
    (s1, l1), (s2, l2) = arcs
    if l1 < 0 or l2 < 0 or l1 + l2 > size:
        return False
    m1, m2 = _arc_mask(s1, l1, size), _arc_mask(s2, l2, size)
    if m1 & m2:
        return False
    m = m1 | m2
    return _partner_mask(m, d.partner()) == m


def find_shares(d: ChordDiagram) -> List[Share]:
    """Every share of ``d``: all pairs of disjoint arcs closed under chord partners.

    Includes the empty share and the whole diagram.  Unordered arc pairs are
    reported once; empty arcs are normalized to ``(0, 0)``.
    """
    size = len(d.word)
    partner = d.partner()
    empty: Arc = (0, 0)
    out: List[Share] = [Share(frozenset(), (empty, empty))]
    if not size:
        return out
    ivs = _intervals(size)
    masks = [_arc_mask(s, l, size) for s, l in ivs]
    pmasks = [_partner_mask(m, partner) for m in masks]

    def chords_of(mask: int) -> FrozenSet[int]:
        return frozenset(d.word[i] for i in range(size) if mask >> i & 1)

    for a, (iv, m, pm) in enumerate(zip(ivs, masks, pmasks)):
        if pm == m:
            out.append(Share(chords_of(m), (iv, empty)))
        for b in range(a + 1, len(ivs)):
            m2 = masks[b]
            if m & m2:
                continue
            u = m | m2
            if pm | pmasks[b] == u:
                out.append(Share(chords_of(u), (iv, ivs[b])))
    return out


def complement_share(d: ChordDiagram, s: Share) -> Share:
    """The complementary chords with the two complementary arcs."""
    size = len(d.word)
    (s1, l1), (s2, l2) = s.arcs
    if l1 == 0 and l2 == 0:
        return Share(frozenset(d.chords), ((0, size), (0, 0)))
    if l2 == 0 or l1 == 0:
        s1, l1 = (s1, l1) if l1 else (s2, l2)
        rest = size - l1
        arc = ((s1 + l1) % size, rest) if rest else (0, 0)
        return Share(frozenset(d.chords) - s.chords, (arc, (0, 0)))
    gap1 = ((s1 + l1) % size, (s2 - s1 - l1) % size)
    gap2 = ((s2 + l2) % size, (s1 - s2 - l2) % size)
    norm = tuple((p if l else 0, l) for p, l in (gap1, gap2))
    return Share(frozenset(d.chords) - s.chords, norm)


def _mutate_word(word: Sequence[int], arcs: Tuple[Arc, Arc], sym: MutationSymmetry) -> Tuple[int, ...]:
    size = len(word)
    (s1, l1), (s2, l2) = arcs
    if l1 == 0:
        (s1, l1), (s2, l2) = (s2, l2), (s1, l1)
    if l1 == 0:
        return tuple(word)
    w = tuple(word[s1:]) + tuple(word[:s1])
    off = (s2 - s1) % size if l2 else l1
    u = w[:l1]
    x = w[l1:off]
    v = w[off : off + l2]
    y = w[off + l2 :]
    if sym is MutationSymmetry.IDENTITY:
        a, b = u, v
    elif sym is MutationSymmetry.SWAP_ARCS:
        a, b = v, u
    elif sym is MutationSymmetry.REVERSE_ARCS:
        a, b = u[::-1], v[::-1]
    else:
        a, b = v[::-1], u[::-1]
    out = a + x + b + y
    # put the word back in place so the complementary arcs keep their positions
    return out[size - s1 :] + out[: size - s1]


def mutate(d: ChordDiagram, s: Share, sym: MutationSymmetry) -> ChordDiagram:
    """Apply a rotation/reflection to the contents ``(u, v)`` of the share's arcs.

    Identity -> (u, v); SwapArcs -> (v, u); ReverseArcs -> (rev u, rev v);
    RotateHalfTurn -> (rev v, rev u).  The complementary arcs stay in place.
    """
    if not is_share(d, s.arcs):
        raise NotAShare(f"arcs {s.arcs} do not form a share of {d}")
    return ChordDiagram(_mutate_word(d.word, s.arcs, sym))


def single_mutations(d: ChordDiagram, mutate_fn: Callable = mutate) -> Set[Tuple[int, ...]]:
    """Canonical words of all diagrams one mutation away from ``d``."""
    raw = set()
    for s in find_shares(d):
        for sym in NONTRIVIAL_SYMMETRIES:
            raw.add(mutate_fn(d, s, sym).word)
    return {canonical_word(w) for w in raw}


def mutation_orbit(d: ChordDiagram, cap: int = ENUM_CAP, mutate_fn: Callable = mutate) -> Set[ChordDiagram]:
    """Canonical diagrams reachable from ``d`` by sequences of mutations."""
    if d.n > cap:
        raise CapExceeded(f"n={d.n} exceeds cap {cap}")
    start = canonical_word(d.word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for nxt in single_mutations(ChordDiagram(w), mutate_fn):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return {ChordDiagram(w) for w in seen}


# ---------------------------------------------------------------- products


def product(d1: ChordDiagram, d2: ChordDiagram) -> ChordDiagram:
    """Connected sum: concatenate words on disjoint labels."""
    shift = d1.n
    return ChordDiagram(d1.word + tuple(x + shift for x in d2.word))


def _rotate_word(word: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    return word[k:] + word[:k]


def one_product(d1: ChordDiagram, x: int, d2: ChordDiagram, z: int) -> ChordDiagram:
    """Fuse chord ``x`` of ``d1`` and chord ``z`` of ``d2`` into a single chord.

    ``d1`` is cut right after the first endpoint of ``x`` and ``d2`` right
    before the first endpoint of ``z``; the two now-adjacent endpoints are
    deleted and the remaining endpoints of ``x`` and ``z`` become one chord.
    """
    if d1.n == 0 or d2.n == 0:
        raise EmptyDiagram("1-product needs two nonempty diagrams")
    px, _ = d1.endpoints(x)
    pz, _ = d2.endpoints(z)
    w1 = _rotate_word(d1.word, px + 1)  # ends with x
    w2 = _rotate_word(d2.word, pz)  # starts with z
    fused = ("f",)
    left = tuple(("a", c) if c != x else fused for c in w1[:-1])
    right = tuple(("b", c) if c != z else fused for c in w2[1:])
    return ChordDiagram(left + right)


def twist_blocks(d: ChordDiagram, c1: int, c2: int) -> List[Tuple[int, int]]:
    """Ways of cutting ``d`` minus ``{c1, c2}`` into two products.

    Returns ``(start, length)`` intervals of the reduced word: each is a
    nonempty proper block whose chords have both endpoints inside it.
    """
    rest = [x for x in d.word if x not in (c1, c2)]
    size = len(rest)
    out = []
    for length in range(1, size):
        for start in range(size):
            block = [rest[(start + k) % size] for k in range(length)]
            counts = Counter(block)
            if all(v == 2 for v in counts.values()):
                out.append((start, length))
    return out


def whitney_twist(d: ChordDiagram, c1: int, c2: int, block: Tuple[int, int] | None = None) -> ChordDiagram:
    """Whitney twist of ``d`` at the chords ``c1``, ``c2``.

    Deleting ``c1`` and ``c2`` must leave a product of two diagrams; ``block``
    is the ``(start, length)`` interval of the reduced word holding the
    factor ``C2`` that gets reflected (see :func:`twist_blocks`).  By default
    the first valid block is used.  The intersection graph of the result is
    the graph obtained by exchanging the adjacencies of ``c1`` and ``c2``
    towards ``C2``.
    """
    for c in (c1, c2):
        if not 0 <= c < d.n:
            raise ChordNotFound(f"chord {c} not in {d}")
    if c1 == c2:
        raise PreconditionViolated("twist needs two distinct chords")
    blocks = twist_blocks(d, c1, c2)
    if block is None:
        if not blocks:
            raise PreconditionViolated(f"chords {c1},{c2} do not split {d} into a product")
        block = blocks[0]
    elif block not in blocks:
        raise PreconditionViolated(f"{block} is not a product block for chords {c1},{c2}")
    rest = [x for x in d.word if x not in (c1, c2)]
    start, length = block
    side = {rest[(start + k) % len(rest)] for k in range(length)}
    return ChordDiagram(twist_word(d.word, c1, c2, side))


def twist_word(word: Sequence[int], c1: int, c2: int, side: Set[int]) -> Tuple[int, ...]:
    """Labeled Whitney twist: the returned word keeps every chord label.

    ``side`` is the chord set of the reflected factor.
    """
    word = tuple(word)
    other = set(word) - set(side) - {c1, c2}
    swap = {c1: c2, c2: c1}
    out = _twist_side(word, c1, c2, set(side))
    if out is not None:
        return out
    # twisting the other factor gives the same graph with c1, c2 exchanged
    out = _twist_side(word, c1, c2, other)
    if out is not None:
        return tuple(swap.get(x, x) for x in out)
    out = _fuse_twist(word, c1, c2, set(side))
    if out is None:
        out = _fuse_twist(word, c2, c1, set(side))
    if out is None:
        raise PreconditionViolated("chord configuration admits no twist")  # pragma: no cover
    return out


def _stretches(word: Tuple[int, ...], c1: int, c2: int, side: Set[int]):
    """Intervals holding every endpoint of ``side`` and no other chord but c1, c2."""
    size = len(word)
    need = 2 * len(side)
    found = []
    for length in range(need, size + 1):
        for s in range(size):
            letters = [word[(s + k) % size] for k in range(length)]
            inside = [x for x in letters if x not in (c1, c2)]
            if len(inside) == need and set(inside) == side:
                found.append((s, length))
    return found


def _twist_side(word, c1, c2, side):
    if not side:
        return word
    size = len(word)
    swap = {c1: c2, c2: c1}
    stretches = _stretches(word, c1, c2, side)
    for s, length in stretches:
        letters = [word[(s + k) % size] for k in range(length)]
        if letters.count(c1) == letters.count(c2):
            # reflect the stretch; the stub order flips, so the stubs change owner
            outside = [word[(s + k) % size] for k in range(length, size)]
            return tuple([swap.get(x, x) for x in reversed(letters)] + outside)
    for s, length in stretches:
        letters = [word[(s + k) % size] for k in range(length)]
        stubs = [x for x in letters if x in swap]
        if len(stubs) == 1 and letters[0] in side and letters[-1] in side:
            # one stub: the factor hangs off a single chord; re-hang it on the other
            (ci,) = stubs
            cj = swap[ci]
            outside = [word[(s + k) % size] for k in range(length, size)]
            at = outside.index(cj)
            moved = [cj if x == ci else x for x in letters]
            return tuple([ci] + outside[:at] + moved + outside[at + 1 :])
    return None


def _fuse_twist(word, c1, c2, side):
    """Both endpoints of ``c1`` sit among ``side``, both of ``c2`` outside it.

    The graph is then a disjoint union of the two halves; the twist glues
    them along a single chord and leaves ``c1`` isolated.
    """
    size = len(word)
    for s, length in _stretches(word, c1, c2, side):
        letters = [word[(s + k) % size] for k in range(length)]
        outside = [word[(s + k) % size] for k in range(length, size)]
        if letters.count(c1) != 2 or c2 in letters or c1 in outside:
            continue
        k = letters.index(c1)
        w1 = letters[k + 1 :] + letters[: k + 1]  # ends with c1
        j = outside.index(c2)
        w2 = outside[j:] + outside[:j]  # starts with c2
        left = [c2 if x == c1 else x for x in w1[:-1]]
        return tuple(left + w2[1:] + [c1, c1])
    return None
