"""The universal sl(2) weight system.

Two independent routes:

* :func:`sl2_oracle` sums, over all labelings of the chords by dual-basis
  pairs, the matrix products in the irreducible representations of highest
  weight ``m = 1..n+1``, then interpolates in the Casimir value
  ``c(m) = m(m+2)/8``.
* :func:`sl2_recurrence` reduces a diagram with the isolated-chord rule,
  the leaf rule and a six-term relation until nothing is left.

The invariant form is the Killing form, ``<x, y> = 4 tr(xy)`` in the
defining representation, so the Casimir acts on the adjoint representation
by 1 and the leaf factor is ``c - 1/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .chord import ChordDiagram, canonical_word
from .errors import CapExceeded, ReductionStuck
from .poly import C, ONE, MultiPoly, interpolate_in_c

SL2_CAP = 7

HALF = Fraction(1, 2)
LEAF_FACTOR = C - HALF


# ---------------------------------------------------------------- representations


@dataclass(frozen=True)
class IrrepModel:
    """The irreducible sl(2)-module of highest weight ``m`` (dimension ``m+1``).

    Basis ``v_0..v_m`` with ``H v_k = (m-2k) v_k``, ``F v_k = v_{k+1}`` and
    ``E v_k = k(m-k+1) v_{k-1}``.
    """

    m: int

    def matrix(self, name: str) -> List[List[int]]:
        m = self.m
        out = [[0] * (m + 1) for _ in range(m + 1)]
        for k in range(m + 1):
            if name == "H":
                out[k][k] = m - 2 * k
            elif name == "F" and k < m:
                out[k + 1][k] = 1
            elif name == "E" and k > 0:
                out[k - 1][k] = k * (m - k + 1)
        return out

    @property
    def E(self):
        return self.matrix("E")

    @property
    def F(self):
        return self.matrix("F")

    @property
    def H(self):
        return self.matrix("H")

    @property
    def casimir_value(self) -> Fraction:
        return Fraction(self.m * (self.m + 2), 8)

    def casimir_matrix(self) -> List[List[Fraction]]:
        """``EF/4 + FE/4 + H^2/8``."""
        E, F, H = self.E, self.F, self.H
        ef, fe, hh = matmul(E, F), matmul(F, E), matmul(H, H)
        size = self.m + 1
        return [
            [Fraction(ef[i][j], 4) + Fraction(fe[i][j], 4) + Fraction(hh[i][j], 8) for j in range(size)]
            for i in range(size)
        ]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


# Casimir tensor E(x)F/4 + F(x)E/4 + H(x)H/8 = (2 E(x)F + 2 F(x)E + H(x)H) / 8
INSERTION_PAIRS: Tuple[Tuple[str, str, int], ...] = (("E", "F", 2), ("F", "E", 2), ("H", "H", 1))
INSERTION_DENOMINATOR = 8


@dataclass(frozen=True)
class InsertionTensor:
    """Dual-basis pairs ``(a_i, b_i)`` with rational weights; ``sum w_i a_i b_i`` is the Casimir."""

    pairs: Tuple[Tuple[str, str, Fraction], ...] = tuple(
        (a, b, Fraction(w, INSERTION_DENOMINATOR)) for a, b, w in INSERTION_PAIRS
    )

    def casimir_matrix(self, rep: IrrepModel) -> List[List[Fraction]]:
        size = rep.m + 1
        out = [[Fraction(0)] * size for _ in range(size)]
        for a, b, w in self.pairs:
            prod = matmul(rep.matrix(a), rep.matrix(b))
            for i in range(size):
                for j in range(size):
                    out[i][j] += w * prod[i][j]
        return out


def _step(letter: str, m: int, j: int) -> Tuple[int, int]:
    """Row action ``e_j^T X = factor * e_{j'}``; factor 0 means the product dies."""
    if letter == "H":
        return m - 2 * j, j
    if letter == "E":
        if j >= m:
            return 0, j
        return (j + 1) * (m - j), j + 1
    if j == 0:
        return 0, j
    return 1, j - 1


def _best_cut(word: Sequence[int]) -> int:
    """Rotation minimizing the largest number of simultaneously open chords."""
    size = len(word)
    best, best_r = None, 0
    for r in range(size):
        seen = set()
        open_now = peak = 0
        for k in range(size):
            x = word[(r + k) % size]
            if x in seen:
                open_now -= 1
            else:
                seen.add(x)
                open_now += 1
                peak = max(peak, open_now)
        if best is None or peak < best:
            best, best_r = peak, r
    return best_r


def _matrix_element(word: Sequence[int], m: int, start: int) -> int:
    """``8^n <v_start^*| W |v_start>`` summed over all pair labelings (integer)."""
    open_chords: List[int] = []
    states: Dict[Tuple[Tuple[str, ...], int], int] = {((), start): 1}
    seen = set()
    for x in word:
        new: Dict[Tuple[Tuple[str, ...], int], int] = {}
        if x not in seen:
            seen.add(x)
            open_chords.append(x)
            for (pending, j), coef in states.items():
                for a, b, w in INSERTION_PAIRS:
                    f, j2 = _step(a, m, j)
                    if f:
                        key = (pending + (b,), j2)
                        new[key] = new.get(key, 0) + coef * w * f
        else:
            idx = open_chords.index(x)
            open_chords.pop(idx)
            for (pending, j), coef in states.items():
                f, j2 = _step(pending[idx], m, j)
                if f:
                    key = (pending[:idx] + pending[idx + 1 :], j2)
                    new[key] = new.get(key, 0) + coef * f
        states = new
        if not states:
            return 0
    return states.get(((), start), 0)


def irrep_trace(d: ChordDiagram, m: int, cut: int = 0) -> Fraction:
    """Trace of the diagram's element in the irrep of highest weight ``m``.

    The circle is cut before position ``cut``.
    """
    word = d.word[cut:] + d.word[:cut]
    total = sum(_matrix_element(word, m, k) for k in range(m + 1))
    return Fraction(total, INSERTION_DENOMINATOR ** d.n)


def irrep_scalar(d: ChordDiagram, m: int) -> Fraction:
    """Scalar by which the (central) diagram element acts on the irrep ``m``.

    Equal to ``irrep_trace / (m + 1)``; read off the highest-weight diagonal entry.
    """
    word = d.word
    r = _best_cut(word)
    word = word[r:] + word[:r]
    return Fraction(_matrix_element(word, m, 0), INSERTION_DENOMINATOR ** d.n)


def casimir_at(m: int) -> Fraction:
    return Fraction(m * (m + 2), 8)


def sl2_oracle(d: ChordDiagram, cap: int = SL2_CAP, extra_nodes: int = 1) -> MultiPoly:
    """Lie-theoretic value of the universal sl(2) weight system, as a polynomial in ``c``.

    ``extra_nodes`` surplus representations are evaluated and must lie on the
    degree-``n`` interpolant.
    """
    if d.n > cap:
        raise CapExceeded(f"n={d.n} exceeds sl2 cap {cap}")
    n = d.n
    points = [(casimir_at(m), irrep_scalar(d, m)) for m in range(1, n + 2 + extra_nodes)]
    return interpolate_in_c(points, n)


# ---------------------------------------------------------------- recurrence


def _isolated_chord(word: Sequence[int]) -> int | None:
    size = len(word)
    for i in range(size):
        if word[i] == word[(i + 1) % size]:
            return word[i]
    return None


def _short_arcs(word: Sequence[int]):
    """For each chord: (crossing count, endpoint before short arc, short arc length)."""
    size = len(word)
    pos: Dict[int, List[int]] = {}
    for i, x in enumerate(word):
        pos.setdefault(x, []).append(i)
    out = []
    for x, (p, q) in pos.items():
        inner = q - p - 1
        outer = size - 2 - inner
        if inner <= outer:
            out.append((inner, x, p, q))
        else:
            out.append((outer, x, q, p + size))
    return out


def _crossing_chords(word: Sequence[int], x: int) -> List[int]:
    p = word.index(x)
    q = word.index(x, p + 1)
    inside = word[p + 1 : q]
    return [y for y in set(inside) if inside.count(y) == 1]


def _drop(word: Sequence[int], x: int) -> Tuple[int, ...]:
    return tuple(y for y in word if y != x)


def six_term_reduction(word: Sequence[int]) -> List[Tuple[Fraction, Tuple[int, ...]]]:
    """Express the diagram as a combination of strictly simpler diagrams.

    Picks a chord ``a`` with a shortest arc; every chord ending on that arc
    crosses ``a``.  With ``b`` the chord just after one end of ``a`` and
    ``c`` the chord just before the other end (``b != c`` unless ``a`` is a
    leaf), the commutator identity for sl(2) gives

        D(ab, ca) = D(ba, ca) - D(ba, ac) + D(ab, ac) + 1/2 (D' - D'')

    where ``D(uv, ..)`` fixes the order of the two adjacent endpoints,
    ``D'`` joins the two contracted points by one chord and the far ends of
    ``b`` and ``c`` by another, and ``D''`` pairs them crosswise.  The first
    three terms have fewer crossings, the last two one chord fewer.
    """
    size = len(word)
    arcs = sorted(_short_arcs(word), key=lambda t: (t[0], t[1]))
    length, a, x, y = arcs[0]
    if length == 0:
        raise ReductionStuck("isolated chord must be removed first")
    w = list(word[x % size :] + word[: x % size])  # a's endpoint x now at 0
    y -= x
    b, c = w[1], w[y - 1]
    if b == c:
        raise ReductionStuck("leaf must be removed first")
    # positions in w: 0 = a, 1 = b, y-1 = c, y = a
    qb = next(i for i in range(size) if w[i] == b and i != 1)
    qc = next(i for i in range(size) if w[i] == c and i != y - 1)

    def swapped(first: bool, second: bool) -> Tuple[int, ...]:
        v = list(w)
        if first:
            v[0], v[1] = v[1], v[0]
        if second:
            v[y - 1], v[y] = v[y], v[y - 1]
        return tuple(v)

    def contracted(pairing: str) -> Tuple[int, ...]:
        X, Y = ("X", "Y")
        v: List = []
        for i, z in enumerate(w):
            if i in (0, y - 1):
                continue  # pairs (0,1) and (y-1,y) collapse onto positions 1 and y
            if i == 1:
                v.append(X)
            elif i == y:
                v.append(X if pairing == "parallel" else Y)
            elif i == qb:
                v.append(Y)
            elif i == qc:
                v.append(Y if pairing == "parallel" else X)
            else:
                v.append(z)
        return tuple(v)

    return [
        (Fraction(1), swapped(True, False)),
        (Fraction(-1), swapped(True, True)),
        (Fraction(1), swapped(False, True)),
        (HALF, contracted("parallel")),
        (-HALF, contracted("cross")),
    ]


@dataclass
class RecurrenceEvaluator:
    """Memoized recurrence keyed by canonical word."""

    cap: int = SL2_CAP
    memo: Dict[Tuple[int, ...], MultiPoly] = field(default_factory=dict)

    def __call__(self, d: ChordDiagram) -> MultiPoly:
        if d.n > self.cap:
            raise CapExceeded(f"n={d.n} exceeds sl2 cap {self.cap}")
        return self._eval(d.word)

    def _eval(self, word: Sequence[int]) -> MultiPoly:
        key = canonical_word(word)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if not key:
            value = ONE
        else:
            iso = _isolated_chord(key)
            if iso is not None:
                value = C * self._eval(_drop(key, iso))
            else:
                leaf = next((x for x in set(key) if len(_crossing_chords(key, x)) == 1), None)
                if leaf is not None:
                    value = LEAF_FACTOR * self._eval(_drop(key, leaf))
                else:
                    value = MultiPoly()
                    for coef, w in six_term_reduction(key):
                        value = value + self._eval(w).scale(coef)
        self.memo[key] = value
        return value


_DEFAULT_RECURRENCE = RecurrenceEvaluator()


def sl2_recurrence(d: ChordDiagram, cap: int = SL2_CAP) -> MultiPoly:
    if d.n > cap:
        raise CapExceeded(f"n={d.n} exceeds sl2 cap {cap}")
    return _DEFAULT_RECURRENCE(d)


@dataclass
class MemoEvaluator:
    """Batch evaluation with a cache keyed by canonical form."""

    fn: Callable[[ChordDiagram], MultiPoly] = sl2_oracle
    cap: int = SL2_CAP
    cache: Dict[Tuple[int, ...], MultiPoly] = field(default_factory=dict)
    computations: int = 0

    def __call__(self, d: ChordDiagram) -> MultiPoly:
        if d.n > self.cap:
            raise CapExceeded(f"n={d.n} exceeds sl2 cap {self.cap}")
        key = canonical_word(d.word)
        if key not in self.cache:
            self.computations += 1
            self.cache[key] = self.fn(ChordDiagram(key))
        return self.cache[key]

    def evaluate(self, batch: Iterable[ChordDiagram]) -> Dict[ChordDiagram, MultiPoly]:
        return {d: self(d) for d in batch}


_SHARED_ORACLE = MemoEvaluator()


def sl2_memo_evaluate(batch: Iterable[ChordDiagram], evaluator: MemoEvaluator | None = None) -> Dict[ChordDiagram, MultiPoly]:
    """Values for a batch of diagrams, each canonical class computed once."""
    ev = evaluator if evaluator is not None else MemoEvaluator()
    return ev.evaluate(batch)


def sl2_value(d: ChordDiagram) -> MultiPoly:
    """Cached oracle value (process-wide cache)."""
    return _SHARED_ORACLE(d)
