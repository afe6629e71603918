import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chordws.chord import EMPTY, canonical_form, enumerate_diagrams, one_product, parse, product, twist_blocks, whitney_twist
from chordws.errors import CapExceeded, ReductionStuck
from chordws.poly import C, ONE, parse as parse_poly
from chordws.sl2 import (
    InsertionTensor,
    IrrepModel,
    MemoEvaluator,
    casimir_at,
    irrep_scalar,
    irrep_trace,
    matmul,
    six_term_reduction,
    sl2_memo_evaluate,
    sl2_oracle,
    sl2_recurrence,
    sl2_value,
)


def small(max_n):
    return [d for n in range(max_n + 1) for d in enumerate_diagrams(n)]


# ---------------------------------------------------------------- representation model


@pytest.mark.parametrize("m", range(0, 6))
def test_irrep_commutation_relations(m):
    r = IrrepModel(m)
    E, F, H = r.E, r.F, r.H

    def comm(a, b):
        ab, ba = matmul(a, b), matmul(b, a)
        return [[x - y for x, y in zip(p, q)] for p, q in zip(ab, ba)]

    def scaled(a, k):
        return [[k * x for x in row] for row in a]

    assert comm(H, E) == scaled(E, 2)
    assert comm(H, F) == scaled(F, -2)
    assert comm(E, F) == H


@pytest.mark.parametrize("m", range(0, 6))
def test_casimir_is_scalar(m):
    r = IrrepModel(m)
    size = m + 1
    expected = [[r.casimir_value if i == j else 0 for j in range(size)] for i in range(size)]
    assert r.casimir_matrix() == expected
    assert InsertionTensor().casimir_matrix(r) == expected
    assert casimir_at(m) == r.casimir_value


def test_adjoint_casimir_is_one():
    assert casimir_at(2) == 1


def test_scalar_is_trace_over_dimension():
    for d in small(4):
        for m in range(1, 4):
            assert irrep_scalar(d, m) == irrep_trace(d, m) / (m + 1)


# ---------------------------------------------------------------- examples


@pytest.mark.parametrize(
    "word, value",
    [
        ("", "1"),
        ("aa", "c"),
        ("aabb", "c^2"),
        ("abab", "c^2 - 1/2*c"),
        ("abacbc", "c^3 - c^2 + 1/4*c"),
        ("abcabc", "c^3 - 3/2*c^2 + 1/2*c"),
    ],
)
def test_examples(word, value):
    d = parse(word)
    assert sl2_oracle(d) == parse_poly(value)
    assert sl2_recurrence(d) == parse_poly(value)


def test_abab_factorizes():
    assert sl2_oracle(parse("abab")) == (C - Fraction(1, 2)) * C


def test_caps():
    big = parse("aabbccddeeffgghh")
    with pytest.raises(CapExceeded):
        sl2_oracle(big)
    with pytest.raises(CapExceeded):
        sl2_recurrence(big)


# ---------------------------------------------------------------- properties


@pytest.mark.parametrize("n", range(0, 6))
def test_recurrence_matches_oracle(n):
    for d in enumerate_diagrams(n):
        assert sl2_recurrence(d) == sl2_oracle(d)


def test_recurrence_matches_oracle_on_sample_n6():
    rng = random.Random(3)
    for d in rng.sample(sorted(enumerate_diagrams(6), key=lambda d: d.word), 60):
        assert sl2_recurrence(d) == sl2_oracle(d)


def test_oracle_is_independent_of_cut():
    for d in small(4):
        for m in (1, 2, 3):
            traces = {irrep_trace(d, m, cut) for cut in range(len(d.word))} if d.n else {irrep_trace(d, m)}
            assert len(traces) == 1


def test_extra_interpolation_nodes_agree():
    for d in small(4):
        assert sl2_oracle(d, extra_nodes=3) == sl2_oracle(d)


@pytest.mark.parametrize("n", range(0, 6))
def test_monic_of_degree_n(n):
    for d in enumerate_diagrams(n):
        v = sl2_value(d)
        assert v.degree_c() == n
        assert v.leading_coefficient_c() == 1
        assert v.is_in_c_only()


def test_multiplicative():
    ds = small(5)
    for d1, d2 in itertools.product(ds, repeat=2):
        if d1.n + d2.n > 5:
            continue
        assert sl2_value(product(d1, d2)) == sl2_value(d1) * sl2_value(d2)


def test_one_product_divides_by_c():
    ds = small(3)[1:]
    for d1, d2 in itertools.product(ds, repeat=2):
        if d1.n + d2.n - 1 > 5:
            continue
        for x in range(d1.n):
            for z in range(d2.n):
                assert sl2_value(one_product(d1, x, d2, z)) * C == sl2_value(d1) * sl2_value(d2)


@pytest.mark.parametrize("n", [4, 5])
def test_twist_invariance(n):
    count = 0
    for d in enumerate_diagrams(n):
        for c1, c2 in itertools.combinations(range(n), 2):
            for block in twist_blocks(d, c1, c2):
                assert sl2_value(whitney_twist(d, c1, c2, block)) == sl2_value(d)
                count += 1
    assert count > 0


def test_six_term_reduction_is_an_identity():
    checked = 0
    for d in small(5):
        if d.n < 2:
            continue
        try:
            terms = six_term_reduction(d.word)
        except ReductionStuck:
            continue
        checked += 1
        total = sum((coef * sl2_oracle(canonical_form(parse_word(w))) for coef, w in terms), 0 * ONE)
        assert total == sl2_oracle(d)
    assert checked > 10


def parse_word(word):
    from chordws.chord import normalize, ChordDiagram

    return ChordDiagram(normalize(word))


@given(st.sampled_from(sorted(small(5), key=lambda d: d.word)), st.integers(0, 11))
def test_value_invariant_under_rotation(d, k):
    if not d.word:
        return
    k %= len(d.word)
    rotated = parse_word(d.word[k:] + d.word[:k])
    assert sl2_recurrence(rotated) == sl2_recurrence(d)


# ---------------------------------------------------------------- memoised batches


def test_memo_evaluate_batch():
    ev = MemoEvaluator()
    batch = list(enumerate_diagrams(3))
    out = sl2_memo_evaluate(batch, ev)
    assert len(out) == 5
    assert ev.computations == 5
    rotated = [parse_word(d.word[1:] + d.word[:1]) for d in batch]
    sl2_memo_evaluate(rotated, ev)
    assert ev.computations == 5
    assert sl2_memo_evaluate([]) == {}


def test_memo_respects_cap():
    with pytest.raises(CapExceeded):
        MemoEvaluator(cap=2)(parse("abcabc"))
