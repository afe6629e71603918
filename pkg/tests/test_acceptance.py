"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` (or ``make acceptance``).
"""

import itertools
import time
from fractions import Fraction

import pytest

from chordws.chord import enumerate_diagrams, one_product, parse, product, twist_blocks, whitney_twist
from chordws.controls import CONTROLS
from chordws.poly import C
from chordws.sl2 import sl2_oracle, sl2_recurrence, sl2_value
from chordws.verify import (
    CHECKERS,
    check_decomposition,
    check_framed_conway,
    check_graph_dependence,
    check_matroid_moves,
    check_mutation_connectivity,
    check_realizability,
)

# control runs use the smallest sizes at which each broken fixture is caught
CONTROL_SIZES = {
    "mutation": {"max_n": 6},
    "graph-dependence": {"max_n": 6},
    "matroid": {"max_n": 5},
    "decomposition": {"max_n": 6, "orders": 2},
    "realizability": {"max_n": 6},
    "conway": {"max_n": 6},
}


def report(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    assert ok, detail


def summary(rep):
    return f"{rep.classes_checked} classes, {len(rep.violations)} violations, {rep.elapsed:.1f}s"


def test_criterion_1_mutation_connectivity(capsys):
    rep = check_mutation_connectivity(6)
    ok = rep.status == "PASS" and rep.classes_checked > 0 and rep.elapsed < 300
    report(capsys, 1, "graph classes are mutation orbits, n <= 6", ok, summary(rep))


def test_criterion_2_sl2_graph_dependence(capsys):
    rep = check_graph_dependence("sl2", 6)
    ok = rep.status == "PASS" and rep.classes_checked > 0
    report(capsys, 2, "sl2 constant on intersection-graph classes, n <= 6", ok, summary(rep))


def test_criterion_3_recurrence_matches_oracle(capsys):
    t0 = time.perf_counter()
    exhaustive = [d for n in range(6) for d in enumerate_diagrams(n)]
    # every n = 6 diagram, well above the required 100 samples
    sample = sorted(enumerate_diagrams(6), key=lambda d: d.word)
    bad = [d.to_text() for d in exhaustive + sample if sl2_recurrence(d) != sl2_oracle(d)]
    leaf = sl2_recurrence(parse("abab")) == (C - Fraction(1, 2)) * sl2_recurrence(parse("aa"))
    ok = not bad and leaf
    detail = f"{len(exhaustive)} diagrams n <= 5, {len(sample)} diagrams n = 6, {len(bad)} mismatches, leaf factor on abab {'ok' if leaf else 'wrong'}, {time.perf_counter() - t0:.1f}s"
    report(capsys, 3, "recurrence equals oracle", ok, detail)


def test_criterion_4_sl2_structure(capsys):
    problems = []
    diagrams = [d for n in range(7) for d in enumerate_diagrams(n)]
    for d in diagrams:
        v = sl2_value(d)
        if v.degree_c() != d.n or v.leading_coefficient_c() != 1 or not v.is_in_c_only():
            problems.append(("monic", d.to_text()))
    small = [d for n in range(1, 4) for d in enumerate_diagrams(n)]
    products = ones = twists = 0
    for d1, d2 in itertools.product(small, repeat=2):
        products += 1
        if sl2_value(product(d1, d2)) != sl2_value(d1) * sl2_value(d2):
            problems.append(("product", d1.to_text(), d2.to_text()))
        for x in d1.chords:
            for z in d2.chords:
                ones += 1
                if sl2_value(one_product(d1, x, d2, z)) * C != sl2_value(d1) * sl2_value(d2):
                    problems.append(("1-product", d1.to_text(), x, d2.to_text(), z))
    for n in range(2, 6):
        for d in enumerate_diagrams(n):
            for c1, c2 in itertools.combinations(d.chords, 2):
                for block in twist_blocks(d, c1, c2):
                    twists += 1
                    if sl2_value(whitney_twist(d, c1, c2, block)) != sl2_value(d):
                        problems.append(("twist", d.to_text(), c1, c2, block))
    ok = not problems and ones > 0 and twists > 0
    detail = f"{len(diagrams)} monic checks, {products} products, {ones} 1-products, {twists} twists, {len(problems)} problems"
    report(capsys, 4, "sl2 structure", ok, detail)


def test_criterion_5_matroid(capsys):
    rep = check_matroid_moves(5)
    ok = rep.status == "PASS" and rep.classes_checked > 0
    report(capsys, 5, "sl2 constant on twist and 1-product closures, n <= 5", ok, summary(rep) + "; " + "; ".join(rep.notes))


def test_criterion_6_framed_conway(capsys):
    rep = check_framed_conway(6)
    ok = rep.status == "PASS" and rep.classes_checked > 0 and rep.elapsed < 120
    report(capsys, 6, "framed Conway characterization, all graphs n <= 6", ok, summary(rep))


def test_criterion_7_decomposition(capsys):
    rep = check_decomposition(8, orders=20, seed=0)
    ok = rep.status == "PASS" and rep.classes_checked > 0
    report(capsys, 7, "canonical split decomposition, n <= 8", ok, summary(rep) + "; " + "; ".join(rep.notes))


def test_criterion_8_realizability(capsys):
    rep = check_realizability(6)
    ok = rep.status == "PASS" and rep.classes_checked > 0
    report(capsys, 8, "non-circle graphs exist; prime circle graphs realized once", ok, summary(rep) + "; " + "; ".join(rep.notes))


def test_criterion_9_negative_controls(capsys):
    results = {}
    for theorem, checker in CHECKERS.items():
        rep = checker(**CONTROL_SIZES[theorem], **CONTROLS[theorem])
        results[theorem] = (rep.status, rep.violations[0] if rep.violations else None)
    ok = all(status == "FAIL" and witness for status, witness in results.values())
    detail = ", ".join(f"{t} {s}" for t, (s, _) in sorted(results.items()))
    report(capsys, 9, "every checker fails on its broken fixture", ok, detail)
