"""Regression corpus: every canonical diagram up to a size with its invariants.

Regenerate with ``python3 -m chordws.corpus fixtures/corpus.json``.
"""

from __future__ import annotations

import argparse
import json
from typing import List

from .chord import enumerate_diagrams, intersection_graph
from .gl11 import gl11_on_diagram
from .graph import canonical_label
from .sl2 import sl2_oracle

CORPUS_MAX_N = 5


def build_corpus(max_n: int = CORPUS_MAX_N) -> List[dict]:
    out = []
    for n in range(max_n + 1):
        for d in sorted(enumerate_diagrams(n), key=lambda d: d.word):
            g = intersection_graph(d)
            out.append(
                {
                    "dow": d.to_text(),
                    "n": n,
                    "igraph": g.to_text(),
                    "graph_class": canonical_label(g).to_text(),
                    "sl2": str(sl2_oracle(d)),
                    "gl11": str(gl11_on_diagram(d)),
                }
            )
    return out


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description="write the regression corpus")
    p.add_argument("path")
    p.add_argument("--max", type=int, default=CORPUS_MAX_N)
    args = p.parse_args(argv)
    with open(args.path, "w", encoding="utf-8") as fh:
        json.dump({"max_n": args.max, "diagrams": build_corpus(args.max)}, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
