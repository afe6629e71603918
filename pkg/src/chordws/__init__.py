"""Weight systems and combinatorial invariants of chord diagrams and circle graphs."""

from .chord import (
    ChordDiagram,
    MutationSymmetry,
    Share,
    canonical_form,
    enumerate_diagrams,
    find_shares,
    intersection_graph,
    mutate,
    mutation_orbit,
    one_product,
    parse,
    product,
    whitney_twist,
)
from .decomp import (
    DecompositionTree,
    canonical_decomposition,
    classify_component,
    compose,
    enumerate_realizations,
    find_splits,
    realize_component,
    sew,
)
from .errors import ChordWSError
from .gl11 import conway_graph_invariant, deframe, framed_conway, gl11_on_diagram
from .graph import (
    SimpleGraph,
    adjacency_nondegenerate_gf2,
    canonical_label,
    disjoint_union,
    four_term_element,
    induced_subgraph,
    is_circle_graph,
    parse_graph,
    two_term_partner,
)
from .poly import MultiPoly, interpolate_in_c, is_quasihomogeneous
from .sl2 import sl2_memo_evaluate, sl2_oracle, sl2_recurrence

__version__ = "0.1.0"
