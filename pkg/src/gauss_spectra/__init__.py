"""Exact state-curve counting for Gauss diagrams via skew-adjacency spectra."""

from .diagram import (
    ChordDiagram,
    PartialState,
    all_diagrams,
    canonical_map,
    canonical_relabel,
    cover_word,
    double_cover,
    mirror,
    mirror_with_permutation,
    parse_gauss_code,
    pretzel_code,
    pretzel_families,
    restrict,
    serialize,
)
from .errors import *  # noqa: F401,F403
from .graph import (
    LinearlyOrderedGraph,
    adjacency,
    interlacement_graph,
    parse_graph,
    serialize_graph,
    skew_adjacency,
)
from .poly import (
    IntPolynomial,
    char_poly,
    complete_poly,
    derivative,
    graph_poly,
    m0,
    nullity_q,
    nullity_z2,
    path_poly,
    rank_q,
)
from .smoothing import (
    BoundaryTrace,
    boundary_count_oracle,
    enumerate_states,
    kernel_basis_theta,
    loop_count_rlcp,
    loop_count_zlcp,
    oracle_count,
)

__version__ = "0.1.0"
