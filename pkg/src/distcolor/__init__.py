"""Exact list colouring, colouring numbers, Cantor graphs and distance-graph
witnesses, all in rational arithmetic."""
from .coloring import (
    DefeatCertificate,
    Listing,
    ListChromaticReport,
    OrderingWitness,
    chromatic_number,
    coloring_number_witness,
    extend_listing_fresh,
    find_defeating_listing,
    kmn_adversary_listing,
    list_chromatic_exact,
    list_colorable,
)
from .euclid import (
    DSpec,
    ExactPoint,
    classify_distance_graph,
    distance_graph_points,
    hypercube_embedding,
    plane_common_neighbor_count,
    witness_x3,
    witness_x4,
)
from .families import (
    CantorInterval,
    HTruncationSpec,
    cantor_chain_biclique,
    cantor_graph,
    cantor_interval,
    complete_bipartite,
    h_truncation,
)
from .graph import (
    BicliqueWitness,
    Graph,
    common_neighbors,
    find_biclique,
    from_edges,
    induced_subgraph,
    verify_embedding,
)
from .salg import Polynomial, SemialgSet, SigmaFamily, eval_semialg, sample_sigma_graph

__version__ = "0.1.0"
