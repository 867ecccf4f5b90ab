"""Shadows, Kruskal–Katona bounds, shifting, and exact extremal search for
uniform hypergraphs under a minimum clique-degree condition."""

from .cliquedeg import (
    CliqueDegreeProfile,
    binomial_telescope,
    check_condition,
    clique_extensions,
    complete_link_sets,
    degree_partition,
    edge_lower_bound,
    excess_bound,
    excess_degree_sum,
    min_degree,
)
from .hypergraph import (
    Parameters,
    UniformHypergraph,
    cliques,
    cliques_containing,
    degree,
    induced,
    is_clique,
    link,
    neighborhood,
    shadow,
)
from .order import (
    antilex_rank,
    antilex_unrank,
    compress,
    gen_binomial,
    initial_segment,
    kk_min_shadow,
    lovasz_bound,
    lovasz_x,
)

__version__ = "0.1.0"
