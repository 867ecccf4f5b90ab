from .canon import canonical_certificate, canonical_form, canonical_key
from .constructions import construct_counterexample, construct_upper, has_isolated_clique, upper_edge_count
from .engine import SearchResult, enumerate_extremal, exhaustive_oracle, is_feasible, min_edges, run_search
from .verify import census, inspect_graph, theorem_range, verify_theorem1

__all__ = [
    "SearchResult",
    "canonical_certificate",
    "canonical_form",
    "canonical_key",
    "census",
    "construct_counterexample",
    "construct_upper",
    "enumerate_extremal",
    "exhaustive_oracle",
    "has_isolated_clique",
    "inspect_graph",
    "is_feasible",
    "min_edges",
    "run_search",
    "theorem_range",
    "upper_edge_count",
    "verify_theorem1",
]
