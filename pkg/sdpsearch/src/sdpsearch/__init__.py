"""Iterative SDP search for maximally entangled states on mixed profiles."""

from .core import (
    marginal_constraints,
    max_marginal_deviation,
    reduced_from_matrix,
    reduced_from_vector,
    state_payload,
    subset_dim,
)
from .search import (
    CONVERGED_DEVIATION,
    SearchConfig,
    SearchResult,
    SolverFailure,
    config_from_json_dict,
    search,
)

__version__ = "0.1.0"
