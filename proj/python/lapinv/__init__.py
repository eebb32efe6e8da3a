"""Laplacian pseudoinverse approximations and current-flow betweenness."""

from ._lapinv import (
    EigenBasis,
    Graph,
    LapinvError,
    PinvOperator,
    approx_sigma,
    betweenness,
    betweenness_fiedler,
    compare_rankings,
    current_flow_scores,
    eigen_degree_profile,
    error_bounds,
    exact_pinv,
    gen_ba,
    gen_er,
    largest_eigenvalue,
    optimal_sigma,
    pearson,
    rel_2norm_error,
    smallest_eigenpairs,
)

__all__ = [
    "EigenBasis",
    "Graph",
    "LapinvError",
    "PinvOperator",
    "approx_sigma",
    "betweenness",
    "betweenness_fiedler",
    "compare_rankings",
    "current_flow_scores",
    "eigen_degree_profile",
    "error_bounds",
    "exact_pinv",
    "gen_ba",
    "gen_er",
    "largest_eigenvalue",
    "optimal_sigma",
    "pearson",
    "rel_2norm_error",
    "smallest_eigenpairs",
]
