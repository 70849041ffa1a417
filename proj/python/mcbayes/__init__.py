"""Bayesian estimation for parameterized finite ergodic Markov chains."""

from ._core import (
    ChainFamily,
    ConfigError,
    ConvergenceError,
    DegenerateModelError,
    DegeneratePosteriorError,
    NonErgodicError,
    build_family,
    check_identifiability,
    dirichlet_posterior_mean,
    empirical_pair_df,
    grid_posterior,
    invariant_measure,
    invariant_pair_df,
    is_ergodic,
    martingale_gap,
    pair_counts,
    pair_invariant,
    prokhorov_exact,
    run,
    sample_trajectory,
    stationary_residual,
    sup_discrepancy,
    tv_decay,
    tv_distance,
)

__all__ = [
    "ChainFamily",
    "ConfigError",
    "ConvergenceError",
    "DegenerateModelError",
    "DegeneratePosteriorError",
    "NonErgodicError",
    "build_family",
    "check_identifiability",
    "dirichlet_posterior_mean",
    "empirical_pair_df",
    "grid_posterior",
    "invariant_measure",
    "invariant_pair_df",
    "is_ergodic",
    "martingale_gap",
    "pair_counts",
    "pair_invariant",
    "prokhorov_exact",
    "run",
    "sample_trajectory",
    "stationary_residual",
    "sup_discrepancy",
    "tv_decay",
    "tv_distance",
]
