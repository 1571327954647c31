"""Exact Shapley values and roll-call pivot probabilities.

Coalitional games, joint vote distributions, the Shapley / Shapley-Shubik
value, and the roll-call value under arbitrary joint distributions over
cooperation patterns — all in exact rational arithmetic, with a constructive
test of when the two values coincide (exactly when the distribution is
exchangeable).
"""

from ._kernels import backend as kernel_backend
from .characterization import (
    ExchangeabilityWitness,
    OverlapMatrix,
    alternating_binomial_sum,
    equivalence_probe_game,
    overlap_matrix,
    overlap_matrix_inverse,
    probe_selector_sum,
    reciprocal_sum_identity,
    reciprocal_sum_identity_at,
    reciprocal_sum_identity_shifted,
    unanimity_rollcall_terms,
    verify_overlap_inverse,
    witness_non_exchangeability,
)
from .distributions import (
    CoalitionDistribution,
    exchangeability_violation,
    explicit_distribution,
    from_size_profile,
    independent_distribution,
    is_exchangeable,
    point_mass,
    transpose_distribution,
    uniform_distribution,
)
from .errors import GuardLimitError, SpecParseError
from .games import (
    MAX_PLAYERS,
    Coalition,
    CoalitionalGame,
    PowerVector,
    are_equivalent,
    dual,
    evaluate,
    is_null_player,
    is_simple,
    linear_combination,
    unanimity_decomposition,
    unanimity_game,
    weighted_game,
)
from .rollcall import (
    CoalitionSampler,
    MonteCarloEstimate,
    RollCall,
    bernoulli_sampler,
    is_pivotal,
    marginal_contribution,
    no_predecessors,
    predecessors,
    rollcall_value_exact,
    rollcall_value_monte_carlo,
    rollcall_value_reference,
    sampler_from_distribution,
    yes_predecessors,
)
from .shapley import (
    shapley_by_coalitions,
    shapley_by_permutations,
    shapley_shubik_index,
)

__version__ = "0.1.0"

__all__ = [
    "Coalition",
    "CoalitionDistribution",
    "CoalitionSampler",
    "CoalitionalGame",
    "ExchangeabilityWitness",
    "GuardLimitError",
    "MAX_PLAYERS",
    "MonteCarloEstimate",
    "OverlapMatrix",
    "PowerVector",
    "RollCall",
    "SpecParseError",
    "alternating_binomial_sum",
    "are_equivalent",
    "bernoulli_sampler",
    "dual",
    "equivalence_probe_game",
    "evaluate",
    "exchangeability_violation",
    "explicit_distribution",
    "from_size_profile",
    "independent_distribution",
    "is_exchangeable",
    "is_null_player",
    "is_pivotal",
    "is_simple",
    "kernel_backend",
    "linear_combination",
    "marginal_contribution",
    "no_predecessors",
    "overlap_matrix",
    "overlap_matrix_inverse",
    "point_mass",
    "predecessors",
    "probe_selector_sum",
    "reciprocal_sum_identity",
    "reciprocal_sum_identity_at",
    "reciprocal_sum_identity_shifted",
    "rollcall_value_exact",
    "rollcall_value_monte_carlo",
    "rollcall_value_reference",
    "sampler_from_distribution",
    "shapley_by_coalitions",
    "shapley_by_permutations",
    "shapley_shubik_index",
    "transpose_distribution",
    "unanimity_decomposition",
    "unanimity_game",
    "unanimity_rollcall_terms",
    "uniform_distribution",
    "verify_overlap_inverse",
    "weighted_game",
    "witness_non_exchangeability",
    "yes_predecessors",
]
