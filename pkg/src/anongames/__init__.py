"""Approximate Nash equilibria in anonymous games."""

from .distributions import (
    DiscreteDistribution,
    TranslatedPoissonParams,
    leave_one_out_poisson_binomial,
    poisson_binomial,
    poisson_pmf,
    translated_poisson_pmf,
    tv_distance,
)
from .game import (
    AnonymousGame,
    lipschitz_constant,
    mixed_regret_2s,
    num_partitions,
    partition_excluding,
    pure_regret,
    rank_partition,
    unrank_partition,
)
from .ptas import BudgetExceeded, PtasSolveReport, QuantizedGame, round_equilibrium, solve_ptas
from .pure import InfeasibleThreshold, PureSolveReport, generate_lipschitz_game, solve_pure, theoretical_bound
from .rounding import RoundingConfig, RoundingResult, naive_round, round_probabilities

__all__ = [
    "AnonymousGame",
    "BudgetExceeded",
    "DiscreteDistribution",
    "InfeasibleThreshold",
    "PtasSolveReport",
    "PureSolveReport",
    "QuantizedGame",
    "RoundingConfig",
    "RoundingResult",
    "TranslatedPoissonParams",
    "generate_lipschitz_game",
    "leave_one_out_poisson_binomial",
    "lipschitz_constant",
    "mixed_regret_2s",
    "naive_round",
    "num_partitions",
    "partition_excluding",
    "poisson_binomial",
    "poisson_pmf",
    "pure_regret",
    "rank_partition",
    "round_equilibrium",
    "round_probabilities",
    "solve_ptas",
    "solve_pure",
    "theoretical_bound",
    "translated_poisson_pmf",
    "tv_distance",
    "unrank_partition",
]
