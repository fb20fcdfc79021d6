"""Solver and metrics for fragile common-pool resource games."""

from .best_response import (ResponseRegion, best_response,
                            brute_force_best_response, compute_region,
                            g_function)
from .equilibrium import (EquilibriumResult, TrivialGameError, solve_homogeneous,
                          solve_pne, welfare)
from .game import (EffectiveRateOfReturn, FragileCprGame, RiskProfile, eval_f,
                   expected_utility)
from .heterogeneity import (AlphaSweepCurve, KSpreadReport, MeanPreservingFamily,
                            alpha_table, fragility_under_k_spread,
                            fragility_vs_alpha_sweep, k_monotone_fragility,
                            sample_mean_preserving)
from .metrics import (BoundEntry, BoundsReport, compute_fuc, compute_x_pvt,
                      compute_x_star_r, compute_zeta, evaluate_bounds, fuc_limit,
                      price_of_anarchy, social_optimum, tangent_perturbation)
from .resources import (Affine, AffineRbar, Constant, DirectRbar, DomainError,
                        Polynomial, PowerLaw, PowerShift, ValidationReport,
                        eval_p, eval_rbar, validate_assumption1)

__version__ = "0.1.0"

__all__ = [
    "Affine", "AffineRbar", "AlphaSweepCurve", "BoundEntry", "BoundsReport",
    "Constant", "DirectRbar", "DomainError", "EffectiveRateOfReturn",
    "EquilibriumResult", "FragileCprGame", "KSpreadReport",
    "MeanPreservingFamily", "Polynomial", "PowerLaw", "PowerShift",
    "ResponseRegion", "RiskProfile", "TrivialGameError", "ValidationReport",
    "alpha_table", "best_response", "brute_force_best_response", "compute_fuc",
    "compute_region", "compute_x_pvt", "compute_x_star_r", "compute_zeta",
    "eval_f", "eval_p", "eval_rbar", "evaluate_bounds", "expected_utility",
    "fragility_under_k_spread", "fragility_vs_alpha_sweep", "fuc_limit",
    "g_function", "k_monotone_fragility", "price_of_anarchy",
    "sample_mean_preserving", "social_optimum", "solve_homogeneous",
    "solve_pne", "tangent_perturbation", "validate_assumption1", "welfare",
]
