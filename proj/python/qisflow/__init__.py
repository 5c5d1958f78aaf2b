"""Karmarkar gradient flow on density matrices.

States are passed as numpy arrays: density matrices and traceless Hermitian
tangents as complex (m, m) arrays, simplex points and costs as real vectors.
"""

from ._core import (
    ContractError,
    Error,
    IntegrationParams,
    NumericError,
    RegularityError,
    check_isometry,
    grad_general,
    grad_K,
    grad_kappa,
    horizontal_lift,
    integrate_matrix,
    integrate_simplex,
    potential_K,
    potential_kappa,
    qf_metric,
    r_metric,
    run_suite,
    simplex_metric,
    sld,
    solve_lp,
    spectral_decompose,
)

__all__ = [
    "ContractError",
    "Error",
    "IntegrationParams",
    "NumericError",
    "RegularityError",
    "check_isometry",
    "grad_general",
    "grad_K",
    "grad_kappa",
    "horizontal_lift",
    "integrate_matrix",
    "integrate_simplex",
    "potential_K",
    "potential_kappa",
    "qf_metric",
    "r_metric",
    "run_suite",
    "simplex_metric",
    "sld",
    "solve_lp",
    "spectral_decompose",
]
